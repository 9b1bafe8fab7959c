"""
Conjuntos testemunha de igualdade P(E) = P(F_ℓ) com E não transladado.

Cada falha de rigidez tem a sua construção:
- desconexão em z̄: metade superior deslocada por τ (split)
- salto em z̄: deslocamento 0 < |τ| < r^∨ - r^∧, planos encaixados (jump)
- massa de Cantor em (a, b): deriva λ(r - r(a⁺)) na mesma escada (cantor)
e o esquema de discretização por escadas que certifica o caso de Cantor.
"""
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from core.exceptions import PreconditionError
from core.logging import get_logger, log_witness_constructed
from geometry.rigidity import DRIFT_TOLERANCE, drift_oscillation
from geometry.symmetral import TubeSet, perimeter_symmetral, perimeter_tube, unit_direction
from geometry.utils.disks import is_nested
from models import (
    CantorMassWitness,
    ConvergenceRow,
    DisconnectedWitness,
    FailureWitness,
    Interval,
    JumpWitness,
    WitnessProvenance,
)
from profiles.bv_profile import (
    BVFunction,
    CantorPiece,
    PolynomialPiece,
    Profile,
    approx_limits,
    positivity_intervals,
)

logger = get_logger(__name__)


class WitnessKind(str, Enum):
    SPLIT = "split"
    JUMP = "jump"
    CANTOR = "cantor"
    STAIRCASE = "staircase"


class WitnessSet(BaseModel):
    """Tubo testemunha com os parâmetros da construção"""
    model_config = ConfigDict(frozen=True)

    tube: TubeSet
    kind: WitnessKind
    provenance: WitnessProvenance


def _direction(direction: Optional[Sequence[float]], dimension: int) -> Tuple[float, ...]:
    if direction is None:
        return tuple(1.0 if i == 0 else 0.0 for i in range(dimension - 1))
    return unit_direction(direction, dimension)


def _translation(tau: Sequence[float], dimension: int) -> Tuple[float, Tuple[float, ...]]:
    vector = np.asarray(tau, dtype=float)
    if vector.shape != (dimension - 1,):
        raise PreconditionError(f"τ deve ter {dimension - 1} componentes")
    magnitude = float(np.linalg.norm(vector))
    if magnitude == 0.0:
        raise PreconditionError("τ deve ser não nulo")
    return magnitude, unit_direction(vector, dimension)


def _check_lambda(lam: float) -> None:
    if not 0.0 < lam < 1.0:
        raise PreconditionError(f"λ deve estar em (0, 1): {lam}")


def step_drift(profile: Profile, z_bar: float, height: float) -> BVFunction:
    """g = height·χ_[z̄, ∞)"""
    right = max(z_bar + 1.0, profile.breakpoints[-1])
    return BVFunction(
        breakpoints=(z_bar, right),
        pieces=(PolynomialPiece.constant(height),),
        tail_right=height
    )


def split_witness(profile: Profile, z_bar: float, tau: Sequence[float]) -> WitnessSet:
    """
    E = E₁ ∪ ((0, τ) + E₂), cortando F_ℓ num zero z̄ de ℓ^∧.

    Raises:
        PreconditionError: ℓ^∧(z̄) > 0, positividade só de um lado, τ = 0
    """
    lower, _ = approx_limits(profile, z_bar)
    if lower > 0.0:
        raise PreconditionError(f"ℓ^∧({z_bar:g}) = {lower:g} > 0")
    intervals = positivity_intervals(profile)
    if not any(interval.hi <= z_bar for interval in intervals):
        raise PreconditionError(f"sem positividade à esquerda de {z_bar:g}")
    if not any(interval.lo >= z_bar for interval in intervals):
        raise PreconditionError(f"sem positividade à direita de {z_bar:g}")

    magnitude, direction = _translation(tau, profile.dimension)
    tube = TubeSet(
        profile=profile,
        drift=step_drift(profile, z_bar, magnitude),
        direction=direction
    )
    log_witness_constructed(logger, WitnessKind.SPLIT.value, z_bar=z_bar, tau_norm=magnitude)
    return WitnessSet(
        tube=tube,
        kind=WitnessKind.SPLIT,
        provenance=WitnessProvenance(z_bar=z_bar, tau=tuple(float(c) for c in tau), direction=direction)
    )


def jump_witness(profile: Profile, z_bar: float, tau: Sequence[float]) -> WitnessSet:
    """
    Desloca por τ a parte acima de um salto de ℓ, mantendo os discos encaixados.

    Raises:
        PreconditionError: sem átomo de salto em z̄ ou |τ| fora de (0, r^∨ - r^∧)
    """
    if not any(atom.location == z_bar for atom in profile.base.jump_atoms):
        raise PreconditionError(f"ℓ não tem salto em {z_bar:g}")
    r_lower, r_upper = profile.radius.approx_limits(z_bar)
    bound = r_upper - r_lower

    magnitude, direction = _translation(tau, profile.dimension)
    if not magnitude < bound:
        raise PreconditionError(f"|τ| = {magnitude:g} fora de (0, {bound:g})")

    tube = TubeSet(
        profile=profile,
        drift=step_drift(profile, z_bar, magnitude),
        direction=direction
    )
    log_witness_constructed(logger, WitnessKind.JUMP.value, z_bar=z_bar, tau_norm=magnitude, bound=bound)
    return WitnessSet(
        tube=tube,
        kind=WitnessKind.JUMP,
        provenance=WitnessProvenance(z_bar=z_bar, tau=tuple(float(c) for c in tau), direction=direction)
    )


def cantor_component(profile: Profile, interval: Optional[Interval] = None) -> Tuple[int, float, float]:
    """
    Pedaço de Cantor de ℓ dentro de {ℓ > 0}, como (índice, a, b).

    Args:
        profile: Perfil ℓ
        interval: Se dado, escolhe o pedaço que o intersecta

    Raises:
        PreconditionError: nenhum pedaço de Cantor admissível
    """
    vanishing = False
    for index, piece, lo, hi in profile.base.iter_pieces():
        if not piece.has_cantor_part:
            continue
        if interval is not None and not interval.clip(lo, hi):
            continue
        if any(start < hi and end > lo for start, end in piece.zero_set(lo, hi)):
            vanishing = True
            continue
        return index, lo, hi
    if vanishing:
        raise PreconditionError("ℓ se anula dentro do intervalo de Cantor")
    raise PreconditionError("ℓ não tem componente de Cantor")


def cantor_drift(profile: Profile, lam: float, index: int) -> BVFunction:
    """g = λ(r - r(a⁺)) no pedaço index, presa fora dele"""
    lo, hi = profile.base.piece_intervals[index]
    radius_piece = profile.radius.cantor_piece(index)
    r_start, r_end = radius_piece.end_values(lo, hi)
    drift_piece = radius_piece.scaled(lam).shifted(-lam * r_start)
    return BVFunction(
        breakpoints=(lo, hi),
        pieces=(drift_piece,),
        tail_right=lam * (r_end - r_start)
    )


def cantor_witness(
    profile: Profile,
    lam: float,
    direction: Optional[Sequence[float]] = None,
    interval: Optional[Interval] = None
) -> WitnessSet:
    """
    Deriva λ(r_ℓ - r_ℓ(a⁺)) construída da componente de Cantor de r_ℓ.

    Raises:
        PreconditionError: λ ∉ (0, 1), sem componente de Cantor, ℓ nula em (a, b)
    """
    _check_lambda(lam)
    index, lo, hi = cantor_component(profile, interval)
    direction = _direction(direction, profile.dimension)
    tube = TubeSet(profile=profile, drift=cantor_drift(profile, lam, index), direction=direction)
    log_witness_constructed(logger, WitnessKind.CANTOR.value, lam=lam, a=lo, b=hi)
    return WitnessSet(
        tube=tube,
        kind=WitnessKind.CANTOR,
        provenance=WitnessProvenance(lam=lam, direction=direction, interval=Interval.open(lo, hi))
    )


def discretize_profile(profile: Profile, k: int, interval: Optional[Interval] = None) -> Profile:
    """
    ℓᵏ: amostra à esquerda de ℓ na partição (pontos de quebra) ∪ (grade diádica
    de malha (b-a)/2ᵏ), constante em cada [z_i, z_{i+1}).

    Fora de [a, b] os pedaços originais são mantidos; a e b devem ser pontos
    de quebra de ℓ. As partições são aninhadas em k.

    Raises:
        PreconditionError: k < 1, salto dentro de (a, b), extremos que não são pontos de quebra
    """
    if k < 1:
        raise PreconditionError(f"k deve ser ≥ 1: {k}")
    base = profile.base
    if interval is None:
        a, b = base.breakpoints[0], base.breakpoints[-1]
    else:
        a, b = interval.lo, interval.hi
    if a not in base.breakpoints or b not in base.breakpoints or not a < b:
        raise PreconditionError(f"[{a:g}, {b:g}] deve ser delimitado por pontos de quebra de ℓ")
    inner = Interval.open(a, b)
    if any(inner.contains(atom.location) for atom in base.jump_atoms):
        raise PreconditionError(f"ℓ tem salto dentro de ({a:g}, {b:g})")

    grid = np.linspace(a, b, 2 ** k + 1)
    partition = sorted(set(grid.tolist()) | {z for z in base.breakpoints if a <= z <= b})
    samples = base.evaluate(np.asarray(partition[:-1]))

    breakpoints = [z for z in base.breakpoints if z < a] + partition + [z for z in base.breakpoints if z > b]
    pieces = []
    for index, piece, lo, hi in base.iter_pieces():
        if hi <= a:
            pieces.append(piece)
    pieces.extend(PolynomialPiece.constant(float(value)) for value in samples)
    for index, piece, lo, hi in base.iter_pieces():
        if lo >= b:
            pieces.append(piece)

    return Profile(
        base=BVFunction(breakpoints=tuple(breakpoints), pieces=tuple(pieces)),
        dimension=profile.dimension
    )


def staircase_witness(
    profile_k: Profile,
    lam: float,
    direction: Optional[Sequence[float]] = None,
    r_base: Optional[float] = None,
    interval: Optional[Interval] = None
) -> WitnessSet:
    """
    Deriva em escada g = λ(r_{ℓᵏ} - r_base) em [a, b], presa fora.

    Cada plano de salto interior fica encaixado (|Δg| = λ|Δr| < |Δr|), de modo
    que P(Eᵏ; J) = P(F_{ℓᵏ}; J) termo a termo.

    Raises:
        PreconditionError: λ ∉ (0, 1), pedaço não constante em [a, b], plano não encaixado
    """
    _check_lambda(lam)
    base = profile_k.base
    if interval is None:
        a, b = base.breakpoints[0], base.breakpoints[-1]
    else:
        a, b = interval.lo, interval.hi

    selected = [(piece, lo, hi) for _, piece, lo, hi in base.iter_pieces() if lo >= a and hi <= b]
    if not selected:
        raise PreconditionError(f"nenhum pedaço de ℓᵏ em [{a:g}, {b:g}]")
    if not all(piece.is_constant for piece, _, _ in selected):
        raise PreconditionError("ℓᵏ deve ser constante por pedaços em [a, b]")

    radius = profile_k.radius
    radii = radius.from_measure([piece.evaluate(np.array([lo]), lo, hi)[0] for piece, lo, hi in selected])
    if r_base is None:
        r_base = float(radii[0])
    heights = lam * (radii - r_base)

    for left, right, step in zip(radii[:-1], radii[1:], np.diff(heights)):
        if not is_nested(step, left, right):
            raise PreconditionError(f"plano de salto não encaixado: Δg = {step:g}, raios {left:g} e {right:g}")

    breakpoints = tuple([lo for _, lo, _ in selected] + [selected[-1][2]])
    drift = BVFunction(
        breakpoints=breakpoints,
        pieces=tuple(PolynomialPiece.constant(float(h)) for h in heights),
        tail_left=float(heights[0]),
        tail_right=float(heights[-1])
    )
    direction = _direction(direction, profile_k.dimension)
    log_witness_constructed(logger, WitnessKind.STAIRCASE.value, lam=lam, steps=len(selected), r_base=r_base)
    return WitnessSet(
        tube=TubeSet(profile=profile_k, drift=drift, direction=direction),
        kind=WitnessKind.STAIRCASE,
        provenance=WitnessProvenance(
            lam=lam, direction=direction, r_base=r_base, interval=Interval.closed(a, b)
        )
    )


def certify_cantor_witness(
    profile: Profile,
    lam: float,
    direction: Optional[Sequence[float]] = None,
    depths: Sequence[int] = tuple(range(1, 13)),
    interval: Optional[Interval] = None
) -> List[ConvergenceRow]:
    """
    Esquema de escadas para a testemunha de Cantor: para cada k, P(F_{ℓᵏ}; J)
    e P(Eᵏ; J) com J = (a, b) o intervalo de Cantor.

    Returns:
        Uma ConvergenceRow por profundidade
    """
    _check_lambda(lam)
    index, lo, hi = cantor_component(profile, interval)
    window = Interval.open(lo, hi)
    r_base = profile.radius.cantor_piece(index).end_values(lo, hi)[0]

    rows = []
    for k in depths:
        profile_k = discretize_profile(profile, k, Interval.closed(lo, hi))
        witness = staircase_witness(profile_k, lam, direction, r_base, Interval.closed(lo, hi))
        rows.append(ConvergenceRow(
            k=k,
            perimeter_symmetral=perimeter_symmetral(profile_k, window).total,
            perimeter_staircase=perimeter_tube(witness.tube, window).total
        ))
        logger.debug("staircase_depth", k=k, rows=len(rows))
    return rows


def witness_for(
    profile: Profile,
    failure: FailureWitness,
    direction: Optional[Sequence[float]] = None
) -> WitnessSet:
    """
    Testemunha correspondente a uma falha do veredito de rigidez.

    Desconexão → split com |τ| = 1; salto → jump com |τ| na metade da cota;
    massa de Cantor → cantor com λ = 1/2.
    """
    unit = np.asarray(_direction(direction, profile.dimension))
    if isinstance(failure, DisconnectedWitness):
        return split_witness(profile, failure.z, unit)
    if isinstance(failure, JumpWitness):
        r_lower, r_upper = profile.radius.approx_limits(failure.z)
        return jump_witness(profile, failure.z, 0.5 * (r_upper - r_lower) * unit)
    if isinstance(failure, CantorMassWitness):
        return cantor_witness(profile, 0.5, tuple(unit), failure.interval)
    raise PreconditionError(f"falha desconhecida: {failure!r}")


def drift_is_nontrivial(tube: TubeSet) -> bool:
    """A deriva assume dois valores a mais de 1e-9 em conjuntos de medida positiva de {ℓ^∧ > 0}"""
    return drift_oscillation(tube) > DRIFT_TOLERANCE
