"""
Decisão de rigidez da desigualdade P(F_ℓ) ≤ P(E).

A desigualdade é rígida (toda igualdade é uma translação de F_ℓ em R^{n-1})
exatamente quando {ℓ^∧ > 0} é um intervalo J e ℓ ∈ W^{1,1}(J).
"""
from typing import List

from core.logging import get_logger, log_rigidity_verdict
from geometry.symmetral import TubeSet
from models import (
    CantorMassWitness,
    DisconnectedWitness,
    Interval,
    JumpWitness,
    RigidityVerdict,
)
from profiles.bv_profile import (
    Profile,
    approx_limits,
    essential_range,
    positivity_intervals,
    singular_variation,
)

logger = get_logger(__name__)

# Oscilação mínima para considerar a deriva não constante
DRIFT_TOLERANCE = 1e-9


def _jump_failures(profile: Profile, interval: Interval) -> List[JumpWitness]:
    failures = []
    for atom in profile.base.jump_atoms:
        if interval.contains(atom.location):
            lower, upper = approx_limits(profile, atom.location)
            failures.append(JumpWitness(z=atom.location, lower=lower, upper=upper))
    return failures


def _cantor_failures(profile: Profile, interval: Interval) -> List[CantorMassWitness]:
    failures = []
    for _, piece, lo, hi in profile.base.iter_pieces():
        if not piece.has_cantor_part:
            continue
        clipped = interval.clip(lo, hi)
        if not clipped:
            continue
        mass = piece.singular_variation(clipped[0], clipped[1], lo, hi)
        if mass > 0.0:
            failures.append(CantorMassWitness(interval=Interval.open(*clipped), mass=mass))
    return failures


def decide(profile: Profile) -> RigidityVerdict:
    """
    Veredito de rigidez com todas as violações.

    - cada lacuna entre intervalos de positividade gera um DisconnectedWitness
      no ponto médio da lacuna
    - cada átomo de salto no interior de um intervalo de positividade gera um
      JumpWitness
    - cada componente de Cantor que encontra um intervalo de positividade gera
      um CantorMassWitness com |D^c ℓ| da interseção
    """
    intervals = positivity_intervals(profile)
    failures = [
        DisconnectedWitness(z=0.5 * (left.hi + right.lo))
        for left, right in zip(intervals, intervals[1:])
    ]
    for interval in intervals:
        failures.extend(_jump_failures(profile, interval))
        failures.extend(_cantor_failures(profile, interval))

    verdict = RigidityVerdict(
        rigid=not failures,
        interval=intervals[0] if len(intervals) == 1 else None,
        failures=failures
    )
    log_rigidity_verdict(
        logger,
        verdict.rigid,
        len(failures),
        components=len(intervals),
        interval=str(verdict.interval) if verdict.interval else None
    )
    return verdict


def vertical_parts_measure(profile: Profile, window: Interval) -> float:
    """H^{n-1} das partes verticais de ∂*F_ℓ sobre Ω: |D^s ℓ|(Ω) = saltos + Cantor"""
    jump, cantor = singular_variation(profile, window)
    return jump + cantor


def drift_oscillation(tube: TubeSet) -> float:
    """Oscilação essencial da deriva sobre {ℓ^∧ > 0}"""
    values = []
    for interval in positivity_intervals(tube.profile):
        values.extend(essential_range(tube.drift, interval))
    if not values:
        return 0.0
    return max(values) - min(values)


def is_translate(tube: TubeSet) -> bool:
    """E é F_ℓ transladado: deriva essencialmente constante (e igual) em todos os intervalos de positividade"""
    return drift_oscillation(tube) <= DRIFT_TOLERANCE
