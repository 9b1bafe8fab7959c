"""
Simetral de Schwarz F_ℓ e conjuntos tubulares com deriva do baricentro.

E = {(z, w) : |w - g(z)e| < r_ℓ(z)}; F_ℓ é o caso g ≡ 0. O perímetro numa
janela B × R^{n-1} é calculado fatia a fatia:

- parte lateral: ∫_B ∫_{S^{n-2}} √(A² + (B' + C⟨u,e⟩)²) com A = r^{n-2},
  B' = r^{n-2}r', C = A·g' (para g' ≡ 0 reduz a √(H^{n-2}(∂B_r)² + ℓ'²))
- planos de salto: H^{n-1}(D⁻ Δ D⁺) dos discos laterais de cada salto de (r, g)
- parte de Cantor: |D^c ℓ|(B) para F_ℓ; variação do caminho de discos nas
  células de Cantor dos tubos
"""
import math
import time
from typing import Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import settings
from core.exceptions import PreconditionError, UnsupportedTubeError
from core.logging import get_logger, log_perimeter_result, log_performance_metric
from geometry.utils.disks import symmetric_difference_measure
from geometry.utils.partitions import (
    cell_derivative,
    cell_kind,
    cell_values,
    cells,
    dyadic_points,
    merged_breakpoints,
    piece_on,
)
from geometry.utils.quadrature import adaptive_gauss_legendre, sphere_rule
from models import BoundarySlice, InequalityCheck, Interval, PerimeterBreakdown
from profiles.bv_profile import (
    BVFunction,
    CantorPiece,
    Profile,
    approx_limits,
    unit_ball_volume,
)

logger = get_logger(__name__)

DIRECTION_TOLERANCE = 1e-14
INEQUALITY_TOLERANCE = 1e-9


class TubeSet(BaseModel):
    """Conjunto ℓ-distribuído {|w - g(z)e| < r_ℓ(z)}"""
    model_config = ConfigDict(frozen=True)

    profile: Profile
    drift: BVFunction = Field(..., description="Deriva escalar g")
    direction: Tuple[float, ...] = Field(..., description="Vetor unitário e em R^{n-1}")

    @model_validator(mode="before")
    @classmethod
    def _fill_defaults(cls, data):
        if not isinstance(data, dict):
            return data
        data = dict(data)
        profile = data.get("profile")
        if isinstance(profile, Profile):
            dimension = profile.dimension
            if data.get("drift") is None:
                data["drift"] = BVFunction.constant(0.0, profile.breakpoints[0], profile.breakpoints[-1])
        elif isinstance(profile, dict):
            dimension = profile.get("dimension")
        else:
            dimension = None
        if data.get("direction") is None and dimension:
            data["direction"] = tuple(1.0 if i == 0 else 0.0 for i in range(dimension - 1))
        return data

    @model_validator(mode="after")
    def _check_direction(self) -> "TubeSet":
        if len(self.direction) != self.profile.dimension - 1:
            raise ValueError(
                f"direção deve ter {self.profile.dimension - 1} componentes, recebeu {len(self.direction)}"
            )
        norm = math.sqrt(sum(c * c for c in self.direction))
        if abs(norm - 1.0) > DIRECTION_TOLERANCE:
            raise ValueError(f"direção deve ser unitária (|e| = {norm!r})")
        return self

    @classmethod
    def symmetral(cls, profile: Profile) -> "TubeSet":
        """F_ℓ como tubo com deriva nula"""
        return cls(profile=profile)

    @property
    def dimension(self) -> int:
        return self.profile.dimension

    def translated(self, constant: float) -> "TubeSet":
        """Mesmo conjunto transladado por constant·e"""
        return self.model_copy(update={"drift": self.drift.shifted(constant)})

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Pertinência de pontos (z, w) com w ∈ R^{n-1}; shape (N, n)"""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        z, w = points[:, 0], points[:, 1:]
        radius = self.profile.radius.evaluate(z)
        center = self.drift.evaluate(z)[:, None] * np.asarray(self.direction)[None, :]
        return np.linalg.norm(w - center, axis=1) < radius


def unit_direction(vector, dimension: int) -> Tuple[float, ...]:
    """
    Normaliza um vetor de R^{n-1}.

    Raises:
        PreconditionError: vetor nulo ou de dimensão errada
    """
    vector = np.asarray(vector, dtype=float)
    if vector.shape != (dimension - 1,):
        raise PreconditionError(f"vetor deve ter {dimension - 1} componentes")
    norm = float(np.linalg.norm(vector))
    if norm == 0.0:
        raise PreconditionError("vetor nulo não define direção")
    unit = vector / norm
    return tuple(float(c) for c in unit / np.linalg.norm(unit))


def _window(window: Optional[Interval]) -> Interval:
    window = window or Interval.real_line()
    if window.is_empty:
        raise PreconditionError(f"janela vazia: {window}")
    return window


def volume(E: Union[TubeSet, Profile]) -> float:
    """H^n(E) = ∫ ℓ, independente da deriva"""
    profile = E.profile if isinstance(E, TubeSet) else E
    return profile.base.integrate(profile.breakpoints[0], profile.breakpoints[-1])


def sphere_boundary_measure(n: int, r: float) -> float:
    """
    H^{n-2}(∂B^{n-1}(0, r)) = (n-1)·ω_{n-1}·r^{n-2}; para n = 2, 2 se r > 0.

    Raises:
        PreconditionError: n < 2 ou r < 0
    """
    if n < 2:
        raise PreconditionError(f"dimensão deve ser ≥ 2: {n}")
    if r < 0.0 or math.isnan(r):
        raise PreconditionError(f"raio negativo: {r}")
    return float(_boundary_weight(n, np.array([r]))[0])


def _boundary_weight(n: int, radii: np.ndarray) -> np.ndarray:
    if n == 2:
        return np.where(radii > 0.0, 2.0, 0.0)
    return (n - 1) * unit_ball_volume(n - 1) * radii ** (n - 2)


def _symmetral_cell(profile: Profile, a: float, b: float) -> Tuple[float, float]:
    # (parte lateral, parte de Cantor) de F_ℓ sobre a célula (a, b)
    located = piece_on(profile.base, a, b)
    if located is None:
        return 0.0, 0.0
    piece, lo, hi = located
    n = profile.dimension
    radius = profile.radius

    if piece.is_constant:
        value = piece.evaluate(np.array([0.5 * (a + b)]), lo, hi)
        return (b - a) * float(_boundary_weight(n, radius.from_measure(value))[0]), 0.0

    if isinstance(piece, CantorPiece):
        lateral = piece.integral_of(
            lambda values: _boundary_weight(n, radius.from_measure(values)), a, b, lo, hi
        )
        return lateral, piece.singular_variation(a, b, lo, hi)

    def integrand(zs: np.ndarray) -> np.ndarray:
        values = piece.evaluate(zs, lo, hi)
        slope = piece.derivative(zs, lo, hi)
        return np.hypot(_boundary_weight(n, radius.from_measure(values)), slope)

    return adaptive_gauss_legendre(integrand, a, b), 0.0


def perimeter_symmetral(profile: Profile, window: Optional[Interval] = None) -> PerimeterBreakdown:
    """
    P(F_ℓ; B × R^{n-1}) separado em partes lateral, de salto e de Cantor.

    Args:
        profile: Perfil ℓ
        window: Janela B (padrão: R); pode ser um único ponto

    Returns:
        PerimeterBreakdown
    """
    window = _window(window)
    ac_part = 0.0
    cantor_part = 0.0
    for a, b in cells(merged_breakpoints([profile.base], window)):
        lateral, cantor = _symmetral_cell(profile, a, b)
        ac_part += lateral
        cantor_part += cantor

    jump_part = sum(
        atom.magnitude for atom in profile.base.jump_atoms if window.contains(atom.location)
    )
    breakdown = PerimeterBreakdown.from_parts(ac_part, jump_part, cantor_part, window)
    log_perimeter_result(
        logger, "symmetral", breakdown.total, breakdown.ac_part,
        breakdown.jump_part, breakdown.cantor_part, window=str(window)
    )
    return breakdown


def boundary_slice(profile: Profile, z_bar: float) -> BoundarySlice:
    """(r^∧(z̄), r^∨(z̄), ℓ^∨(z̄) - ℓ^∧(z̄)): coroa vertical de ∂*F_ℓ em z̄"""
    lower, upper = approx_limits(profile, z_bar)
    r_lower, r_upper = profile.radius.approx_limits(z_bar)
    return BoundarySlice(r_lower=r_lower, r_upper=r_upper, measure=upper - lower)


def _jump_plane(tube: TubeSet, z: float) -> float:
    if tube.profile.base.is_continuous_at(z) and tube.drift.is_continuous_at(z):
        return 0.0
    left, right = tube.profile.base.one_sided_limits(z)
    g_left, g_right = tube.drift.one_sided_limits(z)
    radii = tube.profile.radius.from_measure([left, right])
    return symmetric_difference_measure(tube.dimension, g_right - g_left, radii[0], radii[1])


def _lateral_integral(tube: TubeSet, a: float, b: float) -> float:
    n = tube.dimension
    base, drift = tube.profile.base, tube.drift
    radius = tube.profile.radius
    nodes, weights = sphere_rule(n)
    normal_factor = (n - 1) * unit_ball_volume(n - 1)

    def integrand(zs: np.ndarray) -> np.ndarray:
        radii = radius.from_measure(cell_values(base, a, b, zs))
        weight = (radii > 0.0).astype(float) if n == 2 else radii ** (n - 2)
        radial = cell_derivative(base, a, b, zs) / normal_factor
        shear = weight * cell_derivative(drift, a, b, zs)
        inner = np.sqrt(weight[:, None] ** 2 + (radial[:, None] + shear[:, None] * nodes[None, :]) ** 2)
        return inner @ weights

    return adaptive_gauss_legendre(integrand, a, b)


def _same_staircase(tube: TubeSet, a: float, b: float) -> bool:
    profile_piece = piece_on(tube.profile.base, a, b)
    drift_piece = piece_on(tube.drift, a, b)
    if profile_piece is None or drift_piece is None:
        return False
    return (
        profile_piece[1:] == drift_piece[1:]
        and profile_piece[0].reversed == drift_piece[0].reversed
    )


def _path_sum(tube: TubeSet, a: float, b: float, depth: int) -> float:
    zs = dyadic_points(a, b, depth)
    radii = tube.profile.radius.from_measure(cell_values(tube.profile.base, a, b, zs))
    centers = cell_values(tube.drift, a, b, zs)
    steps = symmetric_difference_measure(tube.dimension, np.diff(centers), radii[:-1], radii[1:])
    return float(np.sum(steps))


def disk_path_variation(
    tube: TubeSet,
    a: float,
    b: float,
    start_depth: Optional[int] = None,
    max_depth: Optional[int] = None,
    tolerance: Optional[float] = None
) -> float:
    """
    Variação do caminho z ↦ B(g(z)e, r(z)) em [a, b] na métrica H^{n-1}(D Δ D').

    Partições diádicas aninhadas com profundidade dobrada até a variação
    relativa ficar abaixo de tolerance (ou atingir max_depth).
    """
    depth = start_depth or settings.staircase_start_depth
    max_depth = max_depth or settings.staircase_max_depth
    tolerance = tolerance or settings.staircase_tolerance

    previous = _path_sum(tube, a, b, depth)
    while depth < max_depth:
        depth = min(2 * depth, max_depth)
        current = _path_sum(tube, a, b, depth)
        converged = abs(current - previous) <= tolerance * abs(current)
        previous = current
        if converged:
            break
    logger.debug("disk_path_variation", cell=(a, b), depth=depth, value=round(previous, 12))
    return previous


def _tube_cell(tube: TubeSet, a: float, b: float) -> Tuple[float, float]:
    drift_kind = cell_kind(tube.drift, a, b)
    if drift_kind == "constant":
        return _symmetral_cell(tube.profile, a, b)

    profile_kind = cell_kind(tube.profile.base, a, b)
    if drift_kind == "polynomial":
        if profile_kind == "cantor":
            raise UnsupportedTubeError(
                f"deriva a.c. sobre pedaço de Cantor do perfil em ({a:g}, {b:g})"
            )
        return _lateral_integral(tube, a, b), 0.0

    if profile_kind == "polynomial":
        raise UnsupportedTubeError(
            f"deriva de Cantor sobre pedaço a.c. do perfil em ({a:g}, {b:g})"
        )
    if profile_kind == "cantor" and not _same_staircase(tube, a, b):
        raise UnsupportedTubeError(
            f"perfil e deriva com escadas de Cantor distintas em ({a:g}, {b:g})"
        )
    lateral, _ = _symmetral_cell(tube.profile, a, b)
    return lateral, disk_path_variation(tube, a, b)


def perimeter_tube(tube: TubeSet, window: Optional[Interval] = None) -> PerimeterBreakdown:
    """
    P(E; B × R^{n-1}) para um conjunto tubular.

    Raises:
        UnsupportedTubeError: planos de salto não encaixados com n ≥ 4, deriva
            a.c. e de Cantor misturadas num pedaço, escadas distintas
    """
    window = _window(window)
    start_time = time.time()
    points = merged_breakpoints([tube.profile.base, tube.drift], window)

    ac_part = 0.0
    cantor_part = 0.0
    for a, b in cells(points):
        if piece_on(tube.profile.base, a, b) is None:
            continue
        lateral, cantor = _tube_cell(tube, a, b)
        ac_part += lateral
        cantor_part += cantor

    jump_part = sum(_jump_plane(tube, float(z)) for z in points if window.contains(z))

    breakdown = PerimeterBreakdown.from_parts(ac_part, jump_part, cantor_part, window)
    log_perimeter_result(
        logger, "tube", breakdown.total, breakdown.ac_part,
        breakdown.jump_part, breakdown.cantor_part, window=str(window)
    )
    log_performance_metric(logger, "perimeter_tube", int((time.time() - start_time) * 1000))
    return breakdown


def check_inequality(tube: TubeSet, window: Optional[Interval] = None) -> InequalityCheck:
    """Compara P(E) com P(F_ℓ); vale se P(F_ℓ) ≤ P(E) + 1e-9·(1 + P(F_ℓ))"""
    p_e = perimeter_tube(tube, window).total
    p_f = perimeter_symmetral(tube.profile, window).total
    holds = p_f <= p_e + INEQUALITY_TOLERANCE * (1.0 + p_f)
    return InequalityCheck(p_e=p_e, p_f=p_f, holds=holds, gap=p_e - p_f)


def classify_point(profile: Profile, point) -> str:
    """
    Classificação analítica de x = (z, w) relativamente a F_ℓ.

    |w| < r^∧(z) → 'interior' (densidade 1); |w| > r^∨(z) → 'exterior'
    (densidade 0); caso contrário 'boundary' (fronteira essencial).
    """
    point = np.asarray(point, dtype=float)
    if point.shape != (profile.dimension,):
        raise PreconditionError(f"ponto deve ter {profile.dimension} coordenadas")
    z = float(point[0])
    norm = float(np.linalg.norm(point[1:]))
    r_lower, r_upper = profile.radius.approx_limits(z)
    if norm < r_lower:
        return "interior"
    if norm > r_upper:
        return "exterior"
    if r_upper == 0.0 and not profile.support.contains(z):
        return "exterior"
    return "boundary"
