"""
Oráculo numérico: estimativas que não passam pelas fórmulas de fatias.

- perímetro por triangulação da fronteira lateral (n = 3) ou por
  comprimento de poligonais (n = 2), mais recorte planar dos discos nos
  planos de salto
- densidades H^n(E ∩ B_ρ(x)) / (ω_n ρ^n) por Monte Carlo
- limites aproximados f^∧, f^∨ por contagem de pontos numa grade
"""
import time
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from config import settings
from core.exceptions import PreconditionError, UnsupportedTubeError
from core.logging import get_logger, log_performance_metric
from geometry.symmetral import TubeSet, perimeter_tube
from geometry.utils.partitions import cell_values, cells, merged_breakpoints, piece_on
from models import DensityEstimate, Interval, OracleComparison
from oracle.utils.triangulation import (
    boundary_length,
    cosine_nodes,
    disk_difference_area,
    grid_area,
    revolution_mesh,
    segment_difference_length,
)
from profiles.bv_profile import BVFunction, Profile

logger = get_logger(__name__)

MIN_DENSITY_SAMPLES = 10_000
DEFAULT_DENSITY_RADII = (1e-2, 5e-3, 2.5e-3, 1.25e-3)

# Grade das estimativas de limites aproximados: pontos em (z - ρ, z + ρ)
APPROX_GRID_POINTS = 2000
APPROX_WINDOW_FACTOR = 1000.0
APPROX_DENSITY_THRESHOLD = 0.25
BISECTION_STEPS = 200


def _check_oracle_tube(tube: TubeSet) -> None:
    if tube.dimension not in (2, 3):
        raise UnsupportedTubeError(f"oráculo de perímetro só cobre n ∈ {{2, 3}}, recebeu n = {tube.dimension}")
    for function, name in ((tube.profile.base, "perfil"), (tube.drift, "deriva")):
        for _, piece, lo, hi in function.iter_pieces():
            if piece.has_cantor_part:
                raise UnsupportedTubeError(
                    f"{name} com pedaço de Cantor em ({lo:g}, {hi:g}); discretize antes de medir"
                )


def _lateral_area(tube: TubeSet, a: float, b: float, resolution: int) -> float:
    zs = cosine_nodes(a, b, resolution)
    radii = tube.profile.radius.from_measure(cell_values(tube.profile.base, a, b, zs))
    offsets = cell_values(tube.drift, a, b, zs)
    centers = offsets[:, None] * np.asarray(tube.direction)[None, :]
    return grid_area(revolution_mesh(zs, centers, radii, resolution))


def _lateral_length(tube: TubeSet, a: float, b: float, resolution: int) -> float:
    zs = cosine_nodes(a, b, resolution)
    radii = tube.profile.radius.from_measure(cell_values(tube.profile.base, a, b, zs))
    centers = cell_values(tube.drift, a, b, zs) * tube.direction[0]
    return boundary_length(zs, centers, radii)


def _jump_plane(tube: TubeSet, z: float, vertices: int) -> float:
    if tube.profile.base.is_continuous_at(z) and tube.drift.is_continuous_at(z):
        return 0.0
    left, right = tube.profile.base.one_sided_limits(z)
    g_left, g_right = tube.drift.one_sided_limits(z)
    r_left, r_right = tube.profile.radius.from_measure([left, right])
    direction = np.asarray(tube.direction)
    if tube.dimension == 2:
        return segment_difference_length(g_left * direction[0], r_left, g_right * direction[0], r_right)
    return disk_difference_area(g_left * direction, r_left, g_right * direction, r_right, vertices)


def oracle_perimeter(
    tube: TubeSet,
    resolution: Optional[int] = None,
    disk_vertices: Optional[int] = None
) -> float:
    """
    Perímetro de um tubo sem pedaços de Cantor, medido geometricamente.

    Args:
        tube: conjunto tubular com n ∈ {2, 3}
        resolution: subdivisões em z (nós cossenoidais) e em θ por célula
        disk_vertices: vértices dos polígonos que aproximam os discos de salto

    Raises:
        UnsupportedTubeError: pedaço de Cantor presente ou n ∉ {2, 3}
    """
    resolution = resolution or settings.oracle_resolution
    disk_vertices = disk_vertices or settings.oracle_disk_vertices
    if resolution < 2:
        raise PreconditionError(f"resolution deve ser ≥ 2, recebeu {resolution}")
    _check_oracle_tube(tube)

    start_time = time.time()
    points = merged_breakpoints([tube.profile.base, tube.drift], Interval.real_line())
    lateral = 0.0
    for a, b in cells(points):
        if piece_on(tube.profile.base, a, b) is None:
            continue
        if tube.dimension == 3:
            lateral += _lateral_area(tube, a, b, resolution)
        else:
            lateral += _lateral_length(tube, a, b, resolution)

    planes = sum(_jump_plane(tube, float(z), disk_vertices) for z in points)
    total = lateral + planes

    logger.info(
        "oracle_perimeter",
        dimension=tube.dimension,
        resolution=resolution,
        lateral=round(lateral, 12),
        planes=round(planes, 12),
        total=round(total, 12)
    )
    log_performance_metric(logger, "oracle_perimeter", int((time.time() - start_time) * 1000))
    return total


def compare_perimeter(tube: TubeSet, resolution: Optional[int] = None) -> OracleComparison:
    """Perímetro analítico (perimeter_tube) contra o oráculo de triangulação"""
    resolution = resolution or settings.oracle_resolution
    analytic = perimeter_tube(tube).total
    oracle = oracle_perimeter(tube, resolution)
    relative_error = abs(oracle - analytic) / max(1.0, abs(analytic))
    return OracleComparison(
        analytic=analytic,
        oracle=oracle,
        relative_error=relative_error,
        resolution=resolution
    )


def _uniform_ball(rng: np.random.Generator, center: np.ndarray, radius: float, count: int) -> np.ndarray:
    """count pontos uniformes na bola B(center, radius) de R^n"""
    n = center.shape[0]
    directions = rng.standard_normal((count, n))
    directions /= np.linalg.norm(directions, axis=1)[:, None]
    lengths = radius * rng.random(count) ** (1.0 / n)
    return center[None, :] + lengths[:, None] * directions


def oracle_density(
    tube: TubeSet,
    x: Sequence[float],
    radii: Optional[Sequence[float]] = None,
    samples: Optional[int] = None,
    seed: Optional[int] = None
) -> DensityEstimate:
    """
    Estimativa Monte Carlo de H^n(E ∩ B_ρ(x)) / (ω_n ρ^n) em cada raio.

    Cada raio usa um subfluxo Philox independente derivado da semente
    (SeedSequence.spawn); o resultado é o mínimo/máximo sobre os três
    menores raios.

    Raises:
        PreconditionError: raios não positivos ou não decrescentes,
            samples < 10⁴, ponto de dimensão errada
    """
    radii = tuple(float(r) for r in (radii or DEFAULT_DENSITY_RADII))
    samples = samples or settings.density_samples
    seed = settings.default_seed if seed is None else int(seed)

    center = np.asarray(x, dtype=float)
    if center.shape != (tube.dimension,):
        raise PreconditionError(f"ponto deve ter {tube.dimension} coordenadas")
    if not radii or any(r <= 0.0 for r in radii):
        raise PreconditionError("raios devem ser positivos")
    if any(b >= a for a, b in zip(radii, radii[1:])):
        raise PreconditionError("raios devem ser estritamente decrescentes")
    if samples < MIN_DENSITY_SAMPLES:
        raise PreconditionError(f"samples deve ser ≥ {MIN_DENSITY_SAMPLES}, recebeu {samples}")

    streams = np.random.SeedSequence(seed).spawn(len(radii))
    thetas = []
    for radius, stream in zip(radii, streams):
        rng = np.random.Generator(np.random.Philox(stream))
        points = _uniform_ball(rng, center, radius, samples)
        thetas.append(float(np.count_nonzero(tube.contains(points))) / samples)

    smallest = thetas[-3:]
    estimate = DensityEstimate(
        theta_lower=min(smallest),
        theta_upper=max(smallest),
        radii_used=radii,
        thetas=tuple(thetas),
        samples_per_radius=samples,
        seed=seed
    )
    logger.debug(
        "oracle_density",
        point=[round(float(c), 12) for c in center],
        theta_lower=estimate.theta_lower,
        theta_upper=estimate.theta_upper,
        seed=seed
    )
    return estimate


def _fraction(values: np.ndarray, mask_fn) -> float:
    return float(np.count_nonzero(mask_fn(values))) / values.size


def oracle_approx_limits(f: Union[BVFunction, Profile], z: float, mesh: float = 1e-7) -> Tuple[float, float]:
    """
    Estimativa de (f^∧(z), f^∨(z)) por contagem em (z - ρ, z + ρ), ρ = 1000·mesh.

    f^∨ é o menor s com fração de {f > s} abaixo de 1/4 e f^∧ o maior s com
    fração de {f < s} abaixo de 1/4; ambos por bissecção em s.

    Raises:
        PreconditionError: mesh ≤ 0
    """
    if not mesh > 0.0:
        raise PreconditionError(f"mesh deve ser positivo, recebeu {mesh}")
    rho = APPROX_WINDOW_FACTOR * mesh
    step = 2.0 * rho / APPROX_GRID_POINTS
    zs = z - rho + (np.arange(APPROX_GRID_POINTS) + 0.5) * step
    values = f.evaluate(zs)
    v_min, v_max = float(values.min()), float(values.max())

    def above(s: float) -> float:
        return _fraction(values, lambda v: v > s)

    def below(s: float) -> float:
        return _fraction(values, lambda v: v < s)

    if above(v_min) < APPROX_DENSITY_THRESHOLD:
        upper = v_min
    else:
        lo, hi = v_min, v_max
        for _ in range(BISECTION_STEPS):
            mid = 0.5 * (lo + hi)
            if mid in (lo, hi):
                break
            if above(mid) < APPROX_DENSITY_THRESHOLD:
                hi = mid
            else:
                lo = mid
        upper = hi

    if below(v_max) < APPROX_DENSITY_THRESHOLD:
        lower = v_max
    else:
        lo, hi = v_min, v_max
        for _ in range(BISECTION_STEPS):
            mid = 0.5 * (lo + hi)
            if mid in (lo, hi):
                break
            if below(mid) < APPROX_DENSITY_THRESHOLD:
                lo = mid
            else:
                hi = mid
        lower = lo

    return lower, upper
