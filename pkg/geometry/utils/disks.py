"""Medidas de interseção e diferença simétrica de bolas (n-1)-dimensionais"""
import numpy as np

from core.exceptions import UnsupportedTubeError
from profiles.bv_profile import unit_ball_volume

# Folga relativa ao decidir se duas bolas estão encaixadas
NESTING_TOLERANCE = 1e-12


def ball_measure(n: int, radius):
    """H^{n-1}(B^{n-1}(0, radius)) = ω_{n-1}·radius^{n-1}"""
    return unit_ball_volume(n - 1) * np.maximum(radius, 0.0) ** (n - 1)


def is_nested(distance, r1, r2):
    """Uma das bolas contém a outra"""
    slack = NESTING_TOLERANCE * (1.0 + np.maximum(r1, r2))
    return np.abs(distance) + np.minimum(r1, r2) <= np.maximum(r1, r2) + slack


def lens_area(r1, r2, distance):
    """
    Área da interseção de dois discos com centros a distância distance.

    Supõe r1 ≥ r2 e r1 - r2 ≤ distance ≤ r1 + r2 (discos que se cortam).
    """
    d1 = (r1 ** 2 - r2 ** 2 + distance ** 2) / (2.0 * distance)
    d2 = distance - d1

    a = np.maximum(np.minimum(d1 / r1, 1.0), -1.0)
    b = np.maximum(r1 ** 2 - d1 ** 2, 0.0)
    area1 = r1 ** 2 * np.arccos(a) - d1 * np.sqrt(b)

    a = np.maximum(np.minimum(d2 / r2, 1.0), -1.0)
    b = np.maximum(r2 ** 2 - d2 ** 2, 0.0)
    area2 = r2 ** 2 * np.arccos(a) - d2 * np.sqrt(b)

    return area1 + area2


def overlap_measure(n: int, distance, r1, r2) -> np.ndarray:
    """
    H^{n-1}(B(c1, r1) ∩ B(c2, r2)) com |c1 - c2| = distance (vetorizado).

    Exato para n = 2 (intervalos) e n = 3 (lente); para n ≥ 4 apenas bolas
    encaixadas ou disjuntas.

    Raises:
        UnsupportedTubeError: bolas que se cortam com n ≥ 4
    """
    distance = np.abs(np.asarray(distance, dtype=float))
    r1 = np.maximum(np.asarray(r1, dtype=float), 0.0)
    r2 = np.maximum(np.asarray(r2, dtype=float), 0.0)
    distance, r1, r2 = np.broadcast_arrays(distance, r1, r2)
    big = np.maximum(r1, r2)
    small = np.minimum(r1, r2)

    out = np.zeros(distance.shape)
    empty = (small == 0.0) | (distance >= r1 + r2)
    nested = ~empty & is_nested(distance, r1, r2)
    out[nested] = ball_measure(n, small[nested])

    crossing = ~empty & ~nested
    if not crossing.any():
        return out
    if n == 2:
        out[crossing] = (
            np.minimum(distance + small, big) - np.maximum(distance - small, -big)
        )[crossing]
    elif n == 3:
        out[crossing] = lens_area(big[crossing], small[crossing], distance[crossing])
    else:
        raise UnsupportedTubeError(
            f"bolas não encaixadas em dimensão n={n} "
            f"(distância {float(distance[crossing][0]):g})"
        )
    return out


def symmetric_difference_measure(n: int, distance, r1, r2):
    """H^{n-1}(B(c1, r1) Δ B(c2, r2)); igual a |ℓ₁ - ℓ₂| quando encaixadas"""
    overlap = overlap_measure(n, distance, r1, r2)
    result = np.maximum(ball_measure(n, r1) + ball_measure(n, r2) - 2.0 * overlap, 0.0)
    if np.ndim(result) == 0:
        return float(result)
    return result
