"""Utilitários para polinômios em coeficientes ascendentes (numpy.polynomial)"""
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

MAX_DEGREE = 8

# Tolerâncias para aceitar raízes numéricas como reais
ROOT_IMAG_TOLERANCE = 1e-7
CRITICAL_IMAG_TOLERANCE = 1e-6
ROOT_RESIDUAL_TOLERANCE = 1e-10
ENDPOINT_SNAP_TOLERANCE = 1e-9


def trim(coefficients: Sequence[float]) -> np.ndarray:
    """Remove zeros à direita (grau efetivo), mantendo pelo menos um coeficiente"""
    coefficients = np.asarray(coefficients, dtype=float)
    nonzero = np.flatnonzero(coefficients)
    if nonzero.size == 0:
        return np.zeros(1)
    return coefficients[: nonzero[-1] + 1]


def is_constant(coefficients: Sequence[float]) -> bool:
    return len(trim(coefficients)) == 1


def evaluate(coefficients: Sequence[float], xs) -> np.ndarray:
    return P.polyval(np.asarray(xs, dtype=float), np.asarray(coefficients, dtype=float))


def _candidate_roots(coefficients: Sequence[float], imag_tolerance: float) -> List[float]:
    coefficients = trim(coefficients)
    if len(coefficients) == 1:
        return []
    roots = P.polyroots(coefficients)
    candidates = [
        float(root.real) for root in roots
        if abs(root.imag) <= imag_tolerance * (1.0 + abs(root.real))
    ]
    return sorted(candidates)


def _dedupe(values: List[float], tolerance: float = 1e-7) -> List[float]:
    result: List[float] = []
    for value in sorted(values):
        if not result or value - result[-1] > tolerance * (1.0 + abs(value)):
            result.append(value)
    return result


def real_roots(
    coefficients: Sequence[float],
    lo: float,
    hi: float,
    closed: bool = False
) -> List[float]:
    """
    Raízes reais de um polinômio dentro de um intervalo.

    Raízes duplas aparecem como pares quase complexos; são aceitas pela parte
    real quando o resíduo |P(x)| é desprezível em relação aos termos.

    Args:
        coefficients: Coeficientes ascendentes
        lo: Extremo inferior
        hi: Extremo superior
        closed: Se True, inclui raízes nos extremos

    Returns:
        Lista ordenada de raízes sem repetição
    """
    coefficients = trim(coefficients)
    found = []
    for root in _candidate_roots(coefficients, ROOT_IMAG_TOLERANCE):
        # Raízes a um erro de arredondamento de um extremo são o próprio extremo
        for endpoint in (lo, hi):
            if np.isfinite(endpoint) and abs(root - endpoint) <= ENDPOINT_SNAP_TOLERANCE * (1.0 + abs(endpoint)):
                root = float(endpoint)
        inside = lo <= root <= hi if closed else lo < root < hi
        if not inside:
            continue
        magnitude = float(np.sum(np.abs(coefficients) * np.abs(root) ** np.arange(len(coefficients))))
        if abs(float(P.polyval(root, coefficients))) <= ROOT_RESIDUAL_TOLERANCE * (1.0 + magnitude):
            found.append(root)
    if closed:
        for endpoint in (lo, hi):
            if np.isfinite(endpoint) and float(P.polyval(endpoint, coefficients)) == 0.0:
                found.append(float(endpoint))
    return _dedupe(found)


def critical_points(coefficients: Sequence[float], lo: float, hi: float) -> List[float]:
    """Pontos críticos (raízes de P') no interior de (lo, hi)"""
    derivative = P.polyder(trim(coefficients))
    inside = [x for x in _candidate_roots(derivative, CRITICAL_IMAG_TOLERANCE) if lo < x < hi]
    return _dedupe(inside)


def monotone_nodes(coefficients: Sequence[float], lo: float, hi: float) -> np.ndarray:
    """Partição de [lo, hi] em trechos onde o polinômio é monótono"""
    return np.array([lo] + critical_points(coefficients, lo, hi) + [hi], dtype=float)


def variation(
    coefficients: Sequence[float],
    lo: float,
    hi: float,
    transform: Optional[Callable[[np.ndarray], np.ndarray]] = None
) -> float:
    """
    Variação total de transform(P) em [lo, hi].

    O transform deve ser monótono (por exemplo x ↦ a + b·x^q com x ≥ 0),
    de modo que os extremos locais coincidam com os de P.
    """
    if hi <= lo:
        return 0.0
    nodes = monotone_nodes(coefficients, lo, hi)
    values = evaluate(coefficients, nodes)
    if transform is not None:
        values = transform(values)
    return float(np.sum(np.abs(np.diff(values))))


def extrema(
    coefficients: Sequence[float],
    lo: float,
    hi: float,
    transform: Optional[Callable[[np.ndarray], np.ndarray]] = None
) -> Tuple[float, float]:
    """Mínimo e máximo de transform(P) no intervalo fechado [lo, hi]"""
    nodes = monotone_nodes(coefficients, lo, hi)
    values = evaluate(coefficients, nodes)
    if transform is not None:
        values = transform(values)
    return float(np.min(values)), float(np.max(values))


def antiderivative_delta(coefficients: Sequence[float], lo: float, hi: float) -> float:
    """Integral exata de P em [lo, hi]"""
    primitive = P.polyint(np.asarray(coefficients, dtype=float))
    return float(P.polyval(hi, primitive) - P.polyval(lo, primitive))


def derivative(coefficients: Sequence[float]) -> np.ndarray:
    return P.polyder(np.asarray(coefficients, dtype=float))

