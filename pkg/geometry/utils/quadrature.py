"""Quadraturas: Gauss-Legendre adaptativa e regras sobre a esfera S^{n-2}"""
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.special import roots_jacobi

from config import settings
from profiles.bv_profile import unit_ball_volume

VectorFunction = Callable[[np.ndarray], np.ndarray]


@lru_cache(maxsize=16)
def gauss_legendre_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Nós e pesos de Gauss-Legendre em [-1, 1]"""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _panel(func: VectorFunction, a: float, b: float, order: int) -> float:
    nodes, weights = gauss_legendre_rule(order)
    half = 0.5 * (b - a)
    middle = 0.5 * (a + b)
    return half * float(np.dot(weights, func(middle + half * nodes)))


def adaptive_gauss_legendre(
    func: VectorFunction,
    a: float,
    b: float,
    tolerance: Optional[float] = None,
    order: Optional[int] = None,
    max_depth: Optional[int] = None
) -> float:
    """
    ∫_a^b func por Gauss-Legendre adaptativo.

    Cada painel é comparado com a soma das suas duas metades; a tolerância
    (absoluta + relativa) é dividida ao meio a cada bisseção. A soma segue a
    ordem esquerda → direita, de modo que o resultado é determinístico.

    Args:
        func: Integrando vetorizado
        a: Extremo inferior
        b: Extremo superior
        tolerance: Tolerância (padrão: settings.quadrature_tolerance)
        order: Nós por painel (padrão: settings.quadrature_order)
        max_depth: Máximo de bisseções (padrão: settings.quadrature_max_depth)

    Returns:
        Valor da integral
    """
    if b <= a:
        return 0.0
    tolerance = tolerance or settings.quadrature_tolerance
    order = order or settings.quadrature_order
    max_depth = max_depth or settings.quadrature_max_depth

    whole = _panel(func, a, b, order)
    return _refine(func, a, b, whole, tolerance * (1.0 + abs(whole)), order, max_depth)


def _refine(
    func: VectorFunction,
    a: float,
    b: float,
    whole: float,
    tolerance: float,
    order: int,
    depth: int
) -> float:
    middle = 0.5 * (a + b)
    left = _panel(func, a, middle, order)
    right = _panel(func, middle, b, order)
    if depth <= 0 or abs(left + right - whole) <= tolerance:
        return left + right
    return (
        _refine(func, a, middle, left, 0.5 * tolerance, order, depth - 1)
        + _refine(func, middle, b, right, 0.5 * tolerance, order, depth - 1)
    )


@lru_cache(maxsize=32)
def sphere_rule(
    n: int,
    theta_nodes: Optional[int] = None,
    sphere_nodes: Optional[int] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Regra para ∫_{S^{n-2}} F(⟨u, e⟩) dH^{n-2}(u).

    - n = 2: S^0 = {±1}, soma dos dois termos
    - n = 3: trapézio periódico em θ, com ⟨u, e⟩ = cos θ
    - n ≥ 4: (n-2)·ω_{n-2} ∫_{-1}^{1} F(t) (1-t²)^{(n-4)/2} dt por Gauss-Jacobi

    Returns:
        (valores de ⟨u, e⟩, pesos)
    """
    if n == 2:
        nodes, weights = np.array([1.0, -1.0]), np.array([1.0, 1.0])
    elif n == 3:
        count = theta_nodes or settings.theta_nodes
        theta = 2.0 * np.pi * np.arange(count) / count
        nodes, weights = np.cos(theta), np.full(count, 2.0 * np.pi / count)
    else:
        count = sphere_nodes or settings.sphere_nodes
        alpha = (n - 4) / 2.0
        nodes, weights = roots_jacobi(count, alpha, alpha)
        weights = weights * (n - 2) * unit_ball_volume(n - 2)
    nodes = np.asarray(nodes, dtype=float)
    weights = np.asarray(weights, dtype=float)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def sphere_measure(n: int) -> float:
    """H^{n-2}(S^{n-2}) = (n-1)·ω_{n-1}"""
    return (n - 1) * unit_ball_volume(n - 1)
