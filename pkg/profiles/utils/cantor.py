"""
Função de Cantor ternária: avaliação exata por dígitos, pré-imagens,
momentos e integrais de funções de c por auto-similaridade.

Relações usadas:
- c(x/3) = c(x)/2, c(2/3 + x/3) = 1/2 + c(x)/2, c = 1/2 em [1/3, 2/3]
- c(x) + c(1 - x) = 1
"""
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.special import comb

from config import settings

# Largura abaixo da qual a expansão ternária é interrompida
MIN_TERNARY_WIDTH = 1e-16

# Profundidade máxima da recursão em subintervalos parciais
MAX_PARTIAL_LEVELS = 40

# Busca de níveis diádicos próximos de raízes numéricas
DYADIC_SNAP_DEPTH = 20
DYADIC_SNAP_TOLERANCE = 1e-7

VectorFunction = Callable[[np.ndarray], np.ndarray]


def cantor_function(x: float, max_digits: Optional[int] = None) -> float:
    """
    Avalia c(x) pela expansão ternária de x.

    Para no primeiro dígito 1 (x cai num intervalo removido, onde c é
    constante) ou quando a largura restante fica abaixo de 1e-16 ou após
    max_digits dígitos.

    Args:
        x: Ponto de avaliação (c = 0 à esquerda de 0 e 1 à direita de 1)
        max_digits: Limite de dígitos (padrão: settings.cantor_digits)

    Returns:
        c(x)
    """
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0

    digits = max_digits or settings.cantor_digits
    value = 0.0
    weight = 0.5
    width = 1.0
    for _ in range(digits):
        x *= 3.0
        digit = int(x)
        x -= digit
        if digit == 1:
            return value + weight
        if digit >= 2:
            value += weight
        weight *= 0.5
        width /= 3.0
        if width < MIN_TERNARY_WIDTH:
            break
    return value


def cantor_array(xs, max_digits: Optional[int] = None) -> np.ndarray:
    """Versão vetorizada de cantor_function"""
    x = np.clip(np.asarray(xs, dtype=float), 0.0, 1.0).copy()
    out = np.where(x >= 1.0, 1.0, 0.0)
    active = (x > 0.0) & (x < 1.0)

    digits = max_digits or settings.cantor_digits
    weight = 0.5
    width = 1.0
    for _ in range(digits):
        if not active.any():
            break
        x = np.where(active, x * 3.0, x)
        digit = np.floor(x)
        x = np.where(active, x - digit, x)

        middle = active & (digit == 1.0)
        out[middle] += weight
        active &= ~middle

        upper = active & (digit >= 2.0)
        out[upper] += weight

        weight *= 0.5
        width /= 3.0
        if width < MIN_TERNARY_WIDTH:
            break
    return out


def nearest_dyadic(
    s: float,
    max_depth: int = DYADIC_SNAP_DEPTH,
    tolerance: float = DYADIC_SNAP_TOLERANCE
) -> Optional[float]:
    """
    Racional diádico k/2^m de menor m a distância ≤ tolerance de s.

    Raízes duplas de polinômios saem com erro da ordem de √eps; os níveis
    diádicos são os únicos cuja pré-imagem por c é um intervalo.
    """
    for depth in range(1, max_depth + 1):
        scale = 2.0 ** depth
        candidate = round(s * scale) / scale
        if abs(candidate - s) <= tolerance:
            return candidate
    return None


def cantor_preimage(s: float, max_digits: Optional[int] = None) -> Tuple[float, float]:
    """
    Conjunto {t ∈ [0,1] : c(t) = s}, como intervalo fechado (t_lo, t_hi).

    É um ponto exceto quando s é diádico em (0,1): nesse caso é o fecho do
    intervalo removido onde c vale s.
    """
    if s <= 0.0:
        return 0.0, 0.0
    if s >= 1.0:
        return 1.0, 1.0

    digits = max_digits or settings.cantor_digits
    base = 0.0
    width = 1.0
    for _ in range(digits):
        s *= 2.0
        if s == 1.0:
            return base + width / 3.0, base + 2.0 * width / 3.0
        if s > 1.0:
            base += 2.0 * width / 3.0
            s -= 1.0
        width /= 3.0
        if width < MIN_TERNARY_WIDTH:
            break
    return base, base


@lru_cache(maxsize=32)
def cantor_moments(max_order: int) -> Tuple[float, ...]:
    """
    Momentos m_k = ∫_0^1 c(t)^k dt para k = 0..max_order.

    Pela auto-similaridade:
        m_k (1 - 2^{1-k}/3) = (2^{-k}/3) (1 + Σ_{j<k} C(k,j) m_j)
    o que dá m_1 = 1/2 e m_2 = 3/10.
    """
    moments = [1.0]
    for k in range(1, max_order + 1):
        lower = sum(comb(k, j, exact=True) * moments[j] for j in range(k))
        factor = 2.0 ** (-k) / 3.0
        moments.append(factor * (1.0 + lower) / (1.0 - 2.0 * factor))
    return tuple(moments)


@lru_cache(maxsize=8)
def _expectation_rule(depth: int) -> Tuple[np.ndarray, np.ndarray]:
    # Intervalos removidos no nível m: 2^{m-1} de comprimento 3^{-m}, c = (2j-1)/2^m.
    # Os 2^depth intervalos remanescentes usam o ponto médio da sua faixa de valores.
    nodes = []
    weights = []
    for level in range(1, depth + 1):
        count = 2 ** (level - 1)
        nodes.append((2.0 * np.arange(1, count + 1) - 1.0) / 2.0 ** level)
        weights.append(np.full(count, 3.0 ** (-level)))
    leaves = 2 ** depth
    nodes.append((2.0 * np.arange(leaves) + 1.0) / 2.0 ** (depth + 1))
    weights.append(np.full(leaves, 3.0 ** (-depth)))

    node_array = np.concatenate(nodes)
    weight_array = np.concatenate(weights)
    node_array.setflags(write=False)
    weight_array.setflags(write=False)
    return node_array, weight_array


def cantor_expectation(phi: VectorFunction, depth: Optional[int] = None) -> float:
    """
    ∫_0^1 φ(c(t)) dt pela regra auto-similar de profundidade depth.

    Erro da ordem de 6^{-depth}·sup|φ''| para φ suave.

    Args:
        phi: Função vetorizada (recebe e devolve np.ndarray)
        depth: Profundidade (padrão: settings.cantor_depth)
    """
    nodes, weights = _expectation_rule(depth or settings.cantor_depth)
    return float(np.dot(weights, phi(nodes)))


def cantor_integral(
    phi: VectorFunction,
    t0: float,
    t1: float,
    depth: Optional[int] = None
) -> float:
    """
    ∫_{t0}^{t1} φ(c(t)) dt para 0 ≤ t0 ≤ t1 ≤ 1.

    Subintervalos inteiros de um terço usam cantor_expectation com φ
    reescalada; os parciais descem recursivamente nos terços.
    """
    t0 = max(0.0, t0)
    t1 = min(1.0, t1)
    if t1 <= t0:
        return 0.0
    depth = depth or settings.cantor_depth
    return _partial_integral(phi, t0, t1, 0.0, 1.0, depth, 0)


def _partial_integral(
    phi: VectorFunction,
    t0: float,
    t1: float,
    offset: float,
    factor: float,
    depth: int,
    level: int
) -> float:
    # ∫_{t0}^{t1} φ(offset + factor·c(t)) dt com [t0, t1] ⊂ [0, 1]
    if t0 <= 0.0 and t1 >= 1.0:
        return cantor_expectation(lambda s: phi(offset + factor * s), depth)
    if level >= MAX_PARTIAL_LEVELS:
        middle = np.array([cantor_function(0.5 * (t0 + t1))])
        return (t1 - t0) * float(phi(offset + factor * middle)[0])

    total = 0.0
    half = 0.5 * factor

    lo, hi = max(3.0 * t0, 0.0), min(3.0 * t1, 1.0)
    if lo < hi:
        total += _partial_integral(phi, lo, hi, offset, half, depth, level + 1) / 3.0

    lo, hi = max(t0, 1.0 / 3.0), min(t1, 2.0 / 3.0)
    if lo < hi:
        total += (hi - lo) * float(phi(np.array([offset + half]))[0])

    lo, hi = max(3.0 * t0 - 2.0, 0.0), min(3.0 * t1 - 2.0, 1.0)
    if lo < hi:
        total += _partial_integral(phi, lo, hi, offset + half, half, depth, level + 1) / 3.0

    return total
