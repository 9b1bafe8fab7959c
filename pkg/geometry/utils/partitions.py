"""Células comuns a vários perfis e partições diádicas dentro delas"""
from typing import List, Optional, Sequence, Tuple

import numpy as np

from models import Interval
from profiles.bv_profile import BVFunction, CantorPiece, PolynomialPiece


def merged_breakpoints(functions: Sequence[BVFunction], window: Interval) -> np.ndarray:
    """Pontos de quebra de todas as funções dentro da janela, mais os extremos finitos dela"""
    points = set()
    for function in functions:
        points.update(z for z in function.breakpoints if window.lo <= z <= window.hi)
    for endpoint in (window.lo, window.hi):
        if np.isfinite(endpoint):
            points.add(endpoint)
    return np.array(sorted(points), dtype=float)


def cells(points: np.ndarray) -> List[Tuple[float, float]]:
    return [(float(a), float(b)) for a, b in zip(points[:-1], points[1:]) if b > a]


def piece_on(function: BVFunction, a: float, b: float) -> Optional[Tuple[object, float, float]]:
    """(pedaço, lo, hi) que contém a célula [a, b], ou None nas caudas"""
    for _, piece, lo, hi in function.iter_pieces():
        if lo <= a and b <= hi:
            return piece, lo, hi
    return None


def cell_values(function: BVFunction, a: float, b: float, zs: np.ndarray) -> np.ndarray:
    """
    Valores de f em pontos do fecho da célula [a, b].

    Usa a fórmula do pedaço, de modo que os extremos recebem os limites
    laterais de dentro da célula.
    """
    zs = np.asarray(zs, dtype=float)
    located = piece_on(function, a, b)
    if located is None:
        tail = function.tail_left if b <= function.breakpoints[0] else function.tail_right
        return np.full(zs.shape, tail)
    piece, lo, hi = located
    return piece.evaluate(zs, lo, hi)


def cell_derivative(function: BVFunction, a: float, b: float, zs: np.ndarray) -> np.ndarray:
    """Derivada a.c. de f dentro da célula"""
    zs = np.asarray(zs, dtype=float)
    located = piece_on(function, a, b)
    if located is None:
        return np.zeros(zs.shape)
    piece, lo, hi = located
    return piece.derivative(zs, lo, hi)


def cell_kind(function: BVFunction, a: float, b: float) -> str:
    """'constant', 'polynomial' ou 'cantor' para f restrita à célula"""
    located = piece_on(function, a, b)
    if located is None:
        return "constant"
    piece = located[0]
    if piece.is_constant:
        return "constant"
    if isinstance(piece, CantorPiece):
        return "cantor"
    if isinstance(piece, PolynomialPiece):
        return "polynomial"
    raise TypeError(f"pedaço desconhecido: {type(piece).__name__}")


def dyadic_points(a: float, b: float, depth: int) -> np.ndarray:
    """Partição uniforme de [a, b] com 2^depth subintervalos (aninhadas em depth)"""
    return np.linspace(a, b, 2 ** depth + 1)
