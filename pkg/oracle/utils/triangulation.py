"""Malhas da fronteira lateral e recorte planar de discos discretizados"""
import math

import numpy as np
from shapely.geometry import LineString, Point, Polygon


def cosine_nodes(a: float, b: float, count: int) -> np.ndarray:
    """
    count + 1 nós em [a, b] adensados nos extremos (z = a + (b - a)(1 - cos πt)/2).

    Nos polos de um perfil como ℓ = π(1 - z²) o raio tem derivada infinita;
    com esses nós a malha acompanha a latitude.
    """
    t = np.arange(count + 1) / count
    nodes = a + 0.5 * (b - a) * (1.0 - np.cos(math.pi * t))
    nodes[0], nodes[-1] = a, b
    return nodes


def revolution_mesh(zs: np.ndarray, centers: np.ndarray, radii: np.ndarray, segments: int) -> np.ndarray:
    """
    Vértices da superfície (z, c(z) + r(z)u(θ)) numa grade z × θ.

    Args:
        zs: alturas, shape (N,)
        centers: centros dos discos em R², shape (N, 2)
        radii: raios, shape (N,)
        segments: subdivisões em θ (a última coluna repete a primeira)

    Returns:
        Array (N, segments + 1, 3)
    """
    thetas = np.linspace(0.0, 2.0 * math.pi, segments + 1)
    circle = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)
    vertices = np.empty((len(zs), segments + 1, 3))
    vertices[:, :, 0] = zs[:, None]
    vertices[:, :, 1:] = centers[:, None, :] + radii[:, None, None] * circle[None, :, :]
    return vertices


def grid_area(vertices: np.ndarray) -> float:
    """Soma das áreas dos dois triângulos de cada quadrilátero da grade"""
    p00 = vertices[:-1, :-1]
    p10 = vertices[1:, :-1]
    p11 = vertices[1:, 1:]
    p01 = vertices[:-1, 1:]

    # Produto vetorial das arestas de cada face
    first = np.cross(p10 - p00, p11 - p00)
    second = np.cross(p11 - p00, p01 - p00)
    area = 0.5 * np.sum(np.linalg.norm(first, axis=-1)) + 0.5 * np.sum(np.linalg.norm(second, axis=-1))
    return float(area)


def boundary_length(zs: np.ndarray, centers: np.ndarray, radii: np.ndarray) -> float:
    """
    Comprimento das curvas c ± r no plano (z, w), para n = 2.

    Trechos com r = 0 nos dois extremos não têm fronteira (as duas curvas
    coincidem sobre um conjunto de medida nula) e são descartados.
    """
    dz = np.diff(zs)
    upper = np.hypot(dz, np.diff(centers + radii))
    lower = np.hypot(dz, np.diff(centers - radii))
    present = (radii[:-1] > 0.0) | (radii[1:] > 0.0)
    return float(np.sum((upper + lower)[present]))


def disk_polygon(center, radius: float, vertices: int) -> Polygon:
    """Disco como polígono regular inscrito com ~vertices vértices (vazio se radius ≤ 0)"""
    if radius <= 0.0:
        return Polygon()
    return Point(float(center[0]), float(center[1])).buffer(radius, quad_segs=max(1, vertices // 4))


def disk_difference_area(c1, r1: float, c2, r2: float, vertices: int) -> float:
    """Área de D1 Δ D2 por recorte de polígonos"""
    first = disk_polygon(c1, r1, vertices)
    second = disk_polygon(c2, r2, vertices)
    return float(first.symmetric_difference(second).area)


def _segment(center: float, radius: float) -> LineString:
    if radius <= 0.0:
        return LineString()
    return LineString([(center - radius, 0.0), (center + radius, 0.0)])


def segment_difference_length(c1: float, r1: float, c2: float, r2: float) -> float:
    """Comprimento de I1 Δ I2 para os intervalos (c - r, c + r) da reta"""
    return float(_segment(c1, r1).symmetric_difference(_segment(c2, r2)).length)
