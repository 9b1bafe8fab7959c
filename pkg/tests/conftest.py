"""Fixtures compartilhadas: perfis de referência com valores fechados"""
import math

import pytest

from config import settings
from core.logging import configure_logging
from profiles.bv_profile import BVFunction, CantorPiece, PolynomialPiece, Profile


def pytest_configure(config):
    configure_logging(log_level="WARNING", json_logs=False, include_timestamp=settings.log_include_timestamp)


def ball_profile() -> Profile:
    """Bola unitária de R³: ℓ = π(1 - z²) em [-1, 1]; P = 4π"""
    return Profile(
        base=BVFunction(breakpoints=(-1.0, 1.0), pieces=(PolynomialPiece(coefficients=(math.pi, 0.0, -math.pi)),)),
        dimension=3
    )


def cylinder_profile() -> Profile:
    """Cilindro de raio 1 e altura 2: P = 6π"""
    return Profile(base=BVFunction.constant(math.pi, 0.0, 2.0), dimension=3)


def square_profile() -> Profile:
    """Quadrado unitário de R²: ℓ = 1 em [0, 1]; P = 4"""
    return Profile(base=BVFunction.constant(1.0, 0.0, 1.0), dimension=2)


def step_profile() -> Profile:
    """ℓ = π em [0, 1), 4π em [1, 2]; P = 14π (a.c. 6π, saltos 8π)"""
    return Profile(base=BVFunction.step((0.0, 1.0, 2.0), (math.pi, 4.0 * math.pi)), dimension=3)


def two_component_profile() -> Profile:
    """Dois cilindros unitários em [0, 1] e [2, 3]; P = 8π"""
    return Profile(
        base=BVFunction.step((0.0, 1.0, 2.0, 3.0), (math.pi, 0.0, math.pi)),
        dimension=3
    )


def cantor_profile() -> Profile:
    """ℓ = π(1 + c(z))² em [0, 1]; P = 11π, P(·; (0,1)) = 6π, volume 2.3π"""
    return Profile(
        base=BVFunction(
            breakpoints=(0.0, 1.0),
            pieces=(CantorPiece(coefficients=(1.0, 2.0, 1.0), scale=math.pi),)
        ),
        dimension=3
    )


@pytest.fixture
def ball():
    return ball_profile()


@pytest.fixture
def cylinder():
    return cylinder_profile()


@pytest.fixture
def square():
    return square_profile()


@pytest.fixture
def step():
    return step_profile()


@pytest.fixture
def two_component():
    return two_component_profile()


@pytest.fixture
def cantor():
    return cantor_profile()
