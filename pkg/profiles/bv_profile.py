"""
Representação exata e cálculo de funções BV unidimensionais.

Uma BVFunction é definida por pontos de quebra z_0 < ... < z_M, um pedaço por
intervalo aberto (z_i, z_{i+1}) e caudas constantes fora do suporte:

- PolynomialPiece: polinômio em z (coeficientes ascendentes, grau ≤ 8)
- CantorPiece: shift + scale·P(s)^q com s = c(t) (ou 1 - c(t)), t a posição
  normalizada dentro do pedaço e c a função de Cantor ternária

Convenção de avaliação nos pontos de quebra: limite à direita.
"""
import math
from functools import cached_property
from typing import Annotated, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.special import gamma

from config import settings
from core.exceptions import PreconditionError
from core.logging import get_logger
from models import CantorAtom, Interval, JumpAtom
from profiles.utils import polynomials
from profiles.utils.cantor import (
    cantor_array,
    cantor_integral,
    cantor_moments,
    cantor_preimage,
    nearest_dyadic,
)

logger = get_logger(__name__)


def unit_ball_volume(m: int) -> float:
    """ω_m = π^{m/2} / Γ(m/2 + 1); ω_1 = 2, ω_2 = π, ω_3 = 4π/3"""
    if m < 0:
        raise PreconditionError(f"dimensão negativa: {m}")
    return float(math.pi ** (m / 2.0) / gamma(m / 2.0 + 1.0))


def _check_coefficients(value: Tuple[float, ...]) -> Tuple[float, ...]:
    if len(value) > polynomials.MAX_DEGREE + 1:
        raise ValueError(f"grau máximo é {polynomials.MAX_DEGREE}")
    if not all(math.isfinite(c) for c in value):
        raise ValueError("coeficientes devem ser finitos")
    return value


class PolynomialPiece(BaseModel):
    """Pedaço polinomial P(z), em coordenada absoluta z"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["polynomial"] = "polynomial"
    coefficients: Tuple[float, ...] = Field(..., min_length=1, description="Coeficientes ascendentes")

    @field_validator("coefficients")
    @classmethod
    def _validate_coefficients(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        return _check_coefficients(value)

    @classmethod
    def constant(cls, value: float) -> "PolynomialPiece":
        return cls(coefficients=(float(value),))

    @property
    def is_constant(self) -> bool:
        return polynomials.is_constant(self.coefficients)

    @property
    def has_cantor_part(self) -> bool:
        return False

    def evaluate(self, zs: np.ndarray, lo: float, hi: float) -> np.ndarray:
        return polynomials.evaluate(self.coefficients, zs)

    def derivative(self, zs: np.ndarray, lo: float, hi: float) -> np.ndarray:
        return polynomials.evaluate(polynomials.derivative(self.coefficients), zs)

    def end_values(self, lo: float, hi: float) -> Tuple[float, float]:
        """(limite à direita em lo, limite à esquerda em hi)"""
        values = polynomials.evaluate(self.coefficients, [lo, hi])
        return float(values[0]), float(values[1])

    def variation(self, p: float, q: float, lo: float, hi: float) -> float:
        return polynomials.variation(self.coefficients, p, q)

    def singular_variation(self, p: float, q: float, lo: float, hi: float) -> float:
        return 0.0

    def extrema(self, p: float, q: float, lo: float, hi: float) -> Tuple[float, float]:
        return polynomials.extrema(self.coefficients, p, q)

    def integral(self, p: float, q: float, lo: float, hi: float) -> float:
        return polynomials.antiderivative_delta(self.coefficients, p, q)

    def zero_set(self, lo: float, hi: float) -> List[Tuple[float, float]]:
        """Componentes do conjunto de zeros em (lo, hi), como intervalos fechados"""
        if not np.any(self.coefficients):
            return [(lo, hi)]
        return [(root, root) for root in polynomials.real_roots(self.coefficients, lo, hi)]

    def scaled(self, factor: float) -> "PolynomialPiece":
        return PolynomialPiece(coefficients=tuple(factor * c for c in self.coefficients))

    def shifted(self, constant: float) -> "PolynomialPiece":
        coefficients = list(self.coefficients)
        coefficients[0] += constant
        return PolynomialPiece(coefficients=tuple(coefficients))

    def reflected(self) -> "PolynomialPiece":
        return PolynomialPiece(coefficients=tuple(
            c if k % 2 == 0 else -c for k, c in enumerate(self.coefficients)
        ))

    def rescaled_domain(self, s: float) -> "PolynomialPiece":
        """Pedaço de z ↦ P(z/s)"""
        return PolynomialPiece(coefficients=tuple(c / s ** k for k, c in enumerate(self.coefficients)))


class CantorPiece(BaseModel):
    """
    Pedaço de Cantor: shift + scale·P(s)^q, s = c(t) ou 1 - c(t).

    Com P(s) = s e q = 1 é a escada afim base + amplitude·c(t). Para q ≠ 1,
    P deve ser não negativo em [0, 1].
    """
    model_config = ConfigDict(frozen=True)

    kind: Literal["cantor"] = "cantor"
    coefficients: Tuple[float, ...] = Field(default=(0.0, 1.0), min_length=1)
    exponent: float = Field(default=1.0, gt=0.0)
    scale: float = 1.0
    shift: float = 0.0
    reversed: bool = False

    @field_validator("coefficients")
    @classmethod
    def _validate_coefficients(cls, value: Tuple[float, ...]) -> Tuple[float, ...]:
        return _check_coefficients(value)

    @model_validator(mode="after")
    def _check_power_domain(self) -> "CantorPiece":
        if self.exponent != 1.0:
            low, _ = polynomials.extrema(self.coefficients, 0.0, 1.0)
            bound = 1e-12 * (1.0 + max(abs(c) for c in self.coefficients))
            if low < -bound:
                raise ValueError("P(s) deve ser não negativo em [0,1] quando exponent != 1")
        return self

    @classmethod
    def affine(cls, base: float, amplitude: float, reversed: bool = False) -> "CantorPiece":
        """Escada afim base + amplitude·c(t) (ou com c refletida)"""
        return cls(coefficients=(0.0, 1.0), scale=amplitude, shift=base, reversed=reversed)

    @property
    def is_constant(self) -> bool:
        return self.scale == 0.0 or polynomials.is_constant(self.coefficients)

    @property
    def has_cantor_part(self) -> bool:
        return not self.is_constant

    def outer(self, s) -> np.ndarray:
        """h(s) = shift + scale·P(s)^q"""
        values = polynomials.evaluate(self.coefficients, s)
        return self._transform(values)

    def _transform(self, values: np.ndarray) -> np.ndarray:
        if self.exponent != 1.0:
            values = np.maximum(values, 0.0) ** self.exponent
        return self.shift + self.scale * values

    def staircase(self, zs: np.ndarray, lo: float, hi: float) -> np.ndarray:
        """Valor s da escada nos pontos zs"""
        t = (np.asarray(zs, dtype=float) - lo) / (hi - lo)
        s = cantor_array(t)
        return 1.0 - s if self.reversed else s

    def _s_range(self, p: float, q: float, lo: float, hi: float) -> Tuple[float, float]:
        s_p, s_q = self.staircase(np.array([p, q]), lo, hi)
        return float(min(s_p, s_q)), float(max(s_p, s_q))

    def evaluate(self, zs: np.ndarray, lo: float, hi: float) -> np.ndarray:
        return self.outer(self.staircase(zs, lo, hi))

    def derivative(self, zs: np.ndarray, lo: float, hi: float) -> np.ndarray:
        return np.zeros_like(np.asarray(zs, dtype=float))

    def end_values(self, lo: float, hi: float) -> Tuple[float, float]:
        start, end = self.outer(np.array([0.0, 1.0]))
        if self.reversed:
            start, end = end, start
        return float(start), float(end)

    def variation(self, p: float, q: float, lo: float, hi: float) -> float:
        if self.is_constant:
            return 0.0
        s_lo, s_hi = self._s_range(p, q, lo, hi)
        return polynomials.variation(self.coefficients, s_lo, s_hi, self._transform)

    def singular_variation(self, p: float, q: float, lo: float, hi: float) -> float:
        return self.variation(p, q, lo, hi)

    def signed_mass(self, p: float, q: float, lo: float, hi: float) -> float:
        """f(q⁻) - f(p⁺) restrito ao pedaço"""
        values = self.evaluate(np.array([p, q]), lo, hi)
        return float(values[1] - values[0])

    def extrema(self, p: float, q: float, lo: float, hi: float) -> Tuple[float, float]:
        s_lo, s_hi = self._s_range(p, q, lo, hi)
        return polynomials.extrema(self.coefficients, s_lo, s_hi, self._transform)

    def integral(self, p: float, q: float, lo: float, hi: float) -> float:
        width = hi - lo
        if p <= lo and q >= hi and self.exponent == 1.0:
            moments = cantor_moments(len(self.coefficients) - 1)
            mean = sum(a * m for a, m in zip(self.coefficients, moments))
            return width * (self.shift + self.scale * mean)
        return self.integral_of(lambda values: values, p, q, lo, hi)

    def integral_of(self, transform, p: float, q: float, lo: float, hi: float) -> float:
        """∫_p^q transform(f(z)) dz com transform vetorizada"""
        width = hi - lo
        t0, t1 = (p - lo) / width, (q - lo) / width

        def phi(s: np.ndarray) -> np.ndarray:
            return transform(self.outer(1.0 - s if self.reversed else s))

        return width * cantor_integral(phi, t0, t1)

    def _zero_levels(self) -> Optional[List[float]]:
        # Valores de s em [0,1] com h(s) = 0; None quando h ≡ 0
        if self.scale == 0.0:
            return None if self.shift == 0.0 else []
        target = -self.shift / self.scale
        if self.exponent != 1.0:
            if target < 0.0:
                return []
            target = target ** (1.0 / self.exponent)
        shifted = list(self.coefficients)
        shifted[0] -= target
        if not np.any(shifted):
            return None
        # Raiz a √eps de um diádico onde o polinômio se anula é o próprio diádico
        residual = settings.jump_tolerance * (1.0 + float(np.sum(np.abs(shifted))))
        levels = []
        for root in polynomials.real_roots(shifted, 0.0, 1.0, closed=True):
            dyadic = nearest_dyadic(root)
            if dyadic is not None and abs(float(polynomials.evaluate(shifted, dyadic))) <= residual:
                root = dyadic
            levels.append(root)
        return sorted(set(levels))

    def zero_set(self, lo: float, hi: float) -> List[Tuple[float, float]]:
        """Componentes do conjunto de zeros em [lo, hi] via pré-imagens de c"""
        levels = self._zero_levels()
        if levels is None:
            return [(lo, hi)]
        width = hi - lo
        components = []
        for level in levels:
            t_lo, t_hi = cantor_preimage(1.0 - level if self.reversed else level)
            components.append((lo + t_lo * width, lo + t_hi * width))
        return components

    def power_form(self) -> Tuple[Tuple[float, ...], float]:
        """
        Reescreve o valor como factor·P̃(s)^q com P̃ ≥ 0 e factor ≥ 0.

        Returns:
            (coeficientes de P̃, factor)

        Raises:
            PreconditionError: shift não nulo com exponent != 1
        """
        if self.shift == 0.0:
            if self.scale >= 0.0:
                return self.coefficients, self.scale
            if self.exponent == 1.0:
                return tuple(-c for c in self.coefficients), -self.scale
            raise PreconditionError("pedaço de Cantor negativo não admite forma de potência")
        if self.exponent != 1.0:
            raise PreconditionError("pedaço de Cantor com shift e expoente não admite forma de potência")
        if self.scale == 0.0:
            return (abs(self.shift),), 1.0 if self.shift > 0 else -1.0
        folded = list(self.coefficients)
        folded[0] += self.shift / self.scale
        sign = 1.0 if self.scale > 0 else -1.0
        return tuple(sign * c for c in folded), abs(self.scale)

    def powered(self, power: float, factor: float = 1.0, shift: float = 0.0) -> "CantorPiece":
        """Pedaço de shift + (factor·v)^power, onde v é o valor deste pedaço"""
        coefficients, base_factor = self.power_form()
        if base_factor < 0.0 or factor < 0.0:
            raise PreconditionError("potência fracionária de valores negativos")
        return CantorPiece(
            coefficients=coefficients,
            exponent=self.exponent * power,
            scale=(factor * base_factor) ** power,
            shift=shift,
            reversed=self.reversed
        )

    def scaled(self, factor: float) -> "CantorPiece":
        return self.model_copy(update={"scale": factor * self.scale, "shift": factor * self.shift})

    def shifted(self, constant: float) -> "CantorPiece":
        return self.model_copy(update={"shift": self.shift + constant})

    def reflected(self) -> "CantorPiece":
        return self.model_copy(update={"reversed": not self.reversed})

    def rescaled_domain(self, s: float) -> "CantorPiece":
        return self


Piece = Annotated[Union[PolynomialPiece, CantorPiece], Field(discriminator="kind")]


class BVFunction(BaseModel):
    """
    Função BV unidimensional estruturada.

    Fora de [z_0, z_M] vale tail_left / tail_right (0 para perfis; constantes
    não nulas descrevem derivas "presas" fora do suporte).
    """
    model_config = ConfigDict(frozen=True)

    breakpoints: Tuple[float, ...] = Field(..., min_length=2)
    pieces: Tuple[Piece, ...] = Field(..., min_length=1)
    tail_left: float = 0.0
    tail_right: float = 0.0

    @model_validator(mode="after")
    def _check_structure(self) -> "BVFunction":
        if not all(math.isfinite(z) for z in self.breakpoints):
            raise ValueError("pontos de quebra devem ser finitos")
        if any(b <= a for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("pontos de quebra devem ser estritamente crescentes")
        if len(self.pieces) != len(self.breakpoints) - 1:
            raise ValueError(
                f"{len(self.pieces)} pedaços para {len(self.breakpoints)} pontos de quebra"
            )
        if not (math.isfinite(self.tail_left) and math.isfinite(self.tail_right)):
            raise ValueError("caudas devem ser finitas")
        return self

    @classmethod
    def constant(cls, value: float, lo: float, hi: float) -> "BVFunction":
        """value·χ_[lo, hi)"""
        return cls(breakpoints=(lo, hi), pieces=(PolynomialPiece.constant(value),))

    @classmethod
    def step(cls, breakpoints: Sequence[float], values: Sequence[float], **tails) -> "BVFunction":
        """Função escada com values[i] em [breakpoints[i], breakpoints[i+1])"""
        return cls(
            breakpoints=tuple(float(z) for z in breakpoints),
            pieces=tuple(PolynomialPiece.constant(v) for v in values),
            **tails
        )

    @property
    def support(self) -> Interval:
        return Interval.closed(self.breakpoints[0], self.breakpoints[-1])

    @property
    def piece_intervals(self) -> List[Tuple[float, float]]:
        return list(zip(self.breakpoints[:-1], self.breakpoints[1:]))

    def iter_pieces(self):
        """Itera (índice, pedaço, lo, hi)"""
        for index, (piece, (lo, hi)) in enumerate(zip(self.pieces, self.piece_intervals)):
            yield index, piece, lo, hi

    @cached_property
    def side_limits(self) -> Tuple[Tuple[float, float], ...]:
        """(limite à esquerda, limite à direita) em cada ponto de quebra"""
        ends = [piece.end_values(lo, hi) for _, piece, lo, hi in self.iter_pieces()]
        limits = []
        for i in range(len(self.breakpoints)):
            left = self.tail_left if i == 0 else ends[i - 1][1]
            right = self.tail_right if i == len(ends) else ends[i][0]
            limits.append((left, right))
        return tuple(limits)

    @cached_property
    def sup_norm(self) -> float:
        bound = max(abs(self.tail_left), abs(self.tail_right))
        for _, piece, lo, hi in self.iter_pieces():
            low, high = piece.extrema(lo, hi, lo, hi)
            bound = max(bound, abs(low), abs(high))
        return bound

    @property
    def jump_threshold(self) -> float:
        return settings.jump_tolerance * (1.0 + self.sup_norm)

    @cached_property
    def jump_atoms(self) -> Tuple[JumpAtom, ...]:
        """Descontinuidades nos pontos de quebra acima do limiar de ruído"""
        threshold = self.jump_threshold
        return tuple(
            JumpAtom(location=z, height=right - left)
            for z, (left, right) in zip(self.breakpoints, self.side_limits)
            if abs(right - left) > threshold
        )

    @property
    def has_cantor_part(self) -> bool:
        return any(piece.has_cantor_part for piece in self.pieces)

    def evaluate(self, zs) -> np.ndarray:
        """Avaliação vetorizada (limite à direita nos pontos de quebra)"""
        zs = np.asarray(zs, dtype=float)
        flat = zs.reshape(-1)
        out = np.empty_like(flat)
        index = np.searchsorted(np.asarray(self.breakpoints), flat, side="right") - 1

        out[index < 0] = self.tail_left
        out[index >= len(self.pieces)] = self.tail_right
        for i, piece, lo, hi in self.iter_pieces():
            mask = index == i
            if mask.any():
                out[mask] = piece.evaluate(flat[mask], lo, hi)
        return out.reshape(zs.shape)

    def __call__(self, z: float) -> float:
        return float(self.evaluate(np.array([z]))[0])

    def derivative(self, zs) -> np.ndarray:
        """Derivada aproximada ∇f (parte a.c.; zero nos pedaços de Cantor e fora do suporte)"""
        zs = np.asarray(zs, dtype=float)
        flat = zs.reshape(-1)
        out = np.zeros_like(flat)
        index = np.searchsorted(np.asarray(self.breakpoints), flat, side="right") - 1
        for i, piece, lo, hi in self.iter_pieces():
            mask = index == i
            if mask.any():
                out[mask] = piece.derivative(flat[mask], lo, hi)
        return out.reshape(zs.shape)

    def one_sided_limits(self, z: float) -> Tuple[float, float]:
        """(f(z⁻), f(z⁺))"""
        index = np.searchsorted(np.asarray(self.breakpoints), z)
        if index < len(self.breakpoints) and self.breakpoints[index] == z:
            return self.side_limits[index]
        value = self(z)
        return value, value

    def is_continuous_at(self, z: float) -> bool:
        """Limites laterais iguais a menos de jump_threshold (mesmo critério de jump_atoms)"""
        left, right = self.one_sided_limits(z)
        return abs(right - left) <= self.jump_threshold

    def integrate(self, p: float, q: float) -> float:
        """∫_p^q f (p, q finitos)"""
        if q <= p:
            return 0.0
        total = 0.0
        z0, zM = self.breakpoints[0], self.breakpoints[-1]
        total += self.tail_left * max(0.0, min(q, z0) - p)
        total += self.tail_right * max(0.0, q - max(p, zM))
        for _, piece, lo, hi in self.iter_pieces():
            a, b = max(p, lo), min(q, hi)
            if a < b:
                total += piece.integral(a, b, lo, hi)
        return total

    def scaled(self, factor: float) -> "BVFunction":
        """z ↦ factor·f(z)"""
        return BVFunction(
            breakpoints=self.breakpoints,
            pieces=tuple(piece.scaled(factor) for piece in self.pieces),
            tail_left=factor * self.tail_left,
            tail_right=factor * self.tail_right
        )

    def shifted(self, constant: float) -> "BVFunction":
        """z ↦ f(z) + constant (inclusive nas caudas)"""
        return BVFunction(
            breakpoints=self.breakpoints,
            pieces=tuple(piece.shifted(constant) for piece in self.pieces),
            tail_left=self.tail_left + constant,
            tail_right=self.tail_right + constant
        )

    def reflected(self) -> "BVFunction":
        """z ↦ f(-z)"""
        return BVFunction(
            breakpoints=tuple(-z for z in reversed(self.breakpoints)),
            pieces=tuple(piece.reflected() for piece in reversed(self.pieces)),
            tail_left=self.tail_right,
            tail_right=self.tail_left
        )

    def rescaled_domain(self, s: float) -> "BVFunction":
        """z ↦ f(z/s), s > 0"""
        if s <= 0.0:
            raise PreconditionError(f"fator de escala deve ser positivo: {s}")
        return BVFunction(
            breakpoints=tuple(s * z for z in self.breakpoints),
            pieces=tuple(piece.rescaled_domain(s) for piece in self.pieces),
            tail_left=self.tail_left,
            tail_right=self.tail_right
        )


class Profile(BaseModel):
    """Perfil ℓ: BVFunction não negativa de suporte compacto, com dimensão n ≥ 2"""
    model_config = ConfigDict(frozen=True)

    base: BVFunction
    dimension: int = Field(..., ge=2)

    @model_validator(mode="after")
    def _check_profile(self) -> "Profile":
        if self.base.tail_left != 0.0 or self.base.tail_right != 0.0:
            raise ValueError("perfil deve ter suporte compacto (caudas nulas)")
        tolerance = settings.jump_tolerance * (1.0 + self.base.sup_norm)
        for _, piece, lo, hi in self.base.iter_pieces():
            low, _ = piece.extrema(lo, hi, lo, hi)
            if low < -tolerance:
                raise ValueError(f"perfil negativo em ({lo:g}, {hi:g}): mínimo {low:g}")
        return self

    def __call__(self, z: float) -> float:
        return self.base(z)

    def evaluate(self, zs) -> np.ndarray:
        return self.base.evaluate(zs)

    @property
    def support(self) -> Interval:
        return self.base.support

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return self.base.breakpoints

    @cached_property
    def radius(self) -> "RadiusProfile":
        return RadiusProfile(profile=self)

    def rescaled(self, s: float) -> "Profile":
        """Perfil do conjunto dilatado por s: z ↦ sz, ℓ ↦ s^{n-1}ℓ(·/s)"""
        base = self.base.rescaled_domain(s).scaled(s ** (self.dimension - 1))
        return Profile(base=base, dimension=self.dimension)

    def reflected(self) -> "Profile":
        return Profile(base=self.base.reflected(), dimension=self.dimension)


class RadiusProfile(BaseModel):
    """Vista derivada r(z) = (ℓ(z)/ω_{n-1})^{1/(n-1)}"""
    model_config = ConfigDict(frozen=True)

    profile: Profile

    @property
    def dimension(self) -> int:
        return self.profile.dimension

    @property
    def omega(self) -> float:
        return unit_ball_volume(self.dimension - 1)

    def from_measure(self, values) -> np.ndarray:
        """Raio da bola (n-1)-dimensional de medida values"""
        values = np.maximum(np.asarray(values, dtype=float), 0.0)
        return (values / self.omega) ** (1.0 / (self.dimension - 1))

    def evaluate(self, zs) -> np.ndarray:
        return self.from_measure(self.profile.evaluate(zs))

    def __call__(self, z: float) -> float:
        return float(self.evaluate(np.array([z]))[0])

    def approx_limits(self, z: float) -> Tuple[float, float]:
        """(r^∧(z), r^∨(z)); r é monótona em ℓ"""
        lower, upper = approx_limits(self.profile, z)
        radii = self.from_measure([lower, upper])
        return float(radii[0]), float(radii[1])

    def one_sided_limits(self, z: float) -> Tuple[float, float]:
        left, right = self.profile.base.one_sided_limits(z)
        radii = self.from_measure([left, right])
        return float(radii[0]), float(radii[1])

    def derivative(self, zs) -> np.ndarray:
        """r' pela regra da cadeia: r' = ℓ' / ((n-1)·ω·r^{n-2})"""
        zs = np.asarray(zs, dtype=float)
        slope = self.profile.base.derivative(zs)
        n = self.dimension
        if n == 2:
            return slope / self.omega
        radius = self.evaluate(zs)
        with np.errstate(divide="ignore", invalid="ignore"):
            result = slope / ((n - 1) * self.omega * radius ** (n - 2))
        return np.where(slope == 0.0, 0.0, result)

    def cantor_piece(self, index: int) -> CantorPiece:
        """Pedaço de Cantor de r no pedaço index de ℓ"""
        piece = self.profile.base.pieces[index]
        if not isinstance(piece, CantorPiece):
            raise PreconditionError(f"pedaço {index} não é de Cantor")
        return piece.powered(1.0 / (self.dimension - 1), 1.0 / self.omega)


class Decomposition(BaseModel):
    """Decomposição f = f^{ac} + f^{j} + f^{c}"""
    model_config = ConfigDict(frozen=True)

    ac: BVFunction
    jump_atoms: Tuple[JumpAtom, ...]
    cantor_atoms: Tuple[CantorAtom, ...]
    source: BVFunction

    def jump_part(self, z: float) -> float:
        """f^{j}(z): soma das alturas de salto em pontos ≤ z"""
        return sum(atom.height for atom in self.jump_atoms if atom.location <= z)

    def cantor_part(self, z: float) -> float:
        """f^{c}(z): massa de Cantor acumulada até z"""
        total = 0.0
        for _, piece, lo, hi in self.source.iter_pieces():
            if not isinstance(piece, CantorPiece) or z <= lo:
                continue
            total += piece.signed_mass(lo, min(z, hi), lo, hi)
        return total

    def reconstruct(self, z: float) -> float:
        return self.ac(z) + self.jump_part(z) + self.cantor_part(z)

    def jump_variation(self, window: Interval) -> float:
        return sum(atom.magnitude for atom in self.jump_atoms if window.contains(atom.location))

    def cantor_variation(self, window: Interval) -> float:
        return _cantor_variation(self.source, window)

    def ac_variation(self, window: Interval) -> float:
        return total_variation(self.ac, window)


def _base(f: Union[BVFunction, Profile]) -> BVFunction:
    return f.base if isinstance(f, Profile) else f


def _require_window(window: Interval) -> None:
    if window.is_empty:
        raise PreconditionError(f"janela vazia: {window}")


def _cantor_variation(f: BVFunction, window: Interval) -> float:
    total = 0.0
    for _, piece, lo, hi in f.iter_pieces():
        clipped = window.clip(lo, hi)
        if clipped and piece.has_cantor_part:
            total += piece.singular_variation(clipped[0], clipped[1], lo, hi)
    return total


def evaluate(f: Union[BVFunction, Profile], z: float) -> float:
    """f(z); limite à direita nos pontos de quebra, cauda fora do suporte"""
    return _base(f)(z)


def approx_limits(f: Union[BVFunction, Profile], z: float) -> Tuple[float, float]:
    """
    Limites aproximados (f^∧(z), f^∨(z)).

    Nesta classe, fora dos pontos de quebra ambos valem f(z); num ponto de
    quebra são o mínimo e o máximo dos limites laterais.
    """
    left, right = _base(f).one_sided_limits(z)
    return min(left, right), max(left, right)


def total_variation(f: Union[BVFunction, Profile], window: Interval) -> float:
    """
    |Df|(B) em forma fechada.

    Pedaços polinomiais pelos extremos de P; pedaços de Cantor pela variação
    de h(s) no intervalo de s percorrido; saltos contados apenas quando o
    ponto pertence a B (extremos abertos excluídos).

    Raises:
        PreconditionError: janela vazia
    """
    _require_window(window)
    f = _base(f)
    total = 0.0
    for _, piece, lo, hi in f.iter_pieces():
        clipped = window.clip(lo, hi)
        if clipped:
            total += piece.variation(clipped[0], clipped[1], lo, hi)
    total += sum(atom.magnitude for atom in f.jump_atoms if window.contains(atom.location))
    return total


def singular_variation(f: Union[BVFunction, Profile], window: Interval) -> Tuple[float, float]:
    """(|D^j f|(B), |D^c f|(B))"""
    _require_window(window)
    f = _base(f)
    jump = sum(atom.magnitude for atom in f.jump_atoms if window.contains(atom.location))
    return jump, _cantor_variation(f, window)


def essential_range(f: Union[BVFunction, Profile], window: Interval) -> Tuple[float, float]:
    """
    Menor e maior valor que f assume em subconjuntos de medida positiva de B.

    Raises:
        PreconditionError: janela de medida nula
    """
    _require_window(window)
    f = _base(f)
    values = []
    z0, zM = f.breakpoints[0], f.breakpoints[-1]
    if min(z0, window.hi) > window.lo:
        values.append(f.tail_left)
    if window.hi > max(zM, window.lo):
        values.append(f.tail_right)
    for _, piece, lo, hi in f.iter_pieces():
        clipped = window.clip(lo, hi)
        if clipped:
            values.extend(piece.extrema(clipped[0], clipped[1], lo, hi))
    if not values:
        raise PreconditionError(f"janela de medida nula: {window}")
    return min(values), max(values)


def decompose(f: Union[BVFunction, Profile]) -> Decomposition:
    """
    Decompõe f em parte absolutamente contínua, átomos de salto e componentes
    de Cantor.

    A parte a.c. parte de tail_left, acompanha os incrementos dos pedaços
    polinomiais e fica constante nos pedaços de Cantor; é contínua.
    """
    f = _base(f)
    value = f.tail_left
    ac_pieces = []
    cantor_atoms = []
    for _, piece, lo, hi in f.iter_pieces():
        if isinstance(piece, PolynomialPiece):
            start, end = piece.end_values(lo, hi)
            ac_pieces.append(piece.shifted(value - start))
            value += end - start
            continue

        ac_pieces.append(PolynomialPiece.constant(value))
        if piece.has_cantor_part:
            cantor_atoms.append(CantorAtom(
                interval=Interval.open(lo, hi),
                mass=piece.signed_mass(lo, hi, lo, hi),
                variation=piece.variation(lo, hi, lo, hi)
            ))

    ac = BVFunction(
        breakpoints=f.breakpoints,
        pieces=tuple(ac_pieces),
        tail_left=f.tail_left,
        tail_right=value
    )
    logger.debug(
        "function_decomposed",
        jump_atoms=len(f.jump_atoms),
        cantor_atoms=len(cantor_atoms)
    )
    return Decomposition(
        ac=ac,
        jump_atoms=f.jump_atoms,
        cantor_atoms=tuple(cantor_atoms),
        source=f
    )


def _zero_components(profile: Profile) -> List[Tuple[float, float]]:
    base = profile.base
    components = [
        (z, z) for z, (left, right) in zip(base.breakpoints, base.side_limits)
        if min(left, right) <= 0.0
    ]
    for _, piece, lo, hi in base.iter_pieces():
        components.extend(piece.zero_set(lo, hi))

    merged: List[List[float]] = []
    for start, end in sorted(components):
        if merged and start <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], end)
        else:
            merged.append([start, end])
    return [(start, end) for start, end in merged]


def positivity_intervals(profile: Profile) -> List[Interval]:
    """
    Intervalos abertos maximais de {ℓ^∧ > 0}.

    O conjunto de zeros de ℓ^∧ é a união dos pontos de quebra com algum
    limite lateral nulo, das raízes dos pedaços polinomiais (inclusive raízes
    isoladas, onde ℓ^∧ = ℓ = 0) e das pré-imagens de zeros dos pedaços de
    Cantor.
    """
    zeros = _zero_components(profile)
    intervals = []
    for (_, previous_end), (next_start, _) in zip(zeros, zeros[1:]):
        if previous_end < next_start:
            intervals.append(Interval.open(previous_end, next_start))
    return intervals


def is_sobolev(profile: Union[BVFunction, Profile], window: Interval) -> bool:
    """ℓ ∈ W^{1,1}(B): nenhum átomo de salto nem massa de Cantor em B"""
    jump, cantor = singular_variation(profile, window)
    return jump == 0.0 and cantor == 0.0


def radius_profile(profile: Profile) -> RadiusProfile:
    """r_ℓ(z) = (ℓ(z)/ω_{n-1})^{1/(n-1)}"""
    return profile.radius


def partition_variation(f: Union[BVFunction, Profile], points: Sequence[float]) -> float:
    """Σ |f(x_{k+1}) - f(x_k)| para uma partição ordenada"""
    values = _base(f).evaluate(np.sort(np.asarray(points, dtype=float)))
    return float(np.sum(np.abs(np.diff(values))))


def refinement_partition(f: Union[BVFunction, Profile], window: Interval, depth: int) -> np.ndarray:
    """
    Partição diádica de B de malha |B|/2^depth, reunida aos pontos de quebra.

    Cada ponto de quebra em B entra com o vizinho imediatamente à esquerda
    (captura o salto); extremos abertos de B entram deslocados para dentro.
    Janelas ilimitadas são recortadas a uma unidade além do suporte.
    """
    _require_window(window)
    f = _base(f)
    if window.lo == window.hi:
        return np.array([np.nextafter(window.lo, -np.inf), window.lo])

    lo = max(window.lo, f.breakpoints[0] - 1.0)
    hi = min(window.hi, f.breakpoints[-1] + 1.0)
    if hi <= lo:
        return np.array([lo, lo])

    points = list(np.linspace(lo, hi, 2 ** depth + 1))
    for z in f.breakpoints:
        if window.contains(z) and lo <= z <= hi:
            points.extend([np.nextafter(z, -np.inf), z])

    start = np.nextafter(lo, -np.inf) if window.closed_lo else np.nextafter(lo, np.inf)
    end = hi if window.closed_hi else np.nextafter(hi, -np.inf)
    points = np.asarray(points + [start, end], dtype=float)
    return np.unique(points[(points >= start) & (points <= end)])


def refinement_variation(f: Union[BVFunction, Profile], window: Interval, depth: int) -> float:
    """Estimativa de |Df|(B) pelo supremo sobre partições, na partição de refinement_partition"""
    return partition_variation(f, refinement_partition(f, window, depth))
