"""Modelos de resultado compartilhados entre os módulos e a CLI"""
import math
from typing import Annotated, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


def _format_endpoint(value: float) -> str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:g}"


class Interval(BaseModel):
    """Intervalo da reta (possivelmente ilimitado, possivelmente um ponto)"""
    model_config = ConfigDict(frozen=True)

    lo: float = Field(..., description="Extremo inferior (pode ser -inf)")
    hi: float = Field(..., description="Extremo superior (pode ser +inf)")
    closed_lo: bool = Field(default=False, description="Extremo inferior incluído")
    closed_hi: bool = Field(default=False, description="Extremo superior incluído")

    @model_validator(mode="after")
    def _check_order(self) -> "Interval":
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("extremos do intervalo não podem ser NaN")
        if self.lo > self.hi:
            raise ValueError(f"intervalo com lo={self.lo} > hi={self.hi}")
        return self

    @classmethod
    def open(cls, lo: float, hi: float) -> "Interval":
        return cls(lo=lo, hi=hi)

    @classmethod
    def closed(cls, lo: float, hi: float) -> "Interval":
        return cls(lo=lo, hi=hi, closed_lo=True, closed_hi=True)

    @classmethod
    def point(cls, z: float) -> "Interval":
        return cls(lo=z, hi=z, closed_lo=True, closed_hi=True)

    @classmethod
    def real_line(cls) -> "Interval":
        return cls(lo=-math.inf, hi=math.inf)

    @property
    def is_empty(self) -> bool:
        if self.lo < self.hi:
            return False
        return not (self.closed_lo and self.closed_hi)

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, z: float) -> bool:
        """Pertinência respeitando extremos abertos/fechados"""
        if z < self.lo or z > self.hi:
            return False
        if z == self.lo and not (self.closed_lo or math.isinf(self.lo)):
            return False
        if z == self.hi and not (self.closed_hi or math.isinf(self.hi)):
            return False
        return True

    def contains_array(self, zs: np.ndarray) -> np.ndarray:
        """Versão vetorizada de contains"""
        zs = np.asarray(zs, dtype=float)
        lower = zs >= self.lo if self.closed_lo else zs > self.lo
        upper = zs <= self.hi if self.closed_hi else zs < self.hi
        return lower & upper

    def clip(self, lo: float, hi: float) -> Optional[Tuple[float, float]]:
        """
        Interseção de [lo, hi] com o intervalo, como par de floats.

        Returns:
            (p, q) com p < q, ou None se a interseção tiver medida nula
        """
        p = max(lo, self.lo)
        q = min(hi, self.hi)
        if p < q:
            return p, q
        return None

    def __str__(self) -> str:
        left = "[" if self.closed_lo and not math.isinf(self.lo) else "("
        right = "]" if self.closed_hi and not math.isinf(self.hi) else ")"
        if self.lo == self.hi:
            return f"{{{_format_endpoint(self.lo)}}}"
        return f"{left}{_format_endpoint(self.lo)},{_format_endpoint(self.hi)}{right}"


class JumpAtom(BaseModel):
    """Átomo da parte de salto D^j f: posição e altura com sinal [f]"""
    model_config = ConfigDict(frozen=True)

    location: float
    height: float = Field(..., description="Limite à direita menos limite à esquerda")

    @property
    def magnitude(self) -> float:
        return abs(self.height)


class CantorAtom(BaseModel):
    """Componente de Cantor D^c f concentrada num pedaço do perfil"""
    model_config = ConfigDict(frozen=True)

    interval: Interval
    mass: float = Field(..., description="Variação com sinal f(b-) - f(a+) da componente")
    variation: float = Field(..., ge=0.0, description="|D^c f| no intervalo")


class PerimeterBreakdown(BaseModel):
    """Perímetro numa janela B, separado em partes a.c., de salto e de Cantor"""
    model_config = ConfigDict(frozen=True)

    ac_part: float = Field(..., ge=0.0)
    jump_part: float = Field(..., ge=0.0)
    cantor_part: float = Field(..., ge=0.0)
    total: float
    window: Interval

    @model_validator(mode="after")
    def _check_total(self) -> "PerimeterBreakdown":
        parts = self.ac_part + self.jump_part + self.cantor_part
        if abs(self.total - parts) > 1e-9 * max(1.0, abs(parts)):
            raise ValueError("total difere da soma das partes")
        return self

    @classmethod
    def from_parts(
        cls,
        ac_part: float,
        jump_part: float,
        cantor_part: float,
        window: Interval
    ) -> "PerimeterBreakdown":
        ac_part, jump_part, cantor_part = (max(0.0, v) for v in (ac_part, jump_part, cantor_part))
        return cls(
            ac_part=ac_part,
            jump_part=jump_part,
            cantor_part=cantor_part,
            total=ac_part + jump_part + cantor_part,
            window=window
        )


class BoundarySlice(BaseModel):
    """Fatia vertical de ∂*F_ℓ em z̄: coroa entre r^∧ e r^∨"""
    model_config = ConfigDict(frozen=True)

    r_lower: float = Field(..., ge=0.0)
    r_upper: float = Field(..., ge=0.0)
    measure: float = Field(..., ge=0.0, description="ℓ^∨(z̄) - ℓ^∧(z̄)")


class InequalityCheck(BaseModel):
    """Comparação P(E) contra P(F_ℓ)"""
    model_config = ConfigDict(frozen=True)

    p_e: float
    p_f: float
    holds: bool
    gap: float = Field(..., description="P(E) - P(F_ℓ)")

    def is_equality(self, rel_tol: float = 1e-6) -> bool:
        """Caso de igualdade dentro da tolerância relativa"""
        return abs(self.gap) <= rel_tol * max(1.0, abs(self.p_f))


class DisconnectedWitness(BaseModel):
    """Ponto z̄ com ℓ^∧(z̄) = 0 separando duas partes de {ℓ^∧ > 0}"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["disconnected"] = "disconnected"
    z: float


class JumpWitness(BaseModel):
    """Átomo de salto de ℓ no interior de J"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["jump"] = "jump"
    z: float
    lower: float = Field(..., description="ℓ^∧(z̄)")
    upper: float = Field(..., description="ℓ^∨(z̄)")


class CantorMassWitness(BaseModel):
    """Massa de Cantor de ℓ dentro de J"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["cantor"] = "cantor"
    interval: Interval
    mass: float


FailureWitness = Annotated[
    Union[DisconnectedWitness, JumpWitness, CantorMassWitness],
    Field(discriminator="kind")
]


class RigidityVerdict(BaseModel):
    """Veredito de rigidez com testemunhas de falha verificáveis"""
    model_config = ConfigDict(frozen=True)

    rigid: bool
    interval: Optional[Interval] = Field(None, description="J = {ℓ^∧ > 0} quando é um intervalo")
    failures: List[FailureWitness] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_consistency(self) -> "RigidityVerdict":
        if self.rigid != (len(self.failures) == 0):
            raise ValueError("rigid deve valer exatamente quando não há falhas")
        return self


class WitnessProvenance(BaseModel):
    """Parâmetros de construção de uma testemunha"""
    model_config = ConfigDict(frozen=True)

    z_bar: Optional[float] = None
    tau: Optional[Tuple[float, ...]] = None
    lam: Optional[float] = None
    direction: Tuple[float, ...]
    depth: Optional[int] = None
    r_base: Optional[float] = None
    interval: Optional[Interval] = None


class DensityEstimate(BaseModel):
    """Estimativa Monte Carlo das densidades inferior/superior num ponto"""
    model_config = ConfigDict(frozen=True)

    theta_lower: float = Field(..., ge=0.0, le=1.0)
    theta_upper: float = Field(..., ge=0.0, le=1.0)
    radii_used: Tuple[float, ...]
    thetas: Tuple[float, ...] = Field(..., description="Fração estimada por raio")
    samples_per_radius: int
    seed: int

    @model_validator(mode="after")
    def _check_order(self) -> "DensityEstimate":
        if self.theta_lower > self.theta_upper:
            raise ValueError("theta_lower > theta_upper")
        return self


class OracleComparison(BaseModel):
    """Perímetro analítico contra o oráculo de triangulação"""
    model_config = ConfigDict(frozen=True)

    analytic: float
    oracle: float
    relative_error: float
    resolution: int


class ConvergenceRow(BaseModel):
    """Linha do relatório de convergência do esquema de escadas"""
    model_config = ConfigDict(frozen=True)

    k: int
    perimeter_symmetral: float = Field(..., description="P(F_{ℓᵏ}; J × R^{n-1})")
    perimeter_staircase: float = Field(..., description="P(Eᵏ; J × R^{n-1})")
