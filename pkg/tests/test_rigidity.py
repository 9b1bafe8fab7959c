"""Testes unitários para a decisão de rigidez"""
import math

import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from geometry.rigidity import decide, drift_oscillation, is_translate, vertical_parts_measure
from geometry.symmetral import TubeSet, check_inequality
from models import CantorMassWitness, DisconnectedWitness, Interval, JumpWitness
from profiles.bv_profile import (
    BVFunction,
    CantorPiece,
    PolynomialPiece,
    Profile,
    is_sobolev,
    positivity_intervals,
)

PI = math.pi


@st.composite
def step_profiles(draw):
    """Perfis em degraus com níveis possivelmente nulos ou repetidos"""
    count = draw(st.integers(min_value=1, max_value=5))
    nodes = [0.0]
    for gap in draw(st.lists(st.sampled_from([0.25, 0.5, 1.0]), min_size=count, max_size=count)):
        nodes.append(nodes[-1] + gap)
    levels = draw(st.lists(st.sampled_from([0.0, 1.0, 2.0, 3.0]), min_size=count, max_size=count))
    if not any(levels):
        levels[0] = 1.0
    return Profile(base=BVFunction.step(nodes, levels), dimension=3)


@st.composite
def rigid_tubes_with_drift(draw):
    """Bola ou cilindro com deriva em degraus ou linear de variação |Dg|(J) > 0.01"""
    if draw(st.booleans()):
        lo, hi = -1.0, 1.0
        profile = Profile(
            base=BVFunction(breakpoints=(lo, hi), pieces=(PolynomialPiece(coefficients=(PI, 0.0, -PI)),)),
            dimension=3
        )
    else:
        lo, hi = 0.0, draw(st.floats(min_value=0.5, max_value=3.0))
        profile = Profile(base=BVFunction.constant(PI, lo, hi), dimension=3)

    if draw(st.booleans()):
        count = draw(st.integers(min_value=2, max_value=4))
        nodes = [lo + (hi - lo) * i / count for i in range(count + 1)]
        values = [draw(st.floats(min_value=-1.0, max_value=1.0))]
        for _ in range(count - 1):
            step = draw(st.floats(min_value=0.02, max_value=1.0))
            values.append(values[-1] + (step if draw(st.booleans()) else -step))
        drift = BVFunction.step(nodes, values)
    else:
        slope = draw(st.floats(min_value=0.1, max_value=2.0)) * (1.0 if draw(st.booleans()) else -1.0)
        offset = draw(st.floats(min_value=-1.0, max_value=1.0))
        drift = BVFunction(breakpoints=(lo, hi), pieces=(PolynomialPiece(coefficients=(offset, slope)),))

    angle = draw(st.floats(min_value=0.0, max_value=2.0 * PI))
    return TubeSet(profile=profile, drift=drift, direction=(math.cos(angle), math.sin(angle)))


@pytest.mark.unit
class TestDecide:
    """Testes para o veredito de rigidez nos perfis de referência"""

    def test_bola_rigida(self, ball):
        """Testa RIGID com J = (-1, 1)"""
        verdict = decide(ball)
        assert verdict.rigid
        assert verdict.failures == []
        assert str(verdict.interval) == "(-1,1)"

    def test_cilindro_rigido(self, cylinder):
        """Testa que saltos nos extremos do suporte não quebram a rigidez"""
        assert decide(cylinder).rigid

    def test_degrau_falha_por_salto(self, step):
        """Testa uma falha de salto em z = 1 com limites π e 4π"""
        verdict = decide(step)
        assert not verdict.rigid
        assert verdict.failures == [JumpWitness(z=1.0, lower=PI, upper=4.0 * PI)]

    def test_dois_componentes_desconexo(self, two_component):
        """Testa a desconexão no ponto médio da lacuna"""
        verdict = decide(two_component)
        assert not verdict.rigid
        assert verdict.interval is None
        assert len(verdict.failures) == 1
        assert isinstance(verdict.failures[0], DisconnectedWitness)
        assert verdict.failures[0].z == pytest.approx(1.5)

    def test_cantor_falha_por_massa(self, cantor):
        """Testa a massa de Cantor 3π em (0, 1)"""
        verdict = decide(cantor)
        assert not verdict.rigid
        (failure,) = verdict.failures
        assert isinstance(failure, CantorMassWitness)
        assert failure.mass == pytest.approx(3.0 * PI, rel=1e-12)
        assert str(failure.interval) == "(0,1)"

    def test_zero_isolado_desconecta(self):
        """Testa que ℓ = π z² em [-1, 1] tem positividade (-1,0) ∪ (0,1)"""
        profile = Profile(
            base=BVFunction(breakpoints=(-1.0, 1.0), pieces=(PolynomialPiece(coefficients=(0.0, 0.0, PI)),)),
            dimension=3
        )
        verdict = decide(profile)
        assert [str(i) for i in positivity_intervals(profile)] == ["(-1,0)", "(0,1)"]
        assert verdict.failures == [DisconnectedWitness(z=0.0)]

    def test_cantor_nulo_no_terco_central(self):
        """Testa ℓ = π(c - 1/2)²: desconexão em 1/2 e massa de Cantor só dentro de cada J"""
        piece = CantorPiece(coefficients=(0.25, -1.0, 1.0), scale=PI)
        verdict = decide(Profile(base=BVFunction(breakpoints=(0.0, 1.0), pieces=(piece,)), dimension=3))
        assert not verdict.rigid
        disconnected = [f for f in verdict.failures if isinstance(f, DisconnectedWitness)]
        cantor = [f for f in verdict.failures if isinstance(f, CantorMassWitness)]
        assert len(disconnected) == 1
        assert disconnected[0].z == pytest.approx(0.5)
        assert len(cantor) == 2
        assert [cantor[0].interval.lo, cantor[0].interval.hi] == pytest.approx([0.0, 1.0 / 3.0])
        assert [cantor[1].interval.lo, cantor[1].interval.hi] == pytest.approx([2.0 / 3.0, 1.0])
        for failure in cantor:
            assert failure.mass == pytest.approx(PI / 4.0, rel=1e-9)

    def test_perfil_nulo(self):
        """Testa que o perfil nulo é rígido sem intervalo"""
        verdict = decide(Profile(base=BVFunction.constant(0.0, 0.0, 1.0), dimension=3))
        assert verdict.rigid
        assert verdict.interval is None

    def test_varias_falhas(self):
        """Testa que todas as falhas são listadas"""
        base = BVFunction(
            breakpoints=(0.0, 1.0, 2.0, 3.0, 4.0),
            pieces=(
                PolynomialPiece.constant(PI),
                PolynomialPiece.constant(4.0 * PI),
                PolynomialPiece.constant(0.0),
                CantorPiece.affine(PI, PI),
            )
        )
        verdict = decide(Profile(base=base, dimension=3))
        kinds = sorted(type(f).__name__ for f in verdict.failures)
        assert kinds == ["CantorMassWitness", "DisconnectedWitness", "JumpWitness"]

    @given(step_profiles())
    @hypothesis_settings(max_examples=60, deadline=None)
    def test_rigidez_equivale_a_sobolev_conexo(self, profile):
        """Testa rígido ⇔ um único intervalo J com ℓ ∈ W^{1,1}(J)"""
        intervals = positivity_intervals(profile)
        expected = len(intervals) <= 1 and all(is_sobolev(profile, J) for J in intervals)
        assert decide(profile).rigid == expected
        for J in intervals:
            assert is_sobolev(profile, J) == (vertical_parts_measure(profile, J) == 0.0)


@pytest.mark.unit
class TestTranslations:
    """Testes para deriva e translações"""

    def test_translacao_e_igualdade(self, ball):
        """Testa que uma translação dá igualdade e é reconhecida"""
        tube = TubeSet.symmetral(ball).translated(0.7)
        assert is_translate(tube)
        assert check_inequality(tube).is_equality()

    def test_deriva_nao_trivial_em_perfil_rigido(self, ball):
        """Testa desigualdade estrita para a bola com deriva g = z/2"""
        drift = BVFunction(breakpoints=(-1.0, 1.0), pieces=(PolynomialPiece(coefficients=(0.0, 0.5)),))
        tube = TubeSet(profile=ball, drift=drift, direction=(0.0, 1.0))
        assert not is_translate(tube)
        assert drift_oscillation(tube) == pytest.approx(1.0)
        assert check_inequality(tube).gap > 1e-6

    def test_deriva_de_salto_no_cilindro(self, cylinder):
        """Testa desigualdade estrita com deriva em degrau sobre perfil rígido"""
        drift = BVFunction.step((0.0, 1.0, 2.0), (0.0, 0.5))
        tube = TubeSet(profile=cylinder, drift=drift)
        check = check_inequality(tube)
        assert check.gap > 1e-6

    @given(rigid_tubes_with_drift())
    @hypothesis_settings(max_examples=50, deadline=None)
    def test_deriva_nao_trivial_da_desigualdade_estrita(self, tube):
        """Testa gap > 1e-6 para perfis rígidos com deriva que não é translação"""
        assert drift_oscillation(tube) > 0.01
        assert check_inequality(tube).gap > 1e-6

    def test_oscilacao_fora_do_suporte_ignorada(self, two_component):
        """Testa que só {ℓ^∧ > 0} conta para a oscilação"""
        drift = BVFunction.step((0.0, 1.0, 2.0, 3.0), (0.3, 5.0, 0.3))
        tube = TubeSet(profile=two_component, drift=drift)
        assert is_translate(tube)

    def test_partes_verticais(self, step, cantor):
        """Testa |D^s ℓ| numa janela"""
        assert vertical_parts_measure(step, Interval.open(0.0, 2.0)) == pytest.approx(3.0 * PI)
        assert vertical_parts_measure(cantor, Interval.open(0.0, 1.0)) == pytest.approx(3.0 * PI)
        assert vertical_parts_measure(step, Interval.closed(0.0, 2.0)) == pytest.approx(8.0 * PI)
