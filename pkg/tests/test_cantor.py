"""Testes unitários para a escada de Cantor e os utilitários polinomiais"""
import numpy as np
import pytest
from hypothesis import given, settings as hypothesis_settings
from hypothesis import strategies as st

from profiles.utils import polynomials
from profiles.utils.cantor import (
    cantor_array,
    cantor_expectation,
    cantor_function,
    cantor_integral,
    cantor_moments,
    cantor_preimage,
    nearest_dyadic,
)


@pytest.mark.unit
class TestCantorFunction:
    """Testes para a avaliação da função de Cantor"""

    def test_valores_nos_extremos(self):
        """Testa c(0) = 0, c(1) = 1 e constância fora de [0,1]"""
        assert cantor_function(0.0) == 0.0
        assert cantor_function(1.0) == 1.0
        assert cantor_function(-3.0) == 0.0
        assert cantor_function(7.5) == 1.0

    def test_intervalos_removidos(self):
        """Testa os patamares dos intervalos removidos"""
        assert cantor_function(1.0 / 3.0) == 0.5
        assert cantor_function(0.5) == 0.5
        assert cantor_function(0.6) == 0.5
        assert cantor_function(1.0 / 9.0 + 1e-3) == 0.25
        assert cantor_function(0.8) == 0.75

    def test_ponto_nao_diadico(self):
        """Testa c(1/4) = 1/3 (expansão ternária periódica 0.0202...)"""
        assert cantor_function(0.25) == pytest.approx(1.0 / 3.0, abs=1e-9)
        assert cantor_function(0.75) == pytest.approx(2.0 / 3.0, abs=1e-9)

    def test_versao_vetorizada(self):
        """Testa que cantor_array coincide com a avaliação escalar"""
        xs = np.linspace(-0.5, 1.5, 101)
        expected = [cantor_function(x) for x in xs]
        assert np.allclose(cantor_array(xs), expected, atol=1e-12)

    @given(st.floats(min_value=0.0, max_value=1.0))
    @hypothesis_settings(max_examples=100, deadline=None)
    def test_auto_similaridade(self, x):
        """Testa c(x/3) = c(x)/2 e c(2/3 + x/3) = 1/2 + c(x)/2"""
        assert cantor_function(x / 3.0) == pytest.approx(0.5 * cantor_function(x), abs=1e-9)
        assert cantor_function(2.0 / 3.0 + x / 3.0) == pytest.approx(0.5 + 0.5 * cantor_function(x), abs=1e-9)

    @given(st.floats(min_value=0.0, max_value=1.0), st.floats(min_value=0.0, max_value=1.0))
    @hypothesis_settings(max_examples=100, deadline=None)
    def test_monotonia(self, x, y):
        """Testa que c é não decrescente"""
        lo, hi = min(x, y), max(x, y)
        assert cantor_function(lo) <= cantor_function(hi) + 1e-12


@pytest.mark.unit
class TestCantorPreimage:
    """Testes para as pré-imagens de níveis da escada"""

    def test_nivel_diadico_e_intervalo(self):
        """Testa que níveis diádicos têm como pré-imagem um intervalo removido"""
        assert cantor_preimage(0.5) == pytest.approx((1.0 / 3.0, 2.0 / 3.0))
        assert cantor_preimage(0.25) == pytest.approx((1.0 / 9.0, 2.0 / 9.0))

    def test_extremos(self):
        """Testa as pré-imagens de 0 e 1"""
        assert cantor_preimage(0.0) == (0.0, 0.0)
        assert cantor_preimage(1.0) == (1.0, 1.0)

    def test_nivel_nao_diadico_e_ponto(self):
        """Testa que 1/3 tem pré-imagem pontual 1/4"""
        lo, hi = cantor_preimage(1.0 / 3.0)
        assert lo == pytest.approx(hi)
        assert lo == pytest.approx(0.25, abs=1e-9)

    def test_diadico_mais_proximo(self):
        """Testa o ajuste de raízes numéricas a níveis diádicos"""
        assert nearest_dyadic(0.49999999999999994) == 0.5
        assert nearest_dyadic(0.25 + 1e-9) == 0.25
        assert nearest_dyadic(0.3) is None


@pytest.mark.unit
class TestCantorIntegrals:
    """Testes para momentos e integrais de funções da escada"""

    def test_momentos_fechados(self):
        """Testa ∫c = 1/2 e ∫c² = 3/10"""
        moments = cantor_moments(2)
        assert moments[0] == 1.0
        assert moments[1] == pytest.approx(0.5, rel=1e-15)
        assert moments[2] == pytest.approx(0.3, rel=1e-15)

    def test_esperanca_concorda_com_momentos(self):
        """Testa a regra auto-similar contra os momentos exatos"""
        moments = cantor_moments(4)
        for k in range(5):
            assert cantor_expectation(lambda s, k=k: s ** k) == pytest.approx(moments[k], rel=1e-8)

    def test_integral_num_terco(self):
        """Testa ∫_0^{1/3} c = (1/3)(1/2)(1/2) = 1/12"""
        value = cantor_integral(lambda s: s, 0.0, 1.0 / 3.0)
        assert value == pytest.approx(1.0 / 12.0, rel=1e-12)

    def test_integral_no_terco_central(self):
        """Testa ∫_{1/3}^{2/3} c = 1/6 (c ≡ 1/2)"""
        assert cantor_integral(lambda s: s, 1.0 / 3.0, 2.0 / 3.0) == pytest.approx(1.0 / 6.0, rel=1e-12)

    def test_aditividade(self):
        """Testa ∫_0^t + ∫_t^1 = ∫_0^1 num ponto arbitrário"""
        phi = lambda s: (1.0 + s) ** 2
        t = 0.4137
        whole = cantor_integral(phi, 0.0, 1.0)
        assert cantor_integral(phi, 0.0, t) + cantor_integral(phi, t, 1.0) == pytest.approx(whole, rel=1e-10)
        assert whole == pytest.approx(1.0 + 2.0 * 0.5 + 0.3, rel=1e-10)

    def test_intervalo_vazio(self):
        """Testa que t1 ≤ t0 dá zero"""
        assert cantor_integral(lambda s: s, 0.7, 0.2) == 0.0


@pytest.mark.unit
class TestPolynomials:
    """Testes para os utilitários polinomiais"""

    def test_raizes_reais_no_intervalo(self):
        """Testa as raízes de 1 - z² restritas a (-2, 2) e (0, 2)"""
        assert polynomials.real_roots((1.0, 0.0, -1.0), -2.0, 2.0) == pytest.approx([-1.0, 1.0])
        assert polynomials.real_roots((1.0, 0.0, -1.0), 0.0, 2.0) == pytest.approx([1.0])

    def test_raiz_dupla(self):
        """Testa que (z - 1/2)² tem raiz isolada em 1/2"""
        roots = polynomials.real_roots((0.25, -1.0, 1.0), 0.0, 1.0)
        assert roots == pytest.approx([0.5], abs=1e-7)

    def test_variacao_com_ponto_critico(self):
        """Testa TV(1 - z²; [-1, 1]) = 2"""
        assert polynomials.variation((1.0, 0.0, -1.0), -1.0, 1.0) == pytest.approx(2.0)

    def test_extremos(self):
        """Testa mínimo e máximo de z³ - z em [-1, 1]"""
        low, high = polynomials.extrema((0.0, -1.0, 0.0, 1.0), -1.0, 1.0)
        bound = 2.0 / (3.0 * np.sqrt(3.0))
        assert low == pytest.approx(-bound)
        assert high == pytest.approx(bound)

    def test_integral_exata(self):
        """Testa ∫_{-1}^{1} (1 - z²) = 4/3"""
        assert polynomials.antiderivative_delta((1.0, 0.0, -1.0), -1.0, 1.0) == pytest.approx(4.0 / 3.0)
