"""Testes unitários para a leitura e escrita de ProfileSpec"""
import json
import math

import pytest

from core.exceptions import SpecParseError
from geometry.counterexamples import cantor_witness, jump_witness
from parsers.profile_parser import (
    document_from_tube,
    dump_profile_spec,
    load_profile_spec,
    locate,
    parse_profile_spec,
)
from profiles.bv_profile import CantorPiece, PolynomialPiece

BALL_SPEC = """{
  "schema_version": "1",
  "dimension": 3,
  "profile": {
    "breakpoints": [-1, 1],
    "pieces": [{"kind": "polynomial", "coefficients": ["pi", 0, "-pi"]}]
  }
}
"""

CANTOR_SPEC = {
    "schema_version": "1",
    "dimension": 3,
    "profile": {
        "breakpoints": [0, 1],
        "pieces": [{"kind": "cantor", "coefficients": [1, 2, 1], "scale": "pi"}]
    },
    "drift": {
        "breakpoints": [0, 1],
        "pieces": [{"kind": "cantor", "scale": 0.5}],
        "tails": [0, 0.5]
    },
    "direction": [0, 2]
}


def with_changes(base: dict, **changes) -> str:
    document = json.loads(json.dumps(base))
    document.update(changes)
    return json.dumps(document, indent=2)


@pytest.mark.unit
class TestParseProfileSpec:
    """Testes para documentos válidos"""

    def test_bola_com_expressoes(self):
        """Testa coeficientes escritos como expressões"""
        document = parse_profile_spec(BALL_SPEC)
        assert document.dimension == 3
        piece = document.profile.base.pieces[0]
        assert isinstance(piece, PolynomialPiece)
        assert piece.coefficients == pytest.approx((math.pi, 0.0, -math.pi))
        assert document.drift is None
        assert document.tube().direction == (1.0, 0.0)

    def test_cantor_com_deriva(self):
        """Testa pedaços de Cantor, caudas da deriva e normalização da direção"""
        document = parse_profile_spec(json.dumps(CANTOR_SPEC))
        assert isinstance(document.profile.base.pieces[0], CantorPiece)
        assert document.profile.base.pieces[0].scale == pytest.approx(math.pi)
        assert document.drift.tail_right == 0.5
        assert document.direction == pytest.approx((0.0, 1.0))

    def test_carregar_arquivo(self, tmp_path):
        """Testa a leitura a partir de um caminho"""
        path = tmp_path / "ball.profile"
        path.write_text(BALL_SPEC, encoding="utf-8")
        assert load_profile_spec(path).dimension == 3

    def test_arquivo_inexistente(self, tmp_path):
        """Testa que um arquivo ausente vira SpecParseError"""
        with pytest.raises(SpecParseError):
            load_profile_spec(tmp_path / "nada.profile")


@pytest.mark.unit
class TestSpecErrors:
    """Testes para erros posicionados"""

    def test_json_invalido(self):
        """Testa linha e coluna do decodificador"""
        with pytest.raises(SpecParseError) as excinfo:
            parse_profile_spec('{\n  "schema_version": "1",\n  "dimension": 3,,\n}')
        assert excinfo.value.line == 3

    def test_versao_errada(self):
        """Testa schema_version diferente de "1" """
        with pytest.raises(SpecParseError) as excinfo:
            parse_profile_spec(with_changes(CANTOR_SPEC, schema_version="2"))
        assert excinfo.value.field_path == "schema_version"
        assert excinfo.value.line == 2

    def test_expressao_invalida_aponta_campo(self):
        """Testa o caminho e a linha de um coeficiente inválido"""
        text = BALL_SPEC.replace('"-pi"', '"-tau"')
        with pytest.raises(SpecParseError) as excinfo:
            parse_profile_spec(text)
        assert excinfo.value.field_path == "profile.pieces[0].coefficients[2]"
        assert excinfo.value.line == 6

    def test_perfil_negativo(self):
        """Testa a recusa de ℓ < 0"""
        text = BALL_SPEC.replace('["pi", 0, "-pi"]', '[-1]')
        with pytest.raises(SpecParseError) as excinfo:
            parse_profile_spec(text)
        assert excinfo.value.field_path == "profile"

    def test_caudas_no_perfil(self):
        """Testa que o perfil não aceita caudas não nulas"""
        spec = json.loads(json.dumps(CANTOR_SPEC))
        spec["profile"]["tails"] = [0, 1]
        with pytest.raises(SpecParseError) as excinfo:
            parse_profile_spec(json.dumps(spec))
        assert excinfo.value.field_path == "profile.tails"

    def test_pedacos_e_pontos_incompativeis(self):
        """Testa contagem de pedaços diferente de pontos de quebra - 1"""
        spec = json.loads(json.dumps(CANTOR_SPEC))
        spec["profile"]["breakpoints"] = [0, 1, 2]
        with pytest.raises(SpecParseError) as excinfo:
            parse_profile_spec(json.dumps(spec))
        assert excinfo.value.field_path == "profile"

    @pytest.mark.parametrize("changes,field", [
        ({"dimension": 1}, "dimension"),
        ({"dimension": True}, "dimension"),
        ({"direction": [0, 0]}, "direction"),
        ({"direction": [1]}, "direction"),
        ({"extra": 1}, "extra"),
    ])
    def test_campos_invalidos(self, changes, field):
        """Testa o caminho reportado para campos de topo inválidos"""
        with pytest.raises(SpecParseError) as excinfo:
            parse_profile_spec(with_changes(CANTOR_SPEC, **changes))
        assert excinfo.value.field_path == field

    def test_tipo_de_pedaco_desconhecido(self):
        """Testa kind fora de polynomial/cantor"""
        spec = json.loads(json.dumps(CANTOR_SPEC))
        spec["profile"]["pieces"][0]["kind"] = "spline"
        with pytest.raises(SpecParseError) as excinfo:
            parse_profile_spec(json.dumps(spec))
        assert excinfo.value.field_path == "profile.pieces[0].kind"

    def test_locate(self):
        """Testa a localização por caminho"""
        assert locate(BALL_SPEC, ["dimension"]) == (3, 16)
        assert locate(BALL_SPEC, ["profile", "breakpoints", 1]) == (5, 25)


@pytest.mark.unit
class TestDumpProfileSpec:
    """Testes para a escrita de documentos"""

    def test_testemunha_de_salto_relida(self, step):
        """Testa que uma testemunha escrita é relida com a mesma deriva e proveniência"""
        witness = jump_witness(step, 1.0, (0.0, 0.5))
        text = dump_profile_spec(document_from_tube(witness.tube, witness.kind.value, witness.provenance))
        document = parse_profile_spec(text)
        assert document.profile == step
        assert document.drift == witness.tube.drift
        assert document.direction == witness.tube.direction
        assert document.witness_kind == "jump"
        assert document.provenance == witness.provenance

    def test_testemunha_de_cantor_relida(self, cantor):
        """Testa pedaços de Cantor e intervalo da proveniência"""
        witness = cantor_witness(cantor, 0.5)
        text = dump_profile_spec(document_from_tube(witness.tube, witness.kind.value, witness.provenance))
        document = parse_profile_spec(text)
        assert document.tube() == witness.tube
        assert str(document.provenance.interval) == "(0,1)"
