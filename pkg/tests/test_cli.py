"""Testes de integração da CLI (run com stdout/stderr em memória)"""
import csv
import io
import json
import math

import pytest

from config import settings
from core.exceptions import UsageError
from main import parse_depths, parse_window, run
from tests.test_counterexamples import expected_staircase_perimeter

BALL = {
    "schema_version": "1",
    "dimension": 3,
    "profile": {"breakpoints": [-1, 1], "pieces": [{"kind": "polynomial", "coefficients": ["pi", 0, "-pi"]}]},
}
STEP = {
    "schema_version": "1",
    "dimension": 3,
    "profile": {
        "breakpoints": [0, 1, 2],
        "pieces": [
            {"kind": "polynomial", "coefficients": ["pi"]},
            {"kind": "polynomial", "coefficients": ["4*pi"]},
        ],
    },
}
CANTOR = {
    "schema_version": "1",
    "dimension": 3,
    "profile": {"breakpoints": [0, 1], "pieces": [{"kind": "cantor", "coefficients": [1, 2, 1], "scale": "pi"}]},
}


def invoke(*argv):
    stdout, stderr = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


@pytest.fixture
def spec_file(tmp_path):
    def write(document, name="shape.profile"):
        path = tmp_path / name
        path.write_text(json.dumps(document, indent=2), encoding="utf-8")
        return path
    return write


@pytest.mark.integration
class TestCommands:
    """Testes dos subcomandos"""

    def test_rigidez_da_bola(self, spec_file):
        """Testa RIGID, J=(-1,1)"""
        code, out, _ = invoke("rigidity", spec_file(BALL))
        assert code == 0
        assert out == "RIGID, J=(-1,1)\n"

    def test_rigidez_do_degrau(self, spec_file):
        """Testa NOT RIGID com a falha de salto"""
        code, out, _ = invoke("rigidity", spec_file(STEP))
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "NOT RIGID"
        assert lines[1].startswith("  jump z=1 ")

    def test_rigidez_json(self, spec_file):
        """Testa a saída JSON do veredito"""
        code, out, _ = invoke("rigidity", spec_file(CANTOR), "--json")
        payload = json.loads(out)
        assert code == 0
        assert payload["rigid"] is False
        assert payload["failures"][0]["kind"] == "cantor"
        assert payload["failures"][0]["mass"] == pytest.approx(3.0 * math.pi)

    def test_perimetro_do_degrau(self, spec_file):
        """Testa o total 14π com 12 algarismos significativos"""
        code, out, _ = invoke("perimeter", spec_file(STEP))
        assert code == 0
        assert "total  43.9822971503\n" in out
        assert "jump   25.1327412287\n" in out

    def test_perimetro_em_janela(self, spec_file):
        """Testa a janela fechada [0,1]: 2π + π + 3π"""
        code, out, _ = invoke("perimeter", spec_file(STEP), "--window=0,1")
        assert code == 0
        assert out.splitlines()[0] == "window [0,1]"
        assert f"total  {format(6.0 * math.pi, '.12g')}\n" in out

    def test_janela_pontual(self, spec_file):
        """Testa a janela {1}"""
        code, out, _ = invoke("perimeter", spec_file(STEP), "--window", "1")
        assert code == 0
        assert f"total  {format(3.0 * math.pi, '.12g')}\n" in out

    def test_volume(self, spec_file):
        """Testa 4π/3"""
        code, out, _ = invoke("volume", spec_file(BALL))
        assert code == 0
        assert out == f"volume {format(4.0 * math.pi / 3.0, '.12g')}\n"

    def test_testemunha_de_salto(self, spec_file, tmp_path):
        """Testa a escrita da testemunha e a releitura pelo perimeter"""
        output = tmp_path / "jump.json"
        code, out, _ = invoke("witness", spec_file(STEP), "--kind", "jump", "--zbar", "1", "--tau", "0.5,0", "--output", output)
        assert code == 0
        assert out.splitlines()[-1] == "EQUALITY"
        written = json.loads(output.read_text(encoding="utf-8"))
        assert written["provenance"]["kind"] == "jump"

        code, out, _ = invoke("perimeter", output)
        assert code == 0
        assert "total  43.9822971503\n" in out

    def test_testemunha_com_caminho_padrao(self, spec_file):
        """Testa <spec>.<kind>.witness.json e a escolha automática de τ"""
        path = spec_file(STEP)
        code, _, _ = invoke("witness", path, "--kind", "jump")
        assert code == 0
        written = json.loads(path.with_name(path.name + ".jump.witness.json").read_text(encoding="utf-8"))
        assert written["provenance"]["tau"] == pytest.approx([0.5, 0.0])

    def test_testemunha_de_cantor(self, spec_file, tmp_path):
        """Testa --lambda como expressão"""
        output = tmp_path / "cantor.json"
        code, out, _ = invoke("witness", spec_file(CANTOR), "--kind", "cantor", "--lambda", "1/4", "--output", output)
        assert code == 0
        assert out.splitlines()[-1] == "EQUALITY"
        assert json.loads(output.read_text(encoding="utf-8"))["provenance"]["lam"] == 0.25

    def test_relatorio_csv(self, spec_file):
        """Testa cabeçalho, profundidades e valores do CSV"""
        code, out, _ = invoke("report", spec_file(CANTOR), "--depths", "1..3")
        assert code == 0
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ["k", "perimeter_symmetral", "perimeter_staircase"]
        assert [row[0] for row in rows[1:]] == ["1", "2", "3"]
        for row in rows[1:]:
            assert float(row[1]) == pytest.approx(expected_staircase_perimeter(int(row[0])), rel=1e-11)
            assert float(row[2]) == pytest.approx(float(row[1]), rel=1e-11)
        assert "\r" not in out

    def test_relatorio_em_arquivo(self, spec_file, tmp_path):
        """Testa --output"""
        output = tmp_path / "report.csv"
        code, _, _ = invoke("report", spec_file(CANTOR), "--depths", "2..2", "--output", output)
        assert code == 0
        assert output.read_text(encoding="utf-8").startswith("k,perimeter_symmetral,perimeter_staircase\n")

    def test_verificacao(self, spec_file):
        """Testa o oráculo com semente explícita"""
        code, out, _ = invoke("verify", spec_file(BALL), "--resolution", "200", "--seed", "7")
        assert code == 0
        assert "seed           7\n" in out
        assert "depth" not in out
        error = float(next(line for line in out.splitlines() if line.startswith("relative_error")).split()[1])
        assert error < 5e-3

    def test_verificacao_de_cantor_discretiza(self, spec_file):
        """Testa que o perfil de Cantor é medido pela escada diádica de profundidade --depth"""
        code, out, _ = invoke("verify", spec_file(CANTOR), "--resolution", "50", "--depth", "4", "--seed", "7")
        assert code == 0
        assert "depth          4\n" in out
        error = float(next(line for line in out.splitlines() if line.startswith("relative_error")).split()[1])
        assert error < 5e-3

    def test_verificacao_de_cantor_em_json(self, spec_file, mocker):
        """Testa a profundidade padrão vinda de VERIFY_DEPTH no payload JSON"""
        mocker.patch.object(settings, "verify_depth", 3)
        code, out, _ = invoke("verify", spec_file(CANTOR), "--resolution", "40", "--json")
        assert code == 0
        assert json.loads(out)["depth"] == 3


@pytest.mark.integration
class TestExitCodes:
    """Testes dos códigos de saída"""

    def test_subcomando_desconhecido(self):
        """Testa exit 64"""
        code, _, err = invoke("area", "x.profile")
        assert code == 64
        assert err

    def test_janela_invalida(self, spec_file):
        """Testa --window mal formada"""
        code, _, _ = invoke("perimeter", spec_file(STEP), "--window=2,1")
        assert code == 64

    def test_erro_de_leitura(self, tmp_path):
        """Testa exit 3 para JSON inválido e arquivo ausente"""
        broken = tmp_path / "broken.profile"
        broken.write_text("{", encoding="utf-8")
        assert invoke("rigidity", broken)[0] == 3
        assert invoke("rigidity", tmp_path / "missing.profile")[0] == 3

    def test_pre_condicao(self, spec_file):
        """Testa exit 2: a bola não tem salto"""
        code, _, err = invoke("witness", spec_file(BALL), "--kind", "jump")
        assert code == 2
        assert "erro" in err

    def test_ajuda(self):
        """Testa --help com exit 0"""
        assert invoke("--help")[0] == 0


@pytest.mark.unit
class TestArgumentParsing:
    """Testes para janelas e profundidades"""

    def test_janelas(self):
        """Testa a sintaxe de janelas"""
        assert str(parse_window("0,1")) == "[0,1]"
        assert str(parse_window("(0,1)")) == "(0,1)"
        assert str(parse_window("[0,1)")) == "[0,1)"
        assert str(parse_window("pi")) == "{3.14159}"
        assert str(parse_window(None)) == "(-inf,inf)"

    def test_profundidades(self):
        """Testa k1..k2"""
        assert parse_depths("1..12") == range(1, 13)
        with pytest.raises(UsageError):
            parse_depths("3..1")
        with pytest.raises(UsageError):
            parse_depths("1-3")


@pytest.mark.integration
class TestErrorLogging:
    """Testes para o registro de falhas"""

    def test_falha_registrada(self, spec_file, mocker):
        """Testa que a falha passa por log_error antes do código de saída"""
        log_error = mocker.patch("main.log_error")
        code, _, _ = invoke("witness", spec_file(BALL), "--kind", "split")
        assert code == 2
        log_error.assert_called_once()
        assert log_error.call_args.args[1] == "PreconditionError"
