"""
CLI: perímetro, volume, rigidez, testemunhas, verificação e relatórios.

    python main.py perimeter ball.profile --window=-1,1
    python main.py rigidity step.profile
    python main.py witness step.profile --kind jump --zbar 1 --tau 0.5,0
    python main.py verify ball.profile --resolution 400 --seed 7
    python main.py report cantor.profile --depths 1..12

Resultados vão para stdout; logs estruturados para stderr.
"""
import argparse
import csv
import json
import re
import sys
import traceback
from pathlib import Path
from typing import List, Optional, Sequence, TextIO, Tuple

import numpy as np
from pydantic import ValidationError

from config import settings
from core.exceptions import PreconditionError, SchwarzError, UsageError
from core.logging import (
    add_run_id_to_context,
    configure_logging,
    get_logger,
    log_error,
    log_pipeline_end,
    log_pipeline_start,
)
from geometry.counterexamples import (
    WitnessKind,
    cantor_witness,
    certify_cantor_witness,
    discretize_profile,
    jump_witness,
    split_witness,
    witness_for,
)
from geometry.rigidity import decide
from geometry.symmetral import (
    TubeSet,
    check_inequality,
    perimeter_symmetral,
    perimeter_tube,
    unit_direction,
    volume,
)
from models import (
    CantorMassWitness,
    DisconnectedWitness,
    Interval,
    JumpWitness,
    RigidityVerdict,
)
from oracle.numeric_oracle import compare_perimeter, oracle_density
from parsers.profile_parser import (
    ProfileDocument,
    document_from_tube,
    dump_profile_spec,
    load_profile_spec,
)
from parsers.utils.expression_parser import ExpressionError, evaluate_expression
from profiles.bv_profile import positivity_intervals

logger = get_logger(__name__)

CSV_HEADER = ("k", "perimeter_symmetral", "perimeter_staircase")
DEPTHS_PATTERN = re.compile(r"^\s*(\d+)\s*\.\.\s*(\d+)\s*$")


class CliParser(argparse.ArgumentParser):
    """ArgumentParser que transforma erros de uso em UsageError (exit 64)"""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _fmt(value: float) -> str:
    return format(value, ".12g")


def _numbers(text: str, flag: str) -> List[float]:
    try:
        return [evaluate_expression(part) for part in text.split(",")]
    except ExpressionError as e:
        raise UsageError(f"{flag}: {e.message}")


def parse_window(text: Optional[str]) -> Interval:
    """
    "a,b" → [a, b]; colchetes e parênteses escolhem extremos fechados/abertos
    ("(0,1)", "[0,1)"); um único número é a janela pontual {z̄}.
    """
    if text is None:
        return Interval.real_line()
    text = text.strip()
    closed_lo, closed_hi = True, True
    if text[:1] in "([":
        closed_lo = text[0] == "["
        text = text[1:]
    if text[-1:] in ")]":
        closed_hi = text[-1] == "]"
        text = text[:-1]
    values = _numbers(text, "--window")
    if len(values) == 1:
        return Interval.point(values[0])
    if len(values) != 2 or values[0] > values[1]:
        raise UsageError(f"--window: esperado a,b com a ≤ b, recebeu {text!r}")
    return Interval(lo=values[0], hi=values[1], closed_lo=closed_lo, closed_hi=closed_hi)


def parse_depths(text: str) -> range:
    match = DEPTHS_PATTERN.match(text)
    if not match:
        raise UsageError(f"--depths: esperado k1..k2, recebeu {text!r}")
    first, last = int(match.group(1)), int(match.group(2))
    if first < 1 or last < first:
        raise UsageError(f"--depths: intervalo inválido {text!r}")
    return range(first, last + 1)


def build_parser() -> CliParser:
    parser = CliParser(prog="schwarz", description="Simetrais de Schwarz, perímetro e rigidez")
    parser.add_argument("--log-level", default=None, help="Nível de log (stderr)")
    parser.add_argument("--log-json", action="store_true", help="Logs em JSON")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name: str, help_text: str) -> CliParser:
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("spec", help="Arquivo ProfileSpec (JSON, schema_version \"1\")")
        sub.add_argument("--json", action="store_true", help="Saída em JSON")
        return sub

    perimeter = command("perimeter", "P(E; B × R^{n-1}) com partes a.c./salto/Cantor")
    perimeter.add_argument("--window", default=None, help="Janela a,b (colchetes/parênteses opcionais)")

    command("volume", "H^n(E)")
    command("rigidity", "Veredito de rigidez com testemunhas de falha")

    witness = command("witness", "Gera um conjunto testemunha de igualdade")
    witness.add_argument("--kind", required=True, choices=[k.value for k in (WitnessKind.SPLIT, WitnessKind.JUMP, WitnessKind.CANTOR)])
    witness.add_argument("--zbar", default=None)
    witness.add_argument("--tau", default=None, help="Vetor x,y de R^{n-1}")
    witness.add_argument("--lambda", dest="lam", default=None)
    witness.add_argument("--direction", default=None, help="Vetor x,y de R^{n-1}")
    witness.add_argument("--output", default=None)

    verify = command(
        "verify",
        "Perímetro analítico contra o oráculo numérico; pedaços de Cantor do perfil são "
        "trocados pela escada diádica de profundidade --depth (deriva de Cantor é recusada, exit 2)"
    )
    verify.add_argument("--resolution", type=int, default=None)
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--depth", type=int, default=None, help="Profundidade diádica (padrão VERIFY_DEPTH)")

    report = command("report", "CSV de convergência do esquema de escadas")
    report.add_argument("--depths", required=True, help="k1..k2")
    report.add_argument("--lambda", dest="lam", default="1/2")
    report.add_argument("--direction", default=None)
    report.add_argument("--output", default=None)

    return parser


def _scalar(text: Optional[str], flag: str) -> Optional[float]:
    if text is None:
        return None
    values = _numbers(text, flag)
    if len(values) != 1:
        raise UsageError(f"{flag}: esperado um número")
    return values[0]


def _vector(text: Optional[str], flag: str) -> Optional[Tuple[float, ...]]:
    if text is None:
        return None
    return tuple(_numbers(text, flag))


def cmd_perimeter(args, document: ProfileDocument, out: TextIO) -> None:
    window = parse_window(args.window)
    if document.drift is None:
        breakdown = perimeter_symmetral(document.profile, window)
    else:
        breakdown = perimeter_tube(document.tube(), window)
    if args.json:
        out.write(breakdown.model_dump_json() + "\n")
        return
    out.write(f"window {breakdown.window}\n")
    out.write(f"ac     {_fmt(breakdown.ac_part)}\n")
    out.write(f"jump   {_fmt(breakdown.jump_part)}\n")
    out.write(f"cantor {_fmt(breakdown.cantor_part)}\n")
    out.write(f"total  {_fmt(breakdown.total)}\n")


def cmd_volume(args, document: ProfileDocument, out: TextIO) -> None:
    value = volume(document.profile)
    if args.json:
        out.write(json.dumps({"volume": value}) + "\n")
        return
    out.write(f"volume {_fmt(value)}\n")


def format_verdict(verdict: RigidityVerdict) -> str:
    """Texto do veredito: "RIGID, J=(-1,1)" ou "NOT RIGID" seguido das falhas"""
    if verdict.rigid:
        interval = str(verdict.interval) if verdict.interval else "{}"
        return f"RIGID, J={interval}\n"
    lines = ["NOT RIGID"]
    for failure in verdict.failures:
        if isinstance(failure, DisconnectedWitness):
            lines.append(f"  disconnected z={_fmt(failure.z)}")
        elif isinstance(failure, JumpWitness):
            lines.append(
                f"  jump z={_fmt(failure.z)} lower={_fmt(failure.lower)} upper={_fmt(failure.upper)}"
            )
        elif isinstance(failure, CantorMassWitness):
            lines.append(f"  cantor interval={failure.interval} mass={_fmt(failure.mass)}")
    return "\n".join(lines) + "\n"


def cmd_rigidity(args, document: ProfileDocument, out: TextIO) -> None:
    verdict = decide(document.profile)
    if args.json:
        out.write(verdict.model_dump_json() + "\n")
        return
    out.write(format_verdict(verdict))


def _failure_of_kind(document: ProfileDocument, kind: str):
    wanted = {
        WitnessKind.SPLIT.value: DisconnectedWitness,
        WitnessKind.JUMP.value: JumpWitness,
        WitnessKind.CANTOR.value: CantorMassWitness,
    }[kind]
    for failure in decide(document.profile).failures:
        if isinstance(failure, wanted):
            return failure
    raise PreconditionError(f"perfil não tem falha de rigidez do tipo {kind!r}")


def build_witness(args, document: ProfileDocument):
    profile = document.profile
    direction = _vector(args.direction, "--direction")
    z_bar = _scalar(args.zbar, "--zbar")
    tau = _vector(args.tau, "--tau")
    lam = _scalar(args.lam, "--lambda")

    if args.kind == WitnessKind.CANTOR.value:
        return cantor_witness(profile, 0.5 if lam is None else lam, direction)
    if z_bar is None and tau is None:
        return witness_for(profile, _failure_of_kind(document, args.kind), direction)
    if z_bar is None:
        z_bar = _failure_of_kind(document, args.kind).z
    if tau is None:
        # Mesmas escolhas de witness_for: |τ| = 1 no corte, metade da cota no salto
        unit = np.asarray(unit_direction(direction or (1.0,) + (0.0,) * (profile.dimension - 2), profile.dimension))
        if args.kind == WitnessKind.SPLIT.value:
            tau = tuple(unit)
        else:
            r_lower, r_upper = profile.radius.approx_limits(z_bar)
            tau = tuple(0.5 * (r_upper - r_lower) * unit)
    if args.kind == WitnessKind.SPLIT.value:
        return split_witness(profile, z_bar, tau)
    return jump_witness(profile, z_bar, tau)


def cmd_witness(args, document: ProfileDocument, out: TextIO) -> None:
    witness = build_witness(args, document)
    output = Path(args.output or f"{args.spec}.{args.kind}.witness.json")
    text = dump_profile_spec(document_from_tube(witness.tube, witness.kind.value, witness.provenance))
    output.write_text(text, encoding="utf-8")

    check = check_inequality(witness.tube)
    if args.json:
        payload = {"output": str(output), "kind": witness.kind.value, "check": check.model_dump()}
        out.write(json.dumps(payload) + "\n")
        return
    out.write(f"witness {witness.kind.value} -> {output}\n")
    out.write(f"P(E)   {_fmt(check.p_e)}\n")
    out.write(f"P(F_l) {_fmt(check.p_f)}\n")
    out.write(f"gap    {_fmt(check.gap)}\n")
    out.write(f"{'EQUALITY' if check.is_equality() else ('HOLDS' if check.holds else 'VIOLATED')}\n")


def _probe_points(document: ProfileDocument) -> List[Tuple[str, np.ndarray]]:
    """Ponto no interior de uma fatia e ponto da fronteira lateral, no meio do primeiro intervalo de positividade"""
    intervals = positivity_intervals(document.profile)
    if not intervals:
        return []
    tube = document.tube()
    z = intervals[0].midpoint
    radius = tube.profile.radius(z)
    direction = np.asarray(tube.direction)
    center = tube.drift(z) * direction
    interior = np.concatenate([[z], center])
    boundary = np.concatenate([[z], center + radius * direction])
    return [("interior", interior), ("boundary", boundary)]


def oracle_tube(document: ProfileDocument, depth: int) -> Tuple[TubeSet, bool]:
    """
    Tubo medido pelo oráculo: cada pedaço de Cantor do perfil vira a escada
    diádica ℓᵏ do seu intervalo.

    Returns:
        (tubo, True se algum pedaço foi discretizado)
    """
    tube = document.tube()
    profile = tube.profile
    cantor_cells = [
        Interval.closed(lo, hi)
        for _, piece, lo, hi in profile.base.iter_pieces()
        if piece.has_cantor_part
    ]
    for cell in cantor_cells:
        profile = discretize_profile(profile, depth, cell)
    if not cantor_cells:
        return tube, False
    return TubeSet(profile=profile, drift=tube.drift, direction=tube.direction), True


def cmd_verify(args, document: ProfileDocument, out: TextIO) -> None:
    seed = settings.default_seed if args.seed is None else args.seed
    depth = settings.verify_depth if args.depth is None else args.depth
    tube, discretized = oracle_tube(document, depth)
    comparison = compare_perimeter(tube, args.resolution)
    probes = [
        (label, point, oracle_density(tube, point, seed=seed))
        for label, point in _probe_points(document)
    ]
    if args.json:
        payload = {
            "comparison": comparison.model_dump(),
            "seed": seed,
            "depth": depth if discretized else None,
            "densities": [
                {"probe": label, "point": point.tolist(), "estimate": estimate.model_dump()}
                for label, point, estimate in probes
            ],
        }
        out.write(json.dumps(payload) + "\n")
        return
    out.write(f"analytic       {_fmt(comparison.analytic)}\n")
    out.write(f"oracle         {_fmt(comparison.oracle)}\n")
    out.write(f"relative_error {_fmt(comparison.relative_error)}\n")
    out.write(f"resolution     {comparison.resolution}\n")
    out.write(f"seed           {seed}\n")
    if discretized:
        out.write(f"depth          {depth}\n")
    for label, point, estimate in probes:
        coordinates = ",".join(_fmt(float(c)) for c in point)
        out.write(
            f"density {label} ({coordinates}) "
            f"theta=[{_fmt(estimate.theta_lower)},{_fmt(estimate.theta_upper)}]\n"
        )


def write_report(rows, stream: TextIO) -> None:
    """CSV de convergência: cabeçalho fixo, 12 algarismos significativos, LF"""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow((row.k, _fmt(row.perimeter_symmetral), _fmt(row.perimeter_staircase)))


def cmd_report(args, document: ProfileDocument, out: TextIO) -> None:
    depths = parse_depths(args.depths)
    lam = _scalar(args.lam, "--lambda")
    rows = certify_cantor_witness(
        document.profile, lam, _vector(args.direction, "--direction"), depths=depths
    )
    if args.json:
        out.write(json.dumps([row.model_dump() for row in rows]) + "\n")
        return
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as stream:
            write_report(rows, stream)
        out.write(f"report -> {args.output}\n")
        return
    write_report(rows, out)


COMMANDS = {
    "perimeter": cmd_perimeter,
    "volume": cmd_volume,
    "rigidity": cmd_rigidity,
    "witness": cmd_witness,
    "verify": cmd_verify,
    "report": cmd_report,
}


def run(argv: Optional[Sequence[str]] = None, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None) -> int:
    """
    Executa um subcomando e devolve o código de saída.

    0 sucesso, 1 erro interno, 2 pré-condição violada, 3 erro de leitura da
    especificação, 64 uso incorreto.
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()

    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        stderr.write(f"{e}\n")
        return e.exit_code
    except SystemExit as e:
        # --help
        return int(e.code or 0)

    configure_logging(
        log_level=args.log_level or settings.log_level,
        json_logs=args.log_json or settings.log_format_json,
        include_timestamp=settings.log_include_timestamp,
        stream=stderr
    )
    add_run_id_to_context()
    context = log_pipeline_start(logger, args.command, spec_path=args.spec)

    exit_code = 0
    try:
        document = load_profile_spec(args.spec)
        COMMANDS[args.command](args, document, stdout)
    except SchwarzError as e:
        exit_code = e.exit_code
        log_error(logger, type(e).__name__, str(e), command=args.command, spec_path=args.spec)
        stderr.write(f"erro: {e}\n")
    except ValidationError as e:
        exit_code = PreconditionError.exit_code
        log_error(logger, "ValidationError", str(e), command=args.command, spec_path=args.spec)
        stderr.write(f"erro: {e}\n")
    except Exception as e:
        exit_code = 1
        log_error(
            logger, "UnexpectedError", str(e),
            command=args.command, spec_path=args.spec, stacktrace=traceback.format_exc()
        )
        stderr.write(f"erro interno: {e}\n")

    log_pipeline_end(logger, args.command, exit_code, context["start_time"])
    return exit_code


if __name__ == "__main__":
    sys.exit(run())
