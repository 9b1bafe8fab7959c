"""
Leitura e escrita de documentos ProfileSpec (JSON, schema_version "1").

{
  "schema_version": "1",
  "dimension": 3,
  "profile": {"breakpoints": [...], "pieces": [...], "tails": [0, 0]},
  "drift": {...},            (opcional, mesmo esquema)
  "direction": [1, 0],       (opcional)
  "provenance": {...}        (opcional, escrito por `witness`)
}

Números podem ser expressões constantes em string ("pi*4").
"""
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, ValidationError

from core.exceptions import SpecParseError
from core.logging import get_logger, log_validation_error
from geometry.symmetral import DIRECTION_TOLERANCE, TubeSet, unit_direction
from models import Interval, WitnessProvenance
from parsers.utils.expression_parser import ExpressionError, evaluate_expression
from profiles.bv_profile import BVFunction, CantorPiece, PolynomialPiece, Profile

logger = get_logger(__name__)

SCHEMA_VERSION = "1"

PathPart = Union[str, int]


class ProfileDocument(BaseModel):
    """Conteúdo de um ProfileSpec já validado"""
    model_config = ConfigDict(frozen=True)

    profile: Profile
    drift: Optional[BVFunction] = None
    direction: Optional[Tuple[float, ...]] = None
    witness_kind: Optional[str] = None
    provenance: Optional[WitnessProvenance] = None

    @property
    def dimension(self) -> int:
        return self.profile.dimension

    def tube(self) -> TubeSet:
        """Tubo descrito pelo documento (deriva nula e e₁ quando ausentes)"""
        return TubeSet(profile=self.profile, drift=self.drift, direction=self.direction)


def _format_path(path: List[PathPart]) -> str:
    text = ""
    for part in path:
        if isinstance(part, int):
            text += f"[{part}]"
        else:
            text += f".{part}" if text else part
    return text


def _skip_whitespace(text: str, index: int) -> int:
    while index < len(text) and text[index] in " \t\r\n":
        index += 1
    return index


def locate(text: str, path: List[PathPart]) -> Tuple[int, int]:
    """
    (linha, coluna) 1-based do valor no caminho path de um JSON válido.

    Para no contêiner mais profundo encontrado quando o caminho não existe.
    """
    decoder = json.JSONDecoder()
    index = _skip_whitespace(text, 0)
    for part in path:
        found = None
        if isinstance(part, str) and text.startswith("{", index):
            cursor = _skip_whitespace(text, index + 1)
            while cursor < len(text) and text[cursor] != "}":
                key, cursor = decoder.raw_decode(text, cursor)
                cursor = _skip_whitespace(text, cursor)
                cursor = _skip_whitespace(text, cursor + 1)  # ':'
                if key == part:
                    found = cursor
                    break
                _, cursor = decoder.raw_decode(text, cursor)
                cursor = _skip_whitespace(text, cursor)
                if text.startswith(",", cursor):
                    cursor = _skip_whitespace(text, cursor + 1)
        elif isinstance(part, int) and text.startswith("[", index):
            cursor = _skip_whitespace(text, index + 1)
            position = 0
            while cursor < len(text) and text[cursor] != "]":
                if position == part:
                    found = cursor
                    break
                _, cursor = decoder.raw_decode(text, cursor)
                cursor = _skip_whitespace(text, cursor)
                if text.startswith(",", cursor):
                    cursor = _skip_whitespace(text, cursor + 1)
                position += 1
        if found is None:
            break
        index = found

    line = text.count("\n", 0, index) + 1
    column = index - text.rfind("\n", 0, index)
    return line, column


class ProfileSpecParser:
    """Valida um documento decodificado, reportando erros pelo caminho do campo"""

    def __init__(self, text: str):
        self.text = text

    def error(self, message: str, path: List[PathPart]) -> SpecParseError:
        line, column = locate(self.text, path)
        field_path = _format_path(path)
        log_validation_error(logger, field_path or "<raiz>", message)
        return SpecParseError(message, line=line, column=column, field_path=field_path or None)

    def parse(self) -> ProfileDocument:
        try:
            root = json.loads(self.text)
        except json.JSONDecodeError as e:
            log_validation_error(logger, "<json>", e.msg)
            raise SpecParseError(f"JSON inválido: {e.msg}", line=e.lineno, column=e.colno)

        if not isinstance(root, dict):
            raise self.error("documento deve ser um objeto", [])
        version = root.get("schema_version")
        if version is None:
            raise self.error("schema_version ausente", ["schema_version"])
        if str(version) != SCHEMA_VERSION:
            raise self.error(f"schema_version {version!r} não suportada (esperado \"1\")", ["schema_version"])

        dimension = root.get("dimension")
        if isinstance(dimension, bool) or not isinstance(dimension, int) or dimension < 2:
            raise self.error("dimension deve ser um inteiro ≥ 2", ["dimension"])

        if "profile" not in root:
            raise self.error("profile ausente", ["profile"])
        base = self.function(root["profile"], ["profile"], allow_tails=False)
        try:
            profile = Profile(base=base, dimension=dimension)
        except ValidationError as e:
            raise self.error(_first_message(e), ["profile"])

        drift = None
        if root.get("drift") is not None:
            drift = self.function(root["drift"], ["drift"], allow_tails=True)

        direction = None
        if root.get("direction") is not None:
            direction = self.direction(root["direction"], dimension)

        witness_kind, provenance = None, None
        if root.get("provenance") is not None:
            witness_kind, provenance = self.provenance(root["provenance"])

        unknown = set(root) - {"schema_version", "dimension", "profile", "drift", "direction", "provenance"}
        if unknown:
            key = sorted(unknown)[0]
            raise self.error(f"campo desconhecido {key!r}", [key])

        return ProfileDocument(
            profile=profile,
            drift=drift,
            direction=direction,
            witness_kind=witness_kind,
            provenance=provenance
        )

    def number(self, value: Any, path: List[PathPart]) -> float:
        try:
            return evaluate_expression(value)
        except ExpressionError as e:
            raise self.error(e.message, path)

    def numbers(self, value: Any, path: List[PathPart], min_length: int = 1) -> Tuple[float, ...]:
        if not isinstance(value, list):
            raise self.error("esperada uma lista de números", path)
        if len(value) < min_length:
            raise self.error(f"lista deve ter pelo menos {min_length} elementos", path)
        return tuple(self.number(item, path + [i]) for i, item in enumerate(value))

    def piece(self, spec: Any, path: List[PathPart]):
        if not isinstance(spec, dict):
            raise self.error("pedaço deve ser um objeto", path)
        kind = spec.get("kind")
        try:
            if kind == "polynomial":
                if "coefficients" not in spec:
                    raise self.error("coefficients ausente", path + ["coefficients"])
                return PolynomialPiece(coefficients=self.numbers(spec["coefficients"], path + ["coefficients"]))
            if kind == "cantor":
                fields: Dict[str, Any] = {}
                if "coefficients" in spec:
                    fields["coefficients"] = self.numbers(spec["coefficients"], path + ["coefficients"])
                for name in ("exponent", "scale", "shift"):
                    if name in spec:
                        fields[name] = self.number(spec[name], path + [name])
                if "reversed" in spec:
                    if not isinstance(spec["reversed"], bool):
                        raise self.error("reversed deve ser booleano", path + ["reversed"])
                    fields["reversed"] = spec["reversed"]
                return CantorPiece(**fields)
        except ValidationError as e:
            raise self.error(_first_message(e), path)
        raise self.error(f"kind deve ser 'polynomial' ou 'cantor', recebeu {kind!r}", path + ["kind"])

    def function(self, spec: Any, path: List[PathPart], allow_tails: bool) -> BVFunction:
        if not isinstance(spec, dict):
            raise self.error("função deve ser um objeto", path)
        if "breakpoints" not in spec:
            raise self.error("breakpoints ausente", path + ["breakpoints"])
        if "pieces" not in spec:
            raise self.error("pieces ausente", path + ["pieces"])
        breakpoints = self.numbers(spec["breakpoints"], path + ["breakpoints"], min_length=2)
        if not isinstance(spec["pieces"], list):
            raise self.error("pieces deve ser uma lista", path + ["pieces"])
        pieces = tuple(self.piece(item, path + ["pieces", i]) for i, item in enumerate(spec["pieces"]))

        tails = (0.0, 0.0)
        if spec.get("tails") is not None:
            tails = self.numbers(spec["tails"], path + ["tails"], min_length=2)
            if len(tails) != 2:
                raise self.error("tails deve ter dois elementos", path + ["tails"])
            if not allow_tails and tails != (0.0, 0.0):
                raise self.error("perfil deve ter caudas nulas", path + ["tails"])

        try:
            return BVFunction(breakpoints=breakpoints, pieces=pieces, tail_left=tails[0], tail_right=tails[1])
        except ValidationError as e:
            raise self.error(_first_message(e), path)

    def direction(self, value: Any, dimension: int) -> Tuple[float, ...]:
        components = self.numbers(value, ["direction"])
        if len(components) != dimension - 1:
            raise self.error(f"direction deve ter {dimension - 1} componentes", ["direction"])
        norm = math.sqrt(sum(c * c for c in components))
        if norm == 0.0:
            raise self.error("direction não pode ser nula", ["direction"])
        if abs(norm - 1.0) <= DIRECTION_TOLERANCE:
            return components
        return unit_direction(components, dimension)

    def provenance(self, spec: Any) -> Tuple[Optional[str], WitnessProvenance]:
        path: List[PathPart] = ["provenance"]
        if not isinstance(spec, dict):
            raise self.error("provenance deve ser um objeto", path)
        fields: Dict[str, Any] = {}
        for name in ("z_bar", "lam", "r_base"):
            if spec.get(name) is not None:
                fields[name] = self.number(spec[name], path + [name])
        for name in ("tau", "direction"):
            if spec.get(name) is not None:
                fields[name] = self.numbers(spec[name], path + [name])
        if spec.get("depth") is not None:
            if isinstance(spec["depth"], bool) or not isinstance(spec["depth"], int):
                raise self.error("depth deve ser inteiro", path + ["depth"])
            fields["depth"] = spec["depth"]
        if spec.get("interval") is not None:
            interval = spec["interval"]
            try:
                fields["interval"] = Interval(
                    lo=self.number(interval.get("lo"), path + ["interval", "lo"]),
                    hi=self.number(interval.get("hi"), path + ["interval", "hi"]),
                    closed_lo=bool(interval.get("closed_lo", False)),
                    closed_hi=bool(interval.get("closed_hi", False))
                )
            except (AttributeError, ValidationError) as e:
                raise self.error(f"interval inválido: {e}", path + ["interval"])
        fields.setdefault("direction", ())
        try:
            return spec.get("kind"), WitnessProvenance(**fields)
        except ValidationError as e:
            raise self.error(_first_message(e), path)


def _first_message(error: ValidationError) -> str:
    first = error.errors()[0]
    return first.get("msg", str(error))


def parse_profile_spec(text: str) -> ProfileDocument:
    """
    Interpreta o texto de um ProfileSpec.

    Raises:
        SpecParseError: JSON inválido ou esquema violado (com linha/coluna e caminho)
    """
    return ProfileSpecParser(text).parse()


def load_profile_spec(path: Union[str, Path]) -> ProfileDocument:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise SpecParseError(f"não foi possível ler {path}: {e}")
    document = parse_profile_spec(text)
    logger.debug("profile_spec_loaded", path=str(path), dimension=document.dimension)
    return document


def _piece_spec(piece) -> Dict[str, Any]:
    if isinstance(piece, PolynomialPiece):
        return {"kind": "polynomial", "coefficients": list(piece.coefficients)}
    return {
        "kind": "cantor",
        "coefficients": list(piece.coefficients),
        "exponent": piece.exponent,
        "scale": piece.scale,
        "shift": piece.shift,
        "reversed": piece.reversed,
    }


def _function_spec(function: BVFunction) -> Dict[str, Any]:
    return {
        "breakpoints": list(function.breakpoints),
        "pieces": [_piece_spec(piece) for piece in function.pieces],
        "tails": [function.tail_left, function.tail_right],
    }


def _provenance_spec(kind: Optional[str], provenance: WitnessProvenance) -> Dict[str, Any]:
    spec: Dict[str, Any] = {"kind": kind}
    data = provenance.model_dump(exclude_none=True)
    for name, value in data.items():
        spec[name] = list(value) if isinstance(value, tuple) else value
    return spec


def dump_profile_spec(document: ProfileDocument) -> str:
    """Serializa um documento; floats saem com repr exato (releitura idêntica)"""
    root: Dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "dimension": document.dimension,
        "profile": _function_spec(document.profile.base),
    }
    if document.drift is not None:
        root["drift"] = _function_spec(document.drift)
    if document.direction is not None:
        root["direction"] = list(document.direction)
    if document.provenance is not None:
        root["provenance"] = _provenance_spec(document.witness_kind, document.provenance)
    return json.dumps(root, indent=2) + "\n"


def document_from_tube(
    tube: TubeSet,
    witness_kind: Optional[str] = None,
    provenance: Optional[WitnessProvenance] = None
) -> ProfileDocument:
    return ProfileDocument(
        profile=tube.profile,
        drift=tube.drift,
        direction=tube.direction,
        witness_kind=witness_kind,
        provenance=provenance
    )
