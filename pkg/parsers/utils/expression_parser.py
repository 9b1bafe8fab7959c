"""Avaliador de expressões constantes ("pi*4", "(1+2)/3", "2^-1")"""
import math
import re
from typing import List, Tuple, Union


class ExpressionError(ValueError):
    """Expressão inválida; position é o índice (0-based) do token problemático"""

    def __init__(self, message: str, position: int):
        self.message = message
        self.position = position
        super().__init__(f"{message} (posição {position})")


class ExpressionParser:
    """
    Parser descendente recursivo para expressões numéricas constantes.

    Gramática:
        expr   := term (('+' | '-') term)*
        term   := unary (('*' | '/') unary)*
        unary  := ('+' | '-') unary | power
        power  := atom ('^' unary)?
        atom   := número | 'pi' | '(' expr ')'

    '^' associa à direita e liga mais forte que o sinal: -2^2 = -4.
    """

    TOKEN_PATTERN = re.compile(
        r"\s*(?:(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]+)|(?P<op>[-+*/^()]))"
    )

    CONSTANTS = {'pi': math.pi}

    def __init__(self, text: str):
        self.text = text
        self.tokens = self._tokenize(text)
        self.index = 0

    def _tokenize(self, text: str) -> List[Tuple[str, str, int]]:
        tokens = []
        position = 0
        while position < len(text):
            if text[position:].strip() == "":
                break
            match = self.TOKEN_PATTERN.match(text, position)
            if not match:
                stripped = len(text[position:]) - len(text[position:].lstrip())
                raise ExpressionError(f"caractere inesperado {text[position + stripped]!r}", position + stripped)
            kind = match.lastgroup
            tokens.append((kind, match.group(kind), match.start(kind)))
            position = match.end()
        return tokens

    def _peek(self) -> Tuple[str, str, int]:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return ("end", "", len(self.text))

    def _advance(self) -> Tuple[str, str, int]:
        token = self._peek()
        self.index += 1
        return token

    def parse(self) -> float:
        if not self.tokens:
            raise ExpressionError("expressão vazia", 0)
        value = self._expr()
        kind, text, position = self._peek()
        if kind != "end":
            raise ExpressionError(f"token inesperado {text!r}", position)
        if not math.isfinite(value):
            raise ExpressionError("resultado não finito", 0)
        return value

    def _expr(self) -> float:
        value = self._term()
        while self._peek()[1] in ("+", "-") and self._peek()[0] == "op":
            _, op, _ = self._advance()
            right = self._term()
            value = value + right if op == "+" else value - right
        return value

    def _term(self) -> float:
        value = self._unary()
        while self._peek()[1] in ("*", "/") and self._peek()[0] == "op":
            _, op, position = self._advance()
            right = self._unary()
            if op == "*":
                value *= right
            elif right == 0.0:
                raise ExpressionError("divisão por zero", position)
            else:
                value /= right
        return value

    def _unary(self) -> float:
        kind, text, _ = self._peek()
        if kind == "op" and text in ("+", "-"):
            self._advance()
            value = self._unary()
            return -value if text == "-" else value
        return self._power()

    def _power(self) -> float:
        base = self._atom()
        kind, text, position = self._peek()
        if kind == "op" and text == "^":
            self._advance()
            exponent = self._unary()
            try:
                result = base ** exponent
            except (OverflowError, ZeroDivisionError):
                raise ExpressionError("potência inválida", position)
            if isinstance(result, complex):
                raise ExpressionError("potência com resultado complexo", position)
            return result
        return base

    def _atom(self) -> float:
        kind, text, position = self._advance()
        if kind == "number":
            return float(text)
        if kind == "name":
            constant = self.CONSTANTS.get(text.lower())
            if constant is None:
                raise ExpressionError(f"constante desconhecida {text!r}", position)
            return constant
        if kind == "op" and text == "(":
            value = self._expr()
            closing_kind, closing, closing_position = self._advance()
            if closing_kind != "op" or closing != ")":
                raise ExpressionError("')' esperado", closing_position)
            return value
        if kind == "end":
            raise ExpressionError("fim inesperado da expressão", position)
        raise ExpressionError(f"token inesperado {text!r}", position)


def evaluate_expression(value: Union[str, int, float]) -> float:
    """
    Converte um número JSON ou uma expressão constante em float.

    Raises:
        ExpressionError: expressão inválida ou tipo não numérico
    """
    if isinstance(value, bool):
        raise ExpressionError("booleano não é número", 0)
    if isinstance(value, (int, float)):
        if not math.isfinite(value):
            raise ExpressionError("número não finito", 0)
        return float(value)
    if isinstance(value, str):
        return ExpressionParser(value).parse()
    raise ExpressionError(f"esperado número ou expressão, recebeu {type(value).__name__}", 0)
