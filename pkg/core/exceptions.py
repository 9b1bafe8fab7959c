"""Hierarquia de erros da biblioteca e códigos de saída da CLI"""
from typing import Optional


class SchwarzError(Exception):
    """Erro base da biblioteca"""

    exit_code: int = 1


class PreconditionError(SchwarzError, ValueError):
    """Pré-condição de uma operação violada (entrada fora do domínio)"""

    exit_code = 2


class UnsupportedTubeError(PreconditionError):
    """Configuração de tubo que o cálculo exato de perímetro recusa"""


class SpecParseError(SchwarzError):
    """
    Erro ao interpretar um documento de especificação de perfil.

    Carrega a posição (linha/coluna, 1-based) e o caminho do campo
    quando disponíveis.
    """

    exit_code = 3

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        field_path: Optional[str] = None
    ):
        self.message = message
        self.line = line
        self.column = column
        self.field_path = field_path
        super().__init__(self.__str__())

    def __str__(self) -> str:
        location = []
        if self.line is not None:
            location.append(f"linha {self.line}, coluna {self.column}")
        if self.field_path:
            location.append(f"campo {self.field_path}")
        if location:
            return f"{self.message} ({'; '.join(location)})"
        return self.message


class UsageError(SchwarzError):
    """Subcomando desconhecido ou flags inválidas"""

    exit_code = 64
