"""Hierarquia de erros compartilhada pelos serviços do toolkit."""

from __future__ import annotations

from typing import Optional


class LogicToolkitError(RuntimeError):
    """Erro base; a CLI converte qualquer subclasse em código de saída 2."""


class ProgramSyntaxError(LogicToolkitError):
    """Texto de programa, asserção ou fórmula fora da gramática."""

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        self.line = line
        self.column = column
        location = f" (linha {line}, coluna {column})" if line else ""
        super().__init__(f"{message}{location}")


class ScopeError(LogicToolkitError):
    """Variável não declarada ou comando de heap em programa simples."""


class UnsupportedCommandError(LogicToolkitError):
    """Comando atômico que o módulo de semântica chamado não interpreta."""


class DomainMismatchError(LogicToolkitError):
    """Conjuntos e comandos vindos de configurações de domínio diferentes."""


class BudgetExceededError(LogicToolkitError):
    """Espaço de estados maior que o orçamento configurado."""

    def __init__(self, what: str, size: int, budget: int) -> None:
        self.size = size
        self.budget = budget
        super().__init__(f"{what}: {size} estados excede o orçamento de {budget}")


class DerivationFormatError(LogicToolkitError):
    """Documento de derivação malformado."""


class SearchBudgetExhausted(LogicToolkitError):
    """Busca de contraexemplo esgotou o orçamento sem encontrar instância."""

    def __init__(self, what: str, attempts: int, detail: Optional[str] = None) -> None:
        self.attempts = attempts
        suffix = f": {detail}" if detail else ""
        super().__init__(f"{what} sem resultado após {attempts} tentativas{suffix}")


class SemanticsInconsistencyError(LogicToolkitError):
    """Duas caracterizações equivalentes da mesma validade discordaram."""
