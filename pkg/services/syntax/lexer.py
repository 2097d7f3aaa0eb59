"""Tokenizador compartilhado por programas, asserções e fórmulas Asl."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List

from services.errors import ProgramSyntaxError


KEYWORDS = frozenset(
    {
        "vars", "heap", "locs", "ints", "skip", "if", "else", "while", "nondet",
        "alloc", "free", "true", "false", "odd", "even", "mod", "exists", "emp",
    }
)

# Símbolos compostos vêm antes dos simples para o casamento guloso.
_SYMBOLS = (
    "|-/>", "|->", "[+]", ":=", "||", "&&", "!=", "<=", ">=", "..",
    ";", ",", "(", ")", "{", "}", "[", "]", "?", "*", "+", "-", "=", "<", ">", "!", ".",
)

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)"
    r"|(?P<nl>\n)"
    r"|(?P<comment>//[^\n]*)"
    r"|(?P<int>\d+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*'*)"
    r"|(?P<op>" + "|".join(re.escape(symbol) for symbol in _SYMBOLS) + r")"
)


@dataclass(frozen=True)
class Token:
    kind: str  # "int" | "ident" | "op" | "eof"
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, line_start, position = 1, 0, 0
    while position < len(text):
        match = _TOKEN_RE.match(text, position)
        if match is None:
            raise ProgramSyntaxError(
                f"caractere inesperado {text[position]!r}", line, position - line_start + 1
            )
        kind = match.lastgroup
        column = position - line_start + 1
        position = match.end()
        if kind == "nl":
            line += 1
            line_start = position
        elif kind in ("int", "ident", "op"):
            tokens.append(Token(kind, match.group(), line, column))
    tokens.append(Token("eof", "", line, position - line_start + 1))
    return tokens
