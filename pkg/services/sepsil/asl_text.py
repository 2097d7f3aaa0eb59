"""
Formato textual das fórmulas Asl.

Precedência, da mais fraca para a mais forte: `exists x. p` (o corpo vai
até o fim), `||`, `&&`, `*` e então `!` e os átomos. No nível das
fórmulas `*` é sempre a conjunção separada; multiplicação aritmética só
aparece dentro de parênteses, como em `(x * y) = 1`.
"""

from __future__ import annotations

from services.sepsil.asl import (
    AAnd,
    ACmp,
    AExists,
    AFalse,
    ANot,
    Asl,
    Dangling,
    Emp,
    PointsTo,
    SepConj,
    aor,
    as_or,
    as_points_to_any,
    atrue,
    points_to_any,
)
from services.syntax.ast import AExp, BinOp
from services.syntax.parser import ExpressionParser
from services.syntax.printer import print_aexp


class AslParser(ExpressionParser):
    """Fórmulas sem verificação de escopo: variáveis lógicas são livres."""

    def formula(self) -> Asl:
        if self.accept("exists"):
            bound = self.identifier()
            self.expect(".")
            return AExists(bound, self.formula())
        left = self.conj()
        while self.accept("||"):
            left = aor(left, self._operand(self.conj))
        return left

    def _operand(self, rule):
        # `exists` à direita de um operador binário também estende até o fim.
        if self.at("exists"):
            return self.formula()
        return rule()

    def conj(self) -> Asl:
        left = self.star()
        while self.accept("&&"):
            left = AAnd(left, self._operand(self.star))
        return left

    def star(self) -> Asl:
        left = self.unary()
        while self.accept("*"):
            left = SepConj(left, self._operand(self.unary))
        return left

    def unary(self) -> Asl:
        if self.accept("!"):
            return ANot(self._operand(self.unary))
        return self.atom()

    def atom(self) -> Asl:
        if self.accept("true"):
            return atrue()
        if self.accept("false"):
            return AFalse()
        if self.accept("emp"):
            return Emp()
        token = self.peek()
        if token.kind == "ident" and (self.at("|->", 1) or self.at("|-/>", 1)):
            name = self.identifier()
            if self.accept("|-/>"):
                return Dangling(name)
            self.expect("|->")
            if self.accept("-"):
                return points_to_any(name)
            return PointsTo(name, self.aexp(allow_mult=False))
        if self.at("("):
            grouped = self.attempt(self._grouped)
            if grouped is not None:
                return grouped
        left = self.aexp(allow_mult=False)
        op = self.peek()
        if op.kind != "op" or op.text not in ("=", "!=", "<", "<=", ">", ">="):
            self.fail(f"esperado operador de comparação, encontrado {op.text or 'fim do texto'!r}")
        self.pos += 1
        return ACmp(op.text, left, self.aexp(allow_mult=False))

    def _grouped(self) -> Asl:
        self.expect("(")
        inner = self.formula()
        self.expect(")")
        return inner


def parse_asl(text: str) -> Asl:
    parser = AslParser(text)
    formula = parser.formula()
    parser.expect_eof()
    return formula


# --- impressão ----------------------------------------------------------------

_OR, _AND, _STAR, _UNARY, _ATOM = 1, 2, 3, 4, 5


def _level(p: Asl) -> int:
    if isinstance(p, AExists) and as_points_to_any(p) is None:
        return 0
    if isinstance(p, ANot):
        if isinstance(p.operand, AFalse):
            return _ATOM
        return _OR if as_or(p) is not None else _UNARY
    if isinstance(p, AAnd):
        return _AND
    if isinstance(p, SepConj):
        return _STAR
    return _ATOM


def _wrap(p: Asl, minimum: int) -> str:
    text = print_asl(p)
    return f"({text})" if _level(p) < minimum else text


def _term(a: AExp) -> str:
    text = print_aexp(a)
    return f"({text})" if isinstance(a, BinOp) and a.op == "*" else text


def print_asl(p: Asl) -> str:
    """Forma canônica: `parse_asl(print_asl(p))` reconstrói `p` (exceto nomes de `x ↦ −`)."""
    if isinstance(p, AFalse):
        return "false"
    if isinstance(p, Emp):
        return "emp"
    if isinstance(p, Dangling):
        return f"{p.var} |-/>"
    if isinstance(p, PointsTo):
        return f"{p.var} |-> {_term(p.value)}"
    if isinstance(p, ACmp):
        return f"{_term(p.left)} {p.op} {_term(p.right)}"
    if isinstance(p, AExists):
        pointer = as_points_to_any(p)
        if pointer is not None:
            return f"{pointer} |-> -"
        return f"exists {p.var}. {print_asl(p.body)}"
    if isinstance(p, ANot):
        if isinstance(p.operand, AFalse):
            return "true"
        parts = as_or(p)
        if parts is not None:
            return f"{_wrap(parts[0], _OR)} || {_wrap(parts[1], _AND)}"
        return f"!{_wrap(p.operand, _UNARY)}"
    if isinstance(p, AAnd):
        return f"{_wrap(p.left, _AND)} && {_wrap(p.right, _STAR)}"
    if isinstance(p, SepConj):
        return f"{_wrap(p.left, _STAR)} * {_wrap(p.right, _UNARY)}"
    raise TypeError(f"fórmula desconhecida: {p!r}")
