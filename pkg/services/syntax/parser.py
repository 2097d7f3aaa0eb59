"""
Parser descendente recursivo do formato textual de programas.

A gramática é ambígua apenas em `(`: pode abrir um agrupamento de
comandos, uma escolha `( r [+] r )`, uma estrela `( r )*` ou uma guarda
`(b)?`. O parser tenta o comando primeiro e recua para a expressão
booleana quando a tentativa falha.
"""

from __future__ import annotations

from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

from services.errors import ProgramSyntaxError, ScopeError
from services.syntax.ast import (
    AExp,
    Alloc,
    And,
    Assign,
    Assume,
    BExp,
    BinOp,
    Choice,
    Cmp,
    COMPARISON_OPS,
    Command,
    FalseB,
    Free,
    Havoc,
    HeapBounds,
    Load,
    Not,
    Num,
    Program,
    Seq,
    Skip,
    Star,
    Store,
    Var,
    contains_heap_atomic,
    disjunction,
    if_then_else,
    parity,
    true_b,
    while_loop,
)
from services.syntax.lexer import KEYWORDS, Token, tokenize

T = TypeVar("T")


class ExpressionParser:
    """Base com expressões aritméticas e booleanas; reutilizada pelo Asl."""

    def __init__(self, text: str, declared: Optional[Sequence[str]] = None) -> None:
        self.tokens: List[Token] = tokenize(text)
        self.pos = 0
        self.declared = frozenset(declared) if declared is not None else None

    # --- navegação ---------------------------------------------------------

    def peek(self, offset: int = 0) -> Token:
        index = min(self.pos + offset, len(self.tokens) - 1)
        return self.tokens[index]

    def at(self, text: str, offset: int = 0) -> bool:
        token = self.peek(offset)
        return token.kind in ("op", "ident") and token.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        token = self.peek()
        if not self.at(text):
            self.fail(f"esperado {text!r}, encontrado {token.text or 'fim do texto'!r}")
        self.pos += 1
        return token

    def fail(self, message: str) -> None:
        token = self.peek()
        raise ProgramSyntaxError(message, token.line, token.column)

    def expect_eof(self) -> None:
        if self.peek().kind != "eof":
            self.fail(f"texto excedente a partir de {self.peek().text!r}")

    def attempt(self, rule: Callable[[], T]) -> Optional[T]:
        saved = self.pos
        try:
            return rule()
        except ProgramSyntaxError:
            self.pos = saved
            return None

    def identifier(self) -> str:
        token = self.peek()
        if token.kind != "ident" or token.text in KEYWORDS:
            self.fail(f"esperado identificador, encontrado {token.text or 'fim do texto'!r}")
        self.pos += 1
        return token.text

    def variable(self) -> str:
        token = self.peek()
        name = self.identifier()
        self.check_scope(name, token)
        return name

    def check_scope(self, name: str, token: Token) -> None:
        if self.declared is not None and name not in self.declared:
            raise ScopeError(f"variável não declarada {name!r} (linha {token.line}, coluna {token.column})")

    # --- aritmética --------------------------------------------------------

    def aexp(self, allow_mult: bool = True) -> AExp:
        left = self.term(allow_mult)
        while self.at("+") or self.at("-"):
            op = self.peek().text
            self.pos += 1
            left = BinOp(op, left, self.term(allow_mult))
        return left

    def term(self, allow_mult: bool) -> AExp:
        left = self.factor()
        while (allow_mult and self.at("*")) or self.at("mod"):
            op = self.peek().text
            self.pos += 1
            left = BinOp(op, left, self.factor())
        return left

    def factor(self) -> AExp:
        token = self.peek()
        if token.kind == "int":
            self.pos += 1
            return Num(int(token.text))
        if self.accept("("):
            inner = self.aexp(allow_mult=True)
            self.expect(")")
            return inner
        return Var(self.variable())

    # --- booleanas ---------------------------------------------------------

    def bexp(self) -> BExp:
        left = self.conjunction()
        while self.accept("||"):
            left = disjunction(left, self.conjunction())
        return left

    def conjunction(self) -> BExp:
        left = self.negation()
        while self.accept("&&"):
            left = And(left, self.negation())
        return left

    def negation(self) -> BExp:
        if self.accept("!"):
            return Not(self.negation())
        return self.bool_atom()

    def bool_atom(self) -> BExp:
        if self.accept("true"):
            return true_b()
        if self.accept("false"):
            return FalseB()
        for keyword, remainder in (("even", 0), ("odd", 1)):
            if self.accept(keyword):
                self.expect("(")
                operand = self.aexp()
                self.expect(")")
                return parity(operand, remainder)
        if self.at("("):
            grouped = self.attempt(self._grouped_bexp)
            if grouped is not None:
                return grouped
        return self.comparison()

    def _grouped_bexp(self) -> BExp:
        self.expect("(")
        inner = self.bexp()
        self.expect(")")
        return inner

    def comparison(self, allow_mult: bool = True) -> BExp:
        left = self.aexp(allow_mult)
        token = self.peek()
        if token.text not in COMPARISON_OPS or token.kind != "op":
            self.fail(f"esperado operador de comparação, encontrado {token.text or 'fim do texto'!r}")
        self.pos += 1
        return Cmp(token.text, left, self.aexp(allow_mult))


class ProgramParser(ExpressionParser):
    """Comandos regulares, com ou sem atômicos de heap."""

    def __init__(self, text: str, declared: Optional[Sequence[str]] = None, heap_allowed: bool = False) -> None:
        super().__init__(text, declared)
        self.heap_allowed = heap_allowed

    def header(self) -> Tuple[Tuple[str, ...], Optional[HeapBounds]]:
        self.expect("vars")
        names = [self.identifier()]
        while self.accept(","):
            names.append(self.identifier())
        self.expect(";")
        if len(set(names)) != len(names):
            raise ScopeError(f"variáveis declaradas em duplicidade: {', '.join(names)}")
        bounds = None
        if self.accept("heap"):
            self.expect("locs")
            locations = self.integer()
            self.expect("ints")
            low = self.integer()
            self.expect("..")
            high = self.integer()
            self.expect(";")
            bounds = HeapBounds(locations=locations, int_min=low, int_max=high)
        return tuple(names), bounds

    def integer(self) -> int:
        token = self.peek()
        if token.kind != "int":
            self.fail(f"esperado inteiro, encontrado {token.text or 'fim do texto'!r}")
        self.pos += 1
        return int(token.text)

    def command(self) -> Command:
        first = self.unit()
        if self.accept(";"):
            return Seq(first, self.command())
        return first

    def unit(self) -> Command:
        token = self.peek()
        if self.accept("skip"):
            return Skip()
        if self.accept("if"):
            return self._conditional()
        if self.accept("while"):
            return self._loop()
        if self.at("free"):
            self._require_heap(token)
            self.pos += 1
            self.expect("(")
            name = self.variable()
            self.expect(")")
            return Free(name)
        if self.at("["):
            self._require_heap(token)
            self.pos += 1
            pointer = self.variable()
            self.expect("]")
            self.expect(":=")
            return Store(pointer, self.variable())
        if token.kind == "ident" and self.at(":=", 1):
            return self._assignment()
        if self.at("("):
            grouped = self.attempt(self._parenthesized)
            if grouped is not None:
                return grouped
        cond = self.bexp()
        self.expect("?")
        return Assume(cond)

    def _parenthesized(self) -> Command:
        self.expect("(")
        inner = self.command()
        if self.accept("[+]"):
            right = self.command()
            self.expect(")")
            return Choice(inner, right)
        self.expect(")")
        if self.accept("*"):
            return Star(inner)
        return inner

    def _assignment(self) -> Command:
        name = self.variable()
        self.expect(":=")
        token = self.peek()
        if self.accept("nondet"):
            self.expect("(")
            self.expect(")")
            return Havoc(name)
        if self.accept("alloc"):
            self._require_heap(token)
            self.expect("(")
            self.expect(")")
            return Alloc(name)
        if self.at("["):
            self._require_heap(token)
            self.pos += 1
            pointer = self.variable()
            self.expect("]")
            return Load(name, pointer)
        return Assign(name, self.aexp())

    def _condition(self) -> Optional[BExp]:
        """Guarda de if/while; `None` representa `nondet()`."""
        self.expect("(")
        if self.at("nondet") and self.at("(", 1):
            self.pos += 1
            self.expect("(")
            self.expect(")")
            self.expect(")")
            return None
        cond = self.bexp()
        self.expect(")")
        return cond

    def _block(self) -> Command:
        self.expect("{")
        body = self.command()
        self.expect("}")
        return body

    def _conditional(self) -> Command:
        cond = self._condition()
        then_branch = self._block()
        else_branch: Command = Skip()
        if self.accept("else"):
            else_branch = self._block()
        if cond is None:
            return Choice(then_branch, else_branch)
        return if_then_else(cond, then_branch, else_branch)

    def _loop(self) -> Command:
        cond = self._condition()
        body = self._block()
        if cond is None:
            return Star(body)
        return while_loop(cond, body)

    def _require_heap(self, token: Token) -> None:
        if not self.heap_allowed:
            raise ScopeError(
                f"comando de heap em programa sem cabeçalho 'heap' (linha {token.line}, coluna {token.column})"
            )


def parse_program(text: str, heap_allowed: bool = False) -> Program:
    """Lê `vars ...; [heap ...;] comando` e devolve o AST já sem açúcar.

    `heap_allowed` libera atômicos de heap mesmo sem cabeçalho (a CLI o usa
    com `--sep`, que fornece os limites por linha de comando).
    """
    probe = ProgramParser(text)
    names, bounds = probe.header()
    parser = ProgramParser(text, declared=names, heap_allowed=heap_allowed or bounds is not None)
    parser.pos = probe.pos
    body = parser.command()
    parser.expect_eof()
    return Program(vars=names, body=body, heap_mode=contains_heap_atomic(body), heap_bounds=bounds)


def parse_command(text: str, variables: Sequence[str], heap_allowed: bool = False) -> Command:
    parser = ProgramParser(text, declared=variables, heap_allowed=heap_allowed)
    command = parser.command()
    parser.expect_eof()
    return command


def parse_assertion(text: str, variables: Sequence[str]) -> BExp:
    """Predicado `BExp` usado como pré/pós-condição."""
    parser = ExpressionParser(text, declared=variables)
    cond = parser.bexp()
    parser.expect_eof()
    return cond


def parse_aexp(text: str, variables: Optional[Sequence[str]] = None) -> AExp:
    parser = ExpressionParser(text, declared=variables)
    expr = parser.aexp()
    parser.expect_eof()
    return expr
