"""
Árvores sintáticas de expressões e comandos regulares.

Todos os nós são dataclasses congeladas: igualdade estrutural, hash e
compartilhamento seguro entre threads. Formas derivadas (`true`, `||`,
`odd`, `even`, `if`, `while`) não têm nó próprio; o parser as reescreve
para o núcleo abaixo usando os construtores auxiliares deste módulo.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union


ARITH_OPS = ("+", "-", "*", "mod")
COMPARISON_OPS = ("=", "!=", "<", "<=", ">", ">=")


# --- expressões aritméticas ---------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "AExp"
    right: "AExp"


AExp = Union[Num, Var, BinOp]


# --- expressões booleanas -----------------------------------------------------


@dataclass(frozen=True)
class FalseB:
    pass


@dataclass(frozen=True)
class Not:
    operand: "BExp"


@dataclass(frozen=True)
class And:
    left: "BExp"
    right: "BExp"


@dataclass(frozen=True)
class Cmp:
    op: str
    left: AExp
    right: AExp


BExp = Union[FalseB, Not, And, Cmp]


def true_b() -> BExp:
    return Not(FalseB())


def disjunction(left: BExp, right: BExp) -> BExp:
    """`a || b` no núcleo: `!(!a && !b)`."""
    return Not(And(Not(left), Not(right)))


def as_disjunction(b: BExp) -> Optional[Tuple[BExp, BExp]]:
    """Reconhece o padrão produzido por `disjunction`."""
    if isinstance(b, Not) and isinstance(b.operand, And):
        inner = b.operand
        if isinstance(inner.left, Not) and isinstance(inner.right, Not):
            return inner.left.operand, inner.right.operand
    return None


def parity(a: AExp, remainder: int) -> BExp:
    return Cmp("=", BinOp("mod", a, Num(2)), Num(remainder))


# --- comandos atômicos --------------------------------------------------------


class Command:
    """Base comum de todos os nós de comando."""

    __slots__ = ()


class AtomicCmd(Command):
    __slots__ = ()


@dataclass(frozen=True)
class Skip(AtomicCmd):
    pass


@dataclass(frozen=True)
class Assign(AtomicCmd):
    var: str
    expr: AExp


@dataclass(frozen=True)
class Assume(AtomicCmd):
    cond: BExp


@dataclass(frozen=True)
class Havoc(AtomicCmd):
    """`x := nondet()`: atribui qualquer valor do domínio."""

    var: str


@dataclass(frozen=True)
class Alloc(AtomicCmd):
    var: str


@dataclass(frozen=True)
class Free(AtomicCmd):
    var: str


@dataclass(frozen=True)
class Load(AtomicCmd):
    """`x := [y]`."""

    var: str
    pointer: str


@dataclass(frozen=True)
class Store(AtomicCmd):
    """`[x] := y`."""

    pointer: str
    var: str


HEAP_ATOMICS = (Alloc, Free, Load, Store)


# --- comandos compostos -------------------------------------------------------


@dataclass(frozen=True)
class Seq(Command):
    first: Command
    second: Command


@dataclass(frozen=True)
class Choice(Command):
    left: Command
    right: Command


@dataclass(frozen=True)
class Star(Command):
    body: Command


def if_then_else(cond: BExp, then_branch: Command, else_branch: Command) -> Command:
    return Choice(Seq(Assume(cond), then_branch), Seq(Assume(Not(cond)), else_branch))


def while_loop(cond: BExp, body: Command) -> Command:
    return Seq(Star(Seq(Assume(cond), body)), Assume(Not(cond)))


def sequence(*commands: Command) -> Command:
    """Encadeia à direita, como o parser faz com `a; b; c`."""
    if not commands:
        return Skip()
    result = commands[-1]
    for command in reversed(commands[:-1]):
        result = Seq(command, result)
    return result


def contains_heap_atomic(command: Command) -> bool:
    if isinstance(command, HEAP_ATOMICS):
        return True
    if isinstance(command, Seq):
        return contains_heap_atomic(command.first) or contains_heap_atomic(command.second)
    if isinstance(command, Choice):
        return contains_heap_atomic(command.left) or contains_heap_atomic(command.right)
    if isinstance(command, Star):
        return contains_heap_atomic(command.body)
    return False


@dataclass(frozen=True)
class HeapBounds:
    """Cabeçalho opcional `heap locs N ints a..b;`."""

    locations: int
    int_min: int
    int_max: int


@dataclass(frozen=True)
class Program:
    vars: Tuple[str, ...]
    body: Command
    heap_mode: bool = False
    heap_bounds: Optional[HeapBounds] = None
