"""Variáveis livres e modificadas de expressões e comandos."""

from __future__ import annotations

from typing import FrozenSet

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
    Command,
    FalseB,
    Free,
    Havoc,
    Load,
    Not,
    Num,
    Seq,
    Skip,
    Star,
    Store,
    Var,
)


def aexp_vars(a: AExp) -> FrozenSet[str]:
    if isinstance(a, Num):
        return frozenset()
    if isinstance(a, Var):
        return frozenset({a.name})
    if isinstance(a, BinOp):
        return aexp_vars(a.left) | aexp_vars(a.right)
    raise TypeError(f"expressão aritmética desconhecida: {a!r}")


def bexp_vars(b: BExp) -> FrozenSet[str]:
    if isinstance(b, FalseB):
        return frozenset()
    if isinstance(b, Not):
        return bexp_vars(b.operand)
    if isinstance(b, And):
        return bexp_vars(b.left) | bexp_vars(b.right)
    if isinstance(b, Cmp):
        return aexp_vars(b.left) | aexp_vars(b.right)
    raise TypeError(f"expressão booleana desconhecida: {b!r}")


def free_vars(r: Command) -> FrozenSet[str]:
    if isinstance(r, Skip):
        return frozenset()
    if isinstance(r, Assign):
        return frozenset({r.var}) | aexp_vars(r.expr)
    if isinstance(r, Assume):
        return bexp_vars(r.cond)
    if isinstance(r, (Havoc, Alloc, Free)):
        return frozenset({r.var})
    if isinstance(r, Load):
        return frozenset({r.var, r.pointer})
    if isinstance(r, Store):
        return frozenset({r.pointer, r.var})
    if isinstance(r, Seq):
        return free_vars(r.first) | free_vars(r.second)
    if isinstance(r, Choice):
        return free_vars(r.left) | free_vars(r.right)
    if isinstance(r, Star):
        return free_vars(r.body)
    raise TypeError(f"comando desconhecido: {r!r}")


def mod_vars(r: Command) -> FrozenSet[str]:
    # free(x) e [x] := y alteram apenas o heap.
    if isinstance(r, (Assign, Havoc, Alloc, Load)):
        return frozenset({r.var})
    if isinstance(r, (Skip, Assume, Free, Store)):
        return frozenset()
    if isinstance(r, Seq):
        return mod_vars(r.first) | mod_vars(r.second)
    if isinstance(r, Choice):
        return mod_vars(r.left) | mod_vars(r.right)
    if isinstance(r, Star):
        return mod_vars(r.body)
    raise TypeError(f"comando desconhecido: {r!r}")
