"""Substituição `q[a/x]` com renomeação de variáveis ligadas."""

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
    asl_all_vars,
    evaluates,
    fresh_name,
)
from services.syntax.ast import AExp, BinOp, Num, Var
from services.syntax.variables import aexp_vars


def subst_aexp(e: AExp, a: AExp, x: str) -> AExp:
    if isinstance(e, Num):
        return e
    if isinstance(e, Var):
        return a if e.name == x else e
    if isinstance(e, BinOp):
        return BinOp(e.op, subst_aexp(e.left, a, x), subst_aexp(e.right, a, x))
    raise TypeError(f"expressão aritmética desconhecida: {e!r}")


def subst(q: Asl, a: AExp, x: str) -> Asl:
    if isinstance(q, (AFalse, Emp)):
        return q
    if isinstance(q, ANot):
        return ANot(subst(q.operand, a, x))
    if isinstance(q, AAnd):
        return AAnd(subst(q.left, a, x), subst(q.right, a, x))
    if isinstance(q, SepConj):
        return SepConj(subst(q.left, a, x), subst(q.right, a, x))
    if isinstance(q, ACmp):
        return ACmp(q.op, subst_aexp(q.left, a, x), subst_aexp(q.right, a, x))
    if isinstance(q, PointsTo):
        value = subst_aexp(q.value, a, x)
        if q.var != x:
            return PointsTo(q.var, value)
        return _repoint(a, lambda pointer: PointsTo(pointer, value), aexp_vars(value) | {x})
    if isinstance(q, Dangling):
        if q.var != x:
            return q
        return _repoint(a, Dangling, frozenset({x}))
    if isinstance(q, AExists):
        if q.var == x:
            return q
        body, bound = q.body, q.var
        if bound in aexp_vars(a):
            bound = fresh_name(q.var, asl_all_vars(q.body) | aexp_vars(a) | {x})
            body = subst(body, Var(bound), q.var)
        return AExists(bound, subst(body, a, x))
    raise TypeError(f"fórmula desconhecida: {q!r}")


def _repoint(a: AExp, build, avoid) -> Asl:
    """O ponteiro de `x ↦ e` e `x ↦̸` é uma variável; termos compostos viram `∃w. w = a ∧ …`."""
    if isinstance(a, Var):
        return build(a.name)
    witness = fresh_name("w", set(avoid) | aexp_vars(a))
    return AExists(witness, AAnd(ACmp("=", Var(witness), a), build(witness)))


def assign_pre(q: Asl, a: AExp, x: str) -> Asl:
    """Pré do axioma de `x := a`: `q[a/x]`, e `a` precisa avaliar quando é composta.

    Com localização no operando, `x := a` vai para `err`; nomes e
    constantes sempre avaliam.
    """
    pre = subst(q, a, x)
    if isinstance(a, (Var, Num)):
        return pre
    return AAnd(pre, evaluates(a))
