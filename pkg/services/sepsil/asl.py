"""
Linguagem de asserções Asl: árvore, açúcar sintático e variáveis livres.

O núcleo segue a gramática `false | ¬p | p ∧ q | ∃x. p | a ≍ a | emp |
x ↦ a | x ↦̸ | p ∗ q`. `true`, `∨` e `x ↦ −` são construídos a partir
dele, como as formas derivadas de `services.syntax.ast`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Tuple, Union

from services.syntax.ast import AExp, And, BExp, BinOp, Cmp, FalseB, Not, Var
from services.syntax.variables import aexp_vars


@dataclass(frozen=True)
class AFalse:
    pass


@dataclass(frozen=True)
class ANot:
    operand: "Asl"


@dataclass(frozen=True)
class AAnd:
    left: "Asl"
    right: "Asl"


@dataclass(frozen=True)
class AExists:
    var: str
    body: "Asl"


@dataclass(frozen=True)
class ACmp:
    op: str
    left: AExp
    right: AExp


@dataclass(frozen=True)
class Emp:
    pass


@dataclass(frozen=True)
class PointsTo:
    var: str
    value: AExp


@dataclass(frozen=True)
class Dangling:
    var: str


@dataclass(frozen=True)
class SepConj:
    left: "Asl"
    right: "Asl"


Asl = Union[AFalse, ANot, AAnd, AExists, ACmp, Emp, PointsTo, Dangling, SepConj]

HEAP_ATOMS = (Emp, PointsTo, Dangling)


# --- açúcar -----------------------------------------------------------------


def atrue() -> Asl:
    return ANot(AFalse())


def aor(left: Asl, right: Asl) -> Asl:
    return ANot(AAnd(ANot(left), ANot(right)))


def as_or(p: Asl) -> Optional[Tuple[Asl, Asl]]:
    if isinstance(p, ANot) and isinstance(p.operand, AAnd):
        inner = p.operand
        if isinstance(inner.left, ANot) and isinstance(inner.right, ANot):
            return inner.left.operand, inner.right.operand
    return None


def evaluates(a: AExp) -> Asl:
    """`a = a`: vale exatamente nos stores em que `a` não toca localização."""
    return ACmp("=", a, a)


def points_to_any(var: str, bound: Optional[str] = None) -> Asl:
    """`x ↦ −`, isto é, `∃w. x ↦ w` com `w` distinta de `x`."""
    if bound is None:
        bound = fresh_name("w", {var})
    return AExists(bound, PointsTo(var, Var(bound)))


def as_points_to_any(p: Asl) -> Optional[str]:
    """Nome do ponteiro quando `p` tem a forma `∃w. x ↦ w`."""
    if (
        isinstance(p, AExists)
        and isinstance(p.body, PointsTo)
        and p.body.value == Var(p.var)
        and p.body.var != p.var
    ):
        return p.body.var
    return None


def sep_all(parts: Iterable[Asl]) -> Asl:
    """`p₁ ∗ … ∗ pₙ` associando à esquerda; `emp` para a lista vazia."""
    result: Optional[Asl] = None
    for part in parts:
        result = part if result is None else SepConj(result, part)
    return Emp() if result is None else result


def or_all(parts: Iterable[Asl]) -> Asl:
    result: Optional[Asl] = None
    for part in parts:
        result = part if result is None else aor(result, part)
    return AFalse() if result is None else result


def from_bexp(b: BExp) -> Asl:
    """Guardas de programa como fórmulas puras."""
    if isinstance(b, FalseB):
        return AFalse()
    if isinstance(b, Not):
        return ANot(from_bexp(b.operand))
    if isinstance(b, And):
        return AAnd(from_bexp(b.left), from_bexp(b.right))
    if isinstance(b, Cmp):
        return ACmp(b.op, b.left, b.right)
    raise TypeError(f"expressão booleana desconhecida: {b!r}")


def sep_conjuncts(p: Asl) -> Tuple[Asl, ...]:
    if isinstance(p, SepConj):
        return sep_conjuncts(p.left) + sep_conjuncts(p.right)
    return (p,)


def is_pure(p: Asl) -> bool:
    """Sem átomos de heap: a satisfação não depende do heap."""
    if isinstance(p, (AFalse, ACmp)):
        return True
    if isinstance(p, HEAP_ATOMS) or isinstance(p, SepConj):
        return False
    if isinstance(p, ANot):
        return is_pure(p.operand)
    if isinstance(p, AAnd):
        return is_pure(p.left) and is_pure(p.right)
    if isinstance(p, AExists):
        return is_pure(p.body)
    raise TypeError(f"fórmula desconhecida: {p!r}")


# --- variáveis ----------------------------------------------------------------


def asl_free_vars(p: Asl) -> FrozenSet[str]:
    if isinstance(p, (AFalse, Emp)):
        return frozenset()
    if isinstance(p, ANot):
        return asl_free_vars(p.operand)
    if isinstance(p, (AAnd, SepConj)):
        return asl_free_vars(p.left) | asl_free_vars(p.right)
    if isinstance(p, AExists):
        return asl_free_vars(p.body) - {p.var}
    if isinstance(p, ACmp):
        return aexp_vars(p.left) | aexp_vars(p.right)
    if isinstance(p, PointsTo):
        return frozenset({p.var}) | aexp_vars(p.value)
    if isinstance(p, Dangling):
        return frozenset({p.var})
    raise TypeError(f"fórmula desconhecida: {p!r}")


def asl_all_vars(p: Asl) -> FrozenSet[str]:
    """Livres e ligadas; usado para escolher nomes novos."""
    if isinstance(p, AExists):
        return asl_all_vars(p.body) | {p.var}
    if isinstance(p, ANot):
        return asl_all_vars(p.operand)
    if isinstance(p, (AAnd, SepConj)):
        return asl_all_vars(p.left) | asl_all_vars(p.right)
    return asl_free_vars(p)


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    taken = set(avoid)
    for primes in itertools.count(0 if base not in taken else 1):
        candidate = base.rstrip("'") + "'" * primes if primes else base
        if candidate not in taken:
            return candidate
    raise AssertionError("inalcançável")


# --- comparação estrutural ------------------------------------------------------


def normalize(p: Asl) -> Asl:
    """Remove `p ∨ false`, `false ∨ p` e `p ∗ emp`, recursivamente."""
    if isinstance(p, ANot):
        parts = as_or(p)
        if parts is not None:
            left, right = normalize(parts[0]), normalize(parts[1])
            if isinstance(right, AFalse):
                return left
            if isinstance(left, AFalse):
                return right
            return aor(left, right)
        return ANot(normalize(p.operand))
    if isinstance(p, AAnd):
        return AAnd(normalize(p.left), normalize(p.right))
    if isinstance(p, SepConj):
        left, right = normalize(p.left), normalize(p.right)
        if isinstance(right, Emp):
            return left
        if isinstance(left, Emp):
            return right
        return SepConj(left, right)
    if isinstance(p, AExists):
        return AExists(p.var, normalize(p.body))
    return p


def alpha_equal(p: Asl, q: Asl) -> bool:
    return _alpha(p, q, {}, {}, 0)


def rename_aexp(a: AExp, mapping: dict) -> AExp:
    if isinstance(a, Var):
        return Var(mapping.get(a.name, a.name))
    if isinstance(a, BinOp):
        return BinOp(a.op, rename_aexp(a.left, mapping), rename_aexp(a.right, mapping))
    return a


def _alpha(p: Asl, q: Asl, left: dict, right: dict, depth: int) -> bool:
    if type(p) is not type(q):
        return False
    if isinstance(p, (AFalse, Emp)):
        return True
    if isinstance(p, ANot):
        return _alpha(p.operand, q.operand, left, right, depth)
    if isinstance(p, (AAnd, SepConj)):
        return _alpha(p.left, q.left, left, right, depth) and _alpha(p.right, q.right, left, right, depth)
    if isinstance(p, AExists):
        # Ambos os lados ligam a um nome canônico comum.
        marker = f"#{depth}"
        return _alpha(p.body, q.body, {**left, p.var: marker}, {**right, q.var: marker}, depth + 1)
    if isinstance(p, ACmp):
        return (
            p.op == q.op
            and rename_aexp(p.left, left) == rename_aexp(q.left, right)
            and rename_aexp(p.right, left) == rename_aexp(q.right, right)
        )
    if isinstance(p, PointsTo):
        return left.get(p.var, p.var) == right.get(q.var, q.var) and rename_aexp(p.value, left) == rename_aexp(
            q.value, right
        )
    if isinstance(p, Dangling):
        return left.get(p.var, p.var) == right.get(q.var, q.var)
    raise TypeError(f"fórmula desconhecida: {p!r}")
