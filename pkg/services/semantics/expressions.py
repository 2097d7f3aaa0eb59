"""Avaliação de expressões em ℤ_B, pontual e vetorizada sobre todo Σ."""

from __future__ import annotations

from typing import Mapping

import numpy as np

from services.semantics.domain import DomainConfig, StateSet
from services.syntax.ast import AExp, And, BExp, BinOp, Cmp, FalseB, Not, Num, Var


def _apply(op: str, left, right, modulus: int):
    if op == "+":
        return (left + right) % modulus
    if op == "-":
        return (left - right) % modulus
    if op == "*":
        return (left * right) % modulus
    if op == "mod":
        # mod por zero devolve o operando esquerdo
        if isinstance(right, np.ndarray):
            safe = np.where(right == 0, 1, right)
            return np.where(right == 0, left, left % safe)
        return left if right == 0 else left % right
    raise ValueError(f"operador aritmético desconhecido: {op!r}")


def _compare(op: str, left, right):
    if op == "=":
        return left == right
    if op == "!=":
        return left != right
    if op == "<":
        return left < right
    if op == "<=":
        return left <= right
    if op == ">":
        return left > right
    if op == ">=":
        return left >= right
    raise ValueError(f"comparação desconhecida: {op!r}")


def eval_aexp(a: AExp, store: Mapping[str, int], modulus: int) -> int:
    if isinstance(a, Num):
        return a.value % modulus
    if isinstance(a, Var):
        return int(store[a.name]) % modulus
    if isinstance(a, BinOp):
        return int(_apply(a.op, eval_aexp(a.left, store, modulus), eval_aexp(a.right, store, modulus), modulus))
    raise TypeError(f"expressão aritmética desconhecida: {a!r}")


def eval_bexp(b: BExp, store: Mapping[str, int], modulus: int) -> bool:
    if isinstance(b, FalseB):
        return False
    if isinstance(b, Not):
        return not eval_bexp(b.operand, store, modulus)
    if isinstance(b, And):
        return eval_bexp(b.left, store, modulus) and eval_bexp(b.right, store, modulus)
    if isinstance(b, Cmp):
        return bool(_compare(b.op, eval_aexp(b.left, store, modulus), eval_aexp(b.right, store, modulus)))
    raise TypeError(f"expressão booleana desconhecida: {b!r}")


def aexp_values(a: AExp, config: DomainConfig) -> np.ndarray:
    """Vetor com ⟦a⟧σ para cada σ ∈ Σ."""
    if isinstance(a, Num):
        return np.full(config.size, a.value % config.modulus, dtype=np.int64)
    if isinstance(a, Var):
        return config.column(a.name)
    if isinstance(a, BinOp):
        return _apply(a.op, aexp_values(a.left, config), aexp_values(a.right, config), config.modulus)
    raise TypeError(f"expressão aritmética desconhecida: {a!r}")


def bexp_mask(b: BExp, config: DomainConfig) -> np.ndarray:
    if isinstance(b, FalseB):
        return np.zeros(config.size, dtype=np.bool_)
    if isinstance(b, Not):
        return ~bexp_mask(b.operand, config)
    if isinstance(b, And):
        return bexp_mask(b.left, config) & bexp_mask(b.right, config)
    if isinstance(b, Cmp):
        return np.asarray(_compare(b.op, aexp_values(b.left, config), aexp_values(b.right, config)), dtype=np.bool_)
    raise TypeError(f"expressão booleana desconhecida: {b!r}")


def states_satisfying(b: BExp, config: DomainConfig) -> StateSet:
    """Filtra Σ pelo predicado: a ponte entre asserções textuais e conjuntos."""
    return StateSet(config, bexp_mask(b, config))
