"""
Conversão de conjuntos de estados de volta para predicados `BExp`.

A cobertura é gulosa: a partir do menor estado ainda descoberto, cada
variável tem seu conjunto de valores ampliado enquanto o cubo continua
contido no conjunto. Os cubos podem se sobrepor; a disjunção final é
sempre exata, só não necessariamente mínima.
"""

from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np

from services.semantics.domain import StateSet
from services.syntax.ast import And, BExp, BinOp, Cmp, FalseB, Num, Var, disjunction, true_b

Cube = Tuple[np.ndarray, ...]


def cube_cover(states: StateSet) -> List[Cube]:
    config = states.config
    grid = states.grid()
    remaining = grid.copy()
    cubes: List[Cube] = []
    while remaining.any():
        seed = np.unravel_index(int(np.argmax(remaining)), config.shape)
        cube = [np.zeros(config.modulus, dtype=np.bool_) for _ in config.vars]
        for axis, value in enumerate(seed):
            cube[axis][value] = True
        for axis in range(len(config.vars)):
            for value in range(config.modulus):
                if cube[axis][value]:
                    continue
                cube[axis][value] = True
                if not grid[np.ix_(*[np.flatnonzero(values) for values in cube])].all():
                    cube[axis][value] = False
        remaining[np.ix_(*[np.flatnonzero(values) for values in cube])] = False
        cubes.append(tuple(cube))
    # Restrições sobre variáveis declaradas antes vêm primeiro.
    return sorted(cubes, key=lambda cube: tuple(bool(values.all()) for values in cube))


def _ranges(values: np.ndarray) -> List[Tuple[int, int]]:
    result: List[Tuple[int, int]] = []
    start = None
    for value, present in enumerate(values):
        if present and start is None:
            start = value
        elif not present and start is not None:
            result.append((start, value - 1))
            start = None
    if start is not None:
        result.append((start, len(values) - 1))
    return result


def _range_constraint(var: Var, low: int, high: int, modulus: int) -> BExp:
    if low == high:
        return Cmp("=", var, Num(low))
    if low == 0:
        return Cmp("<=", var, Num(high))
    if high == modulus - 1:
        return Cmp(">=", var, Num(low))
    return And(Cmp(">=", var, Num(low)), Cmp("<=", var, Num(high)))


def describe_values(name: str, values: np.ndarray) -> Optional[BExp]:
    """Restrição exata `x ∈ valores`; `None` quando não restringe nada."""
    modulus = len(values)
    count = int(values.sum())
    var = Var(name)
    if count == modulus:
        return None
    if count == modulus - 1:
        return Cmp("!=", var, Num(int(np.argmin(values))))
    spans = _ranges(values)
    if len(spans) == 1:
        return _range_constraint(var, spans[0][0], spans[0][1], modulus)
    domain = np.arange(modulus)
    for divisor in range(2, modulus // 2 + 1):
        for remainder in range(divisor):
            if np.array_equal(values, domain % divisor == remainder):
                return Cmp("=", BinOp("mod", var, Num(divisor)), Num(remainder))
    result: Optional[BExp] = None
    for low, high in spans:
        piece = _range_constraint(var, low, high, modulus)
        result = piece if result is None else disjunction(result, piece)
    return result


def describe_cube(names, cube: Cube) -> BExp:
    result: Optional[BExp] = None
    for name, values in zip(names, cube):
        piece = describe_values(name, values)
        if piece is None:
            continue
        result = piece if result is None else And(result, piece)
    return true_b() if result is None else result


def describe_state_set(states: StateSet) -> BExp:
    """Predicado exato: `states_satisfying(describe_state_set(S)) == S`."""
    cubes = cube_cover(states)
    if not cubes:
        return FalseB()
    result: Optional[BExp] = None
    for cube in cubes:
        piece = describe_cube(states.config.vars, cube)
        result = piece if result is None else disjunction(result, piece)
    return result
