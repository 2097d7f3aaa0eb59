"""
Semântica extensional das fórmulas Asl sobre o modelo limitado.

`x ↦ a` e `x ↦̸` exigem heap de exatamente uma célula; heaps maiores só
os satisfazem através de `∗ true`. Cadeias `p₁ ∗ … ∗ pₙ` são avaliadas
por reivindicação de células: átomos de footprint fixam suas células,
conjuntos puros absorvem o restante e apenas os demais conjuntos
enumeram partições do heap que sobra.
"""

from __future__ import annotations

import itertools
import logging
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

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
    as_points_to_any,
    asl_free_vars,
    is_pure,
    sep_conjuncts,
)
from services.sepsil.model import (
    Cell,
    CellMark,
    HVal,
    HeapState,
    Loc,
    SepDomainConfig,
    SepState,
    compare_values,
    eval_sep_aexp,
    is_allocated,
)

logger = logging.getLogger(__name__)

Heap = Tuple[Cell, ...]


def _only(heap: Heap, cells: FrozenSet[int]) -> Heap:
    return tuple(cell if index in cells else CellMark.ABSENT for index, cell in enumerate(heap))


def _domain(heap: Heap) -> Tuple[int, ...]:
    return tuple(index for index, cell in enumerate(heap) if cell is not CellMark.ABSENT)


def _pointer(env: Dict[str, HVal], name: str) -> Optional[Loc]:
    value = env[name]
    return value if isinstance(value, Loc) else None


def _single_cell(heap: Heap, location: Optional[Loc]) -> Optional[Cell]:
    """Conteúdo de `location` quando o heap tem exatamente essa célula."""
    if location is None:
        return None
    domain = _domain(heap)
    if domain != (location.index,):
        return None
    return heap[location.index]


def sat(p: Asl, env: Dict[str, HVal], heap: Heap, config: SepDomainConfig) -> bool:
    if isinstance(p, AFalse):
        return False
    if isinstance(p, ANot):
        return not sat(p.operand, env, heap, config)
    if isinstance(p, AAnd):
        return sat(p.left, env, heap, config) and sat(p.right, env, heap, config)
    if isinstance(p, AExists):
        return any(sat(p.body, {**env, p.var: value}, heap, config) for value in config.values)
    if isinstance(p, ACmp):
        return compare_values(p.op, eval_sep_aexp(p.left, env, config), eval_sep_aexp(p.right, env, config))
    if isinstance(p, Emp):
        return not _domain(heap)
    if isinstance(p, PointsTo):
        cell = _single_cell(heap, _pointer(env, p.var))
        if cell is None or not is_allocated(cell):
            return False
        value = eval_sep_aexp(p.value, env, config)
        return value is not None and cell == value
    if isinstance(p, Dangling):
        return _single_cell(heap, _pointer(env, p.var)) is CellMark.DANGLING
    if isinstance(p, SepConj):
        return _sat_chain(sep_conjuncts(p), env, heap, config)
    raise TypeError(f"fórmula desconhecida: {p!r}")


def _claim(p: Asl, env: Dict[str, HVal], heap: Heap, config: SepDomainConfig) -> Optional[Tuple[bool, Optional[int]]]:
    """Para átomos de footprint: (satisfeito?, célula reivindicada). `None` se `p` não é átomo."""
    if isinstance(p, Emp):
        return True, None
    pointer_name = as_points_to_any(p)
    if isinstance(p, (PointsTo, Dangling)) or pointer_name is not None:
        name = pointer_name if pointer_name is not None else p.var
        location = _pointer(env, name)
        if location is None:
            return False, None
        cell = heap[location.index]
        if isinstance(p, Dangling):
            return cell is CellMark.DANGLING, location.index
        if not is_allocated(cell):
            return False, None
        if isinstance(p, PointsTo):
            value = eval_sep_aexp(p.value, env, config)
            return value is not None and cell == value, location.index
        return True, location.index
    return None


def _sat_chain(parts: Tuple[Asl, ...], env: Dict[str, HVal], heap: Heap, config: SepDomainConfig) -> bool:
    claimed = set()
    sinks: List[Asl] = []
    has_pure = False
    for part in parts:
        footprint = _claim(part, env, heap, config)
        if footprint is not None:
            satisfied, cell = footprint
            if not satisfied or (cell is not None and cell in claimed):
                return False
            if cell is not None:
                claimed.add(cell)
        elif is_pure(part):
            if not sat(part, env, (CellMark.ABSENT,) * len(heap), config):
                return False
            has_pure = True
        else:
            sinks.append(part)
    rest = [index for index in _domain(heap) if index not in claimed]
    if not sinks:
        return has_pure or not rest
    # Cada célula restante vai para um dos conjuntos gerais ou, havendo conjunto puro, para ele.
    owners = range(len(sinks) + (1 if has_pure else 0))
    for assignment in itertools.product(owners, repeat=len(rest)):
        if all(
            sat(sink, env, _only(heap, frozenset(c for c, owner in zip(rest, assignment) if owner == k)), config)
            for k, sink in enumerate(sinks)
        ):
            return True
    return False


def holds(p: Asl, state: SepState, config: SepDomainConfig) -> bool:
    """`err` não satisfaz fórmula alguma."""
    if not isinstance(state, HeapState):
        return False
    return sat(p, config.env(state), state.heap, config)


def formula_config(config: SepDomainConfig, *formulas: Asl) -> SepDomainConfig:
    """Configuração cujas variáveis são exatamente as livres nas fórmulas."""
    names = set()
    for formula in formulas:
        names |= asl_free_vars(formula)
    return config.restricted_to(names)


def models(p: Asl, config: SepDomainConfig) -> Iterator[HeapState]:
    for state in config.states():
        if holds(p, state, config):
            yield state


def eval_asl(p: Asl, config: SepDomainConfig) -> FrozenSet[HeapState]:
    """⟦p⟧ restrita aos estados enumerados da configuração."""
    missing = asl_free_vars(p) - set(config.vars)
    if missing:
        config = config.with_vars(missing)
    return frozenset(models(p, config))


def entailment_counterexample(p: Asl, q: Asl, config: SepDomainConfig) -> Optional[Tuple[HeapState, SepDomainConfig]]:
    """Estado que satisfaz `p` e não `q`, sobre as variáveis livres das duas fórmulas."""
    scope = formula_config(config, p, q)
    for state in scope.states():
        if holds(p, state, scope) and not holds(q, state, scope):
            return state, scope
    return None


def entails(p: Asl, q: Asl, config: SepDomainConfig) -> bool:
    return entailment_counterexample(p, q, config) is None


def equivalent(p: Asl, q: Asl, config: SepDomainConfig) -> bool:
    return entails(p, q, config) and entails(q, p, config)


def is_unsatisfiable(p: Asl, config: SepDomainConfig) -> bool:
    scope = formula_config(config, p)
    return not any(True for _ in models(p, scope))
