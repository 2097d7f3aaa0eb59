"""
Tabela comparativa das regras de SIL, HL e IL e sondas de admissibilidade.

As linhas compartilhadas (cons, seq, empty, disj, iter0, unroll,
unroll_split) são testadas semanticamente: para cada instância, premissas
válidas devem levar a uma conclusão válida na lógica da coluna. As
células "unsound" de HL precisam de um contraexemplo concreto.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from services.semantics.domain import DomainConfig, StateSet
from services.sil_proofs.codec import encode_state_set
from services.sil_proofs.models import Rule
from services.syntax.ast import Assign, Command, Num, Seq, Star
from services.syntax.printer import pretty_print
from services.taxonomy.generator import Instance
from services.taxonomy.properties import COLLECTING, valid
from services.triples.models import Logic

logger = logging.getLogger(__name__)

TABLE_LOGICS = (Logic.SIL, Logic.HL, Logic.IL)


@dataclass(frozen=True)
class RuleCell:
    form: str
    sound: bool = True
    shared: bool = False


RULE_TABLE: Dict[Rule, Dict[Logic, RuleCell]] = {
    Rule.ATOM: {
        Logic.SIL: RuleCell("⟨⟦c⟧←Q⟩ c ⟨Q⟩"),
        Logic.HL: RuleCell("{P} c {⟦c⟧→P}"),
        Logic.IL: RuleCell("[P] c [⟦c⟧→P]"),
    },
    Rule.CONS: {
        Logic.SIL: RuleCell("P ⊆ P′, Q′ ⊆ Q", shared=True),
        Logic.HL: RuleCell("P ⊆ P′, Q′ ⊆ Q", shared=True),
        Logic.IL: RuleCell("P ⊇ P′, Q′ ⊇ Q"),
    },
    Rule.SEQ: {logic: RuleCell("P r₁ R, R r₂ Q", shared=True) for logic in TABLE_LOGICS},
    Rule.CHOICE: {
        Logic.SIL: RuleCell("⟨P₁ ∪ P₂⟩ r₁ ⊞ r₂ ⟨Q⟩"),
        Logic.HL: RuleCell("{P} r₁ ⊞ r₂ {Q}"),
        Logic.IL: RuleCell("[P] r₁ ⊞ r₂ [Q₁ ∪ Q₂]"),
    },
    Rule.ITER: {
        Logic.SIL: RuleCell("⟨⋃ Qₙ⟩ r* ⟨Q₀⟩"),
        Logic.HL: RuleCell("invariante {P} r {P}"),
        Logic.IL: RuleCell("[P₀] r* [⋃ Pₙ]"),
    },
    Rule.EMPTY: {
        Logic.SIL: RuleCell("⟨∅⟩ r ⟨Q⟩", shared=True),
        Logic.HL: RuleCell("{∅} r {Q}", shared=True),
        Logic.IL: RuleCell("[P] r [∅]"),
    },
    Rule.DISJ: {logic: RuleCell("P₁ ∪ P₂, Q₁ ∪ Q₂", shared=True) for logic in TABLE_LOGICS},
    Rule.ITER0: {
        Logic.SIL: RuleCell("Q r* Q", shared=True),
        Logic.HL: RuleCell("unsound", sound=False),
        Logic.IL: RuleCell("P r* P", shared=True),
    },
    Rule.UNROLL: {
        Logic.SIL: RuleCell("P r*; r Q ⊢ P r* Q", shared=True),
        Logic.HL: RuleCell("unsound", sound=False),
        Logic.IL: RuleCell("P r*; r Q ⊢ P r* Q", shared=True),
    },
    Rule.UNROLL_SPLIT: {
        Logic.SIL: RuleCell("⟨P ∪ Q₂⟩ r* ⟨Q₁ ∪ Q₂⟩", shared=True),
        Logic.HL: RuleCell("unsound", sound=False),
        Logic.IL: RuleCell("[P₁ ∪ P₂] r* [Q ∪ P₂]", shared=True),
    },
}

PROBED_RULES = (Rule.CONS, Rule.SEQ, Rule.EMPTY, Rule.DISJ, Rule.ITER0, Rule.UNROLL, Rule.UNROLL_SPLIT)

Premise = Tuple[StateSet, Command, StateSet]


@dataclass(frozen=True)
class RuleProbe:
    """Premissas e conclusão de uma aplicação concreta da regra."""

    premises: Tuple[Premise, ...]
    conclusion: Premise


def _loop(cmd: Command) -> Star:
    return cmd if isinstance(cmd, Star) else Star(cmd)


def instantiate(rule: Rule, logic: Logic, instance: Instance) -> RuleProbe:
    """Monta a aplicação da regra com os conjuntos e comandos da instância."""
    r, pre, post = instance.cmd, instance.pre, instance.post
    other_pre, other_post = instance.other_pre, instance.other_post
    if rule is Rule.CONS:
        if logic in (Logic.SIL, Logic.HL):
            conclusion = (pre & other_pre, r, post | other_post)
        else:
            conclusion = (pre | other_pre, r, post & other_post)
        return RuleProbe(((pre, r, post),), conclusion)
    if rule is Rule.SEQ:
        return RuleProbe(((pre, r, other_pre), (other_pre, instance.other_cmd, post)), (pre, Seq(r, instance.other_cmd), post))
    if rule is Rule.EMPTY:
        empty = StateSet.empty(pre.config)
        return RuleProbe((), (pre, r, empty) if logic is Logic.IL else (empty, r, post))
    if rule is Rule.DISJ:
        return RuleProbe(((pre, r, post), (other_pre, r, other_post)), (pre | other_pre, r, post | other_post))
    loop = _loop(r)
    unrolled = Seq(loop, loop.body)
    if rule is Rule.ITER0:
        return RuleProbe((), (pre, loop, pre))
    if rule is Rule.UNROLL:
        return RuleProbe(((pre, unrolled, post),), (pre, loop, post))
    if rule is Rule.UNROLL_SPLIT:
        if logic is Logic.IL:
            return RuleProbe(((pre, unrolled, post),), (pre | other_pre, loop, post | other_pre))
        return RuleProbe(((pre, unrolled, post),), (pre | other_post, loop, post | other_post))
    raise ValueError(f"regra sem sonda semântica: {rule.value}")


def is_counterexample(rule: Rule, logic: Logic, instance: Instance) -> bool:
    probe = instantiate(rule, logic, instance)
    if not all(valid(COLLECTING, logic, *premise) for premise in probe.premises):
        return False
    return not valid(COLLECTING, logic, *probe.conclusion)


def describe_probe(rule: Rule, logic: Logic, instance: Instance) -> Dict[str, str]:
    probe = instantiate(rule, logic, instance)
    pre, cmd, post = probe.conclusion
    return {"pre": encode_state_set(pre), "cmd": pretty_print(cmd), "post": encode_state_set(post)}


def planted_hl_counterexample(modulus: int) -> Instance:
    """`x := 1` a partir de x = 0: r*; r chega só a x = 1, mas r* também fica em x = 0."""
    config = DomainConfig(modulus=modulus, vars=("x",))
    zero = StateSet.from_indices(config, [0])
    one = StateSet.from_indices(config, [1])
    r = Assign("x", Num(1))
    empty = StateSet.empty(config)
    return Instance(index=-1, config=config, cmd=r, other_cmd=r, pre=zero, post=one, other_pre=empty, other_post=empty)


def table_cells() -> Iterator[Tuple[Rule, Logic, RuleCell]]:
    for rule, row in RULE_TABLE.items():
        for logic in TABLE_LOGICS:
            yield rule, logic, row[logic]


def unsound_cells() -> List[Tuple[Rule, Logic]]:
    return [(rule, logic) for rule, logic, cell in table_cells() if not cell.sound]


def sound_probed_cells() -> List[Tuple[Rule, Logic]]:
    return [(rule, logic) for rule, logic, cell in table_cells() if cell.sound and rule in PROBED_RULES]


def find_rule_counterexample(rule: Rule, logic: Logic, candidates) -> Optional[Tuple[Instance, int]]:
    """Primeira instância (e tentativas gastas) em que a regra falha."""
    for attempts, instance in enumerate(candidates, start=1):
        if is_counterexample(rule, logic, instance):
            logger.info("contraexemplo para %s/%s na tentativa %d", rule.value, logic.value, attempts)
            return instance, attempts
    return None
