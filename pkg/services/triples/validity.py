"""
Validade das quatro lógicas por inclusão de conjuntos.

HL: ⟦r⟧→P ⊆ Q; IL: ⟦r⟧→P ⊇ Q; NC: ⟦r⟧←Q ⊆ P; SIL: ⟦r⟧←Q ⊇ P.
A SIL também é conferida pela forma ∀σ∈P ∃σ′∈Q, via relação explícita,
sempre que o domínio é pequeno o bastante.
"""

from __future__ import annotations

import logging

from config import settings
from services.errors import DomainMismatchError, SemanticsInconsistencyError
from services.semantics.collecting import bwsem, fwsem
from services.semantics.domain import StateSet
from services.semantics.relation import semantics_relation
from services.syntax.ast import Command
from services.triples.models import Logic, Triple, Verdict, Witness

logger = logging.getLogger(__name__)


def _singleton(states: StateSet, store) -> StateSet:
    return StateSet.singleton(states.config, store)


def _sil_forall_exists(triple: Triple) -> bool:
    relation = semantics_relation(triple.cmd, triple.pre.config)
    return triple.pre <= relation.preimage(triple.post)


def check_validity(triple: Triple) -> Verdict:
    pre, post, cmd = triple.pre, triple.post, triple.cmd
    if pre.config != post.config:
        raise DomainMismatchError("pré e pós-condição com domínios diferentes")

    logic = Logic(triple.logic)
    if logic is Logic.HL:
        return _check_hl(pre, cmd, post)
    if logic is Logic.IL:
        return _check_il(pre, cmd, post)
    if logic is Logic.NC:
        return _check_nc(pre, cmd, post)
    return _check_sil(triple)


def _check_hl(pre: StateSet, cmd: Command, post: StateSet) -> Verdict:
    offenders = pre & bwsem(cmd, ~post)
    if offenders.is_empty():
        return Verdict(logic="HL", valid=True, checks=["fw(P) ⊆ Q"])
    state = offenders.first()
    successor = (fwsem(cmd, _singleton(pre, state)) - post).first()
    return Verdict(
        logic="HL",
        valid=False,
        witness=Witness(state=state, successor=successor, role="estado de P com sucessor fora de Q"),
        checks=["fw(P) ⊆ Q"],
    )


def _check_il(pre: StateSet, cmd: Command, post: StateSet) -> Verdict:
    missing = post - fwsem(cmd, pre)
    if missing.is_empty():
        return Verdict(logic="IL", valid=True, checks=["fw(P) ⊇ Q"])
    return Verdict(
        logic="IL",
        valid=False,
        witness=Witness(state=missing.first(), role="estado de Q inalcançável a partir de P"),
        checks=["fw(P) ⊇ Q"],
    )


def _check_nc(pre: StateSet, cmd: Command, post: StateSet) -> Verdict:
    escaping = bwsem(cmd, post) - pre
    if escaping.is_empty():
        return Verdict(logic="NC", valid=True, checks=["bw(Q) ⊆ P"])
    state = escaping.first()
    successor = (fwsem(cmd, _singleton(pre, state)) & post).first()
    return Verdict(
        logic="NC",
        valid=False,
        witness=Witness(state=state, successor=successor, role="estado fora de P que alcança Q"),
        checks=["bw(Q) ⊆ P"],
    )


def _check_sil(triple: Triple) -> Verdict:
    pre, post, cmd = triple.pre, triple.post, triple.cmd
    stranded = pre - bwsem(cmd, post)
    valid = stranded.is_empty()
    checks = ["bw(Q) ⊇ P"]
    if pre.config.size <= settings.CROSS_CHECK_STATE_LIMIT:
        if _sil_forall_exists(triple) != valid:
            raise SemanticsInconsistencyError("validade SIL por inclusão e pela forma ∀∃ discordam")
        checks.append("∀σ∈P ∃σ′∈Q")
    else:
        logger.debug("forma ∀∃ omitida: |Σ|=%d acima do limite", pre.config.size)
    if valid:
        return Verdict(logic="SIL", valid=True, checks=checks)
    return Verdict(
        logic="SIL",
        valid=False,
        witness=Witness(state=stranded.first(), role="estado de P sem execução que termine em Q"),
        checks=checks,
    )


def is_valid(logic: Logic, pre: StateSet, cmd: Command, post: StateSet) -> bool:
    """Atalho booleano sem testemunha, usado pelas campanhas."""
    logic = Logic(logic)
    if logic is Logic.HL:
        return fwsem(cmd, pre) <= post
    if logic is Logic.IL:
        return post <= fwsem(cmd, pre)
    if logic is Logic.NC:
        return bwsem(cmd, post) <= pre
    return pre <= bwsem(cmd, post)


def is_manifest_error(r: Command, post: StateSet) -> Verdict:
    """Erro manifesto: ⟨Σ⟩ r ⟨Q⟩ válida em SIL."""
    return check_validity(Triple(Logic.SIL, StateSet.full(post.config), r, post))
