"""
Propriedades universais que relacionam HL, IL, NC e SIL.

Cada verificador recebe uma `Instance` e uma semântica (coletora ou a
relação explícita) e devolve `None` ou a `Violation` com os dois lados da
inclusão que falhou. As campanhas rodam com a semântica coletora e
reconfirmam toda violação com a relação antes de reportá-la.
"""

from __future__ import annotations

import logging
from typing import Callable, Dict, Optional, Protocol

import numpy as np

from services.semantics.collecting import bwsem, fwsem
from services.semantics.domain import DomainConfig, StateSet
from services.semantics.relation import StateRelation, is_deterministic, semantics_relation
from services.sil_proofs.checker import check_derivation
from services.sil_proofs.codec import encode_state_set
from services.sil_proofs.synthesizer import derive_then_weaken
from services.syntax.ast import Command, Star
from services.syntax.printer import pretty_print
from services.taxonomy.generator import Instance, gen_derivation
from services.taxonomy.models import Violation
from services.triples.models import Logic

logger = logging.getLogger(__name__)

# Estados extras testados por instância nas sondas de maximalidade.
ENLARGEMENT_PROBES = 8


class Semantics(Protocol):
    def fw(self, r: Command, states: StateSet) -> StateSet: ...

    def bw(self, r: Command, states: StateSet) -> StateSet: ...


class CollectingSemantics:
    def fw(self, r: Command, states: StateSet) -> StateSet:
        return fwsem(r, states)

    def bw(self, r: Command, states: StateSet) -> StateSet:
        return bwsem(r, states)


COLLECTING = CollectingSemantics()


class RelationalSemantics:
    """Imagem e pré-imagem da relação de entrada e saída de cada comando."""

    def __init__(self) -> None:
        self._relations: Dict[tuple, StateRelation] = {}

    def relation(self, r: Command, config: DomainConfig) -> StateRelation:
        key = (r, config)
        if key not in self._relations:
            self._relations[key] = semantics_relation(r, config)
        return self._relations[key]

    def fw(self, r: Command, states: StateSet) -> StateSet:
        return self.relation(r, states.config).image(states)

    def bw(self, r: Command, states: StateSet) -> StateSet:
        return self.relation(r, states.config).preimage(states)


def valid(sem: Semantics, logic: Logic, pre: StateSet, r: Command, post: StateSet) -> bool:
    if logic is Logic.HL:
        return sem.fw(r, pre) <= post
    if logic is Logic.IL:
        return post <= sem.fw(r, pre)
    if logic is Logic.NC:
        return sem.bw(r, post) <= pre
    return pre <= sem.bw(r, post)


def _render(states) -> str:
    if isinstance(states, StateSet):
        return encode_state_set(states)
    return str(states)


def violation(property_id: str, instance: Instance, lhs, rhs, detail: str = "", cmd: Optional[Command] = None) -> Violation:
    return Violation(
        property_id=property_id,
        index=instance.index,
        program=pretty_print(cmd if cmd is not None else instance.cmd),
        pre=encode_state_set(instance.pre),
        post=encode_state_set(instance.post),
        lhs=_render(lhs),
        rhs=_render(rhs),
        detail=detail,
    )


# --- verificadores ---------------------------------------------------------


def check_bijection_hl_nc(r: Command, pre: StateSet, post: StateSet, sem: Optional[Semantics] = None) -> bool:
    """⟦r⟧→P ⊆ Q sse ⟦r⟧←¬Q ⊆ ¬P."""
    sem = sem or COLLECTING
    return (sem.fw(r, pre) <= post) == (sem.bw(r, ~post) <= ~pre)


def probe_bijection_hl_nc(instance: Instance, sem: Semantics) -> Optional[Violation]:
    if check_bijection_hl_nc(instance.cmd, instance.pre, instance.post, sem):
        return None
    r, pre, post = instance.cmd, instance.pre, instance.post
    return violation("bijection-hl-nc", instance, sem.fw(r, pre) <= post, sem.bw(r, ~post) <= ~pre, "HL ⟨P⟩⟨Q⟩ e NC ⟨¬P⟩⟨¬Q⟩ discordam")


def check_nc_characterization(instance: Instance, sem: Semantics) -> Optional[Violation]:
    """NC por ⟦r⟧←Q ⊆ P coincide com a forma ∀σ∈¬P: ⟦r⟧→σ ∩ Q = ∅."""
    r, pre, post = instance.cmd, instance.pre, instance.post
    by_inclusion = sem.bw(r, post) <= pre
    by_complement = (sem.fw(r, ~pre) & post).is_empty()
    if by_inclusion == by_complement:
        return None
    return violation("nc-characterization", instance, by_inclusion, by_complement)


def _sil_hl_failure(r: Command, pre: StateSet, post: StateSet, sem: Semantics) -> Optional[str]:
    sil = valid(sem, Logic.SIL, pre, r, post)
    hl = valid(sem, Logic.HL, pre, r, post)
    if sil and not hl and is_deterministic(r, pre.config):
        return "comando determinístico com SIL válida e HL inválida"
    terminating = sem.bw(r, StateSet.full(pre.config)) == StateSet.full(pre.config)
    if hl and not sil and terminating:
        return "comando terminante com HL válida e SIL inválida"
    return None


def check_sil_hl_relation(r: Command, pre: StateSet, post: StateSet, sem: Optional[Semantics] = None) -> bool:
    """Determinístico ⇒ (SIL ⇒ HL); terminante (D_r = ∅) ⇒ (HL ⇒ SIL).

    As guardas são calculadas; quando não se aplicam, a implicação vale
    por vacuidade.
    """
    return _sil_hl_failure(r, pre, post, sem or COLLECTING) is None


def probe_sil_hl_relation(instance: Instance, sem: Semantics) -> Optional[Violation]:
    failure = _sil_hl_failure(instance.cmd, instance.pre, instance.post, sem)
    if failure is None:
        return None
    return violation("sil-hl", instance, "SIL", "HL", failure)


def _galois_failure(r: Command, pre: StateSet, post: StateSet, sem: Semantics):
    full = StateSet.full(pre.config)
    diverging = ~sem.bw(r, full)
    unreachable = ~sem.fw(r, full)
    round_trip = sem.bw(r, sem.fw(r, pre))
    if not (pre - diverging) <= round_trip:
        return pre - diverging, round_trip, "P \\ D_r ⊄ bw(fw(P))"
    back_and_forth = sem.fw(r, sem.bw(r, post))
    if not (post - unreachable) <= back_and_forth:
        return post - unreachable, back_and_forth, "Q \\ U_r ⊄ fw(bw(Q))"
    return None


def check_galois_inequalities(r: Command, pre: StateSet, post: StateSet, sem: Optional[Semantics] = None) -> bool:
    """⟦r⟧←⟦r⟧→P ⊇ P \\ D_r e ⟦r⟧→⟦r⟧←Q ⊇ Q \\ U_r."""
    return _galois_failure(r, pre, post, sem or COLLECTING) is None


def probe_galois_inequalities(instance: Instance, sem: Semantics) -> Optional[Violation]:
    failure = _galois_failure(instance.cmd, instance.pre, instance.post, sem)
    if failure is None:
        return None
    return violation("galois", instance, *failure)


def check_compositional_vs_oracle(instance: Instance, sem: Semantics) -> Optional[Violation]:
    """Semântica composicional igual à inversão da relação, nos dois sentidos."""
    r, pre, post = instance.cmd, instance.pre, instance.post
    oracle = RelationalSemantics()
    backward, expected_backward = sem.bw(r, post), oracle.bw(r, post)
    if backward != expected_backward:
        return violation("oracle", instance, backward, expected_backward, "⟦r⟧←Q difere da pré-imagem")
    forward, expected_forward = sem.fw(r, pre), oracle.fw(r, pre)
    if forward != expected_forward:
        return violation("oracle", instance, forward, expected_forward, "⟦r⟧→P difere da imagem")
    return None


def check_adjunction(instance: Instance, sem: Semantics) -> Optional[Violation]:
    """⟦r⟧→P ⊆ Q ⟺ P ⊆ ¬⟦r⟧←¬Q, e o dual ⟦r⟧←Q ⊆ P ⟺ Q ⊆ ¬⟦r⟧→¬P."""
    r, pre, post = instance.cmd, instance.pre, instance.post
    left, right = sem.fw(r, pre) <= post, pre <= ~sem.bw(r, ~post)
    if left != right:
        return violation("adjunction", instance, left, right, "fw ⊣ wlp")
    left, right = sem.bw(r, post) <= pre, post <= ~sem.fw(r, ~pre)
    if left != right:
        return violation("adjunction", instance, left, right, "bw ⊣ nc-post")
    return None


def check_additivity(instance: Instance, sem: Semantics) -> Optional[Violation]:
    r = instance.cmd
    for name, apply, first, second in (
        ("fw", sem.fw, instance.pre, instance.other_pre),
        ("bw", sem.bw, instance.post, instance.other_post),
    ):
        joined = apply(r, first | second)
        separate = apply(r, first) | apply(r, second)
        if joined != separate:
            return violation("additivity", instance, joined, separate, f"{name}(A ∪ B) ≠ {name}(A) ∪ {name}(B)")
    return None


def check_monotonicity(instance: Instance, sem: Semantics) -> Optional[Violation]:
    r = instance.cmd
    smaller = instance.pre & instance.other_pre
    for name, apply in (("fw", sem.fw), ("bw", sem.bw)):
        low, high = apply(r, smaller), apply(r, instance.pre)
        if not low <= high:
            return violation("monotonicity", instance, low, high, f"{name} não monótona")
    return None


def check_star_unroll(instance: Instance, sem: Semantics) -> Optional[Violation]:
    """⟦r*⟧←Q = Q ∪ ⟦r*⟧←⟦r⟧←Q."""
    loop = instance.cmd if isinstance(instance.cmd, Star) else Star(instance.cmd)
    post = instance.post
    direct = sem.bw(loop, post)
    unrolled = post | sem.bw(loop, sem.bw(loop.body, post))
    if direct != unrolled:
        return violation("star-unroll", instance, direct, unrolled, cmd=loop)
    return None


_STRENGTHEN_PRE = {Logic.HL: True, Logic.SIL: True, Logic.IL: False, Logic.NC: False}


def check_cons_directions(instance: Instance, sem: Semantics) -> Optional[Violation]:
    """Consequência na direção de cada lógica preserva validade."""
    r, pre, post = instance.cmd, instance.pre, instance.post
    for logic in Logic:
        if not valid(sem, logic, pre, r, post):
            continue
        if _STRENGTHEN_PRE[logic]:
            new_pre, new_post = pre & instance.other_pre, post | instance.other_post
        else:
            new_pre, new_post = pre | instance.other_pre, post & instance.other_post
        if not valid(sem, logic, new_pre, r, new_post):
            return violation("cons", instance, new_pre, new_post, f"cons de {logic.value} produziu tripla inválida")
    return None


def check_disj(instance: Instance, sem: Semantics) -> Optional[Violation]:
    r = instance.cmd
    for logic in Logic:
        if valid(sem, logic, instance.pre, r, instance.post) and valid(
            sem, logic, instance.other_pre, r, instance.other_post
        ):
            pre, post = instance.pre | instance.other_pre, instance.post | instance.other_post
            if not valid(sem, logic, pre, r, post):
                return violation("disj", instance, pre, post, f"disj de {logic.value}")
    return None


def check_conj_hl_nc(instance: Instance, sem: Semantics) -> Optional[Violation]:
    """Conjunção é correta para HL e NC."""
    r = instance.cmd
    for logic in (Logic.HL, Logic.NC):
        if valid(sem, logic, instance.pre, r, instance.post) and valid(
            sem, logic, instance.other_pre, r, instance.other_post
        ):
            pre, post = instance.pre & instance.other_pre, instance.post & instance.other_post
            if not valid(sem, logic, pre, r, post):
                return violation("conj-hl-nc", instance, pre, post, f"conj de {logic.value}")
    return None


def check_soundness_completeness(instance: Instance, sem: Semantics) -> Optional[Violation]:
    """derive_then_weaken encontra prova sse a tripla SIL é válida."""
    r, pre, post = instance.cmd, instance.pre, instance.post
    holds = valid(sem, Logic.SIL, pre, r, post)
    derivation = derive_then_weaken(r, pre, post)
    if (derivation is not None) != holds:
        return violation("soundness-completeness", instance, derivation is not None, holds, "derivável ≠ válida")
    if derivation is not None and not check_derivation(derivation).accepted:
        return violation("soundness-completeness", instance, "derivação sintetizada", "rejeitada pelo checador")
    return None


def check_fuzzed_derivation(instance: Instance, sem: Semantics) -> Optional[Violation]:
    """Derivações montadas com regras aleatórias são aceitas e têm conclusão válida."""
    rng = np.random.default_rng([instance.index, 1])
    derivation = gen_derivation(rng, instance.cmd, instance.post)
    report = check_derivation(derivation)
    if not report.accepted:
        return violation("fuzzed-derivations", instance, report.path, "; ".join(report.problems), "derivação rejeitada")
    if not valid(sem, Logic.SIL, derivation.pre, instance.cmd, derivation.post):
        return violation("fuzzed-derivations", instance, derivation.pre, derivation.post, "conclusão aceita mas inválida")
    return None


def _outside_samples(states: StateSet) -> np.ndarray:
    outside = np.flatnonzero(~states.mask)
    if outside.size <= ENLARGEMENT_PROBES:
        return outside
    positions = np.linspace(0, outside.size - 1, ENLARGEMENT_PROBES).astype(np.int64)
    return outside[positions]


def _enlarged(states: StateSet, index: int) -> StateSet:
    return states | StateSet.from_indices(states.config, [int(index)])


def check_weakest_conditions(instance: Instance, sem: Semantics) -> Optional[Violation]:
    """wlp, pós NC mais fraca e pré SIL mais fraca são válidas e maximais."""
    r, pre, post = instance.cmd, instance.pre, instance.post
    candidates = (
        (Logic.HL, "wlp", ~sem.bw(r, ~post), True),
        (Logic.SIL, "pré SIL", sem.bw(r, post), True),
        (Logic.NC, "pós NC", ~sem.fw(r, ~pre), False),
    )
    for logic, label, weakest, is_pre in candidates:
        as_triple = (weakest, post) if is_pre else (pre, weakest)
        if not valid(sem, logic, as_triple[0], r, as_triple[1]):
            return violation("weakest", instance, weakest, label, f"{label} não é válida")
        for index in _outside_samples(weakest):
            bigger = _enlarged(weakest, index)
            probe = (bigger, post) if is_pre else (pre, bigger)
            if valid(sem, logic, probe[0], r, probe[1]):
                return violation("weakest", instance, bigger, label, f"{label} ampliada continua válida")
    return None


PropertyCheck = Callable[[Instance, Semantics], Optional[Violation]]

UNIVERSAL_PROPERTIES: Dict[str, PropertyCheck] = {
    "bijection-hl-nc": probe_bijection_hl_nc,
    "nc-characterization": check_nc_characterization,
    "sil-hl": probe_sil_hl_relation,
    "galois": probe_galois_inequalities,
    "oracle": check_compositional_vs_oracle,
    "adjunction": check_adjunction,
    "additivity": check_additivity,
    "monotonicity": check_monotonicity,
    "star-unroll": check_star_unroll,
    "cons": check_cons_directions,
    "disj": check_disj,
    "conj-hl-nc": check_conj_hl_nc,
    "soundness-completeness": check_soundness_completeness,
    "fuzzed-derivations": check_fuzzed_derivation,
    "weakest": check_weakest_conditions,
}
