"""
Checador local de derivações SIL.

Cada nó é conferido isoladamente contra a instância da sua regra; a
validade global da conclusão decorre da correção das regras, não de uma
passada extra. A regra `iter` infinitária é aceita na forma truncada:
premissas D₀…D_{N−1} com Dₙ concluindo ⟨Q_{n+1}⟩ r ⟨Qₙ⟩ e cauda
implícita Qₙ = ∅ para n > N (licenciada pela regra `empty`).
"""

from __future__ import annotations

import logging
from typing import List, Optional

from services.semantics.collecting import bwsem
from services.semantics.domain import StateSet
from services.sil_proofs.models import CheckReport, Derivation, PREMISE_COUNT, Rule
from services.syntax.ast import AtomicCmd, Choice, HEAP_ATOMICS, Seq, Star
from services.syntax.printer import pretty_print

logger = logging.getLogger(__name__)


def _difference(label: str, left: StateSet, right: StateSet) -> str:
    delta = (left - right) | (right - left)
    return f"{label}: diferença simétrica com {len(delta)} estado(s), ex.: {delta.first()}"


def _not_subset(label: str, smaller: StateSet, larger: StateSet) -> str:
    excess = smaller - larger
    return f"{label}: {len(excess)} estado(s) sobrando, ex.: {excess.first()}"


class _NodeChecker:
    def __init__(self, allow_iter: bool) -> None:
        self.allow_iter = allow_iter
        self.nodes = 0

    def visit(self, node: Derivation, path: str) -> Optional[CheckReport]:
        self.nodes += 1
        problems = self.problems(node)
        logger.debug("nó %s (%s): %s", path, node.rule.value, "ok" if not problems else problems)
        if problems:
            return CheckReport(accepted=False, path=path, rule=node.rule.value, problems=problems)
        for index, premise in enumerate(node.premises):
            failure = self.visit(premise, f"{path}.premises[{index}]")
            if failure is not None:
                return failure
        return None

    def problems(self, node: Derivation) -> List[str]:
        try:
            rule = Rule(node.rule)
        except ValueError:
            return [f"regra desconhecida {node.rule!r}"]
        expected = PREMISE_COUNT.get(rule)
        if expected is not None and len(node.premises) != expected:
            return [f"{rule.value} exige {expected} premissa(s), recebeu {len(node.premises)}"]
        configs = {node.pre.config, node.post.config} | {
            side.config for premise in node.premises for side in (premise.pre, premise.post)
        }
        if len(configs) != 1:
            return ["conjuntos de domínios diferentes na mesma regra"]
        return getattr(self, f"_{rule.value}")(node)

    def _atom(self, node: Derivation) -> List[str]:
        if not isinstance(node.cmd, AtomicCmd) or isinstance(node.cmd, HEAP_ATOMICS):
            return [f"atom exige comando atômico simples, recebeu {pretty_print(node.cmd)!r}"]
        expected = bwsem(node.cmd, node.post)
        if node.pre != expected:
            return [_difference("pre ≠ ⟦c⟧← post", node.pre, expected)]
        return []

    def _cons(self, node: Derivation) -> List[str]:
        (premise,) = node.premises
        problems = []
        if premise.cmd != node.cmd:
            problems.append("cons exige o mesmo comando na premissa")
        if not node.pre <= premise.pre:
            problems.append(_not_subset("pre ⊄ pre da premissa", node.pre, premise.pre))
        if not premise.post <= node.post:
            problems.append(_not_subset("post da premissa ⊄ post", premise.post, node.post))
        return problems

    def _seq(self, node: Derivation) -> List[str]:
        if not isinstance(node.cmd, Seq):
            return ["seq exige comando r₁; r₂"]
        first, second = node.premises
        problems = []
        if first.cmd != node.cmd.first or second.cmd != node.cmd.second:
            problems.append("comandos das premissas não correspondem a r₁ e r₂")
        if first.pre != node.pre:
            problems.append(_difference("pre ≠ pre de r₁", node.pre, first.pre))
        if first.post != second.pre:
            problems.append(_difference("ponto médio R diverge", first.post, second.pre))
        if second.post != node.post:
            problems.append(_difference("post ≠ post de r₂", node.post, second.post))
        return problems

    def _choice(self, node: Derivation) -> List[str]:
        if not isinstance(node.cmd, Choice):
            return ["choice exige comando r₁ ⊞ r₂"]
        left, right = node.premises
        problems = []
        if left.cmd != node.cmd.left or right.cmd != node.cmd.right:
            problems.append("comandos das premissas não correspondem aos ramos")
        if node.pre != (left.pre | right.pre):
            problems.append(_difference("pre ≠ P₁ ∪ P₂", node.pre, left.pre | right.pre))
        for label, premise in (("r₁", left), ("r₂", right)):
            if premise.post != node.post:
                problems.append(_difference(f"post de {label} ≠ post", premise.post, node.post))
        return problems

    def _iter(self, node: Derivation) -> List[str]:
        if not self.allow_iter:
            return ["iter desabilitada no modo estrito (apenas regras adicionais)"]
        if not isinstance(node.cmd, Star):
            return ["iter exige comando r*"]
        problems = []
        union = node.post
        for index, premise in enumerate(node.premises):
            if premise.cmd != node.cmd.body:
                problems.append(f"premissa {index} não é sobre o corpo r")
            union = union | premise.pre
        if node.premises and node.premises[0].post != node.post:
            problems.append(_difference("post ≠ Q₀", node.post, node.premises[0].post))
        for index in range(len(node.premises) - 1):
            if node.premises[index].pre != node.premises[index + 1].post:
                problems.append(
                    _difference(
                        f"Q_{index + 1} diverge entre premissas {index} e {index + 1}",
                        node.premises[index].pre,
                        node.premises[index + 1].post,
                    )
                )
        if node.pre != union:
            problems.append(_difference("pre ≠ ⋃ Qₙ", node.pre, union))
        return problems

    def _empty(self, node: Derivation) -> List[str]:
        if not node.pre.is_empty():
            return [f"empty exige pre = ∅, recebeu {len(node.pre)} estado(s)"]
        return []

    def _disj(self, node: Derivation) -> List[str]:
        first, second = node.premises
        problems = []
        if first.cmd != node.cmd or second.cmd != node.cmd:
            problems.append("disj exige o mesmo comando nas premissas")
        if node.pre != (first.pre | second.pre):
            problems.append(_difference("pre ≠ P₁ ∪ P₂", node.pre, first.pre | second.pre))
        if node.post != (first.post | second.post):
            problems.append(_difference("post ≠ Q₁ ∪ Q₂", node.post, first.post | second.post))
        return problems

    def _iter0(self, node: Derivation) -> List[str]:
        if not isinstance(node.cmd, Star):
            return ["iter0 exige comando r*"]
        if node.pre != node.post:
            return [_difference("iter0 exige pre = post", node.pre, node.post)]
        return []

    def _unrolled_premise(self, node: Derivation) -> List[str]:
        if not isinstance(node.cmd, Star):
            return [f"{node.rule.value} exige comando r*"]
        (premise,) = node.premises
        if premise.cmd != Seq(node.cmd, node.cmd.body):
            return ["premissa deve ser sobre r*; r"]
        return []

    def _unroll(self, node: Derivation) -> List[str]:
        problems = self._unrolled_premise(node)
        if problems:
            return problems
        (premise,) = node.premises
        if premise.pre != node.pre:
            problems.append(_difference("pre ≠ pre da premissa", node.pre, premise.pre))
        if premise.post != node.post:
            problems.append(_difference("post ≠ post da premissa", node.post, premise.post))
        return problems

    def _unroll_split(self, node: Derivation) -> List[str]:
        problems = self._unrolled_premise(node)
        if problems:
            return problems
        (premise,) = node.premises
        if not premise.pre <= node.pre:
            problems.append(_not_subset("P ⊄ pre", premise.pre, node.pre))
        if not premise.post <= node.post:
            problems.append(_not_subset("Q₁ ⊄ post", premise.post, node.post))
        # Q₂ fica determinado pelo que sobra de cada lado.
        split = (node.pre - premise.pre) | (node.post - premise.post)
        if not split <= (node.pre & node.post):
            problems.append(_not_subset("não existe Q₂ com pre = P ∪ Q₂ e post = Q₁ ∪ Q₂", split, node.pre & node.post))
        return problems


def check_derivation(derivation: Derivation, allow_iter: bool = True) -> CheckReport:
    """Aceita sse cada nó instancia sua regra; caso contrário indica o caminho."""
    checker = _NodeChecker(allow_iter=allow_iter)
    failure = checker.visit(derivation, "root")
    if failure is not None:
        failure.nodes_checked = checker.nodes
        logger.info("derivação rejeitada em %s: %s", failure.path, "; ".join(failure.problems))
        return failure
    return CheckReport(accepted=True, nodes_checked=checker.nodes)
