"""
Checador de derivações de Separation SIL.

Axiomas são conferidos por padrão sintático, módulo α-equivalência e as
simplificações de `normalize`; quando o padrão não bate literalmente, a
equivalência é decidida no modelo limitado. Consequência (`cons`) é
sempre decidida no modelo limitado, de modo que uma derivação aceita
certifica validade limitada, a mesma noção de `check_sep_validity`.
"""

from __future__ import annotations

import logging
from typing import List, Optional

from services.sepsil.asl import (
    AAnd,
    ACmp,
    AExists,
    AFalse,
    Asl,
    Dangling,
    Emp,
    PointsTo,
    SepConj,
    alpha_equal,
    aor,
    asl_free_vars,
    from_bexp,
    normalize,
    or_all,
    points_to_any,
    sep_all,
    sep_conjuncts,
)
from services.sepsil.asl_text import print_asl
from services.sepsil.model import SepDomainConfig, format_state
from services.sepsil.models import SEP_PREMISE_COUNT, SepDerivation, SepRule
from services.sepsil.satisfaction import entailment_counterexample, is_unsatisfiable
from services.sepsil.substitution import assign_pre, subst
from services.sil_proofs.models import CheckReport
from services.syntax.ast import Alloc, Assign, Assume, Choice, Free, Load, Seq, Skip, Star, Store, Var
from services.syntax.printer import pretty_print
from services.syntax.variables import aexp_vars, free_vars, mod_vars

logger = logging.getLogger(__name__)


class _SepNodeChecker:
    def __init__(self, config: SepDomainConfig) -> None:
        self.config = config
        self.nodes = 0

    # --- comparação de fórmulas ---------------------------------------------

    def implies(self, label: str, p: Asl, q: Asl) -> Optional[str]:
        found = entailment_counterexample(p, q, self.config)
        if found is None:
            return None
        state, scope = found
        return f"{label}: falha em {format_state(state, scope)}"

    def same(self, label: str, actual: Asl, expected: Asl) -> Optional[str]:
        if alpha_equal(normalize(actual), normalize(expected)):
            return None
        problem = self.implies(label, actual, expected) or self.implies(label, expected, actual)
        if problem is None:
            return None
        return f"{problem} (esperado {print_asl(expected)!r}, recebido {print_asl(actual)!r})"

    def collect(self, *checks: Optional[str]) -> List[str]:
        return [problem for problem in checks if problem is not None]

    # --- percurso -----------------------------------------------------------

    def visit(self, node: SepDerivation, path: str) -> Optional[CheckReport]:
        self.nodes += 1
        problems = self.problems(node)
        logger.debug("nó %s (%s): %s", path, node.rule, "ok" if not problems else problems)
        if problems:
            return CheckReport(accepted=False, path=path, rule=str(SepRule(node.rule).value), problems=problems)
        for index, premise in enumerate(node.premises):
            failure = self.visit(premise, f"{path}.premises[{index}]")
            if failure is not None:
                return failure
        return None

    def problems(self, node: SepDerivation) -> List[str]:
        try:
            rule = SepRule(node.rule)
        except ValueError:
            return [f"regra desconhecida {node.rule!r}"]
        expected = SEP_PREMISE_COUNT.get(rule)
        if expected is not None and len(node.premises) != expected:
            return [f"{rule.value} exige {expected} premissa(s), recebeu {len(node.premises)}"]
        return getattr(self, f"_{rule.value}")(node)

    # --- axiomas ------------------------------------------------------------

    def _skip(self, node: SepDerivation) -> List[str]:
        if not isinstance(node.cmd, Skip):
            return ["skip exige o comando skip"]
        return self.collect(self.same("pre ≠ emp", node.pre, Emp()), self.same("post ≠ emp", node.post, Emp()))

    def _assign(self, node: SepDerivation) -> List[str]:
        if not isinstance(node.cmd, Assign):
            return ["assign exige x := a"]
        expected = assign_pre(node.post, node.cmd.expr, node.cmd.var)
        return self.collect(self.same("pre ≠ q[a/x] ∧ a avalia", node.pre, expected))

    def _assert(self, node: SepDerivation) -> List[str]:
        if not isinstance(node.cmd, Assume):
            return ["assert exige b?"]
        return self.collect(self.same("pre ≠ q ∧ b", node.pre, AAnd(node.post, from_bexp(node.cmd.cond))))

    def _alloc(self, node: SepDerivation) -> List[str]:
        if not isinstance(node.cmd, Alloc):
            return ["alloc exige x := alloc()"]
        target = node.cmd.var
        old = _alloc_witness(normalize(node.pre), target)
        if old is None:
            return [f"pre de alloc deve ter a forma {target} = x' && emp"]
        problems = []
        if old in free_vars(node.cmd) | asl_free_vars(node.post):
            problems.append(f"{old} precisa ser nova: ocorre no comando ou na pós-condição")
        problems += self.collect(self.same(f"post ≠ {target} |-> -", node.post, points_to_any(target)))
        return problems

    def _free(self, node: SepDerivation) -> List[str]:
        if not isinstance(node.cmd, Free):
            return ["free exige free(x)"]
        name = node.cmd.var
        return self.collect(
            self.same(f"pre ≠ {name} |-> -", node.pre, points_to_any(name)),
            self.same(f"post ≠ {name} |-/>", node.post, Dangling(name)),
        )

    def _store(self, node: SepDerivation) -> List[str]:
        if not isinstance(node.cmd, Store):
            return ["store exige [x] := y"]
        pointer, value = node.cmd.pointer, node.cmd.var
        return self.collect(
            self.same(f"pre ≠ {pointer} |-> -", node.pre, points_to_any(pointer)),
            self.same(f"post ≠ {pointer} |-> {value}", node.post, PointsTo(pointer, Var(value))),
        )

    def _load(self, node: SepDerivation) -> List[str]:
        if not isinstance(node.cmd, Load):
            return ["load exige x := [y]"]
        target, pointer = node.cmd.var, node.cmd.pointer
        parts = list(sep_conjuncts(normalize(node.post)))
        cell = next((part for part in parts if isinstance(part, PointsTo) and part.var == pointer), None)
        if cell is None:
            return [f"post de load deve conter {pointer} |-> a como conjunto separado"]
        if target in aexp_vars(cell.value) | {pointer}:
            return [f"{target} não pode ocorrer em {pointer} nem no valor apontado"]
        parts.remove(cell)
        frame = sep_all(parts)
        expected = SepConj(cell, subst(frame, cell.value, target))
        return self.collect(self.same("pre ≠ y ↦ a ∗ q[a/x]", node.pre, expected))

    # --- regras estruturais -------------------------------------------------

    def _exists(self, node: SepDerivation) -> List[str]:
        (premise,) = node.premises
        bound = node.bound_var
        if bound is None:
            return ["exists exige bound_var"]
        problems = []
        if premise.cmd != node.cmd:
            problems.append("exists exige o mesmo comando na premissa")
        if bound in free_vars(node.cmd):
            problems.append(f"{bound} ocorre livre no comando")
        problems += self.collect(
            self.same("pre ≠ ∃x. p", node.pre, AExists(bound, premise.pre)),
            self.same("post ≠ ∃x. q", node.post, AExists(bound, premise.post)),
        )
        return problems

    def _frame(self, node: SepDerivation) -> List[str]:
        (premise,) = node.premises
        if node.frame is None:
            return ["frame exige a fórmula de moldura"]
        problems = []
        if premise.cmd != node.cmd:
            problems.append("frame exige o mesmo comando na premissa")
        clash = asl_free_vars(node.frame) & mod_vars(node.cmd)
        if clash:
            problems.append(f"moldura menciona variáveis modificadas: {', '.join(sorted(clash))}")
        problems += self.collect(
            self.same("pre ≠ p ∗ t", node.pre, SepConj(premise.pre, node.frame)),
            self.same("post ≠ q ∗ t", node.post, SepConj(premise.post, node.frame)),
        )
        return problems

    def _cons(self, node: SepDerivation) -> List[str]:
        (premise,) = node.premises
        problems = []
        if premise.cmd != node.cmd:
            problems.append("cons exige o mesmo comando na premissa")
        problems += self.collect(
            self.implies("p ⇏ p′", node.pre, premise.pre),
            self.implies("q′ ⇏ q", premise.post, node.post),
        )
        return problems

    def _seq(self, node: SepDerivation) -> List[str]:
        if not isinstance(node.cmd, Seq):
            return ["seq exige comando r₁; r₂"]
        first, second = node.premises
        problems = []
        if first.cmd != node.cmd.first or second.cmd != node.cmd.second:
            problems.append("comandos das premissas não correspondem a r₁ e r₂")
        problems += self.collect(
            self.same("pre ≠ pre de r₁", node.pre, first.pre),
            self.same("ponto médio diverge", second.pre, first.post),
            self.same("post ≠ post de r₂", node.post, second.post),
        )
        return problems

    def _choice(self, node: SepDerivation) -> List[str]:
        if not isinstance(node.cmd, Choice):
            return ["choice exige comando r₁ ⊞ r₂"]
        left, right = node.premises
        problems = []
        if left.cmd != node.cmd.left or right.cmd != node.cmd.right:
            problems.append("comandos das premissas não correspondem aos ramos")
        problems += self.collect(
            self.same("pre ≠ p₁ ∨ p₂", node.pre, aor(left.pre, right.pre)),
            self.same("post de r₁ ≠ post", left.post, node.post),
            self.same("post de r₂ ≠ post", right.post, node.post),
        )
        return problems

    def _iter(self, node: SepDerivation) -> List[str]:
        if not isinstance(node.cmd, Star):
            return ["iter exige comando r*"]
        problems = []
        for index, premise in enumerate(node.premises):
            if premise.cmd != node.cmd.body:
                problems.append(f"premissa {index} não é sobre o corpo r")
        if node.premises:
            problems += self.collect(self.same("post ≠ q(0)", node.post, node.premises[0].post))
        for index in range(len(node.premises) - 1):
            problems += self.collect(
                self.same(f"q({index + 1}) diverge", node.premises[index + 1].post, node.premises[index].pre)
            )
        family = or_all([node.post] + [premise.pre for premise in node.premises])
        problems += self.collect(self.same("pre ≠ ∃n. q(n)", node.pre, family))
        return problems

    def _empty(self, node: SepDerivation) -> List[str]:
        if isinstance(normalize(node.pre), AFalse) or is_unsatisfiable(node.pre, self.config):
            return []
        return [f"empty exige pre insatisfazível, recebeu {print_asl(node.pre)!r}"]

    def _disj(self, node: SepDerivation) -> List[str]:
        first, second = node.premises
        problems = []
        if first.cmd != node.cmd or second.cmd != node.cmd:
            problems.append("disj exige o mesmo comando nas premissas")
        problems += self.collect(
            self.same("pre ≠ p₁ ∨ p₂", node.pre, aor(first.pre, second.pre)),
            self.same("post ≠ q₁ ∨ q₂", node.post, aor(first.post, second.post)),
        )
        return problems

    def _iter0(self, node: SepDerivation) -> List[str]:
        if not isinstance(node.cmd, Star):
            return ["iter0 exige comando r*"]
        return self.collect(self.same("iter0 exige pre = post", node.pre, node.post))

    def _unroll(self, node: SepDerivation) -> List[str]:
        if not isinstance(node.cmd, Star):
            return ["unroll exige comando r*"]
        (premise,) = node.premises
        if premise.cmd != Seq(node.cmd, node.cmd.body):
            return ["premissa deve ser sobre r*; r"]
        return self.collect(
            self.same("pre ≠ pre da premissa", node.pre, premise.pre),
            self.same("post ≠ post da premissa", node.post, premise.post),
        )


def _alloc_witness(pre: Asl, target: str) -> Optional[str]:
    """Nome `x'` quando `pre` é `x = x' && emp` (em qualquer ordem)."""
    if not isinstance(pre, AAnd):
        return None
    for equation, heap in ((pre.left, pre.right), (pre.right, pre.left)):
        if not isinstance(heap, Emp) or not isinstance(equation, ACmp) or equation.op != "=":
            continue
        sides = (equation.left, equation.right)
        if all(isinstance(side, Var) for side in sides):
            names = [side.name for side in sides]
            if target in names and names[0] != names[1]:
                return names[1] if names[0] == target else names[0]
    return None


def check_sep_derivation(derivation: SepDerivation, config: SepDomainConfig) -> CheckReport:
    checker = _SepNodeChecker(config)
    failure = checker.visit(derivation, "root")
    if failure is not None:
        failure.nodes_checked = checker.nodes
        logger.info("derivação sep rejeitada em %s: %s", failure.path, "; ".join(failure.problems))
        return failure
    logger.info("derivação sep aceita: %d nós, %s", checker.nodes, pretty_print(derivation.cmd))
    return CheckReport(accepted=True, nodes_checked=checker.nodes)
