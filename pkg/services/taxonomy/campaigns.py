"""
Campanhas de fuzzing sobre as propriedades de comparação entre lógicas.

As propriedades universais rodam instância por instância (a instância i
vem de `seed + i`), opcionalmente em um `multiprocessing.Pool`; os
resultados são reunidos na ordem dos índices. As buscas (conj em IL e
SIL, incomparabilidade IL/SIL, células "unsound" da tabela de regras)
começam pelas instâncias plantadas e depois percorrem o corpus.
"""

from __future__ import annotations

import logging
import multiprocessing
import time
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from services import catalog
from services.errors import SearchBudgetExhausted
from services.semantics.domain import DomainConfig, StateSet
from services.sil_proofs.codec import encode_state_set
from services.syntax.ast import Command
from services.syntax.printer import pretty_print
from services.taxonomy.generator import Instance, gen_instance
from services.taxonomy.models import Finding, GenConfig, PropertyReport, Violation
from services.taxonomy.properties import COLLECTING, UNIVERSAL_PROPERTIES, RelationalSemantics, valid, violation
from services.taxonomy.rule_table import (
    describe_probe,
    find_rule_counterexample,
    is_counterexample,
    planted_hl_counterexample,
    sound_probed_cells,
    unsound_cells,
)
from services.triples.models import Logic

logger = logging.getLogger(__name__)

SEARCH_PROPERTIES = ("conj-il", "conj-sil", "il-sil-incomparable", "rule-table")
ALL_PROPERTIES = tuple(UNIVERSAL_PROPERTIES) + SEARCH_PROPERTIES

# Propriedades cuja checagem já compara com a relação explícita.
SELF_CONFIRMING = frozenset({"oracle"})


def _confirmed(property_id: str, instance: Instance) -> Optional[Violation]:
    check = UNIVERSAL_PROPERTIES[property_id]
    found = check(instance, COLLECTING)
    if found is None or property_id in SELF_CONFIRMING:
        return found
    if check(instance, RelationalSemantics()) is not None:
        return found
    logger.warning("violação de %s não se repete no oráculo (instância %d)", property_id, instance.index)
    return found.model_copy(
        update={"property_id": "oracle", "detail": f"{property_id}: semântica coletora diverge da relação"}
    )


def _check_index(task: Tuple[GenConfig, Tuple[str, ...], int]) -> List[Violation]:
    cfg, property_ids, index = task
    instance = gen_instance(cfg, index)
    found = []
    for property_id in property_ids:
        result = _confirmed(property_id, instance)
        if result is not None:
            found.append(result)
    return found


def run_universal_properties(cfg: GenConfig, property_ids: Sequence[str]) -> List[PropertyReport]:
    """Uma passada pelo corpus avaliando todas as propriedades pedidas."""
    unknown = [name for name in property_ids if name not in UNIVERSAL_PROPERTIES]
    if unknown:
        raise ValueError(f"propriedades desconhecidas: {unknown}")
    started = time.perf_counter()
    tasks = [(cfg, tuple(property_ids), index) for index in range(cfg.instances)]
    if cfg.workers > 1:
        logger.info("campanha com %d instâncias em %d workers", cfg.instances, cfg.workers)
        with multiprocessing.Pool(processes=cfg.workers) as pool:
            results = pool.map(_check_index, tasks, chunksize=max(1, cfg.instances // (cfg.workers * 4)))
    else:
        results = [_check_index(task) for task in tasks]
    elapsed = time.perf_counter() - started

    reports = {name: PropertyReport(property_id=name, instances=cfg.instances, elapsed_seconds=elapsed) for name in property_ids}
    for found in results:
        for item in found:
            # Divergências de semântica entram no relatório do oráculo quando ele foi pedido.
            target = reports.get(item.property_id) or reports[next(iter(property_ids))]
            target.violations.append(item)
    for report in reports.values():
        logger.info("%s: %d instâncias, %d violações", report.property_id, report.instances, len(report.violations))
    return list(reports.values())


# --- conj em IL e SIL -------------------------------------------------------


def _conj_literal(modulus: int) -> int:
    """O valor 10 do exemplo clássico, trocado por B-1 se colidir com 0."""
    value = 10 % modulus
    return value if value != 0 else modulus - 1


def _single(config: DomainConfig, value: int) -> StateSet:
    return StateSet.from_indices(config, [value])


def planted_conj_instance(logic: Logic, modulus: int) -> Instance:
    """x := 1 com P₁ = {0}, P₂ = {10} para IL; havoc(x) com Q₁ = {0}, Q₂ = {10} para SIL."""
    config = DomainConfig(modulus=modulus, vars=("x",))
    literal = _conj_literal(modulus)
    one = _single(config, 1)
    if Logic(logic) is Logic.IL:
        r = catalog.load("r1").body
        return Instance(-1, config, r, r, _single(config, 0), one, _single(config, literal), one)
    r = catalog.load("rnd").body
    return Instance(-1, config, r, r, one, _single(config, 0), one, _single(config, literal))


def is_conj_counterexample(logic: Logic, instance: Instance) -> bool:
    r = instance.cmd
    if not valid(COLLECTING, logic, instance.pre, r, instance.post):
        return False
    if not valid(COLLECTING, logic, instance.other_pre, r, instance.other_post):
        return False
    return not valid(COLLECTING, logic, instance.pre & instance.other_pre, r, instance.post & instance.other_post)


def _candidates(planted: Iterable[Instance], cfg: GenConfig) -> Iterator[Instance]:
    yield from planted
    for index in range(cfg.search_budget):
        yield gen_instance(cfg, index)


def _conj_finding(logic: Logic, instance: Instance, attempts: int) -> Finding:
    return Finding(
        label=f"conj-{logic.value.lower()}",
        program=pretty_print(instance.cmd),
        sets={
            "P1": encode_state_set(instance.pre),
            "P2": encode_state_set(instance.other_pre),
            "Q1": encode_state_set(instance.post),
            "Q2": encode_state_set(instance.other_post),
        },
        planted=instance.index < 0,
        attempts=attempts,
    )


def find_conj_counterexample(logic: Logic, cfg: GenConfig) -> Finding:
    """Duas triplas válidas cuja interseção não é válida.

    Só faz sentido para IL e SIL: para HL e NC a regra de conjunção é
    correta, então a interface recusa essas lógicas.
    """
    if not isinstance(logic, Logic):
        raise TypeError(f"lógica inválida: {logic!r}")
    if logic not in (Logic.IL, Logic.SIL):
        raise ValueError(f"conj é correta em {logic.value}; a busca só vale para IL e SIL")
    planted = [planted_conj_instance(logic, cfg.modulus)]
    for attempts, instance in enumerate(_candidates(planted, cfg), start=1):
        if is_conj_counterexample(logic, instance):
            logger.info("contraexemplo de conj para %s na tentativa %d", logic.value, attempts)
            return _conj_finding(logic, instance, attempts)
    raise SearchBudgetExhausted(f"contraexemplo de conj para {logic.value}", len(planted) + cfg.search_budget)


def _search_report(property_id: str, search: Callable[[], Finding]) -> PropertyReport:
    started = time.perf_counter()
    report = PropertyReport(property_id=property_id)
    try:
        finding = search()
        report.findings.append(finding)
        report.instances = finding.attempts
    except SearchBudgetExhausted as exc:
        report.unresolved.append(str(exc))
        report.instances = exc.attempts
    report.elapsed_seconds = time.perf_counter() - started
    return report


# --- incomparabilidade IL/SIL ----------------------------------------------


def planted_incomparability(modulus: int) -> Tuple[Command, StateSet, StateSet]:
    """r1 com P = "x ≥ 0" lido como a metade não negativa em complemento de dois."""
    config = DomainConfig(modulus=modulus, vars=("x",))
    return catalog.load("r1").body, catalog.predicate(f"x < {modulus // 2}", config), _single(config, 1)


def _instance_sets(instance: Instance) -> Dict[str, str]:
    return {"P": encode_state_set(instance.pre), "Q": encode_state_set(instance.post)}


def check_il_sil_incomparable(cfg: GenConfig) -> PropertyReport:
    """Confere a instância plantada e procura instâncias que separam IL e SIL."""
    started = time.perf_counter()
    report = PropertyReport(property_id="il-sil-incomparable")
    r, pre, post = planted_incomparability(cfg.modulus)
    expected = {
        "SIL ⟨P⟩ r1 ⟨Q⟩": (valid(COLLECTING, Logic.SIL, pre, r, post), True),
        "IL [P] r1 [Q]": (valid(COLLECTING, Logic.IL, pre, r, post), True),
        "IL [¬P] r1 [¬Q]": (valid(COLLECTING, Logic.IL, ~pre, r, ~post), False),
        "SIL ⟨¬P⟩ r1 ⟨¬Q⟩": (valid(COLLECTING, Logic.SIL, ~pre, r, ~post), False),
    }
    planted = Instance(-1, pre.config, r, r, pre, post, ~pre, ~post)
    for label, (actual, wanted) in expected.items():
        if actual != wanted:
            report.violations.append(violation("il-sil-incomparable", planted, actual, wanted, label))
    report.findings.append(Finding(label="r1 plantado", program=pretty_print(r), sets=_instance_sets(planted), planted=True))

    searches = {
        "SIL válida e IL inválida": (Logic.SIL, Logic.IL),
        "IL válida e SIL inválida": (Logic.IL, Logic.SIL),
    }
    for label, (holds, fails) in searches.items():
        for attempts, instance in enumerate(_candidates([], cfg), start=1):
            if valid(COLLECTING, holds, instance.pre, instance.cmd, instance.post) and not valid(
                COLLECTING, fails, instance.pre, instance.cmd, instance.post
            ):
                report.findings.append(
                    Finding(label=label, program=pretty_print(instance.cmd), sets=_instance_sets(instance), attempts=attempts)
                )
                report.instances += attempts
                break
        else:
            report.unresolved.append(str(SearchBudgetExhausted(label, cfg.search_budget)))
            report.instances += cfg.search_budget
    report.elapsed_seconds = time.perf_counter() - started
    return report


# --- tabela de regras -------------------------------------------------------


def probe_rule_table(cfg: GenConfig) -> PropertyReport:
    """Células corretas sem contraexemplo; células "unsound" com contraexemplo."""
    started = time.perf_counter()
    report = PropertyReport(property_id="rule-table", instances=cfg.instances)
    cells = sound_probed_cells()
    for index in range(cfg.instances):
        instance = gen_instance(cfg, index)
        for rule, logic in cells:
            if is_counterexample(rule, logic, instance):
                sides = describe_probe(rule, logic, instance)
                report.violations.append(
                    violation("rule-table", instance, sides["pre"], sides["post"], f"{rule.value} em {logic.value}")
                )
    for rule, logic in unsound_cells():
        planted = [planted_hl_counterexample(cfg.modulus)]
        found = find_rule_counterexample(rule, logic, _candidates(planted, cfg))
        if found is None:
            report.unresolved.append(f"sem contraexemplo para {rule.value} em {logic.value}")
            continue
        instance, attempts = found
        sides = describe_probe(rule, logic, instance)
        report.findings.append(
            Finding(
                label=f"{rule.value} em {logic.value}",
                program=sides.pop("cmd"),
                sets=sides,
                planted=instance.index < 0,
                attempts=attempts,
            )
        )
    report.elapsed_seconds = time.perf_counter() - started
    return report


# --- suíte completa -----------------------------------------------------------


def run_taxonomy_suite(cfg: GenConfig) -> List[PropertyReport]:
    """Um relatório por propriedade, na ordem de `ALL_PROPERTIES`."""
    selected = list(cfg.properties or ALL_PROPERTIES)
    unknown = [name for name in selected if name not in ALL_PROPERTIES]
    if unknown:
        raise ValueError(f"propriedades desconhecidas: {unknown}")
    universal = [name for name in ALL_PROPERTIES if name in selected and name in UNIVERSAL_PROPERTIES]

    reports: List[PropertyReport] = []
    if universal:
        reports.extend(run_universal_properties(cfg, universal))
    if "conj-il" in selected:
        reports.append(_search_report("conj-il", lambda: find_conj_counterexample(Logic.IL, cfg)))
    if "conj-sil" in selected:
        reports.append(_search_report("conj-sil", lambda: find_conj_counterexample(Logic.SIL, cfg)))
    if "il-sil-incomparable" in selected:
        reports.append(check_il_sil_incomparable(cfg))
    if "rule-table" in selected:
        reports.append(probe_rule_table(cfg))
    failing = [report.property_id for report in reports if not report.ok]
    logger.info("suíte concluída: %d relatórios, falhas em %s", len(reports), failing or "nenhuma")
    return reports
