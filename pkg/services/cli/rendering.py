"""
Saída da CLI: texto em português ou uma linha JSON por registro.

Conjuntos de estados viram predicado quando a cobertura por cubos cabe em
`RENDER_CUBE_LIMIT`; acima disso a saída é a contagem mais algumas
amostras.
"""

from __future__ import annotations

import sys
from typing import List, Optional, TextIO

from pydantic import BaseModel

from config import settings
from services.cli.models import OutputFormat, StateSetSummary
from services.semantics.domain import StateSet
from services.semantics.predicates import cube_cover, describe_cube
from services.sepsil.models import SepVerdict
from services.sil_proofs.models import CheckReport
from services.syntax.ast import FalseB, disjunction
from services.syntax.printer import print_bexp
from services.taxonomy.models import PropertyReport
from services.triples.models import Verdict


def summarize_state_set(states: StateSet) -> StateSetSummary:
    cubes = cube_cover(states)
    summary = StateSetSummary(count=len(states), total=states.config.size)
    if len(cubes) <= settings.RENDER_CUBE_LIMIT:
        predicate = FalseB()
        for index, cube in enumerate(cubes):
            piece = describe_cube(states.config.vars, cube)
            predicate = piece if index == 0 else disjunction(predicate, piece)
        summary.predicate = print_bexp(predicate)
    else:
        for sample, store in enumerate(states):
            if sample >= settings.RENDER_SAMPLE_COUNT:
                break
            summary.samples.append(store)
    return summary


def _store_text(store) -> str:
    return ", ".join(f"{name}={value}" for name, value in store.items())


def summary_text(summary: StateSetSummary) -> str:
    if summary.predicate is not None:
        return summary.predicate
    samples = "; ".join(_store_text(store) for store in summary.samples)
    return f"{summary.count} de {summary.total} estados (amostras: {samples})"


def verdict_text(verdict: Verdict) -> str:
    lines = [f"{verdict.logic}: {'válida' if verdict.valid else 'inválida'}"]
    if verdict.witness is not None:
        lines.append(f"  testemunha ({verdict.witness.role}): {_store_text(verdict.witness.state)}")
        if verdict.witness.successor is not None:
            lines.append(f"  sucessor: {_store_text(verdict.witness.successor)}")
    if verdict.detail:
        lines.append(f"  {verdict.detail}")
    return "\n".join(lines)


def check_report_text(report: CheckReport) -> str:
    if report.accepted:
        return f"derivação aceita ({report.nodes_checked} nós)"
    lines = [f"derivação rejeitada em {report.path} (regra {report.rule})"]
    lines.extend(f"  - {problem}" for problem in report.problems)
    return "\n".join(lines)


def sep_verdict_text(verdict: SepVerdict) -> str:
    low, high = verdict.int_range
    bounds = f"{verdict.locations} localizações, inteiros {low}..{high}"
    if verdict.valid:
        return f"Separation SIL: válida ({bounds}; {verdict.states_checked} estados em p)"
    witness = verdict.witness
    lines = [f"Separation SIL: inválida ({bounds})", f"  testemunha ({witness.role}): {witness.state}"]
    lines.extend(f"  sucessor: {successor}" for successor in witness.successors)
    return "\n".join(lines)


def property_report_text(report: PropertyReport) -> str:
    status = "ok" if report.ok else "FALHOU"
    lines = [f"[{status}] {report.property_id}: {report.instances} instâncias, {len(report.violations)} violações"]
    for item in report.violations:
        lines.append(f"  violação #{item.index}: {item.program} | pre {item.pre} | post {item.post} | {item.detail}")
    for finding in report.findings:
        sets = ", ".join(f"{name} = {text}" for name, text in finding.sets.items())
        origin = "plantado" if finding.planted else f"tentativa {finding.attempts}"
        lines.append(f"  achado {finding.label} ({origin}): {finding.program} | {sets}")
    lines.extend(f"  pendente: {item}" for item in report.unresolved)
    return "\n".join(lines)


def emit(record: BaseModel, text: str, output_format: OutputFormat, stream: Optional[TextIO] = None) -> None:
    stream = stream or sys.stdout
    if output_format is OutputFormat.JSON:
        stream.write(record.model_dump_json() + "\n")
    else:
        stream.write(text + "\n")


def emit_all(records: List[BaseModel], texts: List[str], output_format: OutputFormat, stream: Optional[TextIO] = None) -> None:
    for record, text in zip(records, texts):
        emit(record, text, output_format, stream)
