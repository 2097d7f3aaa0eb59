"""
Implementação dos subcomandos.

Cada comando recebe um `RunConfig` e devolve o código de saída: 0 para
válido/aceito, 1 para inválido/rejeitado/violação. Erros do toolkit sobem
como exceções e `run` os converte em 2.
"""

from __future__ import annotations

import logging
from dataclasses import replace
from pathlib import Path
from typing import Callable, Dict

from pydantic import ValidationError

from config import settings
from services import catalog
from services.cli.models import EXIT_ERROR, EXIT_FALSE, EXIT_OK, InferenceReport, RunConfig
from services.cli.rendering import (
    check_report_text,
    emit,
    emit_all,
    property_report_text,
    sep_verdict_text,
    summarize_state_set,
    summary_text,
    verdict_text,
)
from services.errors import LogicToolkitError
from services.semantics.domain import DomainConfig
from services.semantics.expressions import states_satisfying
from services.sepsil.asl_text import parse_asl
from services.sepsil.checker import check_sep_derivation
from services.sepsil.codec import load_sep_derivation
from services.sepsil.model import SepDomainConfig
from services.sepsil.validity import check_sep_validity
from services.sil_proofs.checker import check_derivation
from services.sil_proofs.codec import dump_derivation, load_derivation
from services.sil_proofs.synthesizer import synthesize_derivation
from services.syntax.ast import Program
from services.syntax.parser import parse_assertion, parse_program
from services.taxonomy.campaigns import run_taxonomy_suite
from services.taxonomy.models import GenConfig
from services.triples.models import Triple
from services.triples.validity import check_validity
from services.triples.weakest import weakest_sil_pre
from utils.utils import log_snapshot

logger = logging.getLogger(__name__)


def _require(cfg: RunConfig, *fields: str) -> None:
    missing = [name for name in fields if getattr(cfg, name) is None]
    if missing:
        raise LogicToolkitError(f"{cfg.command}: faltam argumentos {', '.join('--' + name for name in missing)}")


def _read_program(path: str, heap_allowed: bool = False) -> Program:
    text = Path(path).read_text(encoding="utf-8")
    return parse_program(text, heap_allowed=heap_allowed)


def _plain_domain(program: Program, cfg: RunConfig) -> DomainConfig:
    config = DomainConfig(modulus=cfg.domain, vars=program.vars)
    config.check_budget(settings.PLAIN_STATE_BUDGET)
    return config


def _sep_domain(program: Program, cfg: RunConfig) -> SepDomainConfig:
    config = catalog.sep_domain_for(program, cfg.sep_locs)
    if cfg.sep_ints is not None:
        config = replace(config, int_min=cfg.sep_ints[0], int_max=cfg.sep_ints[1])
    config.check_budget()
    return config


def cmd_check(cfg: RunConfig) -> int:
    _require(cfg, "program", "logic", "pre", "post")
    program = _read_program(cfg.program)
    config = _plain_domain(program, cfg)
    pre = states_satisfying(parse_assertion(cfg.pre, config.vars), config)
    post = states_satisfying(parse_assertion(cfg.post, config.vars), config)
    verdict = check_validity(Triple(cfg.logic, pre, program.body, post))
    log_snapshot("verdict", verdict)
    emit(verdict, verdict_text(verdict), cfg.output_format)
    return EXIT_OK if verdict.valid else EXIT_FALSE


def cmd_infer(cfg: RunConfig) -> int:
    _require(cfg, "program", "post")
    program = _read_program(cfg.program)
    config = _plain_domain(program, cfg)
    post = states_satisfying(parse_assertion(cfg.post, config.vars), config)
    weakest = weakest_sil_pre(program.body, post)
    report = InferenceReport(program=cfg.program, post=cfg.post, weakest_pre=summarize_state_set(weakest))
    if cfg.emit_derivation:
        derivation = synthesize_derivation(program.body, post)
        Path(cfg.emit_derivation).write_text(dump_derivation(derivation) + "\n", encoding="utf-8")
        report.derivation_path = cfg.emit_derivation
        report.derivation_nodes = derivation.size()
        logger.info("derivação com %d nós gravada em %s", report.derivation_nodes, cfg.emit_derivation)
    text = f"pré-condição SIL mais fraca: {summary_text(report.weakest_pre)}"
    if report.derivation_path:
        text += f"\nderivação ({report.derivation_nodes} nós) gravada em {report.derivation_path}"
    emit(report, text, cfg.output_format)
    return EXIT_OK


def cmd_check_proof(cfg: RunConfig) -> int:
    _require(cfg, "program", "derivation")
    source = Path(cfg.derivation).read_text(encoding="utf-8")
    if cfg.sep:
        program = _read_program(cfg.program, heap_allowed=True)
        derivation = load_sep_derivation(source, program.vars)
        report = check_sep_derivation(derivation, _sep_domain(program, cfg))
    else:
        program = _read_program(cfg.program)
        derivation = load_derivation(source, _plain_domain(program, cfg))
        report = check_derivation(derivation, allow_iter=not cfg.strict)
    emit(report, check_report_text(report), cfg.output_format)
    return EXIT_OK if report.accepted else EXIT_FALSE


def cmd_sep_check(cfg: RunConfig) -> int:
    _require(cfg, "program", "pre", "post")
    program = _read_program(cfg.program, heap_allowed=True)
    verdict = check_sep_validity(parse_asl(cfg.pre), program.body, parse_asl(cfg.post), _sep_domain(program, cfg))
    emit(verdict, sep_verdict_text(verdict), cfg.output_format)
    return EXIT_OK if verdict.valid else EXIT_FALSE


def cmd_fuzz(cfg: RunConfig) -> int:
    overrides = {
        "seed": cfg.seed,
        "instances": cfg.instances,
        "workers": cfg.workers,
        "properties": cfg.properties,
    }
    gen = GenConfig(**{name: value for name, value in overrides.items() if value is not None})
    reports = run_taxonomy_suite(gen)
    emit_all(reports, [property_report_text(report) for report in reports], cfg.output_format)
    return EXIT_OK if all(report.ok for report in reports) else EXIT_FALSE


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "check": cmd_check,
    "infer": cmd_infer,
    "check-proof": cmd_check_proof,
    "sep-check": cmd_sep_check,
    "fuzz": cmd_fuzz,
}


def run(cfg: RunConfig) -> int:
    try:
        return COMMANDS[cfg.command](cfg)
    except (LogicToolkitError, ValidationError, ValueError, OSError) as exc:
        logger.error("%s falhou: %s", cfg.command, exc)
        return EXIT_ERROR
