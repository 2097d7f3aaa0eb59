"""Comparação executável entre HL, IL, NC e SIL: gerador, propriedades e campanhas."""

from services.taxonomy.campaigns import (
    ALL_PROPERTIES,
    check_il_sil_incomparable,
    find_conj_counterexample,
    probe_rule_table,
    run_taxonomy_suite,
)
from services.taxonomy.generator import gen_command, gen_derivation, gen_instance, gen_state_set
from services.taxonomy.models import GenConfig, PropertyReport, Violation
from services.taxonomy.properties import (
    check_bijection_hl_nc,
    check_galois_inequalities,
    check_sil_hl_relation,
)

__all__ = [
    "ALL_PROPERTIES",
    "GenConfig",
    "PropertyReport",
    "Violation",
    "check_bijection_hl_nc",
    "check_galois_inequalities",
    "check_il_sil_incomparable",
    "check_sil_hl_relation",
    "find_conj_counterexample",
    "gen_command",
    "gen_derivation",
    "gen_instance",
    "gen_state_set",
    "probe_rule_table",
    "run_taxonomy_suite",
]
