"""Separation SIL sobre um modelo limitado de heap."""

from services.sepsil.asl import Asl, alpha_equal, asl_free_vars, normalize
from services.sepsil.asl_text import parse_asl, print_asl
from services.sepsil.checker import check_sep_derivation
from services.sepsil.codec import decode_sep, dump_sep_derivation, encode_sep, load_sep_derivation
from services.sepsil.heap_semantics import fwsem_heap, successors
from services.sepsil.model import ERR, CellMark, HeapState, Loc, SepDomainConfig, format_state
from services.sepsil.models import SepDerivation, SepRule, SepVerdict
from services.sepsil.satisfaction import entails, equivalent, eval_asl, holds
from services.sepsil.substitution import subst
from services.sepsil.validity import check_sep_validity, store_mod_agreement

__all__ = [
    "ERR",
    "Asl",
    "CellMark",
    "HeapState",
    "Loc",
    "SepDerivation",
    "SepDomainConfig",
    "SepRule",
    "SepVerdict",
    "alpha_equal",
    "asl_free_vars",
    "check_sep_derivation",
    "check_sep_validity",
    "decode_sep",
    "dump_sep_derivation",
    "encode_sep",
    "entails",
    "equivalent",
    "eval_asl",
    "format_state",
    "fwsem_heap",
    "holds",
    "load_sep_derivation",
    "normalize",
    "parse_asl",
    "print_asl",
    "store_mod_agreement",
    "subst",
    "successors",
]
