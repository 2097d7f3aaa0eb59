"""Sistema de prova SIL: derivações, checador e sintetizador."""

from services.sil_proofs.checker import check_derivation
from services.sil_proofs.codec import decode, dump_derivation, encode, load_derivation, load_document
from services.sil_proofs.models import CheckReport, Derivation, DerivationDocument, Rule
from services.sil_proofs.synthesizer import derive_then_weaken, iteration_sequence, synthesize_derivation

__all__ = [
    "CheckReport",
    "Derivation",
    "DerivationDocument",
    "Rule",
    "check_derivation",
    "decode",
    "derive_then_weaken",
    "dump_derivation",
    "encode",
    "iteration_sequence",
    "load_derivation",
    "load_document",
    "synthesize_derivation",
]
