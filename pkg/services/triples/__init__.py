"""Triplas HL/IL/NC/SIL, validade com testemunhas e condições mais fracas."""

from services.triples.models import Logic, Triple, Verdict, Witness
from services.triples.validity import check_validity, is_manifest_error, is_valid
from services.triples.weakest import weakest_nc_post, weakest_sil_pre, wlp

__all__ = [
    "Logic",
    "Triple",
    "Verdict",
    "Witness",
    "check_validity",
    "is_manifest_error",
    "is_valid",
    "weakest_nc_post",
    "weakest_sil_pre",
    "wlp",
]
