"""Condições mais fracas que existem: pré SIL, wlp e pós NC."""

from __future__ import annotations

from services.semantics.collecting import bwsem, fwsem
from services.semantics.domain import StateSet
from services.syntax.ast import Command


def weakest_sil_pre(r: Command, post: StateSet) -> StateSet:
    return bwsem(r, post)


def wlp(r: Command, post: StateSet) -> StateSet:
    return ~bwsem(r, ~post)


def weakest_nc_post(r: Command, pre: StateSet) -> StateSet:
    return ~fwsem(r, ~pre)
