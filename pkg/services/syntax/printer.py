"""Impressão canônica: `parse(pretty_print(r))` reconstrói exatamente `r`."""

from __future__ import annotations

from services.syntax.ast import (
    AExp,
    Alloc,
    And,
    Assign,
    Assume,
    BExp,
    BinOp,
    Choice,
    Cmp,
    Command,
    FalseB,
    Free,
    Havoc,
    Load,
    Not,
    Num,
    Program,
    Seq,
    Skip,
    Star,
    Store,
    Var,
    as_disjunction,
)


def print_aexp(a: AExp) -> str:
    if isinstance(a, Num):
        return str(a.value)
    if isinstance(a, Var):
        return a.name
    if isinstance(a, BinOp):
        return f"{_wrap_aexp(a.left)} {a.op} {_wrap_aexp(a.right)}"
    raise TypeError(f"expressão aritmética desconhecida: {a!r}")


def _wrap_aexp(a: AExp) -> str:
    text = print_aexp(a)
    return f"({text})" if isinstance(a, BinOp) else text


def print_bexp(b: BExp) -> str:
    if isinstance(b, FalseB):
        return "false"
    if isinstance(b, Cmp):
        return f"{print_aexp(b.left)} {b.op} {print_aexp(b.right)}"
    if isinstance(b, And):
        return f"{_wrap_bexp(b.left)} && {_wrap_bexp(b.right)}"
    if isinstance(b, Not):
        if isinstance(b.operand, FalseB):
            return "true"
        parts = as_disjunction(b)
        if parts is not None:
            return f"{_wrap_bexp(parts[0])} || {_wrap_bexp(parts[1])}"
        return f"!({print_bexp(b.operand)})"
    raise TypeError(f"expressão booleana desconhecida: {b!r}")


def _wrap_bexp(b: BExp) -> str:
    text = print_bexp(b)
    if isinstance(b, And) or as_disjunction(b) is not None:
        return f"({text})"
    return text


def pretty_print(r: Command) -> str:
    if isinstance(r, Skip):
        return "skip"
    if isinstance(r, Assign):
        return f"{r.var} := {print_aexp(r.expr)}"
    if isinstance(r, Havoc):
        return f"{r.var} := nondet()"
    if isinstance(r, Assume):
        return f"({print_bexp(r.cond)})?"
    if isinstance(r, Alloc):
        return f"{r.var} := alloc()"
    if isinstance(r, Free):
        return f"free({r.var})"
    if isinstance(r, Load):
        return f"{r.var} := [{r.pointer}]"
    if isinstance(r, Store):
        return f"[{r.pointer}] := {r.var}"
    if isinstance(r, Seq):
        first = pretty_print(r.first)
        if isinstance(r.first, Seq):
            first = f"({first})"
        return f"{first}; {pretty_print(r.second)}"
    if isinstance(r, Choice):
        return f"({pretty_print(r.left)} [+] {pretty_print(r.right)})"
    if isinstance(r, Star):
        return f"({pretty_print(r.body)})*"
    raise TypeError(f"comando desconhecido: {r!r}")


def print_program(program: Program) -> str:
    lines = [f"vars {', '.join(program.vars)};"]
    if program.heap_bounds is not None:
        bounds = program.heap_bounds
        lines.append(f"heap locs {bounds.locations} ints {bounds.int_min}..{bounds.int_max};")
    lines.append(pretty_print(program.body))
    return "\n".join(lines) + "\n"
