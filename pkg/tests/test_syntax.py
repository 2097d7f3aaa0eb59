from pathlib import Path

import numpy as np
import pytest

from services.errors import ProgramSyntaxError, ScopeError
from services.syntax.ast import (
    Alloc,
    Assign,
    Assume,
    BinOp,
    Choice,
    Cmp,
    Free,
    Havoc,
    Load,
    Not,
    Num,
    Seq,
    Skip,
    Star,
    Store,
    Var,
    if_then_else,
    while_loop,
)
from services.syntax.parser import parse_aexp, parse_assertion, parse_command, parse_program
from services.syntax.printer import pretty_print, print_program
from services.syntax.variables import free_vars, mod_vars
from services.taxonomy.generator import gen_command, variable_names
from services.taxonomy.models import GenConfig

FIXTURES = Path(__file__).parent / "fixtures"


def _fixture(name: str) -> str:
    return (FIXTURES / f"{name}.rc").read_text(encoding="utf-8")


def test_parse_r42_desugars_nested_conditionals():
    program = parse_program(_fixture("r42"))

    assert program.vars == ("x", "y", "z")
    assert not program.heap_mode
    even_x = parse_assertion("x mod 2 = 0", program.vars)
    odd_y = parse_assertion("y mod 2 = 1", program.vars)
    inner = if_then_else(odd_y, Assign("z", Num(42)), Skip())
    assert program.body == if_then_else(even_x, inner, Skip())


def test_while_and_nondet_sugar():
    body = parse_command("while (x < 3) { x := x + 1 }", ["x"])
    cond = Cmp("<", Var("x"), Num(3))
    assert body == while_loop(cond, Assign("x", BinOp("+", Var("x"), Num(1))))

    loop = parse_command("while (nondet()) { x := nondet() }", ["x"])
    assert loop == Star(Havoc("x"))

    branch = parse_command("if (nondet()) { skip } else { x := 0 }", ["x"])
    assert branch == Choice(Skip(), Assign("x", Num(0)))


def test_guard_choice_and_star_forms():
    r = parse_command("((x = 0)?; y := 1 [+] skip)*", ["x", "y"])
    assert r == Star(Choice(Seq(Assume(Cmp("=", Var("x"), Num(0))), Assign("y", Num(1))), Skip()))


def test_sequence_is_right_associative():
    r = parse_command("x := 1; y := 2; x := y", ["x", "y"])
    assert isinstance(r, Seq)
    assert r.first == Assign("x", Num(1))
    assert isinstance(r.second, Seq)


def test_heap_atomics_require_heap_mode():
    with pytest.raises(ScopeError):
        parse_command("free(x)", ["x"])

    r = parse_command("x := alloc(); y := [x]; [x] := y; free(x)", ["x", "y"], heap_allowed=True)
    assert r == Seq(Alloc("x"), Seq(Load("y", "x"), Seq(Store("x", "y"), Free("x"))))


def test_rclient_header_enables_heap_mode():
    program = parse_program(_fixture("rclient"))

    assert program.heap_mode
    assert program.heap_bounds.locations == 3
    assert (program.heap_bounds.int_min, program.heap_bounds.int_max) == (0, 1)


def test_undeclared_variable_is_a_scope_error():
    with pytest.raises(ScopeError):
        parse_program("vars x;\ny := 1\n")


def test_syntax_error_carries_position():
    with pytest.raises(ProgramSyntaxError) as excinfo:
        parse_program("vars x;\nx := ;\n")

    assert excinfo.value.line == 2


def test_duplicated_declaration_is_rejected():
    with pytest.raises(ScopeError):
        parse_program("vars x, x;\nskip\n")


def test_parity_and_negation_in_assertions():
    b = parse_assertion("!(odd(x)) && true", ["x"])
    assert b.left == Not(Cmp("=", BinOp("mod", Var("x"), Num(2)), Num(1)))


def test_aexp_precedence():
    assert parse_aexp("1 + x * 2", ["x"]) == BinOp("+", Num(1), BinOp("*", Var("x"), Num(2)))


@pytest.mark.parametrize(
    "text, free, modified",
    [
        ("x := y + 1", {"x", "y"}, {"x"}),
        ("(z = 0)?", {"z"}, set()),
        ("x := nondet(); (y > x)?", {"x", "y"}, {"x"}),
        ("free(x); [y] := x", {"x", "y"}, set()),
        ("x := [y]", {"x", "y"}, {"x"}),
        ("(x := alloc())*", {"x"}, {"x"}),
    ],
)
def test_free_and_modified_variables(text, free, modified):
    r = parse_command(text, ["x", "y", "z"], heap_allowed=True)

    assert free_vars(r) == free
    assert mod_vars(r) == modified


@pytest.mark.parametrize("name", ["r42", "r42nd", "rxy", "rshortloop0", "rloop0", "rclient"])
def test_program_print_parse_round_trip(name):
    program = parse_program(_fixture(name))

    assert parse_program(print_program(program)) == program


def test_generated_commands_round_trip():
    cfg = GenConfig(seed=11, instances=1, max_depth=4, variables=3, modulus=8)
    names = variable_names(cfg.variables)
    rng = np.random.default_rng(cfg.seed)

    for _ in range(60):
        r = gen_command(cfg, rng)
        assert parse_command(pretty_print(r), names) == r
