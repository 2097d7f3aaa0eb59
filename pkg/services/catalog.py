"""
Catálogo de programas de referência e derivações transcritas.

As constantes de laço são reescaladas (2 000 000 → 20) e rodam em B = 64;
`LOOP_TARGET` concentra essa escolha.
"""

from __future__ import annotations

from typing import Dict, Optional

from services.semantics.domain import DomainConfig, StateSet
from services.semantics.expressions import states_satisfying
from services.sepsil.asl_text import parse_asl
from services.sepsil.model import SepDomainConfig
from services.sepsil.models import SepDerivation, SepRule
from services.sil_proofs.models import Derivation, Rule
from services.syntax.ast import Program, Seq, Star
from services.syntax.parser import parse_assertion, parse_program

LOOP_TARGET = 20
REFERENCE_DOMAIN = 64

_R42_BODY = "if (x mod 2 = 0) { if (y mod 2 = 1) { z := 42 } else { skip } } else { skip }"
_LOOP = "((n > 0)?; x := x + n; n := nondet())*; (n <= 0)?"

PROGRAMS: Dict[str, str] = {
    "r42": f"vars x, y, z;\n{_R42_BODY}\n",
    "r42nd": f"vars x, y, z;\nx := nondet();\n{_R42_BODY}\n",
    "rxy": "vars x, y;\n((y = 0)?; x := 0 [+] (x = 0)?; y := 0)\n",
    "rshortloop0": f"vars x, n;\nn := nondet(); {_LOOP}\n",
    "rloop0": f"vars x, n;\nx := 0; n := nondet(); {_LOOP}\n",
    "r1": "vars x;\nx := 1\n",
    "rnd": "vars x;\nx := nondet()\n",
    "rclient": (
        "vars v, x, y, z;\n"
        "heap locs 3 ints 0..1;\n"
        "x := [v];\n"
        "if (nondet()) { y := [v]; free(y); y := alloc(); [v] := y }\n"
    ),
}


def load(name: str) -> Program:
    return parse_program(PROGRAMS[name])


def domain_for(program: Program, modulus: int = REFERENCE_DOMAIN) -> DomainConfig:
    return DomainConfig(modulus=modulus, vars=program.vars)


def predicate(text: str, config: DomainConfig) -> StateSet:
    return states_satisfying(parse_assertion(text, config.vars), config)


def shortloop_derivation(modulus: int = REFERENCE_DOMAIN) -> Derivation:
    """⟨x = 20⟩ rshortloop0 ⟨x = 20⟩ contornando o laço com iter0."""
    program = load("rshortloop0")
    config = domain_for(program, modulus)
    goal = predicate(f"x = {LOOP_TARGET}", config)
    exit_ready = predicate(f"x = {LOOP_TARGET} && n <= 0", config)

    havoc, rest = program.body.first, program.body.second
    loop, exit_guard = rest.first, rest.second
    return Derivation(
        Rule.SEQ, goal, program.body, goal,
        (
            Derivation(Rule.ATOM, goal, havoc, exit_ready),
            Derivation(
                Rule.SEQ, exit_ready, rest, goal,
                (
                    Derivation(Rule.ITER0, exit_ready, loop, exit_ready),
                    Derivation(Rule.ATOM, exit_ready, exit_guard, goal),
                ),
            ),
        ),
    )


def loop_derivation(modulus: int = REFERENCE_DOMAIN) -> Derivation:
    """⟨true⟩ rloop0 ⟨x = 20⟩ com um desdobramento e iter0.

    O invariante de entrada do laço é `x + n = 20 && n > 0`; com `n >= 0`
    a tripla do corpo não vale em n = 0, e `n >= 0` é trivial em ℤ_B.
    """
    program = load("rloop0")
    config = domain_for(program, modulus)
    goal = predicate(f"x = {LOOP_TARGET}", config)
    exit_ready = predicate(f"x = {LOOP_TARGET} && n <= 0", config)
    entry = predicate(f"x + n = {LOOP_TARGET} && n > 0", config)
    sum_reached = predicate(f"x + n = {LOOP_TARGET}", config)
    not_yet = predicate(f"x != {LOOP_TARGET}", config)
    everything = StateSet.full(config)

    init = program.body.first
    havoc = program.body.second.first
    loop_and_exit = program.body.second.second
    loop, exit_guard = loop_and_exit.first, loop_and_exit.second
    assert isinstance(loop, Star)
    guard, update = loop.body.first, loop.body.second
    increment, refresh = update.first, update.second

    body_tree = Derivation(
        Rule.SEQ, entry, loop.body, exit_ready,
        (
            Derivation(Rule.ATOM, entry, guard, sum_reached),
            Derivation(
                Rule.SEQ, sum_reached, update, exit_ready,
                (
                    Derivation(Rule.ATOM, sum_reached, increment, goal),
                    Derivation(Rule.ATOM, goal, refresh, exit_ready),
                ),
            ),
        ),
    )
    unrolled = Derivation(
        Rule.UNROLL, entry, loop, exit_ready,
        (
            Derivation(
                Rule.SEQ, entry, Seq(loop, loop.body), exit_ready,
                (Derivation(Rule.ITER0, entry, loop, entry), body_tree),
            ),
        ),
    )
    return Derivation(
        Rule.SEQ, everything, program.body, goal,
        (
            Derivation(Rule.ATOM, everything, init, not_yet),
            Derivation(
                Rule.SEQ, not_yet, program.body.second, goal,
                (
                    Derivation(Rule.ATOM, not_yet, havoc, entry),
                    Derivation(
                        Rule.SEQ, entry, loop_and_exit, goal,
                        (unrolled, Derivation(Rule.ATOM, exit_ready, exit_guard, goal)),
                    ),
                ),
            ),
        ),
    )


def rxy_derivation(modulus: int = 8) -> Derivation:
    """⟨x = 0 ∪ y = 0⟩ rxy ⟨x = 0 ∧ y = 0⟩ por choice, seq e atom."""
    program = load("rxy")
    config = domain_for(program, modulus)
    goal = predicate("x = 0 && y = 0", config)
    x_zero = predicate("x = 0", config)
    y_zero = predicate("y = 0", config)
    left, right = program.body.left, program.body.right

    def branch(branch_cmd, guard_set):
        return Derivation(
            Rule.SEQ, guard_set, branch_cmd, goal,
            (
                Derivation(Rule.ATOM, guard_set, branch_cmd.first, guard_set),
                Derivation(Rule.ATOM, guard_set, branch_cmd.second, goal),
            ),
        )

    return Derivation(
        Rule.CHOICE, x_zero | y_zero, program.body, goal,
        (branch(left, y_zero), branch(right, x_zero)),
    )


def sep_domain_for(program: Program, locations: Optional[int] = None) -> SepDomainConfig:
    """Limites do cabeçalho `heap`, com `locations` sobrescrevendo a contagem."""
    config = SepDomainConfig.from_settings(program.vars)
    bounds = program.heap_bounds
    if bounds is not None:
        config = SepDomainConfig(
            vars=program.vars,
            locations=bounds.locations,
            spare_locations=config.spare_locations,
            int_min=bounds.int_min,
            int_max=bounds.int_max,
        )
    if locations is not None:
        config = SepDomainConfig(
            vars=config.vars,
            locations=locations,
            spare_locations=config.spare_locations,
            int_min=config.int_min,
            int_max=config.int_max,
        )
    return config


CLIENT_PRE = "v |-> z * z |-> - * true"
CLIENT_POST = "x |-/> * true"


def rclient_derivation() -> SepDerivation:
    """⟨v ↦ z ∗ z ↦ − ∗ true⟩ rclient ⟨x ↦̸ ∗ true⟩.

    O primeiro load fixa x = z; o ramo que roda o corpo libera z por
    outro caminho (y := [v]; free(y)) e deixa x pendente. O ramo `skip`
    fecha por `empty`.
    """
    body = load("rclient").body
    first_load, branches = body.first, body.second
    reuse = branches.left
    second_load, rest = reuse.first, reuse.second
    release, rest = rest.first, rest.second
    realloc, publish = rest.first, rest.second

    f = parse_asl
    p, q = f(CLIENT_PRE), f(CLIENT_POST)
    after_first = f("v |-> z * z |-> - * (x = z || x |-/>) * true")
    after_second = f("true * v |-> - * y |-> - * (x = y || x |-/>)")
    released = f("x |-/> * v |-> - * true")
    reallocated = f("x |-/> * v |-> - * true")

    first = SepDerivation(
        SepRule.CONS, p, first_load, after_first,
        (
            SepDerivation(
                SepRule.LOAD,
                f("v |-> z * (z |-> - * (z = z || z |-/>) * true)"),
                first_load,
                f("v |-> z * (z |-> - * (x = z || x |-/>) * true)"),
            ),
        ),
    )

    read_pointer = SepDerivation(
        SepRule.CONS, after_first, second_load, after_second,
        (
            SepDerivation(
                SepRule.LOAD,
                f("v |-> z * (z |-> - * (x = z || x |-/>) * true)"),
                second_load,
                f("v |-> z * (y |-> - * (x = y || x |-/>) * true)"),
            ),
        ),
    )

    free_frame = f("true * v |-> - * (x = y || x |-/>)")
    free_node = SepDerivation(
        SepRule.CONS, after_second, release, released,
        (
            SepDerivation(
                SepRule.FRAME,
                f("y |-> - * (true * v |-> - * (x = y || x |-/>))"),
                release,
                f("y |-/> * (true * v |-> - * (x = y || x |-/>))"),
                (SepDerivation(SepRule.FREE, f("y |-> -"), release, f("y |-/>")),),
                frame=free_frame,
            ),
        ),
    )

    alloc_frame = f("x |-/> * v |-> - * true")
    alloc_node = SepDerivation(
        SepRule.CONS, released, realloc, reallocated,
        (
            SepDerivation(
                SepRule.EXISTS,
                f("exists y'. (y = y' && emp) * (x |-/> * v |-> - * true)"),
                realloc,
                f("exists y'. y |-> - * (x |-/> * v |-> - * true)"),
                (
                    SepDerivation(
                        SepRule.FRAME,
                        f("(y = y' && emp) * (x |-/> * v |-> - * true)"),
                        realloc,
                        f("y |-> - * (x |-/> * v |-> - * true)"),
                        (SepDerivation(SepRule.ALLOC, f("y = y' && emp"), realloc, f("y |-> -")),),
                        frame=alloc_frame,
                    ),
                ),
                bound_var="y'",
            ),
        ),
    )

    store_frame = f("x |-/> * true")
    store_node = SepDerivation(
        SepRule.CONS, reallocated, publish, q,
        (
            SepDerivation(
                SepRule.FRAME,
                f("v |-> - * (x |-/> * true)"),
                publish,
                f("v |-> y * (x |-/> * true)"),
                (SepDerivation(SepRule.STORE, f("v |-> -"), publish, f("v |-> y")),),
                frame=store_frame,
            ),
        ),
    )

    tail = SepDerivation(
        SepRule.SEQ, released, rest, q,
        (alloc_node, store_node),
    )
    after_free = SepDerivation(
        SepRule.SEQ, after_second, Seq(release, rest), q,
        (free_node, tail),
    )
    reuse_tree = SepDerivation(
        SepRule.SEQ, after_first, reuse, q,
        (read_pointer, after_free),
    )
    branch_tree = SepDerivation(
        SepRule.CHOICE, after_first, branches, q,
        (reuse_tree, SepDerivation(SepRule.EMPTY, f("false"), branches.right, q)),
    )
    return SepDerivation(SepRule.SEQ, p, body, q, (first, branch_tree))
