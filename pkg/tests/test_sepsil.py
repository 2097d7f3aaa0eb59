import numpy as np
import pytest

from config import settings
from services import catalog
from services.errors import BudgetExceededError, DerivationFormatError
from services.sepsil.asl import (
    AAnd,
    ACmp,
    AExists,
    AFalse,
    Dangling,
    Emp,
    PointsTo,
    SepConj,
    alpha_equal,
    aor,
    asl_free_vars,
    normalize,
    points_to_any,
)
from services.sepsil.asl_text import parse_asl, print_asl
from services.sepsil.checker import check_sep_derivation
from services.sepsil.codec import dump_sep_derivation, load_sep_derivation
from services.sepsil.heap_semantics import fwsem_heap, successors
from services.sepsil.model import (
    ERR,
    CellMark,
    HeapState,
    Loc,
    SepDomainConfig,
    compare_values,
    eval_sep_aexp,
    format_state,
)
from services.sepsil.models import SepDerivation, SepRule, SepVerdict
from services.sepsil.satisfaction import entails, equivalent, eval_asl, holds, is_unsatisfiable
from services.sepsil.substitution import subst
from services.sepsil.validity import check_sep_validity, store_mod_agreement
from services.syntax.ast import BinOp, Num, Var
from services.syntax.parser import parse_command
from services.syntax.variables import mod_vars
from services.taxonomy.generator import gen_sep_derivation

SMALL = SepDomainConfig(locations=2)
DEFAULT = SepDomainConfig.from_settings()
ABSENT = CellMark.ABSENT
DANGLING = CellMark.DANGLING


def _cmd(text: str, variables=("v", "x", "y", "z")):
    return parse_command(text, variables, heap_allowed=True)


def _axiom(rule: SepRule, pre: str, cmd: str, post: str) -> SepDerivation:
    return SepDerivation(rule, parse_asl(pre), _cmd(cmd), parse_asl(post))


def _state(config: SepDomainConfig, store: dict, heap: dict) -> HeapState:
    cells = [ABSENT] * (config.locations + config.spare_locations)
    for index, cell in heap.items():
        cells[index] = cell
    return HeapState(tuple(store[name] for name in config.vars), tuple(cells))


AXIOMS = [
    (SepRule.SKIP, "emp", "skip", "emp"),
    (SepRule.ASSIGN, "y = 1 && emp", "x := y", "x = 1 && emp"),
    (SepRule.ASSIGN, "v |-> y * true", "x := y", "v |-> x * true"),
    (SepRule.ASSERT, "x |-> - && y = 1", "(y = 1)?", "x |-> -"),
    (SepRule.ALLOC, "x = x' && emp", "x := alloc()", "x |-> -"),
    (SepRule.FREE, "x |-> -", "free(x)", "x |-/>"),
    (SepRule.STORE, "x |-> -", "[x] := y", "x |-> y"),
    (SepRule.LOAD, "v |-> z * z = z", "x := [v]", "v |-> z * x = z"),
]


# --- modelo e semântica -------------------------------------------------------


def test_state_space_size():
    config = SepDomainConfig(vars=("v", "x", "y", "z"))

    assert config.size == 5**4 * 7**3
    config.check_budget()
    with pytest.raises(BudgetExceededError):
        config.check_budget(1000)


def test_settings_value_count_matches_default_model():
    config = SepDomainConfig.from_settings(("x",))

    assert settings.sep_value_count == len(config.initial_values)


def test_enumerated_states_leave_spare_locations_absent():
    config = SepDomainConfig(vars=("x",), locations=1)
    states = list(config.states())

    assert len(states) == config.size == 3 * 5
    assert all(state.heap[1] is ABSENT for state in states)


def test_locations_only_compare_by_equality():
    assert compare_values("=", Loc(0), Loc(0))
    assert not compare_values("=", Loc(0), 0)
    assert compare_values("!=", Loc(1), 1)
    assert not compare_values("<", Loc(0), 1)
    assert not compare_values("=", None, 0)
    assert eval_sep_aexp(BinOp("+", Var("x"), Num(1)), {"x": Loc(0)}, SMALL) is None
    assert eval_sep_aexp(BinOp("+", Var("x"), Num(1)), {"x": 1}, SMALL) == 0


def test_free_without_cell_goes_to_err():
    config = SepDomainConfig(vars=("x",), locations=2)
    absent = _state(config, {"x": Loc(0)}, {})
    dangling = _state(config, {"x": Loc(0)}, {0: DANGLING})
    integer = _state(config, {"x": 1}, {0: 0})
    free = _cmd("free(x)", ("x",))

    for state in (absent, dangling, integer):
        assert successors(free, state, config) == {ERR}


def test_free_marks_cell_dangling():
    config = SepDomainConfig(vars=("x",), locations=2)
    state = _state(config, {"x": Loc(1)}, {1: 0})

    (after,) = successors(_cmd("free(x)", ("x",)), state, config)

    assert after.heap[1] is DANGLING
    assert format_state(after, config) == "s: x=l1 | h: l1↦⊥"


def test_alloc_enumerates_free_locations_and_values():
    config = SepDomainConfig(vars=("x",))
    empty = _state(config, {"x": 0}, {})
    used = _state(config, {"x": 0}, {0: 1, 1: DANGLING})
    alloc = _cmd("x := alloc()", ("x",))

    assert len(successors(alloc, empty, config)) == 4 * 6
    assert len(successors(alloc, used, config)) == 3 * 6
    assert all(after.heap[0] == 1 for after in successors(alloc, used, config))


def test_load_and_store():
    config = SepDomainConfig(vars=("x", "y"), locations=2)
    state = _state(config, {"x": Loc(0), "y": 1}, {0: 0})

    (stored,) = successors(_cmd("[x] := y", ("x", "y")), state, config)
    (loaded,) = successors(_cmd("y := [x]", ("x", "y")), state, config)

    assert stored.heap[0] == 1
    assert loaded.store == (Loc(0), 0)


def test_err_is_absorbing():
    config = SepDomainConfig(vars=("x",), locations=1)

    assert fwsem_heap(_cmd("skip; x := 1", ("x",)), {ERR}, config) == {ERR}
    assert fwsem_heap(_cmd("x := alloc()", ("x",)), {ERR}, config) == {ERR}
    assert not holds(parse_asl("true"), ERR, config)


def test_assignment_with_undefined_value_goes_to_err():
    config = SepDomainConfig(vars=("x",), locations=1)
    state = _state(config, {"x": Loc(0)}, {})

    assert successors(_cmd("x := x + 1", ("x",)), state, config) == {ERR}


def test_star_reaches_fixpoint_with_heap():
    config = SepDomainConfig(vars=("x",), locations=1)
    state = _state(config, {"x": 0}, {})

    reached = successors(_cmd("(x := alloc(); free(x))*", ("x",)), state, config)

    assert state in reached
    assert any(isinstance(after, HeapState) and after.heap[0] is DANGLING for after in reached)


# --- fórmulas -----------------------------------------------------------------


def test_emp_denotes_empty_heaps():
    config = SepDomainConfig(vars=("x",), locations=2)

    models = eval_asl(Emp(), config)

    assert len(models) == 4
    assert all(all(cell is ABSENT for cell in state.heap) for state in models)


def test_points_to_is_exact_single_cell():
    config = SepDomainConfig(vars=("x",), locations=2)
    exact = _state(config, {"x": Loc(0)}, {0: 0})
    larger = _state(config, {"x": Loc(0)}, {0: 0, 1: 1})

    assert holds(parse_asl("x |-> 0"), exact, config)
    assert not holds(parse_asl("x |-> 0"), larger, config)
    assert holds(parse_asl("x |-> 0 * true"), larger, config)


def test_points_to_with_true_matches_cell_content():
    config = SepDomainConfig(vars=("x",), locations=2)
    formula = parse_asl("x |-> 0 * true")

    expected = {
        state
        for state in config.states()
        if isinstance(state.store[0], Loc) and state.heap[state.store[0].index] == 0
    }

    assert eval_asl(formula, config) == expected


def test_points_to_and_dangling_on_same_pointer_is_unsatisfiable():
    formula = parse_asl("x |-> - * x |-/>")

    assert eval_asl(formula, SMALL) == frozenset()
    assert is_unsatisfiable(formula, SMALL)


def test_separating_conjunction_algebra():
    p = parse_asl("x |-> 0 * y |-/>")
    q = parse_asl("y |-/> * x |-> 0")
    r = parse_asl("(x |-> - * y |-> -) * true")
    s = parse_asl("x |-> - * (y |-> - * true)")

    assert equivalent(SepConj(p, Emp()), p, SMALL)
    assert equivalent(p, q, SMALL)
    assert equivalent(r, s, SMALL)


def test_entailment_and_its_failure():
    assert entails(parse_asl("x |-> 1"), parse_asl("x |-> -"), SMALL)
    assert entails(parse_asl("x |-> - * y |-> -"), parse_asl("x != y"), SMALL)
    assert not entails(parse_asl("x |-> -"), parse_asl("x |-> 1"), SMALL)


@pytest.mark.parametrize(
    "text",
    [
        "emp",
        "true",
        "false",
        "x |-> -",
        "x |-/> * true",
        "v |-> z * z |-> - * true",
        "x = 1 && emp",
        "exists u. x |-> u * u |-> 0",
        "(x = z || x |-/>) * true",
        "!(x |-> 0) && y != 1",
        "(x * y) = 1",
        "x |-> 0 || emp && y = 0",
    ],
)
def test_formula_print_parse_round_trip(text):
    formula = parse_asl(text)

    assert parse_asl(print_asl(formula)) == formula


def test_exists_body_extends_to_the_right():
    formula = parse_asl("exists u. x = u && u |-> 0")

    assert isinstance(formula, AExists)
    assert isinstance(formula.body, AAnd)


def test_points_to_any_desugars_to_exists():
    assert parse_asl("x |-> -") == points_to_any("x")
    assert asl_free_vars(parse_asl("x |-> - * y |-/>")) == {"x", "y"}


def test_alpha_equivalence_and_normalization():
    assert alpha_equal(parse_asl("exists u. x |-> u"), parse_asl("exists w. x |-> w"))
    assert not alpha_equal(parse_asl("exists u. x |-> u"), parse_asl("exists w. x |-> u"))
    assert normalize(aor(parse_asl("x |-/>"), AFalse())) == Dangling("x")
    assert normalize(SepConj(PointsTo("x", Num(0)), Emp())) == PointsTo("x", Num(0))


# --- substituição ---------------------------------------------------------------


def test_substitution_on_comparisons_and_pointers():
    assert subst(parse_asl("x = 1"), Num(0), "x") == ACmp("=", Num(0), Num(1))
    assert subst(parse_asl("x |-> y"), Var("z"), "x") == PointsTo("z", Var("y"))


def test_substitution_avoids_capture():
    result = subst(parse_asl("exists x. x = y"), BinOp("+", Var("x"), Num(1)), "y")

    assert result == AExists("x'", ACmp("=", Var("x'"), BinOp("+", Var("x"), Num(1))))


def test_substitution_of_pointer_by_compound_term():
    result = subst(Dangling("x"), BinOp("+", Var("y"), Num(1)), "x")

    assert result == AExists("w", AAnd(ACmp("=", Var("w"), BinOp("+", Var("y"), Num(1))), Dangling("w")))


@pytest.mark.parametrize(
    "formula, term",
    [
        ("x |-> y", Var("y")),
        ("exists y. x = y && emp", Var("y")),
        ("x |-/> * true", Var("y")),
        ("x = 1 && emp", Num(1)),
        ("y |-> x * true", Var("y")),
    ],
)
def test_substitution_lemma(formula, term):
    config = SepDomainConfig(vars=("x", "y"), locations=2)
    q = parse_asl(formula)
    substituted = subst(q, term, "x")

    for state in config.states():
        env = config.env(state)
        value = eval_sep_aexp(term, env, config)
        moved = config.assign(state, "x", value)
        assert holds(substituted, state, config) == holds(q, moved, config)


def test_satisfaction_depends_only_on_free_variables():
    config = SepDomainConfig(vars=("x", "y", "z"), locations=1)
    formula = parse_asl("x |-> y * true")

    for state in config.states():
        expected = holds(formula, state, config)
        for value in config.values:
            assert holds(formula, config.assign(state, "z", value), config) == expected


# --- validade -----------------------------------------------------------------


@pytest.mark.parametrize("rule, pre, cmd, post", AXIOMS)
def test_axioms_are_valid(rule, pre, cmd, post):
    verdict = check_sep_validity(parse_asl(pre), _cmd(cmd), parse_asl(post), DEFAULT)

    assert verdict.valid
    assert verdict.locations == settings.SEP_LOCATIONS
    assert verdict.states_checked > 0


def test_free_on_empty_heap_is_invalid():
    verdict = check_sep_validity(Emp(), _cmd("free(x)", ("x",)), Dangling("x"), SMALL)

    assert not verdict.valid
    assert verdict.witness.successors == ["err"]


def test_sep_verdict_requires_witness_iff_invalid():
    with pytest.raises(ValueError):
        SepVerdict(valid=False, states_checked=1, locations=2, int_range=(0, 1))


def test_rclient_reaches_dangling_pointer_at_default_bounds():
    program = catalog.load("rclient")
    config = catalog.sep_domain_for(program)

    verdict = check_sep_validity(parse_asl(catalog.CLIENT_PRE), program.body, parse_asl(catalog.CLIENT_POST), config)

    assert verdict.valid
    assert verdict.locations == 3


@pytest.mark.parametrize("cmd", ["free(x)", "x := alloc()", "skip", "x := [y]", "[x] := y", "y := alloc(); [y] := x"])
def test_stores_agree_outside_modified_variables(cmd):
    config = SepDomainConfig(vars=("x", "y"), locations=2)
    r = _cmd(cmd, ("x", "y"))

    assert all(store_mod_agreement(r, state, config) for state in config.states())


def test_store_agreement_needs_the_command_variables():
    config = SepDomainConfig(vars=("x",), locations=1)
    state = next(iter(config.states()))

    with pytest.raises(ValueError):
        store_mod_agreement(_cmd("[x] := y", ("x", "y")), state, config)


# --- derivações ----------------------------------------------------------------


@pytest.mark.parametrize("rule, pre, cmd, post", AXIOMS)
def test_axioms_are_accepted(rule, pre, cmd, post):
    report = check_sep_derivation(_axiom(rule, pre, cmd, post), DEFAULT)

    assert report.accepted, report.problems


def test_alloc_requires_fresh_old_value():
    report = check_sep_derivation(_axiom(SepRule.ALLOC, "x = y && emp", "x := alloc()", "x |-> y"), SMALL)

    assert not report.accepted


def test_load_rejects_target_in_pointer():
    report = check_sep_derivation(_axiom(SepRule.LOAD, "v |-> v", "v := [v]", "v |-> v"), SMALL)

    assert not report.accepted


def test_wrong_axiom_shape_is_rejected():
    report = check_sep_derivation(_axiom(SepRule.FREE, "emp", "free(x)", "x |-/>"), SMALL)

    assert not report.accepted
    assert report.rule == "free"


def test_assign_with_compound_term_needs_integer_operands():
    config = SepDomainConfig(vars=("x", "y"), locations=2)
    r = _cmd("x := y + 1", ("x", "y"))
    unguarded = [
        SepDerivation(SepRule.ASSIGN, parse_asl("true"), r, parse_asl("true")),
        SepDerivation(SepRule.ASSIGN, parse_asl("!(y + 1 = 0)"), r, parse_asl("!(x = 0)")),
    ]

    for node in unguarded:
        assert not check_sep_validity(node.pre, r, node.post, config).valid
        report = check_sep_derivation(node, config)
        assert not report.accepted
        assert report.rule == "assign"

    guarded = SepDerivation(SepRule.ASSIGN, parse_asl("!(y + 1 = 0) && y + 1 = y + 1"), r, parse_asl("!(x = 0)"))
    assert check_sep_derivation(guarded, config).accepted
    assert check_sep_validity(guarded.pre, r, guarded.post, config).valid


def test_assign_with_integer_term_accepts_plain_substitution():
    config = SepDomainConfig(vars=("x", "y"), locations=2)
    node = SepDerivation(SepRule.ASSIGN, parse_asl("y + 1 = 1"), _cmd("x := y + 1", ("x", "y")), parse_asl("x = 1"))

    assert check_sep_derivation(node, config).accepted


FRAMES = [
    "emp",
    "true",
    "y |-> -",
    "y |-/>",
    "y = 0 && emp",
    "y |-> 0 * true",
    "z |-> y",
    "exists u. y |-> u * u |-> -",
    "y |-> - || emp",
    "!(y |-> 1)",
    "y |-> - * z |-/>",
]


@pytest.mark.parametrize("frame", FRAMES)
@pytest.mark.parametrize(
    "rule, pre, cmd, post",
    [
        (SepRule.FREE, "x |-> -", "free(x)", "x |-/>"),
        (SepRule.STORE, "x |-> -", "[x] := y", "x |-> y"),
        (SepRule.ALLOC, "x = x' && emp", "x := alloc()", "x |-> -"),
    ],
)
def test_framed_axioms_stay_valid(rule, pre, cmd, post, frame):
    axiom = _axiom(rule, pre, cmd, post)
    t = parse_asl(frame)
    framed = SepDerivation(SepRule.FRAME, SepConj(axiom.pre, t), axiom.cmd, SepConj(axiom.post, t), (axiom,), frame=t)

    assert check_sep_derivation(framed, SMALL).accepted
    assert check_sep_validity(framed.pre, framed.cmd, framed.post, SMALL).valid


def test_frame_mentioning_modified_variable_is_rejected():
    axiom = _axiom(SepRule.ALLOC, "x = x' && emp", "x := alloc()", "x |-> -")
    t = parse_asl("x = 0")
    framed = SepDerivation(SepRule.FRAME, SepConj(axiom.pre, t), axiom.cmd, SepConj(axiom.post, t), (axiom,), frame=t)

    report = check_sep_derivation(framed, SMALL)

    assert not report.accepted
    assert any("moldura" in problem for problem in report.problems)


FUZZ_BOUNDS = SepDomainConfig(locations=2)


@pytest.mark.parametrize("seed", range(10))
def test_fuzzed_derivations_are_sound_and_framable(seed):
    derivation = gen_sep_derivation(np.random.default_rng(seed))

    report = check_sep_derivation(derivation, FUZZ_BOUNDS)

    assert report.accepted, (report.path, report.problems)
    assert check_sep_validity(derivation.pre, derivation.cmd, derivation.post, FUZZ_BOUNDS).valid
    for text in FRAMES:
        t = parse_asl(text)
        if asl_free_vars(t) & mod_vars(derivation.cmd):
            continue
        pre, post = SepConj(derivation.pre, t), SepConj(derivation.post, t)
        framed = SepDerivation(SepRule.FRAME, pre, derivation.cmd, post, (derivation,), frame=t)
        assert check_sep_derivation(framed, FUZZ_BOUNDS).accepted, text
        assert check_sep_validity(framed.pre, framed.cmd, framed.post, FUZZ_BOUNDS).valid, text


def _rules(node: SepDerivation):
    yield SepRule(node.rule)
    for premise in node.premises:
        yield from _rules(premise)


def test_fuzzed_derivations_cover_every_rule():
    seen = set()
    for seed in range(500):
        seen.update(_rules(gen_sep_derivation(np.random.default_rng(seed))))

    assert seen == set(SepRule)


def test_fuzzed_assignments_use_compound_terms():
    terms = set()
    for seed in range(50):
        stack = [gen_sep_derivation(np.random.default_rng(seed))]
        while stack:
            node = stack.pop()
            stack.extend(node.premises)
            if node.rule == SepRule.ASSIGN:
                terms.add(type(node.cmd.expr))

    assert BinOp in terms


def test_exists_rule_binds_fresh_variable():
    axiom = _axiom(SepRule.FREE, "x |-> -", "free(x)", "x |-/>")
    t = parse_asl("x = u && emp")
    framed = SepDerivation(SepRule.FRAME, SepConj(axiom.pre, t), axiom.cmd, SepConj(axiom.post, t), (axiom,), frame=t)
    node = SepDerivation(
        SepRule.EXISTS, AExists("u", framed.pre), axiom.cmd, AExists("u", framed.post), (framed,), bound_var="u"
    )

    assert check_sep_derivation(node, SMALL).accepted

    clash = SepDerivation(
        SepRule.EXISTS, AExists("x", framed.pre), axiom.cmd, AExists("x", framed.post), (framed,), bound_var="x"
    )
    assert not check_sep_derivation(clash, SMALL).accepted


def test_cons_uses_bounded_entailment():
    axiom = _axiom(SepRule.FREE, "x |-> -", "free(x)", "x |-/>")
    stronger = SepDerivation(SepRule.CONS, parse_asl("x |-> 1"), axiom.cmd, parse_asl("x |-/> || emp"), (axiom,))
    weaker = SepDerivation(SepRule.CONS, parse_asl("x |-> - || emp"), axiom.cmd, axiom.post, (axiom,))

    assert check_sep_derivation(stronger, SMALL).accepted
    report = check_sep_derivation(weaker, SMALL)
    assert not report.accepted
    assert "falha em" in report.problems[0]


def test_empty_rule_needs_unsatisfiable_pre():
    r = _cmd("free(x)")
    accepted = SepDerivation(SepRule.EMPTY, parse_asl("x |-> - * x |-/>"), r, parse_asl("emp"))
    rejected = SepDerivation(SepRule.EMPTY, parse_asl("emp"), r, parse_asl("emp"))

    assert check_sep_derivation(accepted, SMALL).accepted
    assert not check_sep_derivation(rejected, SMALL).accepted


def test_iter_with_truncated_family():
    loop = _cmd("(free(x))*", ("x",))
    body = loop.body
    first = _axiom(SepRule.FREE, "x |-> -", "free(x)", "x |-/>")
    node = SepDerivation(SepRule.ITER, parse_asl("x |-/> || x |-> -"), loop, Dangling("x"), (first,))

    assert first.cmd == body
    assert check_sep_derivation(node, SMALL).accepted
    assert check_sep_validity(node.pre, loop, node.post, SMALL).valid


def test_iter0_and_unroll():
    loop = _cmd("(free(x))*", ("x",))
    iter0 = SepDerivation(SepRule.ITER0, parse_asl("x |-> -"), loop, parse_asl("x |-> -"))
    seq = SepDerivation(
        SepRule.SEQ,
        parse_asl("x |-> -"),
        _cmd("(free(x))*; free(x)", ("x",)),
        Dangling("x"),
        (iter0, _axiom(SepRule.FREE, "x |-> -", "free(x)", "x |-/>")),
    )
    unroll = SepDerivation(SepRule.UNROLL, seq.pre, loop, seq.post, (seq,))

    assert check_sep_derivation(unroll, SMALL).accepted


def test_rclient_derivation_is_accepted():
    derivation = catalog.rclient_derivation()
    program = catalog.load("rclient")
    config = catalog.sep_domain_for(program)

    report = check_sep_derivation(derivation, config)

    assert config.locations == 3
    assert report.accepted, (report.path, report.problems)
    assert report.nodes_checked == derivation.size()
    assert print_asl(derivation.pre) == catalog.CLIENT_PRE
    assert print_asl(derivation.post) == catalog.CLIENT_POST


def test_rclient_derivation_codec_round_trip():
    derivation = catalog.rclient_derivation()
    program = catalog.load("rclient")

    document = dump_sep_derivation(derivation)
    decoded = load_sep_derivation(document, program.vars)

    assert dump_sep_derivation(decoded) == document
    assert decoded.cmd == program.body


def test_sep_codec_rejects_bad_formula():
    document = {"rule": "free", "pre": "x |-> ", "cmd": "free(x)", "post": "x |-/>"}

    with pytest.raises(DerivationFormatError):
        load_sep_derivation(document, ("x",))
