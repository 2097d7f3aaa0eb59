import pytest

from services import catalog
from services.errors import DomainMismatchError
from services.semantics.domain import DomainConfig, StateSet
from services.semantics.relation import semantics_relation
from services.syntax.parser import parse_command
from services.triples.models import Logic, Triple, Verdict
from services.triples.validity import check_validity, is_manifest_error, is_valid
from services.triples.weakest import weakest_nc_post, weakest_sil_pre, wlp

EVEN_ODD = "x mod 2 = 0 && y mod 2 = 1"
TARGET = "z = 42 && y mod 2 = 1 && x mod 2 = 0"


def _triple(name: str, logic: Logic, pre: str, post: str, modulus: int = catalog.REFERENCE_DOMAIN) -> Triple:
    program = catalog.load(name)
    config = catalog.domain_for(program, modulus)
    return Triple(logic, catalog.predicate(pre, config), program.body, catalog.predicate(post, config))


@pytest.mark.parametrize(
    "name, logic, pre, post, expected",
    [
        ("r42", Logic.SIL, EVEN_ODD, "z = 42", True),
        ("r42", Logic.IL, "z = 11", TARGET, True),
        ("r42", Logic.SIL, "z = 11", TARGET, False),
        ("r42nd", Logic.SIL, EVEN_ODD, "z = 42", True),
        ("r42nd", Logic.HL, EVEN_ODD, "z = 42", False),
        ("r42nd", Logic.NC, "z != 42", "z != 42", True),
        ("r42nd", Logic.NC, "z > 42", "z != 42", False),
    ],
)
def test_reference_verdicts(name, logic, pre, post, expected):
    verdict = check_validity(_triple(name, logic, pre, post))

    assert verdict.valid is expected
    assert (verdict.witness is None) is expected


def test_sil_witness_is_least_stranded_state():
    verdict = check_validity(_triple("r42", Logic.SIL, "z = 11", TARGET))

    assert verdict.witness.state == {"x": 0, "y": 0, "z": 11}


def test_hl_witness_carries_successor_outside_post():
    triple = _triple("r42nd", Logic.HL, EVEN_ODD, "z = 42")
    verdict = check_validity(triple)

    assert verdict.witness.successor is not None
    assert verdict.witness.successor not in triple.post
    assert verdict.witness.state in triple.pre


def test_sil_cross_check_runs_on_small_domains():
    verdict = check_validity(_triple("rxy", Logic.SIL, "x = 0 || y = 0", "x = 0 && y = 0", modulus=8))

    assert verdict.valid
    assert "∀σ∈P ∃σ′∈Q" in verdict.checks


def test_verdict_requires_witness_iff_invalid():
    with pytest.raises(ValueError):
        Verdict(logic="SIL", valid=False)


def test_mismatched_domains_are_rejected():
    program = catalog.load("rxy")
    small = DomainConfig(modulus=4, vars=program.vars)
    large = DomainConfig(modulus=8, vars=program.vars)

    with pytest.raises(DomainMismatchError):
        check_validity(Triple(Logic.HL, StateSet.full(small), program.body, StateSet.full(large)))


def test_weakest_sil_pre_of_rxy():
    program = catalog.load("rxy")
    config = catalog.domain_for(program, 8)
    goal = catalog.predicate("x = 0 && y = 0", config)

    assert weakest_sil_pre(program.body, goal) == catalog.predicate("x = 0 || y = 0", config)


def test_weakest_sil_pre_of_r42_matches_relation_inversion():
    program = catalog.load("r42")
    config = catalog.domain_for(program, 8)
    goal = catalog.predicate("z = 42", config)
    expected = catalog.predicate(f"({EVEN_ODD}) || z = 42", config)

    assert weakest_sil_pre(program.body, goal) == expected
    assert semantics_relation(program.body, config).preimage(goal) == expected


def test_weakest_sil_pre_of_empty_post():
    program = catalog.load("r42")
    config = catalog.domain_for(program, 8)

    assert weakest_sil_pre(program.body, StateSet.empty(config)).is_empty()


def test_weakest_sil_pre_is_maximal():
    program = catalog.load("r42nd")
    config = catalog.domain_for(program, 8)
    goal = catalog.predicate("z = 42", config)
    weakest = weakest_sil_pre(program.body, goal)

    assert is_valid(Logic.SIL, weakest, program.body, goal)
    for store in ~weakest:
        assert not is_valid(Logic.SIL, StateSet.singleton(config, store), program.body, goal)


def test_wlp_of_r42():
    program = catalog.load("r42")
    config = catalog.domain_for(program, 8)
    safe = catalog.predicate("z != 42", config)

    assert wlp(program.body, safe) == catalog.predicate("(x mod 2 = 1 || y mod 2 = 0) && z != 42", config)


def test_wlp_of_skip_is_identity():
    config = DomainConfig(modulus=8, vars=("x",))
    post = catalog.predicate("x < 3", config)

    assert wlp(parse_command("skip", config.vars), post) == post


def test_wlp_of_r42nd_is_valid_and_maximal():
    program = catalog.load("r42nd")
    config = catalog.domain_for(program, 8)
    safe = catalog.predicate("z != 42", config)
    weakest = wlp(program.body, safe)

    assert is_valid(Logic.HL, weakest, program.body, safe)
    for store in list(~weakest)[:16]:
        bigger = weakest | StateSet.singleton(config, store)
        assert not is_valid(Logic.HL, bigger, program.body, safe)


def test_weakest_nc_post_of_constant_assignment():
    config = DomainConfig(modulus=8, vars=("x",))
    r = parse_command("x := 1", config.vars)
    pre = catalog.predicate("x = 1", config)

    # Todo estado chega a x = 1, então só pós-condições sem x = 1 são necessárias.
    assert weakest_nc_post(r, pre) == catalog.predicate("x != 1", config)
    assert weakest_nc_post(r, StateSet.full(config)) == StateSet.full(config)


def test_weakest_nc_post_of_skip_is_identity():
    config = DomainConfig(modulus=8, vars=("x",))
    pre = catalog.predicate("x > 5", config)

    assert weakest_nc_post(parse_command("skip", config.vars), pre) == pre


def test_manifest_errors():
    loop = catalog.load("rloop0")
    loop_config = catalog.domain_for(loop)
    assert is_manifest_error(loop.body, catalog.predicate(f"x = {catalog.LOOP_TARGET}", loop_config)).valid

    r42 = catalog.load("r42")
    r42_config = catalog.domain_for(r42, 8)
    assert not is_manifest_error(r42.body, catalog.predicate("z = 42", r42_config)).valid


def test_manifest_error_with_full_post_on_terminating_program():
    program = catalog.load("rxy")
    config = catalog.domain_for(program, 8)

    # rxy bloqueia estados com x ≠ 0 e y ≠ 0, que ficam sem execução.
    assert not is_manifest_error(program.body, StateSet.full(config)).valid
    assert is_manifest_error(parse_command("x := y", config.vars), StateSet.full(config)).valid


def test_bijection_between_hl_and_nc():
    program = catalog.load("r42nd")
    config = catalog.domain_for(program, 8)
    pre = catalog.predicate(EVEN_ODD, config)
    post = catalog.predicate("z = 42", config)

    for left, right in ((pre, post), (~post, ~pre), (pre, ~post)):
        hl = is_valid(Logic.HL, left, program.body, right)
        nc = is_valid(Logic.NC, ~left, program.body, ~right)
        assert hl == nc
