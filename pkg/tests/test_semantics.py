import numpy as np
import pytest

from services.errors import BudgetExceededError, DomainMismatchError, UnsupportedCommandError
from services.semantics.collecting import (
    bwsem,
    bwsem_power,
    diverging_states,
    fwsem,
    is_terminating,
    unreachable_states,
)
from services.semantics.domain import DomainConfig, StateSet
from services.semantics.expressions import eval_aexp, eval_bexp, states_satisfying
from services.semantics.predicates import describe_state_set
from services.semantics.relation import is_deterministic, semantics_relation
from services.syntax.ast import Free, Skip
from services.syntax.parser import parse_aexp, parse_assertion, parse_command
from services.taxonomy.generator import gen_instance
from services.taxonomy.models import GenConfig

XY = DomainConfig(modulus=8, vars=("x", "y"))


def _set(text: str, config: DomainConfig = XY) -> StateSet:
    return states_satisfying(parse_assertion(text, config.vars), config)


def _cmd(text: str, config: DomainConfig = XY):
    return parse_command(text, config.vars)


def test_encoding_puts_first_variable_most_significant():
    assert XY.encode({"x": 1, "y": 0}) == 8
    assert XY.decode(8) == {"x": 1, "y": 0}
    assert XY.size == 64


def test_domain_rejects_degenerate_configurations():
    with pytest.raises(ValueError):
        DomainConfig(modulus=1, vars=("x",))
    with pytest.raises(ValueError):
        DomainConfig(modulus=4, vars=("x", "x"))


def test_budget_reports_size():
    config = DomainConfig(modulus=64, vars=("x", "y", "z", "w"))

    with pytest.raises(BudgetExceededError) as excinfo:
        config.check_budget(2**20)

    assert excinfo.value.size == 64**4


def test_modular_arithmetic():
    store = {"x": 6, "y": 0}
    assert eval_aexp(parse_aexp("x + 3", ["x"]), store, 8) == 1
    assert eval_aexp(parse_aexp("y - 1", ["y"]), store, 8) == 7
    assert eval_aexp(parse_aexp("x mod y", ["x", "y"]), store, 8) == 6
    assert eval_bexp(parse_assertion("even(x) && !(odd(y))", ["x", "y"]), store, 8)


def test_assign_forward_and_backward():
    r = _cmd("x := y + 1")

    assert fwsem(r, _set("y = 2")) == _set("y = 2 && x = 3")
    assert bwsem(r, _set("x = 0")) == _set("y = 7")


def test_assume_filters_in_both_directions():
    r = _cmd("(x < 4)?")

    assert fwsem(r, StateSet.full(XY)) == _set("x < 4")
    assert bwsem(r, _set("y = 1")) == _set("x < 4 && y = 1")


def test_havoc_is_a_cylinder():
    r = _cmd("x := nondet()")

    assert fwsem(r, _set("x = 3 && y = 1")) == _set("y = 1")
    assert bwsem(r, _set("x = 5 && y = 1")) == _set("y = 1")


def test_star_is_least_fixpoint():
    r = _cmd("((x < 5)?; x := x + 1)*")

    assert fwsem(r, _set("x = 0 && y = 0")) == _set("x <= 5 && y = 0")
    assert bwsem(r, _set("x = 3")) == _set("x <= 3")


def test_choice_is_union():
    r = _cmd("(x := 1 [+] x := 2)")

    assert fwsem(r, _set("x = 0")) == _set("x = 1 || x = 2")


def test_bwsem_power_iterates():
    r = _cmd("x := x + 1")

    assert bwsem_power(r, _set("x = 3"), 2) == _set("x = 1")


def test_diverging_and_unreachable_states():
    r = _cmd("(x != 0)?")

    assert diverging_states(r, XY) == _set("x = 0")
    assert unreachable_states(r, XY) == _set("x = 0")
    assert not is_terminating(r, XY)
    assert is_terminating(Skip(), XY)


def test_heap_commands_are_unsupported():
    with pytest.raises(UnsupportedCommandError):
        fwsem(Free("x"), StateSet.full(XY))


def test_mixed_domains_are_rejected():
    other = DomainConfig(modulus=4, vars=("x", "y"))

    with pytest.raises(DomainMismatchError):
        _ = StateSet.full(XY) | StateSet.full(other)


def test_witness_is_least_state():
    states = _set("x = 2 || y = 5")

    assert states.first() == {"x": 0, "y": 5}
    assert StateSet.empty(XY).first() is None


def test_describe_state_set_is_exact():
    samples = ["x = 0 || y = 0", "even(x) && y > 2", "x != 3", "false", "true", "x + y = 4"]
    for text in samples:
        states = _set(text)
        assert states_satisfying(describe_state_set(states), XY) == states


def test_relation_agrees_with_collecting_semantics():
    cfg = GenConfig(seed=3, instances=40, max_depth=3, variables=2, modulus=4)
    for index in range(cfg.instances):
        instance = gen_instance(cfg, index)
        relation = semantics_relation(instance.cmd, instance.config)
        assert relation.image(instance.pre) == fwsem(instance.cmd, instance.pre)
        assert relation.preimage(instance.post) == bwsem(instance.cmd, instance.post)


def test_determinism():
    assert is_deterministic(_cmd("x := x + y"), XY)
    assert not is_deterministic(_cmd("x := nondet()"), XY)


def test_state_set_is_immutable():
    states = _set("x = 1")

    with pytest.raises(ValueError):
        states.mask[0] = True
    assert isinstance(states.indices(), np.ndarray)
