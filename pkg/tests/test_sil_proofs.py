import json
from dataclasses import replace

import numpy as np
import pytest

from services import catalog
from services.errors import DerivationFormatError
from services.semantics.domain import DomainConfig, StateSet
from services.sil_proofs.checker import check_derivation
from services.sil_proofs.codec import dump_derivation, load_derivation
from services.sil_proofs.models import Derivation, Rule
from services.sil_proofs.synthesizer import derive_then_weaken, iteration_sequence, synthesize_derivation
from services.syntax.ast import Seq, Star
from services.syntax.parser import parse_command
from services.taxonomy.generator import gen_derivation, gen_instance
from services.taxonomy.models import GenConfig
from services.triples.models import Logic
from services.triples.validity import is_valid
from services.triples.weakest import weakest_sil_pre


def _rxy_sets(modulus: int = 8):
    program = catalog.load("rxy")
    config = catalog.domain_for(program, modulus)
    return program, config, catalog.predicate("x = 0 && y = 0", config)


def _with_premise(node: Derivation, index: int, premise: Derivation) -> Derivation:
    premises = list(node.premises)
    premises[index] = premise
    return replace(node, premises=tuple(premises))


def _conclusion_valid(derivation: Derivation) -> bool:
    return is_valid(Logic.SIL, derivation.pre, derivation.cmd, derivation.post)


def test_rxy_derivation_is_accepted():
    derivation = catalog.rxy_derivation()
    report = check_derivation(derivation)

    assert report.accepted
    assert report.nodes_checked == derivation.size() == 7
    assert _conclusion_valid(derivation)


def test_shortloop_derivation_uses_iter0():
    derivation = catalog.shortloop_derivation()

    assert check_derivation(derivation, allow_iter=False).accepted
    assert _conclusion_valid(derivation)


def test_loop_derivation_unrolls_once():
    derivation = catalog.loop_derivation()

    assert check_derivation(derivation, allow_iter=False).accepted
    assert _conclusion_valid(derivation)
    assert derivation.pre == StateSet.full(derivation.pre.config)


def test_root_precondition_mismatch_is_reported_at_root():
    derivation = catalog.rxy_derivation()
    _, config, _ = _rxy_sets()
    broken = replace(derivation, pre=catalog.predicate("x = 0", config))

    report = check_derivation(broken)

    assert not report.accepted
    assert report.path == "root"
    assert report.rule == "choice"
    assert report.problems


def test_wrong_leaf_is_reported_with_its_path():
    derivation = catalog.rxy_derivation()
    _, config, _ = _rxy_sets()
    branch = derivation.premises[1]
    guard = branch.premises[0]
    wrong_guard = replace(guard, pre=catalog.predicate("y = 0", config))
    broken = _with_premise(derivation, 1, _with_premise(branch, 0, wrong_guard))

    report = check_derivation(broken)

    assert not report.accepted
    assert report.path.startswith("root.premises[1]")


def test_premise_count_is_enforced():
    derivation = catalog.rxy_derivation()
    broken = replace(derivation, premises=derivation.premises[:1])

    report = check_derivation(broken)

    assert not report.accepted
    assert "exige 2 premissa(s)" in report.problems[0]


def test_heap_atomic_is_not_an_atom_instance():
    config = DomainConfig(modulus=4, vars=("x",))
    r = parse_command("free(x)", config.vars, heap_allowed=True)
    full = StateSet.full(config)

    report = check_derivation(Derivation(Rule.ATOM, full, r, full))

    assert not report.accepted


@pytest.mark.parametrize("name, post", [("rxy", "x = 0 && y = 0"), ("r42nd", "z = 42"), ("rloop0", "x = 3")])
def test_synthesized_derivation_concludes_weakest_pre(name, post):
    program = catalog.load(name)
    config = catalog.domain_for(program, 8)
    goal = catalog.predicate(post, config)

    derivation = synthesize_derivation(program.body, goal)

    assert check_derivation(derivation).accepted
    assert derivation.pre == weakest_sil_pre(program.body, goal)
    assert derivation.post == goal


def test_strict_mode_rejects_iter():
    program = catalog.load("rloop0")
    config = catalog.domain_for(program)
    goal = catalog.predicate(f"x = {catalog.LOOP_TARGET}", config)
    derivation = synthesize_derivation(program.body, goal)

    strict = check_derivation(derivation, allow_iter=False)

    assert check_derivation(derivation).accepted
    assert not strict.accepted
    assert strict.rule == "iter"


def test_iteration_sequence_stabilizes():
    config = DomainConfig(modulus=8, vars=("x",))
    body = parse_command("(x > 0)?; x := x - 1", config.vars)
    zero = catalog.predicate("x = 0", config)

    sequence = iteration_sequence(body, zero)

    assert [store["x"] for q in sequence[1:] for store in q] == list(range(1, 8))


def test_derive_then_weaken():
    program, config, goal = _rxy_sets()

    weakened = derive_then_weaken(program.body, catalog.predicate("x = 0 && y = 5", config), goal)
    assert weakened is not None
    assert weakened.rule is Rule.CONS
    assert check_derivation(weakened).accepted

    assert derive_then_weaken(program.body, catalog.predicate("x = 1 && y = 1", config), goal) is None

    empty = derive_then_weaken(program.body, StateSet.empty(config), goal)
    assert empty.rule is Rule.EMPTY
    assert check_derivation(empty).accepted


def test_disjunction_of_synthesized_derivations():
    program, config, goal = _rxy_sets()
    other = catalog.predicate("x = 1 && y = 0", config)
    first = synthesize_derivation(program.body, goal)
    second = synthesize_derivation(program.body, other)

    node = Derivation(Rule.DISJ, first.pre | second.pre, program.body, goal | other, (first, second))

    assert check_derivation(node).accepted
    assert _conclusion_valid(node)


def test_unroll_split_keeps_shared_states():
    config = DomainConfig(modulus=8, vars=("x",))
    loop = Star(parse_command("x := x + 2", config.vars))
    target = catalog.predicate("x = 4", config)
    kept = catalog.predicate("x = 7", config)
    premise = synthesize_derivation(Seq(loop, loop.body), target)

    node = Derivation(Rule.UNROLL_SPLIT, premise.pre | kept, loop, target | kept, (premise,))

    assert check_derivation(node, allow_iter=True).accepted
    assert _conclusion_valid(node)


def test_fuzzed_derivations_are_sound():
    cfg = GenConfig(seed=5, instances=60, max_depth=3, variables=2, modulus=4)
    for index in range(cfg.instances):
        instance = gen_instance(cfg, index)
        rng = np.random.default_rng(cfg.seed + index)
        derivation = gen_derivation(rng, instance.cmd, instance.post)
        assert check_derivation(derivation).accepted
        assert _conclusion_valid(derivation)


def test_codec_round_trip():
    derivation = catalog.loop_derivation()
    config = derivation.pre.config

    document = dump_derivation(derivation)

    assert load_derivation(document, config) == derivation
    assert json.loads(document)["rule"] == "seq"


def test_codec_rejects_unknown_rule():
    _, config, _ = _rxy_sets()
    document = {"rule": "magic", "pre": "true", "cmd": "skip", "post": "true"}

    with pytest.raises(DerivationFormatError):
        load_derivation(document, config)


def test_codec_rejects_blank_fields_and_bad_json():
    _, config, _ = _rxy_sets()

    with pytest.raises(DerivationFormatError):
        load_derivation({"rule": "atom", "pre": " ", "cmd": "skip", "post": "true"}, config)
    with pytest.raises(DerivationFormatError):
        load_derivation("{not json", config)
    with pytest.raises(DerivationFormatError):
        load_derivation({"rule": "atom", "pre": "w = 1", "cmd": "skip", "post": "true"}, config)
