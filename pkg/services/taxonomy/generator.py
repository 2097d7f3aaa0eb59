"""
Gerador aleatório de comandos, predicados, conjuntos e derivações.

Toda aleatoriedade vem de `numpy.random.Generator`; a instância i da
campanha usa `default_rng(seed + i)`, então o corpus não depende do número
de workers.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from services.semantics.domain import DomainConfig, StateSet
from services.semantics.expressions import states_satisfying
from services.sepsil.asl import (
    AAnd,
    ACmp,
    AExists,
    AFalse,
    ANot,
    Asl,
    Dangling,
    Emp,
    PointsTo,
    SepConj,
    aor,
    asl_all_vars,
    asl_free_vars,
    from_bexp,
    fresh_name,
    or_all,
    points_to_any,
)
from services.sepsil.asl_text import parse_asl
from services.sepsil.models import SepDerivation, SepRule
from services.sepsil.substitution import assign_pre, subst
from services.sil_proofs.models import Derivation, Rule
from services.sil_proofs.synthesizer import synthesize_derivation
from services.syntax.ast import (
    ARITH_OPS,
    AExp,
    Alloc,
    And,
    Assign,
    Assume,
    AtomicCmd,
    BExp,
    BinOp,
    COMPARISON_OPS,
    Choice,
    Cmp,
    Command,
    FalseB,
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
    parity,
    true_b,
)
from services.syntax.variables import mod_vars
from services.taxonomy.models import ATOMIC_CONSTRUCTORS, CONSTRUCTORS, GenConfig

logger = logging.getLogger(__name__)

VARIABLE_NAMES = ("x", "y", "z", "w", "u", "v")


@dataclass(frozen=True)
class Instance:
    """Tupla aleatória (r, P, Q) com um segundo par e um segundo comando."""

    index: int
    config: DomainConfig
    cmd: Command
    other_cmd: Command
    pre: StateSet
    post: StateSet
    other_pre: StateSet
    other_post: StateSet


def variable_names(count: int) -> Tuple[str, ...]:
    return VARIABLE_NAMES[:count]


def _pick(rng: np.random.Generator, names: Sequence[str], weights: dict) -> str:
    values = np.array([weights[name] for name in names], dtype=float)
    return names[int(rng.choice(len(names), p=values / values.sum()))]


def gen_aexp(rng: np.random.Generator, names: Sequence[str], modulus: int, depth: int = 2) -> AExp:
    if depth <= 1 or rng.random() < 0.6:
        if rng.random() < 0.5:
            return Num(int(rng.integers(modulus)))
        return Var(names[int(rng.integers(len(names)))])
    op = ARITH_OPS[int(rng.integers(len(ARITH_OPS)))]
    return BinOp(op, gen_aexp(rng, names, modulus, depth - 1), gen_aexp(rng, names, modulus, depth - 1))


def gen_bexp(rng: np.random.Generator, names: Sequence[str], modulus: int, depth: int = 2) -> BExp:
    roll = rng.random()
    if depth <= 1 or roll < 0.55:
        op = COMPARISON_OPS[int(rng.integers(len(COMPARISON_OPS)))]
        return Cmp(op, Var(names[int(rng.integers(len(names)))]), gen_aexp(rng, names, modulus, depth))
    if roll < 0.65:
        return parity(Var(names[int(rng.integers(len(names)))]), int(rng.integers(2)))
    if roll < 0.7:
        return true_b() if rng.random() < 0.5 else FalseB()
    if roll < 0.8:
        return Not(gen_bexp(rng, names, modulus, depth - 1))
    return And(gen_bexp(rng, names, modulus, depth - 1), gen_bexp(rng, names, modulus, depth - 1))


def _gen_atomic(rng: np.random.Generator, cfg: GenConfig, names: Sequence[str]) -> AtomicCmd:
    kind = _pick(rng, ATOMIC_CONSTRUCTORS, cfg.weights)
    var = names[int(rng.integers(len(names)))]
    if kind == "skip":
        return Skip()
    if kind == "assign":
        return Assign(var, gen_aexp(rng, names, cfg.modulus))
    if kind == "assume":
        return Assume(gen_bexp(rng, names, cfg.modulus))
    return Havoc(var)


def _gen(rng: np.random.Generator, cfg: GenConfig, names: Sequence[str], depth: int) -> Command:
    kind = _pick(rng, ATOMIC_CONSTRUCTORS if depth <= 1 else CONSTRUCTORS, cfg.weights)
    if kind in ATOMIC_CONSTRUCTORS:
        return _gen_atomic(rng, cfg, names)
    if kind == "seq":
        return Seq(_gen(rng, cfg, names, depth - 1), _gen(rng, cfg, names, depth - 1))
    if kind == "choice":
        return Choice(_gen(rng, cfg, names, depth - 1), _gen(rng, cfg, names, depth - 1))
    return Star(_gen(rng, cfg, names, depth - 1))


def gen_command(cfg: GenConfig, rng: Optional[np.random.Generator] = None) -> Command:
    """Comando simples bem escopado; sem `rng`, usa a semente de `cfg`."""
    rng = rng if rng is not None else np.random.default_rng(cfg.seed)
    return _gen(rng, cfg, variable_names(cfg.variables), cfg.max_depth)


def gen_state_set(rng: np.random.Generator, config: DomainConfig) -> StateSet:
    """Metade predicados aleatórios, o resto subconjuntos explícitos e casos de borda."""
    roll = rng.random()
    if roll < 0.5:
        return states_satisfying(gen_bexp(rng, config.vars, config.modulus), config)
    if roll < 0.8:
        density = rng.random()
        return StateSet(config, rng.random(config.size) < density)
    special = int(rng.integers(3))
    if special == 0:
        return StateSet.empty(config)
    if special == 1:
        return StateSet.full(config)
    index = int(rng.integers(config.size))
    return StateSet.from_indices(config, [index])


def gen_instance(cfg: GenConfig, index: int) -> Instance:
    rng = np.random.default_rng(cfg.seed + index)
    names = variable_names(cfg.variables)
    config = DomainConfig(modulus=cfg.modulus, vars=names)
    cmd = _gen(rng, cfg, names, cfg.max_depth)
    other_cmd = _gen(rng, cfg, names, cfg.max_depth)
    return Instance(
        index=index,
        config=config,
        cmd=cmd,
        other_cmd=other_cmd,
        pre=gen_state_set(rng, config),
        post=gen_state_set(rng, config),
        other_pre=gen_state_set(rng, config),
        other_post=gen_state_set(rng, config),
    )


def gen_derivation(rng: np.random.Generator, r: Command, post: StateSet, depth: int = 3) -> Derivation:
    """Derivação aceita de ⟨P⟩ r ⟨post⟩ por aplicação aleatória de regras.

    Cada escolha preserva a forma exigida pelo pai (o `post` pedido), de
    modo que o resultado é sempre aceito pelo checador.
    """
    if depth <= 0:
        return synthesize_derivation(r, post)
    roll = rng.random()
    if roll < 0.08:
        return Derivation(Rule.EMPTY, StateSet.empty(post.config), r, post)
    if roll < 0.2:
        inner = gen_derivation(rng, r, post & gen_state_set(rng, post.config), depth - 1)
        pre = inner.pre & gen_state_set(rng, post.config) if rng.random() < 0.5 else inner.pre
        return Derivation(Rule.CONS, pre, r, post, (inner,))
    if roll < 0.3:
        split = gen_state_set(rng, post.config)
        first = gen_derivation(rng, r, post & split, depth - 1)
        second = gen_derivation(rng, r, post - split, depth - 1)
        return Derivation(Rule.DISJ, first.pre | second.pre, r, post, (first, second))
    if isinstance(r, Seq):
        second = gen_derivation(rng, r.second, post, depth - 1)
        first = gen_derivation(rng, r.first, second.pre, depth - 1)
        return Derivation(Rule.SEQ, first.pre, r, post, (first, second))
    if isinstance(r, Choice):
        left = gen_derivation(rng, r.left, post, depth - 1)
        right = gen_derivation(rng, r.right, post, depth - 1)
        return Derivation(Rule.CHOICE, left.pre | right.pre, r, post, (left, right))
    if isinstance(r, Star):
        return _gen_star(rng, r, post, depth)
    return synthesize_derivation(r, post)


def _gen_star(rng: np.random.Generator, r: Star, post: StateSet, depth: int) -> Derivation:
    roll = rng.random()
    if roll < 0.25:
        return Derivation(Rule.ITER0, post, r, post)
    unrolled = Seq(r, r.body)
    if roll < 0.5:
        premise = gen_derivation(rng, unrolled, post, depth - 1)
        return Derivation(Rule.UNROLL, premise.pre, r, post, (premise,))
    if roll < 0.75:
        skipped = post & gen_state_set(rng, post.config)
        premise = gen_derivation(rng, unrolled, post, depth - 1)
        return Derivation(Rule.UNROLL_SPLIT, premise.pre | skipped, r, post, (premise,))
    return synthesize_derivation(r, post)


# --- derivações de Separation SIL ------------------------------------------------

SEP_NAMES = ("x", "y")
SEP_INT_SPAN = 2

# Molduras do ramo com axioma de heap; `u` livre vira ∃u depois do frame.
SEP_FRAME_TEXTS = (
    "emp",
    "true",
    "y |-> -",
    "y |-/>",
    "y = 0 && emp",
    "y |-> u * true",
    "u = y && emp",
    "!(y |-> 1)",
)
SEP_BOUND = "u"


def _sep_name_pair(rng: np.random.Generator, names: Sequence[str]) -> Tuple[str, str]:
    first, second = rng.permutation(len(names))[:2]
    return names[int(first)], names[int(second)]


def _sep_pure(rng: np.random.Generator, names: Sequence[str]) -> Asl:
    return from_bexp(gen_bexp(rng, names, SEP_INT_SPAN))


def _sep_guarded_cmd(rng: np.random.Generator, names: Sequence[str]) -> AtomicCmd:
    """`x := a` (com termos compostos sobre ponteiros) ou `b?`."""
    if rng.random() < 0.6:
        return Assign(names[int(rng.integers(len(names)))], gen_aexp(rng, names, SEP_INT_SPAN))
    return Assume(gen_bexp(rng, names, SEP_INT_SPAN))


def sep_axiom_for(cmd: AtomicCmd, post: Asl) -> SepDerivation:
    """Axioma de `x := a` ou `b?` com a pós dada."""
    if isinstance(cmd, Assign):
        return SepDerivation(SepRule.ASSIGN, assign_pre(post, cmd.expr, cmd.var), cmd, post)
    if isinstance(cmd, Assume):
        return SepDerivation(SepRule.ASSERT, AAnd(post, from_bexp(cmd.cond)), cmd, post)
    raise TypeError(f"sem axioma de pós arbitrária: {cmd!r}")


def _gen_sep_star(rng: np.random.Generator, names: Sequence[str], post: Asl) -> SepDerivation:
    body = _sep_guarded_cmd(rng, names)
    loop = Star(body)
    roll = rng.random()
    if roll < 0.3:
        return SepDerivation(SepRule.ITER0, post, loop, post)
    if roll < 0.65:
        last = sep_axiom_for(body, post)
        zero = SepDerivation(SepRule.ITER0, last.pre, loop, last.pre)
        seq = SepDerivation(SepRule.SEQ, last.pre, Seq(loop, body), post, (zero, last))
        return SepDerivation(SepRule.UNROLL, last.pre, loop, post, (seq,))
    first = sep_axiom_for(body, post)
    second = sep_axiom_for(body, first.pre)
    family = or_all([post, first.pre, second.pre])
    return SepDerivation(SepRule.ITER, family, loop, post, (first, second))


def gen_sep_derivation_to(
    rng: np.random.Generator, post: Asl, names: Sequence[str] = SEP_NAMES, depth: int = 2
) -> SepDerivation:
    """Derivação com pós `post` sobre comandos sem heap, montada de trás para frente."""
    roll = rng.random()
    if depth <= 0 or roll < 0.25:
        return sep_axiom_for(_sep_guarded_cmd(rng, names), post)
    if roll < 0.32:
        return SepDerivation(SepRule.EMPTY, AFalse(), _sep_guarded_cmd(rng, names), post)
    if roll < 0.45:
        second = gen_sep_derivation_to(rng, post, names, depth - 1)
        first = gen_sep_derivation_to(rng, second.pre, names, depth - 1)
        return SepDerivation(SepRule.SEQ, first.pre, Seq(first.cmd, second.cmd), post, (first, second))
    if roll < 0.55:
        left = gen_sep_derivation_to(rng, post, names, depth - 1)
        right = gen_sep_derivation_to(rng, post, names, depth - 1)
        return SepDerivation(
            SepRule.CHOICE, aor(left.pre, right.pre), Choice(left.cmd, right.cmd), post, (left, right)
        )
    if roll < 0.65:
        inner = gen_sep_derivation_to(rng, AAnd(post, _sep_pure(rng, names)), names, depth - 1)
        pre = AAnd(inner.pre, _sep_pure(rng, names)) if rng.random() < 0.5 else inner.pre
        return SepDerivation(SepRule.CONS, pre, inner.cmd, post, (inner,))
    if roll < 0.75:
        cmd = _sep_guarded_cmd(rng, names)
        split = _sep_pure(rng, names)
        first = sep_axiom_for(cmd, AAnd(post, split))
        second = sep_axiom_for(cmd, AAnd(post, ANot(split)))
        return SepDerivation(SepRule.DISJ, aor(first.pre, second.pre), cmd, post, (first, second))
    if roll < 0.9:
        return _gen_sep_star(rng, names, post)
    inner = gen_sep_derivation_to(rng, post, names, depth - 1)
    bound = fresh_name(SEP_BOUND, asl_all_vars(post) | set(names))
    tied = SepDerivation(
        SepRule.CONS, AAnd(inner.pre, ACmp("=", Var(bound), Var(names[0]))), inner.cmd, post, (inner,)
    )
    return SepDerivation(SepRule.EXISTS, AExists(bound, tied.pre), inner.cmd, post, (tied,), bound_var=bound)


def _gen_heap_axiom(rng: np.random.Generator, names: Sequence[str]) -> SepDerivation:
    x, y = _sep_name_pair(rng, names)
    kind = int(rng.integers(5))
    if kind == 0:
        return SepDerivation(SepRule.SKIP, Emp(), Skip(), Emp())
    if kind == 1:
        old = fresh_name(x, names)
        pre = AAnd(ACmp("=", Var(x), Var(old)), Emp())
        return SepDerivation(SepRule.ALLOC, pre, Alloc(x), points_to_any(x))
    if kind == 2:
        return SepDerivation(SepRule.FREE, points_to_any(x), Free(x), Dangling(x))
    if kind == 3:
        return SepDerivation(SepRule.STORE, points_to_any(x), Store(x, y), PointsTo(x, Var(y)))
    value = Num(int(rng.integers(SEP_INT_SPAN))) if rng.random() < 0.5 else Var(SEP_BOUND)
    rest = _sep_pure(rng, names)
    cell = PointsTo(y, value)
    return SepDerivation(SepRule.LOAD, SepConj(cell, subst(rest, value, x)), Load(x, y), SepConj(cell, rest))


def gen_sep_derivation(rng: np.random.Generator, names: Sequence[str] = SEP_NAMES, depth: int = 2) -> SepDerivation:
    """Derivação aceita de Separation SIL por aplicação aleatória de regras.

    Um axioma de heap, com moldura e ∃ opcionais, é composto com trechos
    de `x := a` e `b?` gerados por `gen_sep_derivation_to`.
    """
    node = _gen_heap_axiom(rng, names)
    frames = [frame for frame in map(parse_asl, SEP_FRAME_TEXTS) if not asl_free_vars(frame) & mod_vars(node.cmd)]
    if frames and rng.random() < 0.7:
        frame = frames[int(rng.integers(len(frames)))]
        node = SepDerivation(
            SepRule.FRAME, SepConj(node.pre, frame), node.cmd, SepConj(node.post, frame), (node,), frame=frame
        )
        if SEP_BOUND in asl_free_vars(node.pre) | asl_free_vars(node.post) and rng.random() < 0.5:
            node = SepDerivation(
                SepRule.EXISTS,
                AExists(SEP_BOUND, node.pre),
                node.cmd,
                AExists(SEP_BOUND, node.post),
                (node,),
                bound_var=SEP_BOUND,
            )
    roll = rng.random()
    if roll < 0.4:
        first = gen_sep_derivation_to(rng, node.pre, names, depth)
        return SepDerivation(SepRule.SEQ, first.pre, Seq(first.cmd, node.cmd), node.post, (first, node))
    if roll < 0.6:
        other = gen_sep_derivation_to(rng, node.post, names, depth)
        return SepDerivation(
            SepRule.CHOICE, aor(node.pre, other.pre), Choice(node.cmd, other.cmd), node.post, (node, other)
        )
    if roll < 0.75:
        post = aor(node.post, _sep_pure(rng, names))
        return SepDerivation(SepRule.CONS, node.pre, node.cmd, post, (node,))
    return node
