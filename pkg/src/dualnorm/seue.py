"""SE- and UE-models: computation, closure properties, synthesis, and the
polynomial UE-model check for dual-normal programs.

An SE-interpretation is a pair (X, Y) with X a subset of Y.  It is an
SE-model of P when Y is a classical model of P and X a model of the reduct
of P w.r.t. Y; UE-models are the SE-models whose here-component is maximal
among proper subsets of the there-component.  Two programs are strongly
(uniformly) equivalent exactly when their SE-model (UE-model) sets over the
joint universe coincide.

The closure vocabulary on sets of SE-interpretations:

* complete: contains the diagonal of every there-component, and transports
  here-components up to larger diagonal members;
* closed under here-intersection / here-union: intersections / unions of
  here-components with the same there-component stay in the set;
* UE-complete: diagonal condition, a density condition between nested
  diagonal members, and antichain-or-total here-components;
* splittable: unions of here-components below a diagonal member Z either
  appear at Z or fit under some intermediate (Z', Z) in the set.

Sets of SE-models of dual-normal programs are exactly the complete,
here-union-closed sets; their UE-model sets are exactly the UE-complete,
splittable ones.  Both directions of those characterizations are
constructive here: ``program_from_se_set`` and ``program_from_ue_set``
synthesize dual-normal programs realizing a given set.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict
from typing import Iterable, Iterator, Optional

from .common import DEFAULT_BUDGET, OracleBudget, ProgramClassError, SynthesisPreconditionError
from .core import AtomTable, Program, Rule, ensure_shared, is_model, reduct, split
from .dualhorn import max_model_dual_horn


@dataclass(frozen=True)
class SEPair:
    here: frozenset[int]
    there: frozenset[int]

    def __post_init__(self):
        if not self.here <= self.there:
            raise ValueError("SE-interpretation requires X to be a subset of Y")


@dataclass(frozen=True)
class SESet:
    """A finite set of SE-interpretations over a declared universe."""

    table: AtomTable = field(compare=False)
    universe: frozenset[int] = frozenset()
    pairs: frozenset[SEPair] = frozenset()

    def __post_init__(self):
        for p in self.pairs:
            if not p.there <= self.universe:
                raise ValueError("SE-pair outside the declared universe")

    def __iter__(self) -> Iterator[SEPair]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair: SEPair) -> bool:
        return pair in self.pairs

    def with_pairs(self, pairs: Iterable[SEPair]) -> "SESet":
        return SESet(self.table, self.universe, frozenset(pairs))

    def heres_for(self, there: frozenset[int]) -> set[frozenset[int]]:
        return {p.here for p in self.pairs if p.there == there}

    def diagonal(self) -> set[frozenset[int]]:
        return {p.there for p in self.pairs if p.here == p.there}


@dataclass(frozen=True)
class SEProperties:
    complete: bool
    closed_here_intersection: bool
    closed_here_union: bool
    ue_complete: bool
    splittable: bool

    def to_dict(self) -> dict[str, bool]:
        return asdict(self)


def se_satisfies(pair: SEPair, rule: Rule) -> bool:
    """SE-satisfaction of one rule, by the four-condition characterization:
    the there-component hits the negative body, or misses part of the
    positive body, or the here-component hits the head, or the there-component
    hits the head while the positive body exceeds the here-component."""
    x, y = pair.here, pair.there
    if any(c in y for c in rule.body_neg):
        return True
    if any(b not in y for b in rule.body_pos):
        return True
    if any(a in x for a in rule.head):
        return True
    return any(a in y for a in rule.head) and any(b not in x for b in rule.body_pos)


def _subset_masks_ascending(mask: int) -> list[int]:
    subs = []
    sub = mask
    while True:
        subs.append(sub)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    subs.reverse()
    return subs


def se_models(
    prog: Program,
    universe: Optional[frozenset[int]] = None,
    budget: OracleBudget = DEFAULT_BUDGET,
) -> SESet:
    """All SE-models of the program over the universe (default: its atoms).

    Every candidate pair is evaluated both by the definition (model of P,
    model of the reduct) and by the rule-wise four-condition test; the two
    must agree, which is asserted.
    """
    uni = frozenset(prog.atom_ids if universe is None else universe)
    atoms = sorted(uni)
    budget.check(len(atoms), "SE-model enumeration")
    pairs = []
    for ymask in range(1 << len(atoms)):
        y = frozenset(a for i, a in enumerate(atoms) if ymask >> i & 1)
        y_models = is_model(y, prog)
        red = reduct(prog, y)
        for xmask in _subset_masks_ascending(ymask):
            x = frozenset(a for i, a in enumerate(atoms) if xmask >> i & 1)
            pair = SEPair(x, y)
            direct = y_models and is_model(x, red)
            via_conditions = all(se_satisfies(pair, r) for r in prog.rules)
            assert direct == via_conditions, "rule-wise SE test disagrees with the definition"
            if direct:
                pairs.append(pair)
    return SESet(table=prog.table, universe=uni, pairs=frozenset(pairs))


def ue_models(se_set: SESet) -> SESet:
    """Filter an SE-set to its UE-pairs: (X, Y) stays when every (X', Y) in
    the set with X properly below X' already has X' = Y."""
    by_there: dict[frozenset[int], list[frozenset[int]]] = {}
    for p in se_set.pairs:
        by_there.setdefault(p.there, []).append(p.here)
    kept = [
        p
        for p in se_set.pairs
        if all(x == p.there or not p.here < x for x in by_there[p.there])
    ]
    return se_set.with_pairs(kept)


def union_closure(sets: Iterable[frozenset[int]]) -> set[frozenset[int]]:
    """Closure under (non-empty, finite) unions."""
    closed = set(sets)
    frontier = list(closed)
    while frontier:
        nxt = []
        for u in frontier:
            for v in list(closed):
                w = u | v
                if w not in closed:
                    closed.add(w)
                    nxt.append(w)
        frontier = nxt
    return closed


def se_properties(se_set: SESet) -> SEProperties:
    """Evaluate the five closure flags for a set of SE-interpretations."""
    pairs = {(p.here, p.there) for p in se_set.pairs}
    diagonal = {y for x, y in pairs if x == y}
    by_there: dict[frozenset[int], set[frozenset[int]]] = {}
    for x, y in pairs:
        by_there.setdefault(y, set()).add(x)

    complete = all(y in diagonal for y in by_there) and all(
        (x, z) in pairs
        for x, y in pairs
        for z in diagonal
        if y <= z
    )
    closed_int = all(
        x & x2 in xs for xs in by_there.values() for x in xs for x2 in xs
    )
    closed_uni = all(
        x | x2 in xs for xs in by_there.values() for x in xs for x2 in xs
    )

    ue_complete = (
        all(y in diagonal for y in by_there)
        and all(
            any(y <= mid < z for mid in by_there.get(z, ()))
            for _, y in pairs
            for z in diagonal
            if y < z
        )
        and all(
            x2 == y or not x < x2
            for y, xs in by_there.items()
            for x in xs
            for x2 in xs
        )
    )

    splittable = True
    for z in diagonal:
        below = {x for x, y in pairs if y <= z}
        for u in union_closure(below):
            if (u, z) in pairs:
                continue
            if any(u <= z2 < z for z2 in by_there.get(z, ())):
                continue
            splittable = False
            break
        if not splittable:
            break

    if ue_complete and splittable:
        assert closed_uni, "splittable UE-complete set must be closed under here-union"
    return SEProperties(
        complete=complete,
        closed_here_intersection=closed_int,
        closed_here_union=closed_uni,
        ue_complete=ue_complete,
        splittable=splittable,
    )


def _masked(atoms: list[int], mask: int) -> frozenset[int]:
    return frozenset(a for i, a in enumerate(atoms) if mask >> i & 1)


def program_from_se_set(se_set: SESet) -> Program:
    """Synthesize a dual-normal program whose SE-models over the universe are
    exactly the given set.

    Requires the set to be complete and closed under here-union.  Every
    missing diagonal pair is excluded by a constraint; every other missing
    pair by a proper rule with at most one positive body atom.  Witness atoms
    are always the smallest candidate id, so output is reproducible.
    """
    props = se_properties(se_set)
    if not (props.complete and props.closed_here_union):
        raise SynthesisPreconditionError(
            "SE-program synthesis needs a complete, here-union-closed set"
        )
    atoms = sorted(se_set.universe)
    pairs = {(p.here, p.there) for p in se_set.pairs}
    diagonal = sorted(
        {y for x, y in pairs if x == y}, key=lambda s: sum(1 << atoms.index(a) for a in s)
    )
    theres = {y for _, y in pairs}
    rules = []

    for ymask in range(1 << len(atoms)):
        hat_y = _masked(atoms, ymask)
        if (hat_y, hat_y) in pairs:
            continue
        inside = [y for y in theres if y <= hat_y]
        outside = [y for y in theres if y - hat_y]
        body = {min(hat_y - y) for y in inside}
        nbody = {min(y - hat_y) for y in outside}
        rules.append(Rule.of((), body, nbody))

    for hat_y in diagonal:
        heres = {x for x, y in pairs if y == hat_y}
        ymask = sum(1 << atoms.index(a) for a in hat_y)
        for xmask in _subset_masks_ascending(ymask):
            if xmask == ymask:
                continue
            hat_x = _masked(atoms, xmask)
            if (hat_x, hat_y) in pairs:
                continue
            inside = [x for x in heres if x <= hat_x]
            excess = [x for x in heres if x - hat_x]
            if inside:
                x0 = frozenset().union(*inside)
                assert x0 < hat_x, "here-union closure guarantees a proper union"
                body = {min(hat_x - x0)}
            else:
                body = set()
            if excess:
                head = {min(x - hat_x) for x in excess}
            else:
                head = {min(hat_y - hat_x)}
            others = [y for y in theres if y != hat_y and y - hat_y]
            nbody = {min(y - hat_y) for y in others}
            rules.append(Rule.of(head, body, nbody))

    prog = Program.of(se_set.table, rules)
    assert all(r.is_constraint or len(r.body_pos) <= 1 for r in prog.rules)
    return prog


def se_closure(se_set: SESet) -> SESet:
    """Close a set of SE-interpretations: for each diagonal member Z, pair Z
    with every union of here-components lying below Z."""
    pairs = {(p.here, p.there) for p in se_set.pairs}
    out = set()
    for z in {y for x, y in pairs if x == y}:
        below = {x for x, y in pairs if y <= z}
        for x in union_closure(below):
            out.add(SEPair(x, z))
    return se_set.with_pairs(out)


def program_from_ue_set(se_set: SESet) -> Program:
    """Synthesize a dual-normal program whose UE-models over the universe are
    exactly the given set (which must be UE-complete and splittable)."""
    props = se_properties(se_set)
    if not (props.ue_complete and props.splittable):
        raise SynthesisPreconditionError(
            "UE-program synthesis needs a UE-complete, splittable set"
        )
    closed = se_closure(se_set)
    closed_props = se_properties(closed)
    assert closed_props.complete and closed_props.closed_here_union
    return program_from_se_set(closed)


def _require_dual_normal(prog: Program) -> None:
    for r in prog.rules:
        if r.head and len(r.body_pos) > 1:
            raise ProgramClassError(
                "program is not dual-normal (a proper rule has more than one positive body atom)"
            )


def is_ue_model_dn(
    prog: Program, pair: SEPair, universe: Optional[frozenset[int]] = None
) -> bool:
    """Polynomial UE-model test for dual-normal programs.

    After the cheap checks (there-component a model; equal components; the
    here-component models the reduct), each atom y strictly between X and Y
    spawns a dual-Horn theory: the reduct of the proper part w.r.t. Y, the
    atoms of X as facts, and constraints excluding everything outside Y as
    well as y itself.  (Constraint reducts are dropped: a surviving
    constraint's positive body already sticks out of Y, so every subset of Y
    satisfies it.)  The pair is a UE-model exactly when every such theory has
    its unique maximal model equal to X.
    """
    _require_dual_normal(prog)
    uni = frozenset(prog.atom_ids if universe is None else universe)
    x, y = pair.here, pair.there
    if not y <= uni:
        raise ValueError("pair exceeds the universe")
    if not is_model(y, prog):
        return False
    if x == y:
        return True
    if not is_model(x, reduct(prog, y)):
        return False
    proper, _ = split(prog)
    base_rules = list(reduct(proper, y).rules)
    base_rules.extend(Rule.of((a,)) for a in sorted(x))
    base_rules.extend(Rule.of((), (z,)) for z in sorted(uni - y))
    for atom in sorted(y - x):
        theory = Program.of(prog.table, base_rules + [Rule.of((), (atom,))])
        maximal = max_model_dual_horn(theory, universe=uni)
        if maximal != x:
            return False
    return True


def _ue_disagreement_dn(
    p: Program, q: Program, budget: OracleBudget = DEFAULT_BUDGET
) -> Optional[SEPair]:
    """First SE-pair over the joint universe on which the polynomial UE test
    distinguishes the two dual-normal programs, or None."""
    _require_dual_normal(p)
    _require_dual_normal(q)
    joint = p.atom_ids | q.atom_ids
    atoms = sorted(joint)
    budget.check(len(atoms), "UE-pair enumeration")
    for ymask in range(1 << len(atoms)):
        y = _masked(atoms, ymask)
        for xmask in _subset_masks_ascending(ymask):
            pair = SEPair(_masked(atoms, xmask), y)
            if is_ue_model_dn(p, pair, joint) != is_ue_model_dn(q, pair, joint):
                return pair
    return None


def uniformly_equivalent_dn(
    p: Program, q: Program, budget: OracleBudget = DEFAULT_BUDGET
) -> bool:
    """Uniform equivalence of dual-normal programs: the polynomial per-pair
    UE test agrees on every SE-pair over the joint universe (the enumeration
    shell is desk-scale; the per-pair check is the polynomial core)."""
    p, q = ensure_shared(p, q)
    return _ue_disagreement_dn(p, q, budget) is None
