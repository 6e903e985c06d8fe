import pytest

from dualnorm.core import AtomTable
from dualnorm.textio import parse_program

# Three-atom worked examples used throughout: a disjunctive guess with a
# completion loop, and its two pruned variants (one normal, one dual-normal).
DISJ3 = "a | b.\n:- not c.\nc :- a, b.\na :- c.\nb :- c.\n"
DISJ3_NORMAL = ":- not c.\nc :- a, b.\na :- c.\nb :- c.\n"  # drops the guess
DISJ3_DUAL = "a | b.\n:- not c.\na :- c.\nb :- c.\n"  # drops the join rule

# UE-complete, here-union-closed, but not splittable.
UNSPLITTABLE = "b;b\nc;c\na b;a b c d\nc d;a b c d\na b c d;a b c d\n"


@pytest.fixture
def table():
    return AtomTable()


@pytest.fixture
def disj3():
    return parse_program(DISJ3)


@pytest.fixture
def disj3_normal():
    return parse_program(DISJ3_NORMAL)


@pytest.fixture
def disj3_dual():
    return parse_program(DISJ3_DUAL)


def ids_of(prog, names):
    return frozenset(prog.table.id_of(n) for n in names.split())


def name_pairs(se_set):
    """SE pairs as sorted name tuples, for readable comparisons."""
    t = se_set.table
    return {
        (tuple(t.names_of(p.here)), tuple(t.names_of(p.there))) for p in se_set.pairs
    }
