import itertools
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from racah import core
from racah.freealg import Gen, NCPoly
from racah.representation import OperatorContext, default_param_sets

settings.register_profile(
    "suite", deadline=None, max_examples=25,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("suite")


@pytest.fixture(scope="session")
def rs3():
    return core.rewrite_system(3)


@pytest.fixture(scope="session")
def rs4():
    return core.rewrite_system(4)


@pytest.fixture(scope="session")
def param_sets():
    return default_param_sets()


@pytest.fixture(scope="session")
def contexts(param_sets):
    return [(name, OperatorContext(p, w)) for name, p, w in param_sets]


@pytest.fixture(scope="session")
def ctx_integer(contexts):
    return contexts[0][1]


@pytest.fixture(scope="session")
def ctx_generic(contexts):
    return contexts[1][1]


def core_alphabet(rank):
    idx = range(1, rank + 1)
    out = [Gen("P", (i,)) for i in idx]
    out += [Gen("P", t) for t in itertools.combinations(idx, 2)]
    out += [Gen("D", t) for t in itertools.combinations(idx, 3)]
    return out


def full_alphabet(rank):
    out = core_alphabet(rank)
    idx = range(1, rank + 1)
    for r in range(1, rank + 1):
        out += [Gen("C", s) for s in itertools.combinations(idx, r)]
    if rank == 4:
        for kind in ("Om", "om", "Ga"):
            out += [Gen(kind, (k,)) for k in range(5)]
    return out


COEFFS = [Fraction(n) for n in (-3, -2, -1, 1, 2, 3)] + \
         [Fraction(1, 2), Fraction(-1, 2), Fraction(2, 3)]


def poly_strategy(rank=4, alphabet=None, max_words=3, max_len=3):
    import hypothesis.strategies as st

    gens = alphabet if alphabet is not None else full_alphabet(rank)
    words = st.lists(st.sampled_from(gens), min_size=0, max_size=max_len) \
        .map(tuple)
    term = st.tuples(words, st.sampled_from(COEFFS))
    return st.lists(term, min_size=0, max_size=max_words).map(
        lambda terms: sum((NCPoly.from_word(rank, w, c) for w, c in terms),
                          NCPoly.zero(rank)))
