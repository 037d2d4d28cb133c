import functools

import pytest

from surface_actions.dataset import classify, enumerate_datasets


@functools.lru_cache(maxsize=None)
def type1_corpus(max_n=12, max_g=20):
    """Every Type 1 set with n <= max_n and genus <= max_g, as (irreducible, rest)."""
    irr, rest = [], []
    for n in range(2, max_n + 1):
        for g in range(max_g + 1):
            for D in enumerate_datasets(n, g):
                cls = classify(D)
                if cls.kind == "Type1":
                    (irr if cls.irreducible else rest).append(D)
    return tuple(irr), tuple(rest)


@functools.lru_cache(maxsize=None)
def type2_corpus(max_n=10, max_g=6):
    return tuple(
        D
        for n in range(2, max_n + 1)
        for g in range(max_g + 1)
        for D in enumerate_datasets(n, g)
        if classify(D).kind == "Type2"
    )


@pytest.fixture(scope="session")
def irreducible_type1():
    return type1_corpus()[0]


@pytest.fixture(scope="session")
def all_type1():
    irr, rest = type1_corpus()
    return irr + rest


@pytest.fixture(scope="session")
def type2_sets():
    return type2_corpus()
