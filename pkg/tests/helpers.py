"""Shared builders and independent oracles for the test suite."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import numpy as np

from entroconj import EntropyExpression, JointDistribution


def xor_triple() -> JointDistribution:
    """X1, X2 uniform independent bits, X3 = X1 xor X2."""
    return JointDistribution.from_pmf(
        {(0, 0, 0): 0.25, (0, 1, 1): 0.25, (1, 0, 1): 0.25, (1, 1, 0): 0.25}
    )


def copy_triple() -> JointDistribution:
    """A single uniform bit copied three times."""
    return JointDistribution.from_pmf({(0, 0, 0): 0.5, (1, 1, 1): 0.5})


def copy_pair() -> JointDistribution:
    return JointDistribution.from_pmf({(0, 0): 0.5, (1, 1): 0.5})


def parity_distribution(n: int) -> JointDistribution:
    """First n-1 bits uniform independent, last bit their parity."""
    states = {}
    for bits in product((0, 1), repeat=n - 1):
        state = bits + (sum(bits) % 2,)
        states[state] = 1.0 / 2 ** (n - 1)
    return JointDistribution.from_pmf(states)


def random_distribution(rng: np.random.Generator, sizes) -> JointDistribution:
    pmf = rng.random(tuple(sizes))
    return JointDistribution(pmf / pmf.sum())


def random_expression(
    rng: np.random.Generator, n: int, max_terms: int = 6
) -> EntropyExpression:
    terms = {}
    for _ in range(int(rng.integers(0, max_terms + 1))):
        mask = int(rng.integers(1, 1 << n))
        coeff = Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 10)))
        terms[mask] = terms.get(mask, Fraction(0)) + coeff
    return EntropyExpression(n, terms)


def brute_entropy_bits(pmf: dict, members) -> float:
    """Plug-in marginal entropy straight from a state->probability dict.

    Kept independent of the library's array pipeline so it can serve as an
    oracle for it.
    """
    members = tuple(members)
    marginal: dict = {}
    for state, p in pmf.items():
        key = tuple(state[i - 1] for i in members)
        marginal[key] = marginal.get(key, 0.0) + p
    return -sum(p * math.log2(p) for p in marginal.values() if p > 1e-15)
