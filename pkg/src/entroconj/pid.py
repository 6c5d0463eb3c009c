"""Source-target information atoms as monotone Boolean functions.

The mutual information I(X_1..X_n ; Y) decomposes into atoms indexed by
nonconstant monotone Boolean functions on source subsets: f(a) says whether
the atom's information is accessible from the source set a.  Equivalently an
atom is the antichain of its minimal accessible sets, so {{1,2}} is the
synergy of two sources and {{1},{2}} their redundancy.  Ordering functions
pointwise gives a lattice whose order-reversing duality (complement the
argument, flip the output) exchanges redundancy with synergy.

A reference decomposition based on minimum specific information is included
for up to three sources; it serves as a concrete instance for validating the
duality identities numerically, not as an endorsed measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .distributions import PROB_ZERO, JointDistribution

__all__ = [
    "MonotoneBooleanFunction",
    "enumerate_atoms",
    "antichain_to_bf",
    "bf_to_antichain",
    "dual",
    "atom_leq",
    "cmi_atom_set",
    "verify_theorem1_sets",
    "reference_pid",
    "pid_conjugate_check",
    "MAX_ENUM_SOURCES",
    "MAX_PID_SOURCES",
]

MAX_ENUM_SOURCES = 5  # the atom count explodes combinatorially beyond this
MAX_PID_SOURCES = 3

AntichainLike = Iterable[Iterable[int]]
Antichain = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class MonotoneBooleanFunction:
    """A nonconstant monotone map from source subsets to {0, 1}.

    ``bits`` packs the truth table: bit m holds f(m) for the source-subset
    bitmask m, 0 <= m < 2^n.  Monotone means f never drops when a source is
    added.
    """

    n: int
    bits: int

    def __post_init__(self):
        size = 1 << self.n
        if not 1 <= self.n <= 10:
            raise ValueError(f"source count {self.n} outside 1..10")
        if not 0 <= self.bits < (1 << size):
            raise ValueError("truth table does not fit the source count")
        if self.bits == 0 or self.bits == (1 << size) - 1:
            raise ValueError("constant functions are not atoms")
        for mask in range(size):
            fm = (self.bits >> mask) & 1
            for b in range(self.n):
                if (mask >> b) & 1 and (self.bits >> (mask ^ (1 << b))) & 1 > fm:
                    raise ValueError("truth table is not monotone")

    def value(self, mask: int) -> int:
        """f at a source-subset bitmask."""
        return (self.bits >> mask) & 1

    def table(self) -> str:
        """Truth table as a 0/1 string in mask order."""
        return "".join(str((self.bits >> m) & 1) for m in range(1 << self.n))


def _source_mask(members: Iterable[int], n: int) -> int:
    mask = 0
    for i in members:
        i = int(i)
        if not 1 <= i <= n:
            raise ValueError(f"source index {i} outside 1..{n}")
        mask |= 1 << (i - 1)
    return mask


def _mask_tuple(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if (mask >> i) & 1)


@lru_cache(maxsize=None)
def enumerate_atoms(n: int) -> tuple[MonotoneBooleanFunction, ...]:
    """All atoms over n sources, in lexicographic truth-table order.

    Walks masks in increasing numeric order (every subset of a mask is
    numerically smaller, so all constraints point backwards) and branches
    only where monotonicity leaves the value free.  The two constant
    functions are dropped at the end.
    """
    if not 1 <= n <= MAX_ENUM_SOURCES:
        raise ValueError(f"source count {n} outside 1..{MAX_ENUM_SOURCES}")
    size = 1 << n
    table = [0] * size
    results: list[int] = []

    def extend(mask: int) -> None:
        if mask == size:
            bits = 0
            for m, v in enumerate(table):
                bits |= v << m
            results.append(bits)
            return
        forced = any(
            table[mask ^ (1 << b)] for b in range(n) if (mask >> b) & 1
        )
        if forced:
            table[mask] = 1
            extend(mask + 1)
        else:
            table[mask] = 0
            extend(mask + 1)
            table[mask] = 1
            extend(mask + 1)

    extend(0)
    atoms = [
        MonotoneBooleanFunction(n, bits)
        for bits in results
        if bits != 0 and bits != (1 << size) - 1
    ]
    atoms.sort(key=lambda f: f.table())
    return tuple(atoms)


def antichain_to_bf(antichain: AntichainLike, n: int) -> MonotoneBooleanFunction:
    """Atom whose accessible sets are exactly the supersets of the antichain.

    f(a) = 1 iff some member of the antichain is contained in a.  Members
    must be nonempty subsets of {1..n} with none containing another.
    """
    masks = sorted({_source_mask(member, n) for member in antichain})
    if not masks:
        raise ValueError("antichain must be nonempty")
    if 0 in masks:
        raise ValueError("antichain members must be nonempty")
    for i, m1 in enumerate(masks):
        for m2 in masks[i + 1 :]:
            if m1 & m2 == m1 or m1 & m2 == m2:
                raise ValueError(
                    f"{_mask_tuple(m1)} and {_mask_tuple(m2)} are nested: "
                    "antichain members must be incomparable"
                )
    bits = 0
    for mask in range(1 << n):
        if any(m & mask == m for m in masks):
            bits |= 1 << mask
    return MonotoneBooleanFunction(n, bits)


def bf_to_antichain(f: MonotoneBooleanFunction) -> Antichain:
    """The minimal accessible sets of an atom, as sorted index tuples."""
    minimal = []
    for mask in range(1, 1 << f.n):
        if not f.value(mask):
            continue
        if any(f.value(mask ^ (1 << b)) for b in range(f.n) if (mask >> b) & 1):
            continue
        minimal.append(_mask_tuple(mask))
    return tuple(sorted(minimal))


def dual(f: MonotoneBooleanFunction) -> MonotoneBooleanFunction:
    """Order-reversing involution: f~(a) = 1 iff f(complement of a) = 0."""
    size = 1 << f.n
    full = size - 1
    bits = 0
    for mask in range(size):
        if not f.value(full ^ mask):
            bits |= 1 << mask
    return MonotoneBooleanFunction(f.n, bits)


def atom_leq(f: MonotoneBooleanFunction, g: MonotoneBooleanFunction) -> bool:
    """Pointwise order on truth tables: f <= g iff f(a) <= g(a) for all a."""
    if f.n != g.n:
        raise ValueError("atoms live over different source counts")
    return f.bits & ~g.bits == 0


def cmi_atom_set(
    n: int, a: Iterable[int], b: Iterable[int] = ()
) -> tuple[MonotoneBooleanFunction, ...]:
    """Atoms that add up to I(X^a ; Y | X^b): f(a|b) = 1 and f(b) = 0."""
    ma = _source_mask(a, n)
    mb = _source_mask(b, n)
    if ma & mb:
        raise ValueError("index sets must be disjoint")
    if not ma:
        raise ValueError("the first index set must be nonempty")
    return tuple(
        f for f in enumerate_atoms(n) if f.value(ma | mb) and not f.value(mb)
    )


def verify_theorem1_sets(n: int, a: Iterable[int], b: Iterable[int] = ()) -> bool:
    """Structural duality check behind the conditional-MI conjugation.

    True iff dualising the atoms of I(X^a ; Y | X^b) yields exactly the
    atoms of I(X^a ; Y | X^{(a u b)^C}), the complement taken within the
    sources.  Holds for every disjoint pair by order duality; this verifies
    it by direct enumeration.
    """
    ma = _source_mask(a, n)
    mb = _source_mask(b, n)
    full = (1 << n) - 1
    dualised = {dual(f) for f in cmi_atom_set(n, a, b)}
    complement = _mask_tuple(full ^ (ma | mb))
    return dualised == set(cmi_atom_set(n, a, complement))


def _specific_information_bits(
    dist: JointDistribution, source_members: tuple[int, ...]
) -> np.ndarray:
    """Specific information of a source set about each target state, in bits.

    Entry y holds the KL divergence of p(X_A | Y=y) from p(X_A); zero where
    the target state has no mass.  The target is the last variable.
    """
    target_axis = dist.n - 1
    keep = [m - 1 for m in source_members] + [target_axis]
    drop = tuple(i for i in range(dist.n) if i not in keep)
    joint = dist.pmf.sum(axis=drop) if drop else dist.pmf
    # axes arrive in variable order with the target last already
    flat = joint.reshape(-1, joint.shape[-1])
    p_y = flat.sum(axis=0)
    p_a = flat.sum(axis=1)
    out = np.zeros(flat.shape[1])
    for y in range(flat.shape[1]):
        if p_y[y] <= PROB_ZERO:
            continue
        total = 0.0
        for ai in range(flat.shape[0]):
            p_ay = flat[ai, y]
            if p_ay <= PROB_ZERO:
                continue
            total += (p_ay / p_y[y]) * math.log2(p_ay / (p_a[ai] * p_y[y]))
        out[y] = total
    return out


def reference_pid(dist: JointDistribution) -> dict[MonotoneBooleanFunction, float]:
    """Minimum-specific-information decomposition of I(sources ; target).

    The last variable of ``dist`` is the target.  The redundancy of an atom
    is the target average of the smallest specific information among its
    minimal accessible sets; atom values then follow by subtracting, from
    each redundancy, the values of all strictly more accessible atoms.  By
    construction the atoms with f(a) = 1 add up to I(X^a ; Y) for every
    source set a.  Values are in bits.
    """
    m = dist.n - 1
    if not 1 <= m <= MAX_PID_SOURCES:
        raise ValueError(
            f"the reference decomposition supports 1..{MAX_PID_SOURCES} sources, got {m}"
        )
    p_y = dist.pmf.sum(axis=tuple(range(m)))

    specific_cache: dict[tuple[int, ...], np.ndarray] = {}

    def specific(members: tuple[int, ...]) -> np.ndarray:
        if members not in specific_cache:
            specific_cache[members] = _specific_information_bits(dist, members)
        return specific_cache[members]

    atoms = enumerate_atoms(m)

    def redundancy(f: MonotoneBooleanFunction) -> float:
        stacked = np.array([specific(member) for member in bf_to_antichain(f)])
        return float((p_y * stacked.min(axis=0)).sum())

    values: dict[MonotoneBooleanFunction, float] = {}
    for f in sorted(atoms, key=lambda f: (-f.bits.bit_count(), f.bits)):
        upper = sum(v for g, v in values.items() if g != f and atom_leq(f, g))
        values[f] = redundancy(f) - upper
    return values


def pid_conjugate_check(
    dist: JointDistribution, a: Iterable[int], b: Iterable[int] = ()
) -> tuple[float, float]:
    """Dual-atom sum versus the complementary conditional MI.

    Returns the pair (sum over the atoms of I(X^a ; Y | X^b) of their duals'
    values, numeric I(X^a ; Y | X^{(a u b)^C})); the two agree whenever the
    decomposition is consistent, realising the conjugation of conditional
    mutual informations at the atom level.
    """
    m = dist.n - 1
    ma = _source_mask(a, m)
    mb = _source_mask(b, m)
    values = reference_pid(dist)
    lhs = sum(values[dual(f)] for f in cmi_atom_set(m, a, b))
    complement = _mask_tuple(((1 << m) - 1) ^ (ma | mb))
    rhs = dist.conditional_mutual_information(
        _mask_tuple(ma), (dist.n,), complement
    )
    return float(lhs), float(rhs)
