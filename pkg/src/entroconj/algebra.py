"""Symbolic algebra over linear combinations of joint entropies.

An expression is a finite sum  sum_a c_a * H(X^a)  with exact rational
coefficients, where a runs over nonempty subsets of the variable indices
{1..n}.  Subsets are encoded as bitmasks with variable 1 at the lowest bit.
H of the empty set is zero and zero coefficients are dropped, so every
expression is kept in canonical sparse form and equality of expressions is
plain equality of coefficient maps.

The central operation is the conjugation that sends H(X^a) to
H(X^{-a}) - H(X), where -a is the complement of a within {1..n}.  It is a
linear involution that swaps low-order for high-order structure, and it acts
on the u_k basis (averaged pairwise conditional mutual informations) by
reversing indices: the conjugate of u_k is u_{n-k}.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Union

Rational = Union[Fraction, int, str]

__all__ = [
    "EntropyExpression",
    "UBasisVector",
    "SymmetryClass",
    "NotLabelSymmetricError",
    "NotInSpanError",
    "subset_mask",
    "mask_members",
    "entropy_term",
    "conjugate",
    "mutual_information_expr",
    "u_expression",
    "r_expression",
    "is_label_symmetric",
    "to_u_basis",
    "from_u_basis",
    "classify",
    "sym_skew_decompose",
    "u_inner_product",
    "distinct_term_count",
    "span_dimensions",
    "rational_rank",
    "expression_to_json",
    "expression_from_json",
]


class NotLabelSymmetricError(ValueError):
    """Raised when an operation requires permutation-invariant coefficients."""


class NotInSpanError(ValueError):
    """Raised when an expression lies outside the span of u_1..u_{n-1}.

    Carries the nonzero residual of the defining linear system.  A nonzero
    residual means the expression does not vanish on jointly independent
    variables, so it cannot be a pure interdependence measure.
    """

    def __init__(self, residual: Fraction):
        super().__init__(
            f"expression is outside the u-basis span (residual {residual})"
        )
        self.residual = residual


def subset_mask(members: Iterable[int], n: int) -> int:
    """Bitmask for a set of 1-based variable indices."""
    mask = 0
    for i in members:
        i = int(i)
        if not 1 <= i <= n:
            raise ValueError(f"variable index {i} outside 1..{n}")
        mask |= 1 << (i - 1)
    return mask


def mask_members(mask: int) -> tuple[int, ...]:
    """1-based variable indices present in a bitmask, ascending."""
    return tuple(i + 1 for i in range(mask.bit_length()) if (mask >> i) & 1)


class EntropyExpression:
    """A linear combination of subset entropies in canonical sparse form."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[int, Rational] | None = None):
        n = int(n)
        if n < 1:
            raise ValueError("an expression needs at least one variable")
        full = (1 << n) - 1
        canonical: dict[int, Fraction] = {}
        if terms:
            for mask, coeff in terms.items():
                mask = int(mask)
                if not 0 <= mask <= full:
                    raise ValueError(f"subset mask {mask} outside 0..{full}")
                c = Fraction(coeff)
                if mask == 0 or c == 0:
                    continue  # H() = 0; zero coefficients are not stored
                canonical[mask] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_terms", canonical)

    def __setattr__(self, name, value):
        raise AttributeError("EntropyExpression is immutable")

    @property
    def terms(self) -> Mapping[int, Fraction]:
        """Read-only view of the coefficient map (bitmask -> coefficient)."""
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[tuple[int, Fraction]]:
        """Terms in deterministic order (ascending bitmask)."""
        return iter(sorted(self._terms.items()))

    def coefficient(self, members: Iterable[int]) -> Fraction:
        return self._terms.get(subset_mask(members, self.n), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EntropyExpression):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, tuple(sorted(self._terms.items()))))

    def __add__(self, other: "EntropyExpression") -> "EntropyExpression":
        if not isinstance(other, EntropyExpression):
            return NotImplemented
        if other.n != self.n:
            raise ValueError(f"variable counts differ: {self.n} vs {other.n}")
        merged = dict(self._terms)
        for mask, c in other._terms.items():
            merged[mask] = merged.get(mask, Fraction(0)) + c
        return EntropyExpression(self.n, merged)

    def __sub__(self, other: "EntropyExpression") -> "EntropyExpression":
        return self + (-other)

    def __neg__(self) -> "EntropyExpression":
        return self * -1

    def __mul__(self, scalar: Rational) -> "EntropyExpression":
        s = Fraction(scalar)
        return EntropyExpression(
            self.n, {mask: c * s for mask, c in self._terms.items()}
        )

    __rmul__ = __mul__

    def __truediv__(self, scalar: Rational) -> "EntropyExpression":
        return self * (Fraction(1) / Fraction(scalar))

    def __repr__(self) -> str:
        if not self._terms:
            return f"EntropyExpression(n={self.n}, 0)"
        parts = []
        for mask, c in self.items():
            label = "H{" + ",".join(map(str, mask_members(mask))) + "}"
            parts.append(f"{c}*{label}" if c != 1 else label)
        return f"EntropyExpression(n={self.n}, " + " + ".join(parts) + ")"


def entropy_term(n: int, members: Iterable[int]) -> EntropyExpression:
    """The single entropy H(X^a) as an expression."""
    return EntropyExpression(n, {subset_mask(members, n): Fraction(1)})


def conjugate(e: EntropyExpression) -> EntropyExpression:
    """Apply the involution H(X^a) -> H(X^{-a}) - H(X), extended linearly."""
    full = (1 << e.n) - 1
    out: dict[int, Fraction] = defaultdict(Fraction)
    for mask, c in e._terms.items():
        out[full ^ mask] += c
        out[full] -= c
    return EntropyExpression(e.n, out)


def mutual_information_expr(
    n: int,
    a: Iterable[int],
    b: Iterable[int],
    c: Iterable[int] = (),
) -> EntropyExpression:
    """Expression for I(X^a ; X^b | X^c) in unconditional entropies.

    Requires a, b, c pairwise disjoint with a and b nonempty; expands to
    H(ac) + H(bc) - H(abc) - H(c).
    """
    ma, mb, mc = subset_mask(a, n), subset_mask(b, n), subset_mask(c, n)
    if ma & mb or ma & mc or mb & mc:
        raise ValueError("index sets of a mutual information must be disjoint")
    if not ma or not mb:
        raise ValueError("both primary argument sets must be nonempty")
    terms: dict[int, Fraction] = defaultdict(Fraction)
    terms[ma | mc] += 1
    terms[mb | mc] += 1
    terms[ma | mb | mc] -= 1
    terms[mc] -= 1
    return EntropyExpression(n, terms)


@lru_cache(maxsize=None)
def u_expression(k: int, n: int) -> EntropyExpression:
    """The order-(k+1) interdependence average u_k as an entropy expression.

    u_k is the average of I(X_i ; X_j | X^a) over all pairs i < j and all
    (k-1)-subsets a avoiding i and j, normalised by C(n,k+1) * C(k+1,2).
    """
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must lie in 1..{n - 1}, got {k}")
    acc: dict[int, Fraction] = defaultdict(Fraction)
    for i, j in combinations(range(1, n + 1), 2):
        bij = (1 << (i - 1)) | (1 << (j - 1))
        rest = [v for v in range(1, n + 1) if v != i and v != j]
        for a in combinations(rest, k - 1):
            mc = subset_mask(a, n)
            acc[mc | (1 << (i - 1))] += 1
            acc[mc | (1 << (j - 1))] += 1
            acc[mc | bij] -= 1
            acc[mc] -= 1
    norm = Fraction(1, comb(n, k + 1) * comb(k + 1, 2))
    return EntropyExpression(n, {m: c * norm for m, c in acc.items()})


@lru_cache(maxsize=None)
def r_expression(k: int, n: int) -> EntropyExpression:
    """Average entropy over all size-k subsets; r_0 is the zero expression."""
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in 0..{n}, got {k}")
    if k == 0:
        return EntropyExpression(n)
    w = Fraction(1, comb(n, k))
    return EntropyExpression(
        n, {subset_mask(a, n): w for a in combinations(range(1, n + 1), k)}
    )


def is_label_symmetric(e: EntropyExpression) -> bool:
    """True when the coefficient of H(X^a) depends only on |a|.

    Every subset of a given size must carry the same coefficient, counting
    absent subsets as zero.
    """
    by_size: dict[int, set[Fraction]] = defaultdict(set)
    count_by_size: dict[int, int] = defaultdict(int)
    for mask, c in e._terms.items():
        size = mask.bit_count()
        by_size[size].add(c)
        count_by_size[size] += 1
    for size, coeffs in by_size.items():
        if len(coeffs) > 1:
            return False
        # stored coefficients are nonzero, so a partially covered size
        # mixes zero and nonzero coefficients
        if count_by_size[size] != comb(e.n, size):
            return False
    return True


def _r_weights(e: EntropyExpression) -> list[Fraction]:
    """Coefficients a_1..a_n of a label-symmetric expression over r_1..r_n."""
    n = e.n
    a = [Fraction(0)] * (n + 1)  # a[s] for s = 1..n; a[0] unused
    for mask, c in e._terms.items():
        s = mask.bit_count()
        a[s] = c * comb(n, s)
    return a


def to_u_basis(e: EntropyExpression) -> "UBasisVector":
    """Coordinates of a label-symmetric expression in the u_k basis.

    Collapses the expression onto the averaged entropies r_1..r_n and solves
    the n matching equations for the n-1 unknowns exactly.  The system is
    overdetermined by one equation; a nonzero residual means the expression
    does not vanish on jointly independent variables and is rejected.
    """
    if not is_label_symmetric(e):
        raise NotLabelSymmetricError(
            "expression is not invariant under variable relabelling"
        )
    n = e.n
    a = _r_weights(e)
    # u_k contributes 2 to r_k and -1 to each of r_{k-1}, r_{k+1}; with
    # sentinels c_0 = c_n = c_{n+1} = 0 the r_s equation reads
    # 2 c_s - c_{s-1} - c_{s+1} = a_s for s = 1..n.
    c = [Fraction(0)] * (n + 2)
    if n >= 2:
        c[n - 1] = -a[n]
        for s in range(n - 1, 1, -1):
            c[s - 1] = 2 * c[s] - c[s + 1] - a[s]
    residual = 2 * c[1] - c[2] - a[1]
    if residual != 0:
        raise NotInSpanError(residual)
    return UBasisVector(n, tuple(c[1:n]))


def from_u_basis(c: "UBasisVector") -> EntropyExpression:
    """Expand u-basis coordinates back into an entropy expression."""
    e = EntropyExpression(c.n)
    for k, ck in enumerate(c.c, start=1):
        if ck:
            e = e + u_expression(k, c.n) * ck
    return e


@dataclass(frozen=True)
class UBasisVector:
    """Exact coordinates c_1..c_{n-1} of an expression in the u_k basis."""

    n: int
    c: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(Fraction(x) for x in self.c))
        if len(self.c) != self.n - 1:
            raise ValueError(
                f"need {self.n - 1} coefficients for n={self.n}, got {len(self.c)}"
            )

    def reversed(self) -> "UBasisVector":
        """Coordinates with index k swapped for n-k."""
        return UBasisVector(self.n, tuple(reversed(self.c)))


class SymmetryClass(str, Enum):
    """Behaviour of an expression under entropic conjugation."""

    SYMMETRIC = "symmetric"
    SKEW_SYMMETRIC = "skew-symmetric"
    NEITHER = "neither"


def classify(c: UBasisVector) -> SymmetryClass:
    """Symmetry class read off the u-basis coordinates.

    Symmetric iff c_k = c_{n-k} for every k, skew-symmetric iff
    c_k = -c_{n-k}.  The zero vector satisfies both and reports symmetric.
    """
    n = c.n
    if all(c.c[k - 1] == c.c[n - k - 1] for k in range(1, n)):
        return SymmetryClass.SYMMETRIC
    if all(c.c[k - 1] == -c.c[n - k - 1] for k in range(1, n)):
        return SymmetryClass.SKEW_SYMMETRIC
    return SymmetryClass.NEITHER


def sym_skew_decompose(
    e: EntropyExpression,
) -> tuple[EntropyExpression, EntropyExpression]:
    """Split an expression into its symmetric and skew-symmetric halves.

    Returns (s, t) with conjugate(s) = s, conjugate(t) = -t and s + t = e,
    namely s = (e + e*)/2 and t = (e - e*)/2, all exact.
    """
    conj = conjugate(e)
    half = Fraction(1, 2)
    return (e + conj) * half, (e - conj) * half


def u_inner_product(c1: UBasisVector, c2: UBasisVector) -> Fraction:
    """Inner product under which the u_k are orthonormal."""
    if c1.n != c2.n:
        raise ValueError(f"variable counts differ: {c1.n} vs {c2.n}")
    return sum((x * y for x, y in zip(c1.c, c2.c)), Fraction(0))


def distinct_term_count(e: EntropyExpression) -> int:
    """Number of distinct entropy terms with nonzero coefficient."""
    return len(e._terms)


def span_dimensions(n: int) -> tuple[int, int]:
    """(symmetric, skew-symmetric) dimensions of the n-variable metric space."""
    if n < 2:
        raise ValueError("need at least two variables")
    return n // 2, (n - 1) // 2


def rational_rank(rows: Iterable[Iterable[Rational]]) -> int:
    """Rank of a matrix over the rationals, by exact Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    if any(len(row) != ncols for row in m):
        raise ValueError("ragged matrix")
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = Fraction(1) / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


def expression_to_json(e: EntropyExpression) -> dict:
    """JSON-ready form: terms sorted by mask, subsets ascending, exact coeffs."""
    return {
        "n": e.n,
        "terms": [
            {"subset": list(mask_members(mask)), "coeff": str(c)}
            for mask, c in e.items()
        ],
    }


def expression_from_json(obj: dict) -> EntropyExpression:
    """Parse the JSON form produced by :func:`expression_to_json`."""
    if not isinstance(obj, Mapping):
        raise ValueError("expression JSON must be an object")
    try:
        n = int(obj["n"])
        raw_terms = obj["terms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed expression JSON: {exc}") from exc
    if not isinstance(raw_terms, list):
        raise ValueError('"terms" must be a list')
    terms: dict[int, Fraction] = {}
    for idx, entry in enumerate(raw_terms):
        try:
            members = entry["subset"]
            coeff = Fraction(str(entry["coeff"]))
            mask = subset_mask(members, n)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed term {idx}: {exc}") from exc
        if mask in terms:
            raise ValueError(f"duplicate subset {sorted(members)}")
        terms[mask] = coeff
    return EntropyExpression(n, terms)
