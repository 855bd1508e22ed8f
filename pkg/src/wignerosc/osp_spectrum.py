"""Energy spectrum in the lowest-weight osp(1|2n) representations V(p).

V(p), with lowest weight (p/2, ..., p/2), is a unitary irreducible
module exactly when p is one of 1, ..., n-1 or any real p > n-1. Its
basis consists of triangular Gelfand-Zetlin patterns: the top row is a
partition into at most ceil(p) parts (padded with zeros to n entries)
and consecutive rows interleave, m[i][j+1] >= m[i][j] >= m[i+1][j+1].

Each pattern is an eigenvector; with s_j the sum of the length-j row,

    E = sum_j sqrt(mu_j) * (p/2 + s_j - s_{j-1}),    s_0 = 0,

in units of hbar. Patterns sharing the row-sum vector (s_1, ..., s_n)
share the eigenvalue for every coupling, so multiplicities are computed
exactly by integer signature grouping; merging by floating tolerance is
applied only on top, to catch level crossings at special couplings.

All combinatorial quantities (hook products, multiplicities) use exact
rational arithmetic; floating point enters only in the final energy.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import UnirrepError
from .levels import SpectrumLine, merge_lines
from .spectral import ModeFrequencies

__all__ = [
    "Partition",
    "GZPattern",
    "partitions_of",
    "conjugate",
    "generalized_binomial",
    "multiplicity_at_height",
    "enumerate_gz",
    "osp_eigenvalue",
    "row_sum_signature",
    "osp_spectrum",
    "distinct_count_at_height",
    "is_unirrep",
    "osp_lines_to_csv",
    "osp_lines_to_json",
]


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(x) for x in self.parts)
        if any(x <= 0 for x in parts):
            raise ValueError("parts must be positive")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError("parts must be weakly decreasing")
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)


def partitions_of(k: int, max_parts: int, max_slots: int | None = None) -> list[Partition]:
    """Partitions of k into at most min(max_parts, max_slots) parts, reverse-lexicographic."""
    if k < 0:
        raise ValueError("k must be non-negative")
    limit = max_parts if max_slots is None else min(max_parts, max_slots)

    def gen(rest: int, cap: int, slots: int):
        if rest == 0:
            yield ()
            return
        if slots == 0:
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first, slots - 1):
                yield (first,) + tail

    return [Partition(p) for p in gen(k, k, limit)]


def conjugate(nu: Partition) -> Partition:
    """Transpose of the Young diagram; an involution."""
    parts = nu.parts
    if not parts:
        return Partition(())
    return Partition(tuple(sum(1 for x in parts if x > j) for j in range(parts[0])))


def generalized_binomial(x: int, nu: Partition) -> Fraction:
    """Hook-content product prod_{(i,j) in nu} (x - (j - i)) / h(i, j).

    h(i, j) = nu_i + nu'_j - i - j + 1 is the hook length (1-based cell
    coordinates). Exact rational arithmetic; the result is integral for
    integral x, and vanishes automatically when the diagram does not fit
    into x rows.
    """
    nup = conjugate(nu).parts
    out = Fraction(1)
    for i, row in enumerate(nu.parts, start=1):
        for j in range(1, row + 1):
            hook = row + nup[j - 1] - i - j + 1
            out *= Fraction(x - (j - i), hook)
    return out


def is_unirrep(n: int, p: float) -> bool:
    """Whether V(p) of osp(1|2n) is unitary irreducible: p in {1..n-1} or p > n-1."""
    if n < 1:
        raise ValueError("need at least one oscillator")
    if p > n - 1:
        return True
    return float(p).is_integer() and 1 <= p <= n - 1


def multiplicity_at_height(n: int, p: float, k: int) -> int:
    """Number of patterns whose top row has weight k: the zero-coupling degeneracy.

    Sums the gl(n) dimensions of all admissible top rows,
    sum over partitions nu of k with at most ceil(p) parts of
    generalized_binomial(n, conjugate(nu)).
    """
    if k < 0:
        raise ValueError("height must be non-negative")
    total = Fraction(0)
    for nu in partitions_of(k, math.ceil(p)):
        total += generalized_binomial(n, conjugate(nu))
    assert total.denominator == 1
    return int(total)


@dataclass(frozen=True, order=True)
class GZPattern:
    """Triangular Gelfand-Zetlin pattern, stored top row first.

    ``rows[0]`` holds the n-entry top row, ``rows[i]`` has n - i
    entries; the length-j row is ``rows[n - j]``. Interleaving between
    consecutive rows and the top-row shape (weakly decreasing, at most
    ceil(p) nonzero entries) are enforced at construction.
    """

    rows: tuple[tuple[int, ...], ...]
    n: int
    p: float

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.n or [len(r) for r in rows] != list(range(self.n, 0, -1)):
            raise ValueError("pattern must have rows of lengths n, n-1, ..., 1")
        if any(x < 0 for row in rows for x in row):
            raise ValueError("entries must be non-negative")
        top = rows[0]
        if any(a < b for a, b in zip(top, top[1:])):
            raise ValueError("top row must be weakly decreasing")
        if sum(1 for x in top if x > 0) > math.ceil(self.p):
            raise ValueError(f"top row has more than ceil(p) = {math.ceil(self.p)} nonzero entries")
        for upper, lower in zip(rows, rows[1:]):
            for i, x in enumerate(lower):
                if not upper[i] >= x >= upper[i + 1]:
                    raise ValueError("interleaving condition violated")

    def row(self, j: int) -> tuple[int, ...]:
        """The length-j row, j = 1..n."""
        return self.rows[self.n - j]

    @property
    def height(self) -> int:
        return sum(self.rows[0])


def row_sum_signature(pattern: GZPattern) -> tuple[int, ...]:
    """Row sums (s_1, ..., s_n); equal signatures give equal energies for every coupling."""
    return tuple(sum(pattern.row(j)) for j in range(1, pattern.n + 1))


def enumerate_gz(n: int, p: float, k_max: int) -> list[GZPattern]:
    """All patterns with top-row weight at most k_max.

    Top rows run over heights 0..k_max, partitions in
    reverse-lexicographic order; lower rows are filled depth-first with
    entries descending. The count at each height equals
    multiplicity_at_height(n, p, k).
    """
    if not is_unirrep(n, p):
        raise UnirrepError(
            f"V(p) of osp(1|{2 * n}) needs p in {{1..{n - 1}}} or p > {n - 1}; got p = {p}")
    if k_max < 0:
        raise ValueError("k_max must be non-negative")

    def fill(stack: list[tuple[int, ...]]):
        cur = stack[-1]
        if len(cur) == 1:
            yield GZPattern(rows=tuple(stack), n=n, p=p)
            return
        spans = [range(cur[i], cur[i + 1] - 1, -1) for i in range(len(cur) - 1)]
        for lower in product(*spans):
            stack.append(lower)
            yield from fill(stack)
            stack.pop()

    out: list[GZPattern] = []
    for k in range(k_max + 1):
        for nu in partitions_of(k, math.ceil(p), max_slots=n):
            top = nu.parts + (0,) * (n - nu.length)
            out.extend(fill([top]))
    return out


def osp_eigenvalue(pattern: GZPattern, freqs: ModeFrequencies, p: float) -> float:
    """Energy (units of hbar): sum_j sqrt(mu_j) (p/2 + s_j - s_{j-1})."""
    if pattern.n != freqs.n:
        raise ValueError("pattern size and mode count disagree")
    sig = row_sum_signature(pattern)
    return _signature_energy(sig, freqs, p)


def _signature_energy(sig: tuple[int, ...], freqs: ModeFrequencies, p: float) -> float:
    total = 0.0
    prev = 0
    for j, s in enumerate(sig):
        total += freqs.sqrt_mu[j] * (p / 2.0 + (s - prev))
        prev = s
    return total


def osp_spectrum(n: int, p: float, freqs: ModeFrequencies, k_max: int,
                 merge_tol: float = 1e-9) -> list[SpectrumLine]:
    """Spectrum lines up to top-row weight k_max, sorted ascending.

    Multiplicities come from exact row-sum-signature grouping (so they
    are correct even when two energies are numerically close);
    ``merge_tol`` additionally merges lines whose energies cross at
    special couplings. Line labels are (height, signature, pattern) with
    the first pattern of the class in enumeration order.
    """
    if freqs.n != n:
        raise ValueError("mode count disagrees with n")
    classes: dict[tuple[int, ...], tuple[int, GZPattern]] = {}
    for pattern in enumerate_gz(n, p, k_max):
        sig = row_sum_signature(pattern)
        count, rep = classes.get(sig, (0, pattern))
        classes[sig] = (count + 1, rep)
    raw = [(_signature_energy(sig, freqs, p), count, (rep.height, sig, rep))
           for sig, (count, rep) in classes.items()]
    return merge_lines(raw, merge_tol)


def distinct_count_at_height(n: int, k: int) -> int:
    """Distinct energies at height k for generic coupling: C(n+k-1, n-1)."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    return math.comb(n + k - 1, n - 1)


def osp_lines_to_csv(lines: list[SpectrumLine], n: int) -> str:
    """CSV export: energy, multiplicity, height, then the class row-sum signature."""
    header = "energy,multiplicity,height," + ",".join(f"s_{j}" for j in range(1, n + 1))
    rows = [header]
    for line in lines:
        height, sig, _ = line.label
        rows.append(f"{line.energy!r},{line.multiplicity},{height},"
                    + ",".join(str(s) for s in sig))
    return "\n".join(rows) + "\n"


def osp_lines_to_json(lines: list[SpectrumLine]) -> str:
    payload = []
    for line in lines:
        height, sig, rep = line.label
        payload.append({"energy": line.energy, "multiplicity": line.multiplicity,
                        "height": height, "signature": list(sig),
                        "pattern": [list(row) for row in rep.rows]})
    return json.dumps(payload, indent=2) + "\n"
