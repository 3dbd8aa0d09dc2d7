"""Characters of G = (Z/p)^n, their scalar classes, and the combinatorics
built on them: echelon subsets, zero-sum triples, and counts of subsets by
rank.

A character is a vector in F_p^n; nonzero characters cut out the maximal
subgroups ker(chi).  Two characters cut out the same subgroup iff they are
proportional, and each scalar class has a unique representative whose last
nonzero coordinate is 1.  That representative is the canonical name used
for generator indexing throughout the package, and lines are globally
ordered lexicographically on it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True, order=True)
class GroupContext:
    p: int
    n: int

    def __post_init__(self):
        if not is_odd_prime(self.p):
            raise ValueError("p must be an odd prime, got %r" % (self.p,))
        if self.n < 1:
            raise ValueError("n must be >= 1, got %r" % (self.n,))

    @property
    def num_characters(self) -> int:
        """Size of the arrangement: all nonzero characters."""
        return self.p**self.n - 1

    @property
    def num_lines(self) -> int:
        return (self.p**self.n - 1) // (self.p - 1)


@dataclass(frozen=True, order=True)
class Character:
    """A nonzero vector of F_p^n, coordinates stored reduced mod p."""

    coords: tuple[int, ...]

    def __post_init__(self):
        if not any(self.coords):
            raise ValueError("zero character")

    def __str__(self):
        return "(%s)" % ",".join(str(c) for c in self.coords)

    def pivot(self) -> int:
        """Index of the last nonzero coordinate."""
        for i in range(len(self.coords) - 1, -1, -1):
            if self.coords[i]:
                return i
        raise AssertionError("unreachable for a nonzero character")

    def scaled(self, k: int, p: int) -> "Character":
        return Character(tuple((k * c) % p for c in self.coords))


@dataclass(frozen=True, order=True)
class Line:
    """A scalar class of characters, named by the rep whose last nonzero
    coordinate is 1."""

    rep: Character

    def __post_init__(self):
        if self.rep.coords[self.rep.pivot()] != 1:
            raise ValueError("line rep must have last nonzero coordinate 1: %s" % self.rep)

    def __str__(self):
        return str(self.rep)


def canonicalize(chi: Character, ctx: GroupContext) -> tuple[Line, int]:
    """Split chi into (line, scale) with chi = scale * line.rep mod p."""
    scale = chi.coords[chi.pivot()] % ctx.p
    rep = chi.scaled(inverse_mod_p(scale, ctx.p), ctx.p)
    return Line(rep), scale


def inverse_mod_p(a: int, p: int) -> int:
    return pow(a % p, -1, p)


def line_of(chi: Character, ctx: GroupContext) -> Line:
    return canonicalize(chi, ctx)[0]


def enumerate_characters(ctx: GroupContext):
    """All nonzero characters, in lexicographic order."""
    for coords in itertools.product(range(ctx.p), repeat=ctx.n):
        if any(coords):
            yield Character(coords)


@lru_cache(maxsize=None)
def enumerate_lines(ctx: GroupContext) -> tuple[Line, ...]:
    """All (p^n-1)/(p-1) lines, sorted by the global (lexicographic) order."""
    reps = sorted({canonicalize(chi, ctx)[0] for chi in enumerate_characters(ctx)})
    assert len(reps) == ctx.num_lines
    return tuple(reps)


@dataclass(frozen=True, order=True)
class EchelonSubset:
    """An independent set of canonical reps with strictly increasing pivots."""

    elems: tuple[Character, ...]

    def __post_init__(self):
        pivots = [chi.pivot() for chi in self.elems]
        if any(a >= b for a, b in zip(pivots, pivots[1:])):
            raise ValueError("pivot columns must strictly increase")
        if any(chi.coords[piv] != 1 for chi, piv in zip(self.elems, pivots)):
            raise ValueError("elements must be canonical line reps")

    @property
    def size(self) -> int:
        return len(self.elems)

    def __str__(self):
        return "{%s}" % ";".join(str(chi) for chi in self.elems)


def is_echelon(chars: frozenset[Character] | set[Character] | tuple[Character, ...],
               ctx: GroupContext) -> bool:
    """Echelon test w.r.t. the reversed column order: pivots (= last nonzero
    coordinates) pairwise distinct and every element canonical.

    Distinct trailing pivots force linear independence, so no rank
    computation is needed.
    """
    chars = tuple(chars)
    pivots = set()
    for chi in chars:
        if chi.coords[chi.pivot()] % ctx.p != 1:
            return False
        if chi.pivot() in pivots:
            return False
        pivots.add(chi.pivot())
    return True


def _pad(chi: Character, n: int) -> Character:
    return Character(chi.coords + (0,) * (n - len(chi.coords)))


@lru_cache(maxsize=None)
def enumerate_Fn(ctx: GroupContext) -> tuple[EchelonSubset, ...]:
    """The recursive family of echelon subsets.

    Rank 1 contributes the empty set and the single line; passing from rank
    m-1 to m keeps everything (characters padded with a trailing 0) and adds
    S u {x} for each old member S and each x in (Z/p)^(m-1) x {1}.
    The output has size prod_{i=1..n} (1 + p^(i-1)).
    """
    p, n = ctx.p, ctx.n
    family: list[tuple[Character, ...]] = [(), (Character((1,)),)]
    for m in range(2, n + 1):
        padded = [tuple(_pad(chi, m) for chi in s) for s in family]
        new = []
        for s in padded:
            for head in itertools.product(range(p), repeat=m - 1):
                x = Character(head + (1,))
                new.append(s + (x,))
        family = padded + new
    out = tuple(EchelonSubset(tuple(_pad(chi, n) for chi in s)) for s in family)
    expected = 1
    for i in range(1, n + 1):
        expected *= 1 + p ** (i - 1)
    assert len(out) == expected
    return out


def rank_of(chars, ctx: GroupContext) -> int:
    """Rank over F_p of a collection of characters (row reduction)."""
    rows = [list(chi.coords) for chi in chars]
    p = ctx.p
    rank = 0
    for col in range(ctx.n):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = inverse_mod_p(rows[rank][col], p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col] % p
                rows[i] = [(v - f * w) % p for v, w in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def zero_sum_triples(lines, ctx: GroupContext):
    """All unordered triples of distinct lines admitting a zero-sum of
    nonzero multiples of their reps.

    Returns (L1, L2, L3, a, b, c) with L1 < L2 < L3 in the global order,
    a*L1.rep + b*L2.rep + c*L3.rep = 0 and c = 1.  A triple of distinct
    lines qualifies iff its reps span rank 2, in which case the scalar
    solution is unique up to global scaling; both facts are asserted.
    """
    lines = sorted(lines)
    if len(lines) != len(set(lines)):
        raise ValueError("lines must be pairwise distinct")
    p = ctx.p
    out = []
    for l1, l2, l3 in itertools.combinations(lines, 3):
        sol = _solve_zero_sum(l1.rep, l2.rep, l3.rep, p)
        if sol is None:
            assert rank_of([l1.rep, l2.rep, l3.rep], ctx) == 3
            continue
        assert rank_of([l1.rep, l2.rep, l3.rep], ctx) == 2
        out.append((l1, l2, l3) + sol)
    return out


def _solve_zero_sum(r1: Character, r2: Character, r3: Character, p: int):
    """Nonzero (a, b, c) with a*r1 + b*r2 + c*r3 = 0 and c = 1, or None.

    With c pinned to 1 the system is a*r1 + b*r2 = -r3; reps of distinct
    lines are independent, so the solution is unique when it exists.
    """
    n = len(r1.coords)
    target = [(-v) % p for v in r3.coords]
    sol = None
    for a in range(1, p):
        for b in range(1, p):
            if all((a * r1.coords[i] + b * r2.coords[i]) % p == target[i] for i in range(n)):
                assert sol is None, "kernel of a rank-2 triple must be 1-dimensional"
                sol = (a, b, 1)
    return sol


@lru_cache(maxsize=None)
def subset_rank_count(ctx: GroupContext, s: int, r: int) -> int:
    """Number of cardinality-s subsets of the nonzero characters whose span
    has dimension r, by the exact recurrence

        s*c(s,r) = c(s-1,r)*(p^r - 1 - (s-1)) + c(s-1,r-1)*(p^n - p^(r-1)).
    """
    if s < 0 or r < 0 or r > s or r > ctx.n:
        return 0
    if s > ctx.num_characters:
        return 0
    if s == 0:
        return 1 if r == 0 else 0
    p, n = ctx.p, ctx.n
    total = subset_rank_count(ctx, s - 1, r) * (p**r - 1 - (s - 1))
    if r >= 1:
        total += subset_rank_count(ctx, s - 1, r - 1) * (p**n - p ** (r - 1))
    assert total % s == 0
    return total // s


def subset_rank_count_bruteforce(ctx: GroupContext, s: int, r: int) -> int:
    """Reference enumeration; only sensible when C(p^n - 1, s) is small."""
    if comb(ctx.num_characters, s) > 10**5:
        raise ValueError("universe too large for brute force")
    chars = list(enumerate_characters(ctx))
    return sum(1 for sub in itertools.combinations(chars, s) if rank_of(sub, ctx) == r)
