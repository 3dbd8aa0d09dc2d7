"""Free graded-commutative F_p-algebra on even/odd generator pairs and
degreewise quotient dimensions.

Each generator key (a line, or a raw character in verbatim presentations)
carries an even generator t of weight 2 and an odd generator u of weight 1.
Monomials are normalized: t-exponents as a sorted mapping, the odd part as a
strictly increasing key tuple, with Koszul signs picked up when odd factors
are merged.  Quotient dimensions of homogeneous ideals are computed one
weight at a time by row reduction of the Macaulay matrix, never by a Groebner
basis: the ideal is homogeneous, so the weight-w truncation is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .charspace import GroupContext
from .modp import RowReducer


def merge_odd(a: tuple, b: tuple) -> tuple[int, tuple | None]:
    """Merge two sorted odd-key tuples, counting transpositions.

    Returns (sign, merged) with sign in {+1, -1}, or (0, None) when a key
    repeats (odd generators square to zero).
    """
    if not a:
        return 1, b
    if not b:
        return 1, a
    if set(a) & set(b):
        return 0, None
    merged = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] < b[j]:
            merged.append(a[i])
            i += 1
        else:
            merged.append(b[j])
            if (len(a) - i) % 2:
                sign = -sign
            j += 1
    merged.extend(a[i:])
    merged.extend(b[j:])
    return sign, tuple(merged)


@dataclass(frozen=True, order=True)
class SuperMonomial:
    """Normalized monomial: t_exp sorted by key with positive exponents,
    u_set strictly increasing."""

    t_exp: tuple[tuple, ...] = ()
    u_set: tuple = ()

    def __post_init__(self):
        keys = [k for k, _ in self.t_exp]
        if keys != sorted(keys) or any(e <= 0 for _, e in self.t_exp):
            raise ValueError("t exponents must be sorted by key and positive")
        if any(a >= b for a, b in zip(self.u_set, self.u_set[1:])):
            raise ValueError("odd part must be strictly increasing")

    @staticmethod
    def one() -> "SuperMonomial":
        return SuperMonomial()

    @staticmethod
    def t(key, e: int = 1) -> "SuperMonomial":
        if e < 0:
            raise ValueError("negative exponent")
        return SuperMonomial(((key, e),) if e else (), ())

    @staticmethod
    def u(key) -> "SuperMonomial":
        return SuperMonomial((), (key,))

    @property
    def weight(self) -> int:
        return 2 * sum(e for _, e in self.t_exp) + len(self.u_set)

    @property
    def odd_degree(self) -> int:
        return len(self.u_set)

    def keys(self) -> set:
        return {k for k, _ in self.t_exp} | set(self.u_set)

    def mul(self, other: "SuperMonomial") -> tuple[int, "SuperMonomial | None"]:
        sign, u = merge_odd(self.u_set, other.u_set)
        if sign == 0:
            return 0, None
        te = dict(self.t_exp)
        for k, e in other.t_exp:
            te[k] = te.get(k, 0) + e
        return sign, SuperMonomial(tuple(sorted(te.items())), u)

    def __str__(self):
        if not self.t_exp and not self.u_set:
            return "1"
        parts = ["t%s^%d" % (k, e) if e > 1 else "t%s" % (k,) for k, e in self.t_exp]
        parts += ["u%s" % (k,) for k in self.u_set]
        return "*".join(parts)


class SuperElement:
    """F_p-linear combination of monomials; zero coefficients never stored."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int, terms: dict[SuperMonomial, int] | None = None):
        self.p = p
        self.terms: dict[SuperMonomial, int] = {}
        if terms:
            for m, c in terms.items():
                c %= p
                if c:
                    self.terms[m] = c

    @staticmethod
    def zero(p: int) -> "SuperElement":
        return SuperElement(p)

    @staticmethod
    def from_monomial(p: int, m: SuperMonomial, c: int = 1) -> "SuperElement":
        return SuperElement(p, {m: c})

    def is_zero(self) -> bool:
        return not self.terms

    def weight(self) -> int | None:
        """Common weight of all terms; None for 0, ValueError if mixed."""
        ws = {m.weight for m in self.terms}
        if not ws:
            return None
        if len(ws) > 1:
            raise ValueError("inhomogeneous element, weights %s" % sorted(ws))
        return ws.pop()

    def odd_degree(self) -> int | None:
        ds = {m.odd_degree for m in self.terms}
        if not ds:
            return None
        if len(ds) > 1:
            raise ValueError("mixed odd degree")
        return ds.pop()

    def __add__(self, other: "SuperElement") -> "SuperElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % self.p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return SuperElement(self.p, out)

    def __neg__(self) -> "SuperElement":
        return SuperElement(self.p, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "SuperElement") -> "SuperElement":
        return self + (-other)

    def scale(self, k: int) -> "SuperElement":
        return SuperElement(self.p, {m: c * k for m, c in self.terms.items()})

    def __mul__(self, other: "SuperElement") -> "SuperElement":
        out: dict[SuperMonomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, m = m1.mul(m2)
                if sign == 0:
                    continue
                v = (out.get(m, 0) + sign * c1 * c2) % self.p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return SuperElement(self.p, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, SuperElement) and self.p == other.p and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("%d*%s" % (c, m) for m, c in sorted(self.terms.items()))


@dataclass(frozen=True)
class Presentation:
    """An arrangement of generator keys plus homogeneous relations."""

    ctx: GroupContext
    gens: tuple
    relations: tuple[SuperElement, ...] = ()

    def __post_init__(self):
        gen_set = set(self.gens)
        for rel in self.relations:
            rel.weight()  # raises on inhomogeneous input
            if rel.is_zero():
                raise ValueError("zero relation carries no information; drop it")
            for m in rel.terms:
                if not m.keys() <= gen_set:
                    raise ValueError("relation uses a generator outside the arrangement")


def _monomial_sort_key(gens: Sequence):
    index = {g: i for i, g in enumerate(gens)}

    def key(m: SuperMonomial):
        u_ix = tuple(index[k] for k in m.u_set)
        t_vec = [0] * len(gens)
        for k, e in m.t_exp:
            t_vec[index[k]] = e
        return (len(m.u_set), u_ix, tuple(t_vec))

    return key


def free_monomials(gens: Sequence, weight: int) -> list[SuperMonomial]:
    """All monomials of exact weight on the given ordered generator keys,
    in the fixed order: odd length ascending, then odd part, then t-vector."""
    if weight < 0:
        raise ValueError("weight must be >= 0")
    gens = tuple(gens)
    out = []
    for j in range(min(len(gens), weight), -1, -1):
        if (weight - j) % 2:
            continue
        tdeg = (weight - j) // 2
        for u_keys in itertools.combinations(gens, j):
            for t_vec in _compositions(tdeg, len(gens)):
                t_exp = tuple((g, e) for g, e in zip(gens, t_vec) if e)
                out.append(SuperMonomial(t_exp, u_keys))
    out.sort(key=_monomial_sort_key(gens))
    return out


def _compositions(total: int, parts: int):
    """All nonnegative integer vectors of given length and sum, lex order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def free_monomial_count(num_gens: int, weight: int) -> int:
    """Closed-form count of free_monomials output."""
    if num_gens == 0:
        return 1 if weight == 0 else 0
    total = 0
    for j in range(min(num_gens, weight) + 1):
        if (weight - j) % 2:
            continue
        tdeg = (weight - j) // 2
        total += comb(num_gens, j) * comb(tdeg + num_gens - 1, num_gens - 1)
    return total


@dataclass
class _QuotientData:
    dimension: int
    basis: tuple[SuperMonomial, ...]


def _quotient_data(pres: Presentation, weight: int) -> _QuotientData:
    p = pres.ctx.p
    basis = free_monomials(pres.gens, weight)
    col_of = {m: i for i, m in enumerate(basis)}
    red = RowReducer(len(basis), p)
    shifts: dict[int, list[SuperMonomial]] = {}
    for rel in pres.relations:
        w_rel = rel.weight()
        if w_rel is None or w_rel > weight:
            continue
        if weight - w_rel not in shifts:
            shifts[weight - w_rel] = free_monomials(pres.gens, weight - w_rel)
        for m in shifts[weight - w_rel]:
            shifted = rel * SuperElement.from_monomial(p, m)
            if shifted.is_zero():
                continue
            red.add_row((col_of[mono], c) for mono, c in shifted.terms.items())
    pivots = set(red.pivot_columns)
    kept = tuple(m for i, m in enumerate(basis) if i not in pivots)
    return _QuotientData(len(basis) - red.rank, kept)


def quotient_dimension(pres: Presentation, weight: int) -> int:
    """dim over F_p of (free algebra / ideal) in the given weight."""
    return _quotient_data(pres, weight).dimension


def monomial_basis(pres: Presentation, weight: int) -> tuple[SuperMonomial, ...]:
    """Monomials spanning the quotient: the pivot-free columns of the
    eliminated Macaulay matrix, in the fixed monomial order."""
    return _quotient_data(pres, weight).basis
