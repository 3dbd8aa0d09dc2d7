"""The localized Borel-coefficient ring: the independent ground truth.

Coefficients of the Borel theory form F_p[x_1..x_n] tensor an exterior
algebra on dx_1..dx_n; inverting the Euler classes z_chi (the nonzero linear
forms in the x_i) yields the ring every presentation is checked against.
The even/odd generator pair attached to a line embeds as

    t = 1/z,    u = dz/z,

and all equality and rank questions are settled on cleared numerators: the
z's are nonzero divisors, so multiplying up to a common denominator is
faithful and no fraction normal form is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .charspace import Character, GroupContext, Line, canonicalize, inverse_mod_p
from .modp import RowReducer
from .superalg import SuperElement, SuperMonomial, free_monomials, merge_odd

XKey = tuple[int, ...]
DxKey = tuple[int, ...]


class PolyExtElement:
    """Element of F_p[x_1..x_n] tensor Lambda[dx_1..dx_n], sparse terms
    keyed by (x-exponent vector, sorted dx index tuple)."""

    __slots__ = ("p", "n", "terms")

    def __init__(self, p: int, n: int, terms: dict[tuple[XKey, DxKey], int] | None = None):
        self.p = p
        self.n = n
        self.terms: dict[tuple[XKey, DxKey], int] = {}
        if terms:
            for key, c in terms.items():
                c %= p
                if c:
                    self.terms[key] = c

    @staticmethod
    def zero(p: int, n: int) -> "PolyExtElement":
        return PolyExtElement(p, n)

    @staticmethod
    def one(p: int, n: int) -> "PolyExtElement":
        return PolyExtElement(p, n, {((0,) * n, ()): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "PolyExtElement") -> "PolyExtElement":
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = (out.get(key, 0) + c) % self.p
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return PolyExtElement(self.p, self.n, out)

    def __neg__(self) -> "PolyExtElement":
        return PolyExtElement(self.p, self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "PolyExtElement") -> "PolyExtElement":
        return self + (-other)

    def scale(self, k: int) -> "PolyExtElement":
        return PolyExtElement(self.p, self.n, {key: c * k for key, c in self.terms.items()})

    def __mul__(self, other: "PolyExtElement") -> "PolyExtElement":
        out: dict[tuple[XKey, DxKey], int] = {}
        for (xa, da), ca in self.terms.items():
            for (xb, db), cb in other.terms.items():
                sign, dm = merge_odd(da, db)
                if sign == 0:
                    continue
                xm = tuple(a + b for a, b in zip(xa, xb))
                v = (out.get((xm, dm), 0) + sign * ca * cb) % self.p
                if v:
                    out[(xm, dm)] = v
                else:
                    out.pop((xm, dm), None)
        return PolyExtElement(self.p, self.n, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyExtElement)
            and (self.p, self.n) == (other.p, other.n)
            and self.terms == other.terms
        )

    def bidegrees(self) -> set[tuple[int, int]]:
        """(polynomial degree, dx count) pairs present."""
        return {(sum(x), len(d)) for x, d in self.terms}

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for (x, d), c in sorted(self.terms.items()):
            xs = "".join("*x%d^%d" % (i + 1, e) for i, e in enumerate(x) if e)
            ds = "".join("*dx%d" % (i + 1) for i in d)
            bits.append("%d%s%s" % (c, xs, ds))
        return " + ".join(bits)


def euler_class(chi: Character | Line, ctx: GroupContext) -> PolyExtElement:
    """The linear form z = sum_i coords_i * x_i attached to a character."""
    coords = chi.rep.coords if isinstance(chi, Line) else chi.coords
    terms = {}
    for i, c in enumerate(coords):
        if c % ctx.p:
            xexp = tuple(1 if j == i else 0 for j in range(ctx.n))
            terms[(xexp, ())] = c
    return PolyExtElement(ctx.p, ctx.n, terms)


def d_euler_class(chi: Character | Line, ctx: GroupContext) -> PolyExtElement:
    """dz = sum_i coords_i * dx_i."""
    coords = chi.rep.coords if isinstance(chi, Line) else chi.coords
    terms = {}
    zero = (0,) * ctx.n
    for i, c in enumerate(coords):
        if c % ctx.p:
            terms[(zero, (i,))] = c
    return PolyExtElement(ctx.p, ctx.n, terms)


@dataclass
class LocalizedBorelElement:
    """A fraction numerator / prod_L z_L^denom_exp[L]."""

    numerator: PolyExtElement
    denom_exp: dict[Line, int] = field(default_factory=dict)

    def __post_init__(self):
        self.denom_exp = {L: e for L, e in self.denom_exp.items() if e}

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def scale(self, k: int) -> "LocalizedBorelElement":
        return LocalizedBorelElement(self.numerator.scale(k), dict(self.denom_exp))

    def __mul__(self, other: "LocalizedBorelElement") -> "LocalizedBorelElement":
        denom = dict(self.denom_exp)
        for L, e in other.denom_exp.items():
            denom[L] = denom.get(L, 0) + e
        return LocalizedBorelElement(self.numerator * other.numerator, denom)

    def __add__(self, other: "LocalizedBorelElement") -> "LocalizedBorelElement":
        n1, n2, denom, ctx = _on_common_denominator(self, other)
        return LocalizedBorelElement(n1 + n2, denom)

    def __sub__(self, other: "LocalizedBorelElement") -> "LocalizedBorelElement":
        return self + other.scale(-1)

    def equals(self, other: "LocalizedBorelElement") -> bool:
        """Equality after cross-multiplication; faithful since every z_L is
        a nonzero divisor."""
        n1, n2, _, _ = _on_common_denominator(self, other)
        return n1 == n2


def _ctx_of(num: PolyExtElement) -> GroupContext:
    return GroupContext(num.p, num.n)


def _on_common_denominator(a: LocalizedBorelElement, b: LocalizedBorelElement):
    ctx = _ctx_of(a.numerator)
    lines = sorted(set(a.denom_exp) | set(b.denom_exp))
    denom = {L: max(a.denom_exp.get(L, 0), b.denom_exp.get(L, 0)) for L in lines}
    na, nb = a.numerator, b.numerator
    for L in lines:
        for _ in range(denom[L] - a.denom_exp.get(L, 0)):
            na = na * euler_class(L, ctx)
        for _ in range(denom[L] - b.denom_exp.get(L, 0)):
            nb = nb * euler_class(L, ctx)
    return na, nb, denom, ctx


def embed(m: SuperMonomial, ctx: GroupContext) -> LocalizedBorelElement:
    """Image of a monomial: t -> 1/z, u -> dz/z, with scalars rewritten into
    the numerator when keys are raw characters (z of k*chi is k times z of
    chi, so t over k*chi is 1/k times t over chi, and u is unchanged)."""
    coeff = 1
    denom: dict[Line, int] = {}
    num = PolyExtElement.one(ctx.p, ctx.n)
    for key, e in m.t_exp:
        line, scale = _line_scale(key, ctx)
        coeff = coeff * pow(inverse_mod_p(scale, ctx.p), e, ctx.p) % ctx.p
        denom[line] = denom.get(line, 0) + e
    for key in m.u_set:
        line, _ = _line_scale(key, ctx)
        num = num * d_euler_class(line, ctx)
        denom[line] = denom.get(line, 0) + 1
    return LocalizedBorelElement(num.scale(coeff), denom)


def _line_scale(key, ctx: GroupContext) -> tuple[Line, int]:
    if isinstance(key, Line):
        return key, 1
    if isinstance(key, Character):
        return canonicalize(key, ctx)
    raise TypeError("generator key must be a Line or Character, got %r" % (key,))


def relation_image(rel: SuperElement, ctx: GroupContext) -> LocalizedBorelElement:
    """Linear extension of embed; instantiated relations of a sound
    presentation land on exactly 0 after clearing denominators."""
    acc = LocalizedBorelElement(PolyExtElement.zero(ctx.p, ctx.n), {})
    for m, c in sorted(rel.terms.items()):
        acc = acc + embed(m, ctx).scale(c)
    return acc


def span_rank(ms: Sequence[SuperMonomial], weight: int, ctx: GroupContext) -> int:
    """Rank over F_p of the embedded monomials, all of the given weight.

    All images are cleared to the componentwise-max common denominator and
    expanded over the polynomial-exterior monomials that actually occur; the
    numerator bidegrees are forced by the weight and the cleared denominator,
    so no basis bookkeeping is exposed.
    """
    for m in ms:
        if m.weight != weight:
            raise ValueError("monomial %s has weight %d, expected %d" % (m, m.weight, weight))
    if not ms:
        return 0
    images = [embed(m, ctx) for m in ms]
    cleared = _cleared_numerators(images, ctx)
    cols = sorted({key for num in cleared for key in num.terms})
    col_of = {key: i for i, key in enumerate(cols)}
    red = RowReducer(len(cols), ctx.p)
    for num in cleared:
        red.add_row((col_of[key], c) for key, c in num.terms.items())
    return red.rank


def _cleared_numerators(
    images: Sequence[LocalizedBorelElement], ctx: GroupContext
) -> list[PolyExtElement]:
    """Numerators after clearing every image to the componentwise-max
    common denominator.

    Walking the complement-exponent vectors in sorted order with a stack of
    prefix products shares most z-multiplications between monomials.
    """
    lines = sorted({L for img in images for L in img.denom_exp})
    dmax = [max(img.denom_exp.get(L, 0) for img in images) for L in lines]
    comps = [
        tuple(dmax[i] - img.denom_exp.get(L, 0) for i, L in enumerate(lines))
        for img in images
    ]
    zpow: dict[tuple[int, int], PolyExtElement] = {}

    def z_power(i: int, e: int) -> PolyExtElement:
        if (i, e) not in zpow:
            if e == 0:
                zpow[(i, e)] = PolyExtElement.one(ctx.p, ctx.n)
            else:
                zpow[(i, e)] = euler_class(lines[i], ctx) * z_power(i, e - 1)
        return zpow[(i, e)]

    cleared: list[PolyExtElement | None] = [None] * len(images)
    stack = [PolyExtElement.one(ctx.p, ctx.n)]
    prev: tuple[int, ...] | None = None
    for idx in sorted(range(len(images)), key=lambda i: comps[i]):
        comp = comps[idx]
        shared = 0
        if prev is not None:
            while shared < len(comp) and comp[shared] == prev[shared]:
                shared += 1
        del stack[shared + 1 :]
        for j in range(shared, len(comp)):
            top = stack[-1]
            stack.append(top * z_power(j, comp[j]) if comp[j] else top)
        cleared[idx] = images[idx].numerator * stack[-1]
        prev = comp
    return cleared


@dataclass
class GradedDimensionTable:
    """Degree (or multidegree) -> dimension, tagged with where it came from."""

    entries: dict
    source: str

    def as_list(self, cutoff: int) -> list[int]:
        return [self.entries.get(w, 0) for w in range(cutoff + 1)]


def subring_hilbert(lines: Iterable[Line], cutoff: int, ctx: GroupContext) -> GradedDimensionTable:
    """Hilbert function, up to the cutoff, of the subring of the localized
    Borel ring generated by the t, u pairs of the given lines."""
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    gens = tuple(sorted(set(lines)))
    entries = {
        w: span_rank(free_monomials(gens, w), w, ctx) for w in range(cutoff + 1)
    }
    return GradedDimensionTable(entries, "oracle")
