"""Presentation of the geometric-fixed-point coefficient ring, its closed-form
Poincare series, and the three-way check presentation / oracle / closed form.

The presentation is generated by one even/odd pair per line; a zero-sum
character triple a+b+c = 0 on three distinct lines contributes one relation
of each flavor (even triple, three cyclic mixed variants, odd triple), with
scalar coefficients obtained by rewriting characters through the canonical
line reps: t over k*chi is 1/k times the line generator, u over k*chi is the
line generator on the nose.

Verbatim mode skips the line rewrite and keeps one generator pair per raw
character, with the scalar identifications t_chi = k*t_(k*chi) as explicit
relations and nothing identifying the u's; it exists to document how that
ideal diverges from both the oracle and the closed form (weight 1 already
has one dimension per character instead of one per line).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb

from .charspace import (
    Character,
    GroupContext,
    canonicalize,
    enumerate_characters,
    enumerate_lines,
    inverse_mod_p,
    zero_sum_triples,
)
from .oracle import subring_hilbert
from .superalg import Presentation, SuperElement, SuperMonomial, quotient_dimension


@dataclass(frozen=True)
class HilbertSeries:
    coeffs: tuple[int, ...]
    source: str

    def __post_init__(self):
        if self.coeffs and self.coeffs[0] != 1:
            raise ValueError("a unital ring has dimension 1 in weight 0")


def _t(p: int, key, scale_inv: int = 1) -> SuperElement:
    return SuperElement.from_monomial(p, SuperMonomial.t(key), scale_inv)


def _u(p: int, key) -> SuperElement:
    return SuperElement.from_monomial(p, SuperMonomial.u(key))


def relation_families(
    triple: tuple[Character, Character, Character],
    ctx: GroupContext,
    rewrite_to_lines: bool = True,
) -> list[SuperElement]:
    """The five relations attached to one zero-sum character triple: the even
    triple, the three cyclic mixed variants, and the odd triple.

    With rewrite_to_lines the generators are the canonical lines and scalars
    move into coefficients; otherwise the raw characters are the keys.
    Identically-zero instantiations (every collinear triple rewrites to 0)
    are filtered out by the caller.
    """
    p = ctx.p
    if any(sum(cs) % p for cs in zip(*(chi.coords for chi in triple))):
        raise ValueError("characters must sum to zero")
    if rewrite_to_lines:
        keys = []
        t_coeffs = []
        for chi in triple:
            line, scale = canonicalize(chi, ctx)
            keys.append(line)
            t_coeffs.append(inverse_mod_p(scale, p))
    else:
        keys = list(triple)
        t_coeffs = [1, 1, 1]

    def t(i):
        return _t(p, keys[i], t_coeffs[i])

    def u(i):
        return _u(p, keys[i])

    rels = [t(0) * t(1) + t(1) * t(2) + t(2) * t(0)]
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        rels.append(u(i) * t(j) + u(i) * t(k) - u(j) * t(k) - u(k) * t(j))
    rels.append(u(0) * u(1) + u(1) * u(2) + u(2) * u(0))
    return rels


def line_presentation(ctx: GroupContext, lines) -> Presentation:
    """Presentation on the given lines whose relations are exactly the
    triple families instantiated on zero-sum triples inside the set."""
    lines = tuple(sorted(set(lines)))
    relations = []
    for l1, l2, l3, a, b, c in zero_sum_triples(lines, ctx):
        triple = (
            l1.rep.scaled(a, ctx.p),
            l2.rep.scaled(b, ctx.p),
            l3.rep.scaled(c, ctx.p),
        )
        for rel in relation_families(triple, ctx, rewrite_to_lines=True):
            if not rel.is_zero():
                relations.append(rel)
    return Presentation(ctx, lines, tuple(relations))


def character_zero_sum_triples(ctx: GroupContext) -> list[tuple[Character, Character, Character]]:
    """All unordered triples of nonzero characters summing to zero,
    collinear ones included."""
    chars = list(enumerate_characters(ctx))
    seen = set()
    out = []
    for alpha in chars:
        for beta in chars:
            gamma_coords = tuple((-a - b) % ctx.p for a, b in zip(alpha.coords, beta.coords))
            if not any(gamma_coords):
                continue
            gamma = Character(gamma_coords)
            key = tuple(sorted((alpha, beta, gamma)))
            if key in seen:
                continue
            seen.add(key)
            out.append(key)
    return out


def verbatim_presentation(ctx: GroupContext) -> Presentation:
    """One generator pair per raw character; relations are the literal four
    families: scalar identifications of the t's and the three triple flavors
    over every zero-sum character triple."""
    p = ctx.p
    chars = tuple(enumerate_characters(ctx))
    relations = []
    for chi in chars:
        for k in range(2, p):
            rel = _t(p, chi) - _t(p, chi.scaled(k, p), k)
            if not rel.is_zero():
                relations.append(rel)
    for triple in character_zero_sum_triples(ctx):
        for rel in relation_families(triple, ctx, rewrite_to_lines=False):
            if not rel.is_zero():
                relations.append(rel)
    return Presentation(ctx, chars, tuple(relations))


def build_phi_presentation(ctx: GroupContext, verbatim_mode: bool = False) -> Presentation:
    if verbatim_mode:
        return verbatim_presentation(ctx)
    return line_presentation(ctx, enumerate_lines(ctx))


def closed_form_series(ctx: GroupContext, cutoff: int) -> HilbertSeries:
    """Exact expansion of prod_{i=1..n} (1 + (p^(i-1)-1) x) / (1-x)^n."""
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    numerator = [1]
    for i in range(1, ctx.n + 1):
        c = ctx.p ** (i - 1) - 1
        numerator = [a + c * b for a, b in zip(numerator + [0], [0] + numerator)]
    coeffs = []
    for w in range(cutoff + 1):
        total = sum(
            numerator[j] * comb(w - j + ctx.n - 1, ctx.n - 1)
            for j in range(min(w, len(numerator) - 1) + 1)
        )
        coeffs.append(total)
    return HilbertSeries(tuple(coeffs), "closed-form")


@dataclass
class VerifyReport:
    ctx: GroupContext
    cutoff: int
    verbatim_mode: bool
    closed_form: tuple[int, ...]
    presentation: tuple[int, ...]
    oracle: tuple[int, ...]

    @property
    def equal(self) -> tuple[bool, ...]:
        return tuple(
            a == b == c
            for a, b, c in zip(self.closed_form, self.presentation, self.oracle)
        )

    @property
    def ok(self) -> bool:
        return all(self.equal)

    @property
    def mismatched_weights(self) -> tuple[int, ...]:
        return tuple(w for w, good in enumerate(self.equal) if not good)


def verify_phi(
    ctx: GroupContext, cutoff: int, verbatim_mode: bool = False, workers: int = 1
) -> VerifyReport:
    """Three-way comparison closed form / presentation / oracle up to the
    cutoff.  Every relation vanishes in the oracle, so the oracle dimension
    can never exceed the presentation dimension; that inequality is asserted
    unconditionally, and weightwise equality of all three tables certifies
    the presentation through the cutoff.
    """
    closed = closed_form_series(ctx, cutoff).coeffs
    pres = build_phi_presentation(ctx, verbatim_mode)
    oracle_table = subring_hilbert(enumerate_lines(ctx), cutoff, ctx)

    def pres_dim(w: int) -> int:
        return quotient_dimension(pres, w)

    weights = range(cutoff + 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            pres_dims = tuple(pool.map(pres_dim, weights))
    else:
        pres_dims = tuple(pres_dim(w) for w in weights)
    oracle_dims = tuple(oracle_table.entries[w] for w in weights)
    for w in weights:
        assert oracle_dims[w] <= pres_dims[w], (
            "oracle dimension exceeds presentation dimension at weight %d" % w
        )
    return VerifyReport(ctx, cutoff, verbatim_mode, closed, pres_dims, oracle_dims)
