import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from phiring.charspace import GroupContext, enumerate_lines
from phiring.modp import RowReducer
from phiring.phi import build_phi_presentation
from phiring.superalg import (
    Presentation,
    SuperElement,
    SuperMonomial,
    free_monomial_count,
    free_monomials,
    merge_odd,
    monomial_basis,
    quotient_dimension,
)

CTX32 = GroupContext(3, 2)
LINES32 = enumerate_lines(CTX32)


def u(line):
    return SuperMonomial.u(line)


def t(line, e=1):
    return SuperMonomial.t(line, e)


class TestMonomialProduct:
    def test_single_transposition_sign(self):
        l1, l2 = LINES32[0], LINES32[1]
        sign, m = u(l2).mul(u(l1))
        assert sign == -1
        assert m == SuperMonomial((), (l1, l2))

    def test_odd_square_is_zero(self):
        line = LINES32[0]
        assert u(line).mul(u(line)) == (0, None)

    def test_mixed_product_sign(self):
        l1, l2 = LINES32[0], LINES32[1]
        sign, m = (t(l1).mul(u(l1))[1]).mul(t(l2).mul(u(l2))[1])
        assert sign == 1
        assert m.t_exp == ((l1, 1), (l2, 1))
        assert m.u_set == (l1, l2)

    def test_merge_sign_matches_bubble_count(self):
        # independent oracle: count inversions directly
        rng = random.Random(11)
        for _ in range(300):
            pool = list(range(10))
            a = tuple(sorted(rng.sample(pool, rng.randint(0, 4))))
            b = tuple(sorted(rng.sample(pool, rng.randint(0, 4))))
            sign, merged = merge_odd(a, b)
            if set(a) & set(b):
                assert sign == 0
                continue
            inversions = sum(1 for x in a for y in b if y < x)
            assert sign == (-1) ** inversions
            assert merged == tuple(sorted(a + b))


def random_homogeneous(rng, p, lines, weight, odd):
    terms = {}
    for m in free_monomials(lines, weight):
        if m.odd_degree != odd:
            continue
        if rng.random() < 0.5:
            terms[m] = rng.randrange(1, p)
    return SuperElement(p, terms)


class TestElementAlgebra:
    def test_associativity_randomized(self):
        rng = random.Random(2024)
        for p in (3, 5):
            ctx = GroupContext(p, 2)
            lines = enumerate_lines(ctx)[:4]
            for _ in range(500):
                parts = []
                for _ in range(3):
                    w = rng.randint(0, 3)
                    odd = rng.choice([d for d in range(min(w, len(lines)) + 1) if (w - d) % 2 == 0])
                    parts.append(random_homogeneous(rng, p, lines, w, odd))
                a, b, c = parts
                assert (a * b) * c == a * (b * c)

    def test_sign_coherence_randomized(self):
        rng = random.Random(99)
        for p in (3, 5):
            ctx = GroupContext(p, 2)
            lines = enumerate_lines(ctx)[:4]
            for _ in range(500):
                wa, wb = rng.randint(0, 4), rng.randint(0, 4)
                da = rng.choice([d for d in range(min(wa, len(lines)) + 1) if (wa - d) % 2 == 0])
                db = rng.choice([d for d in range(min(wb, len(lines)) + 1) if (wb - d) % 2 == 0])
                a = random_homogeneous(rng, p, lines, wa, da)
                b = random_homogeneous(rng, p, lines, wb, db)
                lhs = a * b
                rhs = (b * a).scale((-1) ** (da * db))
                assert lhs == rhs

    def test_weight_of_mixed_element_raises(self):
        p = 3
        el = SuperElement(p, {t(LINES32[0]): 1, u(LINES32[0]): 1})
        with pytest.raises(ValueError):
            el.weight()

    def test_zero_handling(self):
        p = 3
        a = SuperElement.from_monomial(p, t(LINES32[0]))
        assert (a - a).is_zero()
        assert (a - a).weight() is None


class TestFreeMonomials:
    def test_four_lines_weight_one(self):
        ms = free_monomials(LINES32, 1)
        assert len(ms) == 4
        assert all(m.u_set and not m.t_exp for m in ms)

    def test_four_lines_weight_two(self):
        ms = free_monomials(LINES32, 2)
        assert len(ms) == 10
        assert sum(1 for m in ms if not m.u_set) == 4  # the t's
        assert sum(1 for m in ms if len(m.u_set) == 2) == 6  # the u-pairs

    def test_no_lines_weight_zero(self):
        assert free_monomials((), 0) == [SuperMonomial.one()]
        assert free_monomials((), 3) == []

    @pytest.mark.parametrize("nlines", [1, 2, 4])
    def test_count_formula(self, nlines):
        lines = LINES32[:nlines]
        for w in range(13):
            assert len(free_monomials(lines, w)) == free_monomial_count(nlines, w)

    @given(st.integers(0, 4), st.integers(0, 9))
    def test_count_formula_random(self, nlines, w):
        assert len(free_monomials(LINES32[:nlines], w)) == free_monomial_count(nlines, w)

    def test_deterministic_order(self):
        ms = free_monomials(LINES32, 3)
        assert ms == free_monomials(LINES32, 3)
        assert [m.odd_degree for m in ms] == sorted(m.odd_degree for m in ms)


def phi_pres():
    return build_phi_presentation(CTX32)


class TestQuotient:
    def test_no_relations_equals_free_count(self):
        pres = Presentation(CTX32, LINES32[:2])
        for w in range(13):
            assert quotient_dimension(pres, w) == free_monomial_count(2, w)

    def test_two_lines_weight_two(self):
        pres = Presentation(CTX32, LINES32[:2])
        assert quotient_dimension(pres, 2) == 3

    def test_phi_p3_n1_is_one_dimensional_everywhere(self):
        ctx = GroupContext(3, 1)
        pres = build_phi_presentation(ctx)
        for w in range(10):
            assert quotient_dimension(pres, w) == 1

    def test_phi_p3_n2_weight_two(self):
        assert quotient_dimension(phi_pres(), 2) == 7

    def test_monotone_in_relations(self):
        pres = phi_pres()
        dims = []
        for k in range(0, len(pres.relations) + 1, 4):
            partial = Presentation(CTX32, pres.gens, pres.relations[:k])
            dims.append(tuple(quotient_dimension(partial, w) for w in range(5)))
        for a, b in zip(dims, dims[1:]):
            assert all(x >= y for x, y in zip(a, b))

    def test_basis_no_relations(self):
        pres = Presentation(CTX32, LINES32)
        assert monomial_basis(pres, 3) == tuple(free_monomials(LINES32, 3))

    def test_phi_basis_weight_one(self):
        basis = monomial_basis(phi_pres(), 1)
        assert len(basis) == 4
        assert all(m.odd_degree == 1 for m in basis)

    def test_phi_basis_weight_two(self):
        # the four odd-triple relations span rank 3 in weight 2
        pres = phi_pres()
        basis = monomial_basis(pres, 2)
        assert len(basis) == 7
        weight2_rels = [r for r in pres.relations if r.weight() == 2]
        assert len(weight2_rels) == 4
        red = RowReducer(free_monomial_count(4, 2), 3)
        cols = {m: i for i, m in enumerate(free_monomials(LINES32, 2))}
        for rel in weight2_rels:
            red.add_row((cols[m], c) for m, c in rel.terms.items())
        assert red.rank == 3

    def test_basis_embeds_independently_in_the_oracle(self):
        # the kept monomials must stay independent as localized fractions
        from phiring.oracle import span_rank

        for ctx in (CTX32, GroupContext(5, 2)):
            pres = build_phi_presentation(ctx)
            for w in range(5):
                basis = monomial_basis(pres, w)
                assert span_rank(basis, w, ctx) == len(basis)
                assert len(basis) == quotient_dimension(pres, w)

    def test_rank_independent_of_relation_order(self):
        pres = phi_pres()
        rng = random.Random(5)
        for _ in range(2):
            rels = list(pres.relations)
            rng.shuffle(rels)
            shuffled = Presentation(CTX32, pres.gens, tuple(rels))
            for w in range(5):
                assert quotient_dimension(shuffled, w) == quotient_dimension(pres, w)
                assert monomial_basis(shuffled, w) == monomial_basis(pres, w)


class TestPresentationValidation:
    def test_rejects_inhomogeneous_relation(self):
        el = SuperElement(3, {t(LINES32[0]): 1, u(LINES32[0]): 1})
        with pytest.raises(ValueError):
            Presentation(CTX32, LINES32, (el,))

    def test_rejects_zero_relation(self):
        with pytest.raises(ValueError):
            Presentation(CTX32, LINES32, (SuperElement.zero(3),))

    def test_rejects_foreign_generator(self):
        el = SuperElement.from_monomial(3, t(LINES32[3]))
        with pytest.raises(ValueError):
            Presentation(CTX32, LINES32[:2], (el,))
