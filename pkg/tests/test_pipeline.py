import random
from math import comb

import pytest

from quotbwb.partitions import Weight, partition
from quotbwb.pipeline import (
    InsertionSpec,
    QuotSetup,
    assemble,
    bundle_coh,
    closed_form_multi,
    e1_page,
    ext_table,
    koszul_terms,
    line_coh,
    resolve_page,
    stromme,
    verify_prop47,
    verify_thm41,
)
from quotbwb.schur import schur_dim


class TestSetupAndParams:
    def test_worked_example_embeddings(self):
        p = stromme(QuotSetup(2, 1, 2, m=5))
        assert (p.k1, p.n1, p.r1) == (3, 10, 7)
        assert (p.k2, p.n2, p.r2) == (4, 12, 8)
        p = stromme(QuotSetup(3, 1, 3, m=3))
        assert (p.k1, p.n1, p.r1) == (3, 9, 6)
        assert (p.k2, p.n2, p.r2) == (5, 12, 7)

    def test_degenerate_first_factor(self):
        p = stromme(QuotSetup(2, 1, 1, m=1))
        assert p.k1 == 0 and (p.k2, p.n2) == (1, 4)

    def test_validation(self):
        with pytest.raises(ValueError):
            QuotSetup(2, 2, 1)
        with pytest.raises(ValueError):
            QuotSetup(2, 1, 1, m=0)
        with pytest.raises(ValueError):
            QuotSetup(2, 1, 1, (1, 0))

    def test_invariant_sweep(self):
        rng = random.Random(55)
        for _ in range(200):
            n = rng.randrange(2, 5)
            r = rng.randrange(1, n)
            d = rng.randrange(0, 5)
            extra = tuple(sorted(rng.randrange(0, 3) for _ in range(n - 1)))
            setup = QuotSetup(n, r, d, (0,) + extra,
                              m=sum(extra) + d + rng.randrange(0, 4))
            p = stromme(setup)
            assert p.n1 == p.k1 + p.r1 and p.n2 == p.k2 + p.r2
            assert p.k1 * p.r1 + p.k2 * p.r2 - p.rank_k == setup.quot_dim


class TestKoszul:
    def test_linear_term(self):
        p = stromme(QuotSetup(2, 1, 2, m=5))
        assert [(T.mu, T.sigma, T.mult) for T in koszul_terms(p, 1)] == \
            [((1,), (1,), 2)]

    def test_conservation_small_setup_all_t(self):
        p = stromme(QuotSetup(3, 1, 1, m=1))
        for t in range(p.rank_k + 1):
            total = sum(T.mult * schur_dim(T.mu, p.k1) * schur_dim(T.sigma, p.r2)
                        for T in koszul_terms(p, t))
            assert total == comb(p.rank_k, t), t

    def test_conservation_degenerate_setup(self):
        p = stromme(QuotSetup(2, 1, 1, m=1))
        assert p.rank_k == 0
        assert [(T.mu, T.sigma, T.mult) for T in koszul_terms(p, 0)] == \
            [((), (), 1)]

    def test_range_rejection(self):
        p = stromme(QuotSetup(2, 1, 1, m=1))
        with pytest.raises(ValueError):
            koszul_terms(p, 1)

    def test_pair_route_matches_expansion_route(self):
        # koszul_terms expands through subpartition/skew/LR chains; the scan
        # evaluates fixed (mu, sigma) pairs through skew inner products.
        # Both must produce identical multiplicities.
        from quotbwb.partitions import conjugate
        from quotbwb.schur import koszul_pair_mult
        p = stromme(QuotSetup(3, 1, 1, m=1))
        for t in range(p.rank_k + 1):
            expansion = {(T.mu, T.sigma): T.mult for T in koszul_terms(p, t)}
            from quotbwb.partitions import partitions_in_box
            for mu in partitions_in_box(p.k1, 2 * p.r2, t):
                cols = min(2 * p.k1, t) if t else 0
                for sigma in partitions_in_box(p.r2, cols, t):
                    got = koszul_pair_mult(conjugate(mu), sigma, p.r2)
                    assert got == expansion.get((mu, sigma), 0), (mu, sigma)


class TestResolvePage:
    def test_single_entry(self):
        rep = resolve_page({(0, 0): 1})
        assert rep.exact and rep.table == {0: 1} and rep.degenerate

    def test_empty(self):
        rep = resolve_page({})
        assert rep.exact and rep.table == {} and rep.euler == 0

    def test_no_structural_pair_multiple_degrees(self):
        # same column: no differential can connect
        rep = resolve_page({(0, 0): 5, (0, 1): 7})
        assert rep.exact and rep.table == {0: 5, 1: 7} and rep.degenerate

    def test_forced_injectivity_shape(self):
        # the sharp-example shape: 28 at total degree -1 must inject
        rep = resolve_page({(-24, 23): 28, (0, 0): 210})
        assert rep.exact and rep.table == {0: 182}
        assert not rep.degenerate and rep.euler == 182

    def test_adjacent_pair_bounds(self):
        rep = resolve_page({(-12, 13): 63, (-11, 13): 72})
        assert not rep.exact
        assert rep.upper == {1: 63, 2: 72}
        assert rep.lower == {2: 9}
        assert (2, 1, 9) in rep.relations

    def test_euler_pinning(self):
        # two entries, one killable pair, but one side pinned to zero by
        # matching dimensions: 5 at -1 must kill 5 of 5 at 0
        rep = resolve_page({(-3, 2): 5, (0, 0): 5})
        assert rep.exact and rep.table == {} and rep.euler == 0

    def test_impossible_negative_page(self):
        with pytest.raises(ArithmeticError):
            resolve_page({(-3, 2): 5})  # total degree -1, nothing to absorb it

    def test_chain_of_three(self):
        # degrees 0,1,2 with possible d1 chain: bounds only
        rep = resolve_page({(0, 0): 5, (1, 0): 3, (2, 0): 4})
        assert not rep.exact
        assert rep.upper == {0: 5, 1: 3, 2: 4}
        assert rep.lower == {0: 2, 2: 1}


class TestScans:
    def test_structure_sheaf_five_setups(self):
        for args in [(2, 1, 1, (), 1), (2, 1, 1, (), 2), (3, 1, 1, (), 1),
                     (3, 2, 1, (), 1), (2, 1, 2, (), 3)]:
            n, r, d, s, m = args
            page = e1_page(stromme(QuotSetup(n, r, d, s, m)))
            assert page.entries == {(0, 0): 1}, args
            rep = assemble(page)
            assert rep.euler == 1 and rep.exact and rep.table == {0: 1}

    def test_thm41_closed_form_euler(self):
        # euler equals product of section-space Schur dimensions
        setup = QuotSetup(2, 1, 1, m=2)
        p = stromme(setup)
        page = e1_page(p, InsertionSpec(b1=((1,),), b2=((1,),)))
        assert page.euler() == p.n1 * p.n2 == 24

    def test_jobs_determinism(self):
        setup = QuotSetup(3, 1, 1, m=1)
        ins = InsertionSpec(b1=((1,),))
        p1 = e1_page(stromme(setup), ins, jobs=1)
        p2 = e1_page(stromme(setup), ins, jobs=2)
        assert p1.entries == p2.entries

    def test_diagnostics_present(self):
        setup = QuotSetup(3, 1, 3, m=3)
        page = e1_page(stromme(setup), InsertionSpec(b1=(Weight((0, 0, 0, 0, 0, -2)),)))
        assert page.entries == {(12, 13): 63, (11, 13): 72}
        assert page.contributions[(12, 13)][0][:2] == ((8, 2, 2), (6, 1, 1, 1, 1, 1, 1))
        assert page.contributions[(11, 13)][0][:2] == ((7, 2, 2), (6, 1, 1, 1, 1, 1))


class TestVerifiers:
    def test_thm41_part_ii(self):
        for m in (2, 3):
            setup = QuotSetup(2, 1, 1, m=m)
            p = stromme(setup)
            v = verify_thm41(setup, (1,), (1,))
            assert v.hypotheses_hold and v.matches
            assert v.report.table == {0: p.n1 * p.n2}

    def test_thm41_part_i(self):
        setup = QuotSetup(3, 1, 1, m=1)
        v = verify_thm41(setup, Weight((0, -1)), ())
        assert v.hypotheses_hold and v.matches and v.report.is_zero()

    def test_thm41_vacuous_bookkeeping(self):
        # first-part hypothesis fails: delta_1 + nu_1 = 2 = n - r
        setup = QuotSetup(3, 1, 1, m=1)
        v = verify_thm41(setup, Weight((0, -2)), ())
        assert not v.hypotheses_hold and v.matches is None and v.ok
        assert v.notes

    def test_thm41_randomized_within_hypotheses(self):
        # partition insertions within the size bound: scans agree with the
        # closed form on every valid random draw
        rng = random.Random(808)
        checked = 0
        while checked < 15:
            n = rng.randrange(2, 4)
            r = rng.randrange(1, n)
            d = rng.randrange(1, 3)
            m = d + rng.randrange(1, 3)
            setup = QuotSetup(n, r, d, m=m)
            params = stromme(setup)
            if params.rank_k > 12:
                continue
            gamma = partition(sorted((rng.randrange(0, 3) for _ in range(2)),
                                     reverse=True))
            lam = partition(sorted((rng.randrange(0, 3) for _ in range(2)),
                                   reverse=True))
            if (n - r) * (sum(gamma) + sum(lam)) >= n * d + n:
                continue
            v = verify_thm41(setup, gamma, lam)
            assert v.hypotheses_hold
            assert v.matches, (setup, gamma, lam, v.report)
            checked += 1

    def test_prop47(self):
        v = verify_prop47(QuotSetup(2, 1, 1, m=1), (2,), (1,))
        assert v.matches and v.report.table == {0: 12}
        v = verify_prop47(QuotSetup(2, 1, 1, m=1), (), ())
        assert v.matches and v.report.table == {0: 1}
        setup = QuotSetup(3, 1, 1, m=1)
        r1 = stromme(setup).r1
        v = verify_prop47(setup, Weight((0,) * (r1 - 1) + (-1,)), ())
        assert v.matches
        top = v.report.max_degree()
        assert top is None or top <= 1


class TestExtAndClosedForm:
    def test_ext_anchors(self):
        setup = QuotSetup(3, 1, 1, m=2)
        assert ext_table(setup, (1,), (1,)).table == {0: 1}
        assert ext_table(setup, (1,), ()).table == {}
        res = ext_table(setup, (), (1,))
        assert res.table == {0: stromme(setup).n1}

    def test_ext_hypothesis_flags(self):
        setup = QuotSetup(3, 1, 1, m=2)
        res = ext_table(setup, (2,), ())   # nu_1 = n - r: flagged, not fatal
        assert not res.hypotheses_hold and res.notes

    def test_closed_form_examples(self):
        assert closed_form_multi(2, 1, 1, (), [(-2, (1,))]).table == {1: 2}
        assert closed_form_multi(2, 1, 1, (), []).table == {0: 1}
        assert closed_form_multi(2, 1, 1, (), [(0, (1,))]).table == {0: 2}

    def test_closed_form_degree_location(self):
        cf = closed_form_multi(3, 1, 2, (), [(-2, (2, 1)), (1, (1,))])
        # D = |(2,1)| = 3; dims: S^{(2,1)^dag}(H^1(O(-2)^3)) x S^{(1)}(H^0(O(1)^3))
        assert cf.degree == 3
        assert cf.table == {3: schur_dim((2, 1), 3) * 6}

    def test_line_and_bundle_coh(self):
        assert line_coh(0) == (1, 0)
        assert line_coh(-1) == (0, 0)
        assert line_coh(-4) == (0, 3)
        assert bundle_coh((0, 2), 1) == (2, 0)
        assert bundle_coh((0, 3), 1) == (2, 1)
