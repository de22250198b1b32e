"""Tests for related-seed correlation checks."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rngfx.generators import (
    CONG_MULT,
    ShrState,
    combined_next,
    make_combined,
    shr0_next,
)
from rngfx.forensics.seeds import (
    expected_random_quadruples,
    find_zero_xor_quadruples,
    gf2_linearity_check,
    quadruple_lockstep_report,
    related_seed_lowbits_check,
    shr0_stream,
)


class TestLowBitsLock:
    def test_congruent_seeds_lock_low_bits(self):
        chk = related_seed_lowbits_check(12345, 100, 100 + 64, nsteps=100_000)
        assert chk.locked
        assert chk.violations == 0
        assert chk.first_violation_step == 0
        assert chk.nlowbits == 6

    def test_lock_for_any_multiple_of_modulus(self):
        for delta in (64, 128, 640, 1 << 20):
            chk = related_seed_lowbits_check(7, 5000, 5000 + delta, nsteps=20_000)
            assert chk.locked, delta

    def test_incongruent_seeds_break_quickly(self):
        chk = related_seed_lowbits_check(12345, 100, 101, nsteps=100_000)
        assert not chk.locked
        assert chk.violations > 10_000
        assert 1 <= chk.first_violation_step <= 10

    def test_narrower_window_locks_coarser_difference(self):
        # differ by 8 = 2^3: low 3 bits lock, low 6 bits do not
        assert related_seed_lowbits_check(1, 0, 8, nsteps=50_000, nlowbits=3).locked
        assert not related_seed_lowbits_check(1, 0, 8, nsteps=50_000, nlowbits=6).locked

    def test_matches_direct_simulation(self):
        jsr, ia, ib, n = 99, 1234, 1234 + 3, 500
        chk = related_seed_lowbits_check(jsr, ia, ib, nsteps=n, nlowbits=6)
        viol = 0
        first = 0
        sa = make_combined("cng-plus-shr0", jsr=jsr, icng=ia)
        sb = make_combined("cng-plus-shr0", jsr=jsr, icng=ib)
        for t in range(1, n + 1):
            sa, oa = combined_next(sa)
            sb, ob = combined_next(sb)
            if (oa ^ ob) & 63:
                viol += 1
                if first == 0:
                    first = t
        assert chk.violations == viol
        assert chk.first_violation_step == first

    def test_validation(self):
        with pytest.raises(ValueError):
            related_seed_lowbits_check(0, 1, 2)
        with pytest.raises(ValueError):
            related_seed_lowbits_check(1, 1, 2, nlowbits=0)
        with pytest.raises(ValueError):
            related_seed_lowbits_check(1, 1, 2, nlowbits=17)

    def test_difference_evolves_multiplicatively(self):
        # c_a(t) - c_b(t) = mult^t * (c_a(0) - c_b(0)) mod 2^32
        ca, cb = 777, 123456
        d0 = (ca - cb) & 0xFFFFFFFF
        for t in range(1, 50):
            ca = (CONG_MULT * ca + 1234567) & 0xFFFFFFFF
            cb = (CONG_MULT * cb + 1234567) & 0xFFFFFFFF
            assert (ca - cb) & 0xFFFFFFFF == (pow(CONG_MULT, t, 1 << 32) * d0) & 0xFFFFFFFF


class TestGf2Linearity:
    def test_holds_for_sample_pairs(self):
        assert gf2_linearity_check(1, 2, nsteps=10_000)
        assert gf2_linearity_check(0xDEADBEEF, 0x12345678, nsteps=10_000)

    @settings(max_examples=20, deadline=None)
    @given(
        u=st.integers(min_value=1, max_value=0xFFFFFFFF),
        v=st.integers(min_value=1, max_value=0xFFFFFFFF),
    )
    def test_holds_everywhere(self, u, v):
        if u == v or u ^ v == 0:
            return
        assert gf2_linearity_check(u, v, nsteps=512)

    def test_validation(self):
        with pytest.raises(ValueError):
            gf2_linearity_check(0, 5)
        with pytest.raises(ValueError):
            gf2_linearity_check(5, 5)

    def test_stream_matches_generator_class(self):
        stream = shr0_stream(42, 16)
        st8 = ShrState(42)
        ref = []
        for _ in range(16):
            st8, word = shr0_next(st8)
            ref.append(word)
        assert list(stream) == ref


class TestQuadruples:
    def test_finds_planted_quadruple(self):
        quads = find_zero_xor_quadruples([1, 2, 5, 6, 1000])
        assert (1, 2, 5, 6) in quads
        for q in quads:
            assert q[0] ^ q[1] ^ q[2] ^ q[3] == 0

    def test_no_false_positives_without_structure(self):
        # these five have no vanishing 4-XOR
        assert find_zero_xor_quadruples([3, 5, 9, 17, 33]) == []

    def test_duplicate_seeds_rejected(self):
        with pytest.raises(ValueError):
            find_zero_xor_quadruples([1, 2, 2, 7])

    def test_expected_count_formula(self):
        assert expected_random_quadruples(4) == pytest.approx(1 / 2.0**32)
        assert expected_random_quadruples(100) == pytest.approx(
            (100 * 99 * 98 * 97 / 24.0) / 2.0**32
        )

    def test_lockstep_report_for_zero_xor_quad(self):
        rep = quadruple_lockstep_report((1, 2, 5, 6), nsteps=50_000)
        assert rep.xor_zero_all_steps
        assert rep.index_xor_zero_rate == 1.0
        assert rep.sign_xor_zero_rate == 1.0

    def test_lockstep_rates_for_unrelated_quad(self):
        # XOR nonzero: rates fall to the independence baselines 1/k, 1/2
        rep = quadruple_lockstep_report((1, 2, 5, 7), nsteps=200_000)
        assert not rep.xor_zero_all_steps
        assert rep.index_xor_zero_rate == pytest.approx(1 / 128, rel=0.25)
        assert rep.sign_xor_zero_rate == pytest.approx(0.5, rel=0.05)
