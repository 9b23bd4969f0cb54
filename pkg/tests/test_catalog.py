import math
from fractions import Fraction

import pytest

from periodic_sums import catalog as cat
from periodic_sums.errors import DomainError, InconsistencyError, ParameterError
from periodic_sums.special import LN2
from periodic_sums.sums import brute_S, brute_T

# mpmath, 30 digits
LOG3_T2_4 = 6.0867747269123068469  # log(5 * 8 * 11)
CATALAN_MP = 0.91596559417721901505


def scaled(a, b):
    return abs(a - b) / max(1.0, abs(b))


class TestLookup:
    def test_ids(self):
        assert cat.CATALOG_IDS == (
            "log3", "log4", "recip4", "harmonic4", "alt-harmonic", "inv-square4", "binomial",
        )

    def test_unknown(self):
        with pytest.raises(ParameterError):
            cat.get_entry("nope")

    def test_no_closed_form(self, entries):
        with pytest.raises(DomainError):
            entries["inv-square4"].closed(3)


@pytest.mark.parametrize("eid", ["log3", "log4", "recip4", "harmonic4", "alt-harmonic"])
def test_closed_forms_match_brute(entries, eid):
    e = entries[eid]
    start = 1 if eid in ("log3", "alt-harmonic") else 0
    for n in range(start, 301):
        assert scaled(e.closed(n), brute_S(e.f, e.weight, n)) <= 1e-9, n
        for name, variant in e.variants.items():
            assert scaled(variant(n), e.closed(n)) <= 1e-10, (name, n)


@pytest.mark.parametrize("eid", cat.CATALOG_IDS)
def test_t_plus_at_integers(entries, eid):
    e = entries[eid]
    for p in range(e.q):
        for n in range(0, 101, 7):
            assert scaled(e.t_plus(p, n), brute_T(e.f, e.q, p, n)) <= 1e-12


class TestLog3:
    def test_small(self, entries):
        e = entries["log3"]
        assert e.closed(1) == pytest.approx(0, abs=1e-10)
        assert e.closed(10) == pytest.approx(brute_S(e.f, e.weight, 10), abs=1e-9)
        with pytest.raises(DomainError):
            e.closed(0)

    def test_example_indexing(self, entries):
        # sums here start at k = 1
        t = entries["log3"].extras["example_T"]
        assert t(2, 4) == pytest.approx(LOG3_T2_4, abs=1e-12)
        assert t(2, 4) == pytest.approx(math.fsum(math.log(3 * k + 2) for k in range(1, 4)), abs=1e-12)
        assert t(1, 1) == 0


class TestQuarterFamilies:
    def test_log4(self, entries):
        e = entries["log4"]
        assert e.closed(0) == pytest.approx(0, abs=1e-10)
        assert e.closed(1) == pytest.approx(0, abs=1e-12)
        assert e.closed(25) == pytest.approx(brute_S(e.f, e.weight, 25), abs=1e-9)

    def test_recip4(self, entries):
        e = entries["recip4"]
        assert e.closed(0) == pytest.approx(0, abs=1e-12)
        assert e.closed(1) == pytest.approx(0, abs=1e-10)
        assert e.closed(40) == pytest.approx(brute_S(e.f, e.weight, 40), abs=1e-10)

    def test_harmonic4(self, entries):
        e = entries["harmonic4"]
        assert e.closed(1) == pytest.approx(0, abs=1e-10)
        assert e.closed(17) == pytest.approx(brute_S(e.f, e.weight, 17), abs=1e-9)
        assert set(e.variants) == {"pre_multiplication", "by_parts"}

    def test_inverse_square(self, entries):
        e = entries["inv-square4"]
        assert brute_S(e.f, e.weight, 2) == 1
        assert brute_T(e.f, 4, 3, 1) == pytest.approx(1 / 9, abs=1e-15)


class TestAltHarmonic:
    def test_values(self, entries):
        e = entries["alt-harmonic"]
        assert e.closed(3) == pytest.approx(-0.5, abs=1e-12)
        assert e.closed(100) == pytest.approx(brute_S(e.f, e.weight, 100), abs=1e-12)
        with pytest.raises(DomainError):
            e.closed(0)

    def test_tail(self, entries):
        lhs, alt, tail = entries["alt-harmonic"].extras["tail"](7)
        expected = math.fsum(1 / k for k in range(8, 15))
        assert lhs == pytest.approx(expected, abs=1e-12)
        assert alt == pytest.approx(expected, abs=1e-12)
        assert tail == pytest.approx(expected, abs=1e-12)

    def test_limit(self, entries):
        e = entries["alt-harmonic"]
        assert e.closed(10**6) == pytest.approx(-LN2, abs=1e-6)


class TestCatalan:
    def test_first_term(self):
        assert cat.catalan_series(1) == pytest.approx(8 / 9, abs=1e-16)

    def test_value(self):
        assert abs(cat.catalan_series(100_000) - 0.915965594) <= 1e-8
        assert cat.CATALAN == pytest.approx(CATALAN_MP, abs=1e-16)

    def test_monotone(self):
        values = [cat.catalan_series(K) for K in range(1, 50)]
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_matches_brute(self, entries):
        e = entries["inv-square4"]
        for K in (1, 2, 5, 37, 1000):
            assert brute_S(e.f, e.weight, 4 * K) == pytest.approx(cat.catalan_series(K), abs=1e-14)

    def test_bad_K(self):
        with pytest.raises(ParameterError):
            cat.catalan_series(0)


class TestBinomial:
    def test_examples(self):
        assert cat.binomial_progression_sum(1, 3, 1, "recip") == pytest.approx(0.5, abs=1e-15)
        assert cat.binomial_intro_formula(1) == pytest.approx(0.5, abs=1e-15)
        expected = (2**7 - 3 * math.cos(5 * math.pi / 3) - math.cos(25 * math.pi / 3)) / 36
        assert cat.binomial_progression_sum(5, 3, 1, "recip") == pytest.approx(expected, rel=1e-12)
        for m in range(1, 20):
            assert cat.binomial_progression_sum(m, 2, 0) == pytest.approx(2 ** (m - 1), rel=1e-12)

    @pytest.mark.parametrize("h", cat.H_CHOICES)
    def test_sweep(self, h):
        for m in range(31):
            for q in range(2, 9):
                for p in range(q):
                    brute = cat.binomial_progression_brute(m, q, p, h)
                    closed = cat.binomial_progression_sum(m, q, p, h)
                    # relative, falling back to absolute for an empty residue class
                    scale = abs(brute) if brute else 1
                    assert abs(closed - brute) <= 1e-9 * scale, (m, q, p)

    def test_row_partition(self):
        for m in range(31):
            for q in range(2, 9):
                total = math.fsum(cat.binomial_progression_sum(m, q, p) for p in range(q))
                assert total == pytest.approx(2**m, rel=1e-9)

    def test_intro_formula(self):
        for m in range(31):
            brute = cat.binomial_progression_brute(m, 3, 1, "recip")
            assert cat.binomial_intro_formula(m) == pytest.approx(float(brute), rel=1e-9)

    def test_empty_row(self):
        assert cat.binomial_progression_sum(0, 2, 1) == 0
        assert cat.binomial_progression_brute(0, 2, 1) == 0

    def test_bad_args(self):
        with pytest.raises(ParameterError):
            cat.binomial_progression_sum(3, 3, 3)
        with pytest.raises(ParameterError):
            cat.binomial_progression_sum(3, 3, 1, "two")

    def test_entry_reaches_limit(self):
        e = cat.entry_binomial(m=12, q=3, p=1, h="recip")
        assert brute_S(e.f, e.weight, 13) == pytest.approx(e.extras["limit"](), rel=1e-12)


class TestGeneralizedBinomial:
    def test_integer(self):
        assert cat.alternating_binomial_prefix(3, 3) == 0

    def test_half(self):
        assert cat.alternating_binomial_prefix(Fraction(1, 2), 2) == Fraction(3, 8)

    def test_complex(self):
        z = 2.5 + 0.5j
        value = cat.alternating_binomial_prefix(z, 6)
        assert isinstance(value, complex)

    def test_odd_prefix(self):
        assert cat.odd_binomial_prefix(5, 3) == 5 + 10 + 1
        cat.odd_binomial_prefix(Fraction(7, 3), 4)
        cat.odd_binomial_prefix(1.5 - 2j, 5)

    def test_mismatch_raises(self, monkeypatch):
        monkeypatch.setattr(cat, "binomial", lambda z, k: 1)
        with pytest.raises(InconsistencyError):
            cat.alternating_binomial_prefix(3, 1)
