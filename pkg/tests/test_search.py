import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asclab import operations as ops
from asclab import search
from asclab import witnesses as W
from asclab.automata import asc, decode, is_permutation, sc
from asclab.errors import InvalidInputError, MagicNumberError, NotFoundError
from asclab.search import SweepConfig, compute_gset

short_words = st.text(alphabet="01", min_size=1, max_size=8)


class TestEnumeration:
    def test_unary_examples(self):
        assert [w.bits for w in search.enumerate_unary_pfas(2, 1)] == ["01", "10"]
        minimal = [w.bits for w in search.enumerate_unary_pfas(4, 2, True)]
        assert "1010" not in minimal and "0101" not in minimal
        assert len(minimal) == 4
        assert [w.bits for w in search.enumerate_unary_pfas(5, 0)] == ["00000"]

    def test_unary_counts(self):
        for length in range(1, 9):
            for ones in range(length + 1):
                words = list(search.enumerate_unary_pfas(length, ones))
                assert len(words) == math.comb(length, ones)
                assert words == sorted(words, key=lambda w: w.bits)
        with pytest.raises(InvalidInputError):
            list(search.enumerate_unary_pfas(2, 3))

    def test_pfa_counts(self):
        assert len(list(search.enumerate_pfas(1, 1, 1))) == 1
        assert len(list(search.enumerate_pfas(2, 1, 1))) == 4
        assert len(list(search.enumerate_pfas(3, 2, 2))) == 108
        for A in search.enumerate_pfas(3, 2, 2):
            assert is_permutation(A) and A.initial == 0 and len(A.accepting) == 2

    def test_canonical_representatives(self):
        # one representative per relabelling class fixing state 0
        def key(A, pi):
            inv = {pi[q]: q for q in range(A.state_count)}
            rows = tuple(tuple(pi[A.transitions[inv[q]][a]] for a in range(A.alphabet_size))
                         for q in range(A.state_count))
            return rows, tuple(sorted(pi[q] for q in A.accepting))

        for k, sigma, count in ((3, 2, 1), (3, 1, 2), (4, 1, 2)):
            classes = set()
            for A in search.enumerate_pfas(k, sigma, count):
                perms = [(0,) + p for p in itertools.permutations(range(1, k))]
                classes.add(min(key(A, pi) for pi in perms))
            canon = list(search.enumerate_pfas(k, sigma, count, canonical=True))
            assert len(canon) == len(classes)


class TestBitmask:
    def test_period_and_asc_exhaustive(self):
        for length in range(1, 11):
            for bits in map("".join, itertools.product("01", repeat=length)):
                mask = search._bits_to_mask(bits)
                A = decode(bits)
                assert search.cycle_period(mask, length) == sc(A)
                assert search.cycle_asc(mask, length) == asc(A)

    @given(short_words, short_words, st.sampled_from(search.UNARY_PAIR_OPERATIONS))
    @settings(max_examples=300, deadline=None)
    def test_combine_matches_constructions(self, u, v, op):
        length, mask = search.unary_combine(op, len(u), search._bits_to_mask(u),
                                            len(v), search._bits_to_mask(v))
        fn = {"intersection": ops.intersection, "union": ops.union,
              "difference": ops.difference, "quotient": ops.right_quotient}[op]
        assert search.cycle_asc(mask, length) == asc(fn(decode(u), decode(v)))


class TestSweepConfig:
    def test_validation(self):
        with pytest.raises(InvalidInputError):
            SweepConfig("shuffle", 1, 1)
        with pytest.raises(InvalidInputError):
            SweepConfig("intersection", 1)
        with pytest.raises(InvalidInputError):
            SweepConfig("star", 1, 1)
        with pytest.raises(InvalidInputError):
            SweepConfig("intersection", 3, 3, max_cycle_length=3)
        with pytest.raises(InvalidInputError):
            SweepConfig("intersection", 1, 1, worker_count=0)

    def test_bound(self):
        assert SweepConfig("union", 1, 2, 9).bound() == {"max_cycle_length": 9}
        assert SweepConfig("reversal", 2).bound() == {"max_states": 5, "max_alphabet": 2}


class TestGSet:
    def test_intersection_one_one(self):
        g = compute_gset(SweepConfig("intersection", 1, 1, 6))
        assert 1 in g.attained
        w = g.witnesses[1]
        assert w.problems() == []

    def test_quotient_bounded_by_m(self):
        g = compute_gset(SweepConfig("quotient", 2, 1, 12))
        assert set(g.attained) <= {1, 2}
        g = compute_gset(SweepConfig("quotient", 1, 1, 10))
        assert g.attained == (1,)

    def test_unary_reversal_is_identity(self):
        for m in range(1, 4):
            assert compute_gset(SweepConfig("reversal-unary", m, max_cycle_length=8)).attained \
                == (m,)

    def test_witnesses_reverify(self):
        for op in search.UNARY_PAIR_OPERATIONS:
            g = compute_gset(SweepConfig(op, 2, 3, 8))
            for alpha, pair in g.witnesses.items():
                assert pair.alpha == alpha and pair.problems() == []
                assert (asc(pair.left), asc(pair.right)) == (2, 3)

    def test_commutative_swap_keeps_order(self):
        g = compute_gset(SweepConfig("intersection", 1, 3, 8))
        for pair in g.witnesses.values():
            assert asc(pair.left) == 1 and asc(pair.right) == 3

    @pytest.mark.parametrize("op,m,n", [("intersection", 2, 3), ("union", 2, 2),
                                        ("difference", 3, 2), ("quotient", 2, 2)])
    def test_worker_count_independent(self, op, m, n):
        search._SWEEP_CACHE.clear()
        one = compute_gset(SweepConfig(op, m, n, 9, worker_count=1)).to_dict()
        search._SWEEP_CACHE.clear()
        four = compute_gset(SweepConfig(op, m, n, 9, worker_count=4)).to_dict()
        assert one == four

    def test_worker_count_independent_single_and_pfa(self):
        for config in (SweepConfig("star", 2, max_cycle_length=9),
                       SweepConfig("reversal", 2, max_states=4)):
            search._SWEEP_CACHE.clear()
            one = compute_gset(config).to_dict()
            search._SWEEP_CACHE.clear()
            four = compute_gset(SweepConfig(**{**config.__dict__, "worker_count": 4})).to_dict()
            assert one == four

    def test_monotone_in_bound(self):
        for op in ("intersection", "union", "difference", "quotient"):
            previous = set()
            for bound in (5, 7, 9, 11):
                attained = set(compute_gset(SweepConfig(op, 2, 2, bound)).attained)
                assert previous <= attained
                previous = attained

    def test_sweep_matches_brute_force(self):
        # small sweep recomputed directly from the constructions
        for op, fn in (("intersection", ops.intersection), ("quotient", ops.right_quotient)):
            got = set(compute_gset(SweepConfig(op, 2, 1, 6)).attained)
            expected = set()
            for k1 in range(2, 7):
                for k2 in range(1, 7):
                    for u in search.enumerate_unary_pfas(k1, 2, True):
                        for v in search.enumerate_unary_pfas(k2, 1, True):
                            expected.add(asc(fn(decode(u.bits), decode(v.bits))))
            assert got == expected


class TestCrossCheck:
    @pytest.mark.parametrize("op,gen", [("intersection", W.witness_intersection),
                                        ("quotient", W.witness_quotient),
                                        ("difference", W.witness_difference)])
    def test_generators_agree_with_sweeps(self, op, gen):
        for m in range(1, 4):
            for n in range(1, 4):
                attained = set(compute_gset(SweepConfig(op, m, n, 12)).attained)
                for alpha in range(0, m * n + 4):
                    if alpha in attained:
                        # generators search at least as far as the sweep
                        assert gen(m, n, alpha).alpha == alpha
                    else:
                        with pytest.raises((MagicNumberError, NotFoundError)):
                            gen(m, n, alpha, max_len=12)


class TestClaims:
    def test_registry(self):
        assert set(search.CLAIMS) >= {"thm:intersection-magic", "cor:intersection-dfa",
                                      "lemma:reversal-alpha1", "cor:quotient-range",
                                      "lemma:rectangle", "lemma:number-AR", "lemma:AR-pfa",
                                      "conj:intersection", "conj:reversal"}
        with pytest.raises(InvalidInputError):
            search.verify_claim("thm:nope")

    def test_intersection_magic_example(self):
        report = search.verify_claim("thm:intersection-magic", m=3, n=2)
        assert report.verdict == "PASS"
        attained = report.attained[0].attained
        assert 5 not in attained

    def test_reversal_alpha_one(self):
        report = search.verify_claim("lemma:reversal-alpha1", m=2)
        assert report.verdict == "PASS"

    def test_rectangle(self):
        assert search.verify_claim("lemma:rectangle", max_len=8).verdict == "PASS"

    def test_quotient_range(self):
        assert search.verify_claim("cor:quotient-range", m=2, n=2, max_len=10).verdict == "PASS"

    def test_number_ar_and_ar_pfa(self):
        for cid in ("lemma:number-AR", "lemma:AR-pfa"):
            report = search.verify_claim(cid, states=3, max_len=6)
            assert report.verdict == "PASS"
            assert report.details["automata_checked"] > 50

    def test_number_ar_counts(self):
        A = W.symmetric_group_pfa(4, 2)
        assert set(search.number_ar_counts(A).values()) == {3}

    def test_intersection_dfa(self):
        report = search.verify_claim("cor:intersection-dfa", m=2, n=2, max_len=6)
        assert report.verdict == "PASS"

    def test_binary_rectangle_exploration(self):
        report = search.verify_claim("explore:rectangle-binary")
        assert search.CLAIMS["explore:rectangle-binary"].exploratory
        assert report.verdict in ("PASS", "COUNTEREXAMPLE")

    def test_overrides(self):
        bounds = search.claim_bounds("thm:intersection-magic", m=2, n=3, max_len=9)
        assert bounds == {"m": [2], "n": [3], "max_len": 9}
        assert search.claim_bounds("lemma:rectangle", m=4) == {"max_len": 12}


class TestTailCycle:
    def test_population_is_minimal(self):
        for accepting in range(0, 3):
            for x in search.tail_cycle_population(6, accepting):
                A = search.tail_cycle_dfa(*x)
                assert sc(A) == A.state_count and asc(A) == accepting

    def test_population_is_complete(self):
        # every minimal unary DFA with <= 5 states appears once, up to language
        seen = {search.tail_cycle_dfa(*x) for a in range(6)
                for x in search.tail_cycle_population(5, a)}
        for k in range(1, 6):
            for target in range(k):
                rows = tuple((q + 1 if q + 1 < k else target,) for q in range(k))
                for acc in itertools.product((0, 1), repeat=k):
                    A = search.tail_cycle_dfa(target, 0, k - target, 0).with_accepting(
                        q for q in range(k) if acc[q])
                    assert A.transitions == rows
                    if sc(A) == k:
                        assert A in seen

    def test_intersection_matches_product(self):
        pop = search.tail_cycle_population(5, 1) + search.tail_cycle_population(5, 2)
        for x in pop[::3]:
            for y in pop[::4]:
                A, B = search.tail_cycle_dfa(*x), search.tail_cycle_dfa(*y)
                alpha, count = search.tail_cycle_intersection(x, y)
                assert alpha == asc(ops.intersection(A, B))
                assert count == ops.initially_reachable_accepting_count(A, B)


class TestConjectures:
    def test_predicted_by_hand(self):
        assert search.conjecture_predicted(2, 2) == {0, 1, 2, 3, 4}
        assert search.conjecture_predicted(2, 2, nontrivial_divisors=True) == {0, 2, 3, 4}
        # cap = 3: [3, 5] with multiples of 2 and 3 up to 3
        assert search.conjecture_predicted(3, 2, nontrivial_divisors=True) == {0, 2, 3, 4, 5}

    def test_intersection_vacuous(self):
        report = search.check_conjecture_intersection(1, 1)
        assert report.verdict == "PASS"
        assert report.details["interval"] == [2, 0]

    def test_intersection_reports_both_readings(self):
        report = search.check_conjecture_intersection(3, 2, bound=14)
        assert report.verdict == "PASS"
        assert report.details["interval"] == [4, 4]
        for label in ("literal", "nontrivial_divisors"):
            assert {"inclusion", "equality"} <= set(report.details[label])

    def test_reversal(self):
        report = search.check_conjecture_reversal(2, k_max=4)
        assert not report.details["alpha_one_attained"]
        assert 2 in report.details["attained"]
        assert report.verdict in ("PASS", "INCONCLUSIVE")

    def test_binomial(self):
        assert search.binomial_solvability(2, 2) == 3
        for alpha in range(2, 11):
            assert search.binomial_solvability(2, alpha) == alpha + 1
        assert search.binomial_solvability(3, 2) is None
        assert search.binomial_solvability(3, 3) == 4

    def test_union_stratum(self):
        assert search.union_stratum(2, 3, 7) == 2
        for m, n in itertools.product(range(1, 4), repeat=2):
            for alpha in range(max(m, n), 30):
                i = search.union_stratum(m, n, alpha)
                small, big = min(m, n), max(m, n)
                assert max(i * small, big) <= alpha <= i * small + big
