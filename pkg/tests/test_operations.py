import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asclab import operations as ops
from asclab.automata import (Dfa, ResidueSpec, asc, decode, empty_dfa, epsilon_dfa,
                             equivalent, is_permutation, minimize, residue_pfa,
                             universal_dfa)
from asclab.errors import DomainError, InvalidInputError
from asclab.search import enumerate_pfas

import oracles
from test_automata import dfas

short_words = st.text(alphabet="01", min_size=1, max_size=7)
HORIZON = 200


class TestBoolean:
    @given(short_words, short_words)
    @settings(max_examples=150, deadline=None)
    def test_products_match_membership(self, u, v):
        A, B = decode(u), decode(v)
        mu, mv = oracles.cycle_member(u), oracles.cycle_member(v)
        for op, fn in (("union", lambda x, y: x or y), ("intersection", lambda x, y: x and y),
                       ("difference", lambda x, y: x and not y)):
            R = getattr(ops, op)(A, B)
            seq = [fn(mu(j), mv(j)) for j in range(HORIZON)]
            assert oracles.unary_run(R, HORIZON) == seq
            assert asc(R) == oracles.unary_asc(seq)

    def test_intersection_example(self):
        R = ops.intersection(decode("10"), decode("100"))
        assert minimize(R) == decode("100000")
        assert asc(R) == 1

    def test_union_identity(self):
        A = decode("0110")
        assert equivalent(ops.union(A, empty_dfa()), A)

    def test_difference_lower_family(self):
        for m in range(1, 5):
            for n in range(1, 4):
                for alpha in range(m + 1):
                    A = decode(("0" * n + "1") * alpha + ("1" + "0" * n) * (m - alpha)
                               + "0" * (n + 1))
                    B = decode("1" * n + "0")
                    expected = ("0" * n + "1") * alpha + "0" * ((n + 1) * (m - alpha + 1))
                    assert equivalent(ops.difference(A, B), decode(expected))

    @given(dfas(max_states=4, max_sigma=2), dfas(max_states=4, max_sigma=2))
    @settings(max_examples=100, deadline=None)
    def test_de_morgan(self, A, B):
        if A.alphabet_size != B.alphabet_size:
            return
        assert equivalent(ops.difference(A, B), ops.intersection(A, ops.complement(B)))

    def test_alphabet_mismatch(self):
        with pytest.raises(InvalidInputError):
            ops.union(decode("1"), universal_dfa(2))

    def test_reachable_accepting_count(self):
        assert ops.initially_reachable_accepting_count(decode("11000"), decode("111000")) == 6
        assert ops.initially_reachable_accepting_count(decode("11000"), decode("000")) == 0

    def test_complement(self):
        assert ops.complement(decode("11100")) == decode("00011")
        assert asc(ops.complement(universal_dfa())) == 0
        A = decode("0101101")
        assert ops.complement(ops.complement(A)) == A


class TestStar:
    @given(short_words)
    @settings(max_examples=150, deadline=None)
    def test_star_and_plus_match_membership(self, u):
        A, member = decode(u), oracles.cycle_member(u)
        star_seq = oracles.star_sequence(member, HORIZON)
        plus_seq = oracles.star_sequence(member, HORIZON, plus=True)
        assert oracles.unary_run(ops.star(A), HORIZON) == star_seq
        assert oracles.unary_run(ops.plus(A), HORIZON) == plus_seq
        assert asc(ops.star(A)) == oracles.unary_asc(star_seq)
        assert asc(ops.plus(A)) == oracles.unary_asc(plus_seq)

    def test_empty_star(self):
        assert asc(ops.star(empty_dfa())) == 1
        assert equivalent(ops.star(empty_dfa()), epsilon_dfa())
        assert asc(ops.plus(empty_dfa())) == 0

    def test_case_one_is_everything(self):
        for m in range(1, 7):
            A = residue_pfa(ResidueSpec(frozenset(range(1, m + 1)), m + 1))
            assert equivalent(ops.star(A), universal_dfa())

    def test_case_three_shape(self):
        m, alpha = 3, 4
        period = 2 * (alpha - 1) + m + 1
        residues = {2} | {2 * (alpha - 1) + i for i in range(1, m)}
        M = minimize(ops.star(residue_pfa(ResidueSpec(frozenset(residues), period))))
        # tail of length 2(alpha-1), then a one-state accepting loop
        assert M.state_count == 2 * (alpha - 1) + 1
        assert M.accepting == frozenset(range(0, 2 * (alpha - 1) + 1, 2))

    @given(dfas(max_states=4, max_sigma=2))
    @settings(max_examples=100, deadline=None)
    def test_plus_star_relation(self, A):
        S, P = ops.star(A), ops.plus(A)
        if A.initial in A.accepting:
            assert equivalent(S, P)
        else:
            assert equivalent(P, ops.difference(S, epsilon_dfa(A.alphabet_size)))

    @given(dfas(max_states=3, max_sigma=2))
    @settings(max_examples=60, deadline=None)
    def test_star_against_word_oracle(self, A):
        # w in L^* iff w splits into L-words; checked on all words up to length 6
        S = ops.star(A)
        memo = {}

        def in_star(w):
            if not w:
                return True
            if w not in memo:
                memo[w] = any(oracles.run(A, w[:i]) and in_star(w[i:])
                              for i in range(1, len(w) + 1))
            return memo[w]
        assert all(oracles.run(S, w) == in_star(w) for w in oracles.words(A.alphabet_size, 6))


class TestReversal:
    def test_unary_is_identity(self):
        for length in range(1, 9):
            for bits in map("".join, itertools.product("01", repeat=length)):
                A = decode(bits)
                assert equivalent(ops.reverse_pfa(A), A)
                assert equivalent(ops.reverse_generic(A), A)

    def test_all_accepting_single_subset(self):
        A = Dfa(3, 2, ((1, 0), (2, 2), (0, 1)), 0, frozenset({0, 1, 2}))
        R = ops.reverse_pfa(A)
        assert R.state_count == 1 and asc(R) == 1

    def test_non_pfa_rejected(self):
        with pytest.raises(DomainError):
            ops.reverse_pfa(Dfa(2, 1, ((0,), (0,))))
        with pytest.raises(DomainError):
            ops.reversal_subsets(Dfa(2, 1, ((0,), (0,))))

    def test_binary_pfas_against_oracles(self):
        rng = random.Random(11)
        for _ in range(150):
            A = oracles.random_pfa(rng, max_states=5)
            R = ops.reverse_pfa(A)
            assert equivalent(R, ops.reverse_generic(A))
            assert oracles.reversed_language_upto(A, R, 6)
            assert is_permutation(R)
            assert all(len(s) == len(A.accepting) for s in ops.reversal_subsets(A))

    @given(dfas(max_states=4, max_sigma=2))
    @settings(max_examples=100, deadline=None)
    def test_generic_reversal(self, A):
        R = ops.reverse_generic(A)
        assert oracles.reversed_language_upto(A, R, 6)
        assert equivalent(ops.reverse_generic(R), A)

    def test_asc_two_never_reverses_to_one(self):
        for k in range(2, 5):
            for A in enumerate_pfas(k, 2, 2):
                if asc(A) == 2:
                    assert asc(ops.reverse_pfa(A)) >= 2


class TestQuotient:
    @given(short_words, short_words)
    @settings(max_examples=150, deadline=None)
    def test_matches_membership(self, u, v):
        A, B = decode(u), decode(v)
        seq = oracles.quotient_sequence(oracles.cycle_member(u), len(u),
                                        oracles.cycle_member(v), len(v), HORIZON)
        R = ops.right_quotient(A, B)
        assert oracles.unary_run(R, HORIZON) == seq
        assert asc(R) == oracles.unary_asc(seq)
        assert R.transitions == A.transitions and is_permutation(R)

    def test_paper_instance(self):
        R = ops.right_quotient(decode("1000"), decode("01"))
        assert minimize(R) == decode("01")
        assert asc(R) == 1

    def test_empty_and_epsilon_divisors(self):
        A = decode("0110")
        assert asc(ops.right_quotient(A, empty_dfa())) == 0
        assert equivalent(ops.right_quotient(A, epsilon_dfa()), A)
        assert equivalent(ops.left_quotient(epsilon_dfa(), A), A)
        assert asc(ops.left_quotient(empty_dfa(), A)) == 0

    def test_left_equals_right_for_unary(self):
        for u in map("".join, itertools.product("01", repeat=5)):
            for v in ("1", "01", "100", "0110", "10010"):
                A, B = decode(u), decode(v)
                assert equivalent(ops.left_quotient(B, A), ops.right_quotient(A, B))

    @given(dfas(max_states=3, max_sigma=2), dfas(max_states=3, max_sigma=2))
    @settings(max_examples=60, deadline=None)
    def test_both_quotients_on_words(self, A, B):
        if A.alphabet_size != B.alphabet_size:
            return
        sigma = A.alphabet_size
        # at most 9 product pairs, so some shortest witness has length <= 8
        in_b = [w for w in oracles.words(sigma, 8) if oracles.run(B, w)]
        R, L = ops.right_quotient(A, B), ops.left_quotient(B, A)
        for x in oracles.words(sigma, 3):
            assert oracles.run(R, x) == any(oracles.run(A, x + w) for w in in_b)
            assert oracles.run(L, x) == any(oracles.run(A, w + x) for w in in_b)


class TestRectangle:
    def test_unary_pairs_closed(self):
        for u in map("".join, itertools.product("01", repeat=4)):
            for length in range(1, 7):
                v = "1" + "0" * (length - 1)
                assert ops.rectangle_violations(decode(u), decode(v)) == []

    def test_binary_pfas_can_violate(self):
        # two minimal three-state PFAs over two letters
        A = Dfa(3, 2, ((0, 1), (2, 0), (1, 2)), 0, frozenset({0}))
        B = Dfa(3, 2, ((1, 0), (0, 2), (2, 1)), 0, frozenset({0}))
        bad = ops.rectangle_violations(A, B)
        assert ((0, 0), (1, 1)) in bad
        pairs = set(ops.reachable_pairs(A, B))
        assert {(0, 0), (1, 0), (0, 1)} <= pairs and (1, 1) not in pairs
