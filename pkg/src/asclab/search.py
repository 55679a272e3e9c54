"""Exhaustive enumeration of small permutation automata, attained-complexity
sweeps, and bounded verification of the magic-number claims.

Unary cycle automata are handled through a bitmask fast path: a word of
length ``k`` is the integer with bit ``i`` set iff position ``i`` accepts.
Every witness reported by a sweep is re-verified through the generic
constructions in :mod:`asclab.operations` and :mod:`asclab.automata`.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from . import operations as ops
from .automata import Dfa, UnaryPfaWord, asc, decode, divisors, is_permutation, sc
from .errors import InvalidInputError
from .records import ClaimReport, GSet, WitnessPair

UNARY_PAIR_OPERATIONS = ("intersection", "union", "difference", "quotient")
UNARY_SINGLE_OPERATIONS = ("complement", "star", "plus", "reversal-unary")
PFA_OPERATIONS = ("reversal",)
OPERATION_NAMES = {
    "intersection": "intersection",
    "union": "union",
    "difference": "difference",
    "quotient": "right_quotient",
    "complement": "complement",
    "star": "star",
    "plus": "plus",
    "reversal-unary": "reversal",
    "reversal": "reversal",
}

BINOMIAL_CUTOFF = 64


# ---------------------------------------------------------------- bitmask words

def _bits_to_mask(bits: str) -> int:
    return sum(1 << i for i, b in enumerate(bits) if b == "1")


@lru_cache(maxsize=None)
def _proper_divisors(n: int) -> tuple[int, ...]:
    return tuple(divisors(n)[:-1])


def cycle_period(mask: int, length: int) -> int:
    """Smallest period of the cyclic word (always a divisor of ``length``)."""
    full = (1 << length) - 1
    for d in _proper_divisors(length):
        if ((mask >> d) | (mask << (length - d))) & full == mask:
            return d
    return length


def _spread(mask: int, k: int, length: int) -> int:
    # repeat a k-bit cycle to fill `length` bits (k divides length)
    return mask * (((1 << length) - 1) // ((1 << k) - 1))


def cycle_asc(mask: int, length: int) -> int:
    return mask.bit_count() * cycle_period(mask, length) // length


def unary_combine(op: str, k1: int, a: int, k2: int, b: int) -> tuple[int, int]:
    """Cycle length and accepting mask of ``op`` applied to two cycle words,
    before minimization."""
    if op == "quotient":
        g = math.gcd(k1, k2)
        residues = {(f - i) % g for f in range(k1) if a >> f & 1
                    for i in range(k2) if b >> i & 1}
        return k1, sum(1 << q for q in range(k1) if q % g in residues)
    length = k1 * k2 // math.gcd(k1, k2)
    x, y = _spread(a, k1, length), _spread(b, k2, length)
    if op == "intersection":
        return length, x & y
    if op == "union":
        return length, x | y
    if op == "difference":
        return length, x & ~y & ((1 << length) - 1)
    raise InvalidInputError(f"unknown unary pair operation {op!r}")


@lru_cache(maxsize=None)
def unary_population(max_len: int, accepting: int, minimal: bool = True) -> tuple:
    """``(length, mask, bits)`` for cycle words up to ``max_len``, ordered by
    (length, bits).  With ``minimal`` only primitive words with exactly
    ``accepting`` ones; otherwise every word whose language has that asc."""
    out = []
    for length in range(1, max_len + 1):
        if minimal:
            if length < accepting:
                continue
            words = [w.bits for w in enumerate_unary_pfas(length, accepting, True)]
        else:
            words = ["".join(p) for p in itertools.product("01", repeat=length)]
        for bits in words:
            mask = _bits_to_mask(bits)
            if minimal or cycle_asc(mask, length) == accepting:
                out.append((length, mask, bits))
    return tuple(out)


# ---------------------------------------------------------------- enumeration

def enumerate_unary_pfas(length: int, accepting_count: int,
                         minimal_only: bool = False) -> Iterator[UnaryPfaWord]:
    """Words of the given length with ``accepting_count`` ones, in
    lexicographic order."""
    if not 0 <= accepting_count <= length:
        raise InvalidInputError("need 0 <= accepting_count <= length")
    words = []
    for ones in itertools.combinations(range(length), accepting_count):
        chars = ["0"] * length
        for i in ones:
            chars[i] = "1"
        words.append("".join(chars))
    words.sort()
    for bits in words:
        if minimal_only and cycle_period(_bits_to_mask(bits), length) != length:
            continue
        yield UnaryPfaWord(bits)


def pfa_from_permutations(perms, accepting) -> Dfa:
    k = len(perms[0])
    rows = tuple(tuple(p[q] for p in perms) for q in range(k))
    return Dfa(k, len(perms), rows, 0, frozenset(accepting))


def _relabelled_key(perms, accepting, pi):
    k = len(pi)
    new_perms = []
    for p in perms:
        image = [0] * k
        for q in range(k):
            image[pi[q]] = pi[p[q]]
        new_perms.append(tuple(image))
    return tuple(new_perms), tuple(sorted(pi[q] for q in accepting))


def _is_canonical(perms, accepting) -> bool:
    k = len(perms[0])
    own = (tuple(perms), tuple(sorted(accepting)))
    for rest in itertools.permutations(range(1, k)):
        if _relabelled_key(perms, accepting, (0,) + rest) < own:
            return False
    return True


def _pfa_structures(state_count, alphabet_size):
    return itertools.product(itertools.permutations(range(state_count)),
                             repeat=alphabet_size)


def enumerate_pfas(state_count: int, alphabet_size: int, accepting_count: int,
                   canonical: bool = False) -> Iterator[Dfa]:
    """Every PFA with initial state 0 and ``accepting_count`` accepting states.

    With ``canonical`` only the least representative under relabelings that
    fix state 0 is produced.
    """
    for perms in _pfa_structures(state_count, alphabet_size):
        for acc in itertools.combinations(range(state_count), accepting_count):
            if canonical and not _is_canonical(perms, acc):
                continue
            yield pfa_from_permutations(perms, acc)


# ---------------------------------------------------------------- sweeps

@dataclass(frozen=True)
class SweepConfig:
    operation: str
    m: int
    n: Optional[int] = None
    max_cycle_length: int = 12
    max_states: int = 5
    max_alphabet: int = 2
    worker_count: int = 1
    require_minimal_inputs: bool = True

    def __post_init__(self):
        op = self.operation
        if op not in UNARY_PAIR_OPERATIONS + UNARY_SINGLE_OPERATIONS + PFA_OPERATIONS:
            raise InvalidInputError(f"unknown sweep operation {op!r}")
        if self.m < 0 or (self.n is not None and self.n < 0):
            raise InvalidInputError("m and n must be non-negative")
        if (op in UNARY_PAIR_OPERATIONS) != (self.n is not None):
            raise InvalidInputError(f"{op} {'needs' if self.n is None else 'takes no'} n")
        if min(self.max_cycle_length, self.max_states, self.max_alphabet,
               self.worker_count) < 1:
            raise InvalidInputError("bounds and worker_count must be positive")
        if op in UNARY_PAIR_OPERATIONS + UNARY_SINGLE_OPERATIONS:
            need = max(self.m, self.n or 0)
            if need >= 1 and self.max_cycle_length < need + 1:
                raise InvalidInputError(
                    f"max_cycle_length must be at least {need + 1} for m={self.m}, n={self.n}")

    def bound(self) -> dict:
        if self.operation in PFA_OPERATIONS:
            return {"max_states": self.max_states, "max_alphabet": self.max_alphabet}
        return {"max_cycle_length": self.max_cycle_length}


def _run(fn, tasks, workers):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def _merge_best(parts):
    best: dict = {}
    for part in parts:
        for alpha, key in part.items():
            if alpha not in best or key < best[alpha]:
                best[alpha] = key
    return best


class _IntersectionChecks:
    """Per-pair structural facts observed during an intersection sweep."""

    LIMIT = 5

    def __init__(self, m, n):
        self.m, self.n = m, n
        self.low = n * m - min(n, m) + 1
        self.pairs = 0
        self.count_violations = []
        self.divisor_violations = []
        self.rectangle_violations = []
        self._rect_seen = {}

    def observe(self, k1, bits1, k2, bits2, count, alpha):
        self.pairs += 1
        key = (bits1, bits2)
        if self.low <= count <= self.n * self.m - 1:
            self._note(self.count_violations, key)
        if alpha == 0 and count != 0 or alpha and count % alpha:
            self._note(self.divisor_violations, key)
        closed = self._rect_seen.get((k1, k2))
        if closed is None:
            closed = not ops.rectangle_violations(decode(bits1), decode(bits2))
            self._rect_seen[k1, k2] = closed
        if not closed:
            self._note(self.rectangle_violations, key)

    def _note(self, bucket, key):
        if len(bucket) < self.LIMIT:
            bucket.append(key)
        else:
            bucket.append(None)

    def summary(self):
        return {
            "pairs": self.pairs,
            "count_interval": [k for k in self.count_violations if k],
            "count_interval_total": len(self.count_violations),
            "divisor": [k for k in self.divisor_violations if k],
            "divisor_total": len(self.divisor_violations),
            "rectangle": [k for k in self.rectangle_violations if k],
            "rectangle_total": len(self.rectangle_violations),
        }


def _unary_pair_chunk(task):
    op, m, n, max_len, minimal, part, parts = task
    lefts = unary_population(max_len, m, minimal)[part::parts]
    rights = unary_population(max_len, n, minimal)
    checks = _IntersectionChecks(m, n) if op == "intersection" else None
    best = {}
    for k1, a, bits1 in lefts:
        for k2, b, bits2 in rights:
            length, c = unary_combine(op, k1, a, k2, b)
            alpha = cycle_asc(c, length)
            if alpha not in best:
                best[alpha] = (k1, bits1, k2, bits2)
            if checks is not None:
                checks.observe(k1, bits1, k2, bits2, c.bit_count(), alpha)
    return best, (checks.summary() if checks else None)


def _merge_checks(summaries):
    summaries = [s for s in summaries if s]
    if not summaries:
        return None
    out = {"pairs": sum(s["pairs"] for s in summaries)}
    for name in ("count_interval", "divisor", "rectangle"):
        out[name + "_total"] = sum(s[name + "_total"] for s in summaries)
        out[name] = sorted(k for s in summaries for k in s[name])[:_IntersectionChecks.LIMIT]
    return out


_SWEEP_CACHE: dict = {}


def _unary_pair_sweep(op, m, n, max_len, minimal=True, workers=1):
    key = (op, m, n, max_len, minimal)
    if key not in _SWEEP_CACHE:
        tasks = [(op, m, n, max_len, minimal, i, workers) for i in range(workers)]
        results = _run(_unary_pair_chunk, tasks, workers)
        _SWEEP_CACHE[key] = (_merge_best(r[0] for r in results),
                             _merge_checks(r[1] for r in results))
    return _SWEEP_CACHE[key]


def _unary_single_chunk(task):
    op, m, max_len, minimal, part, parts = task
    fn = {"complement": ops.complement, "star": ops.star, "plus": ops.plus,
          "reversal-unary": ops.reverse_pfa}[op]
    best = {}
    for length, mask, bits in unary_population(max_len, m, minimal)[part::parts]:
        alpha = asc(fn(decode(bits)))
        if alpha not in best:
            best[alpha] = (length, bits)
    return best


def _pfa_chunk(task):
    op, m, k_max, sigma, part, parts = task
    best = {}
    index = 0
    for k in range(max(m, 1), k_max + 1):
        for perms in _pfa_structures(k, sigma):
            index += 1
            if index % parts != part:
                continue
            for acc in itertools.combinations(range(k), m):
                A = pfa_from_permutations(perms, acc)
                if asc(A) != m:
                    continue
                alpha = asc(ops.reverse_pfa(A))
                key = (k, perms, acc)
                if alpha not in best or key < best[alpha]:
                    best[alpha] = key
    return best


def _pfa_sweep(m, k_max, sigma, workers=1):
    key = ("pfa-reversal", m, k_max, sigma)
    if key not in _SWEEP_CACHE:
        tasks = [("reversal", m, k_max, sigma, i, workers) for i in range(workers)]
        _SWEEP_CACHE[key] = _merge_best(_run(_pfa_chunk, tasks, workers))
    return _SWEEP_CACHE[key]


def _sorted_pair(op, m, n):
    # the commutative sweeps are computed once per unordered pair
    if op in ("intersection", "union") and n > m:
        return n, m, True
    return m, n, False


def _witness(config_op, m, n, alpha, left, right, bound, minimal=True):
    pair = WitnessPair(f"sweep:{config_op}", OPERATION_NAMES[config_op], left, right,
                       m, n, alpha, "search-derived", minimal_inputs=minimal,
                       extra={"bound": bound})
    problems = pair.problems()
    if problems:
        raise RuntimeError(f"fast path disagrees with generic route: {problems}")
    return pair


def compute_gset(config: SweepConfig) -> GSet:
    op, m, n = config.operation, config.m, config.n
    minimal, bound = config.require_minimal_inputs, config.bound()
    witnesses = {}
    if op in UNARY_PAIR_OPERATIONS:
        a, b, swapped = _sorted_pair(op, m, n)
        best, _ = _unary_pair_sweep(op, a, b, config.max_cycle_length, minimal,
                                    config.worker_count)
        for alpha, (_, bits1, _, bits2) in best.items():
            if swapped:
                bits1, bits2 = bits2, bits1
            witnesses[alpha] = _witness(op, m, n, alpha, decode(bits1), decode(bits2),
                                        bound, minimal)
    elif op in UNARY_SINGLE_OPERATIONS:
        tasks = [(op, m, config.max_cycle_length, minimal, i, config.worker_count)
                 for i in range(config.worker_count)]
        best = _merge_best(_run(_unary_single_chunk, tasks, config.worker_count))
        for alpha, (_, bits) in best.items():
            witnesses[alpha] = _witness(op, m, None, alpha, decode(bits), None, bound, minimal)
    else:
        best = _pfa_sweep(m, config.max_states, config.max_alphabet, config.worker_count)
        for alpha, (_, perms, acc) in best.items():
            witnesses[alpha] = _witness(op, m, None, alpha, pfa_from_permutations(perms, acc),
                                        None, bound, minimal=False)
    return GSet(op, m, n, bound, tuple(sorted(witnesses)), witnesses)


def find_unary_witness(op: str, m: int, n: int, alpha: int,
                       max_len: int = 14) -> Optional[WitnessPair]:
    """Lexicographically least pair of minimal cycle words realizing ``alpha``."""
    for k1, a, bits1 in unary_population(max_len, m):
        for k2, b, bits2 in unary_population(max_len, n):
            length, c = unary_combine(op, k1, a, k2, b)
            if cycle_asc(c, length) == alpha:
                return _witness(op, m, n, alpha, decode(bits1), decode(bits2),
                                {"max_cycle_length": max_len})
    return None


def find_unary_single_witness(op: str, m: int, alpha: int,
                              max_len: int = 12) -> Optional[WitnessPair]:
    best = _unary_single_chunk((op, m, max_len, True, 0, 1))
    if alpha not in best:
        return None
    return _witness(op, m, None, alpha, decode(best[alpha][1]), None,
                    {"max_cycle_length": max_len})


def find_pfa_reversal_witness(m: int, alpha: int, k_max: int = 5,
                              sigma: int = 2) -> Optional[WitnessPair]:
    best = _pfa_sweep(m, k_max, sigma)
    if alpha not in best:
        return None
    _, perms, acc = best[alpha]
    return _witness("reversal", m, None, alpha, pfa_from_permutations(perms, acc), None,
                    {"max_states": k_max, "max_alphabet": sigma}, minimal=False)


def binomial_solvability(m: int, alpha: int, cutoff: int = BINOMIAL_CUTOFF) -> Optional[int]:
    """Smallest ``k >= m`` with ``alpha * k / m == C(k, m)``, or None up to ``cutoff``."""
    for k in range(m, cutoff + 1):
        if alpha * k == m * math.comb(k, m):
            return k
    return None


# ---------------------------------------------------------------- conjectures

def conjecture_predicted(m: int, n: int, nontrivial_divisors: bool = False) -> set[int]:
    """The non-magic set predicted for intersection inside [0, nm - min(n, m)].

    The literal formula admits the divisor 1, which makes the multiples part
    cover the whole range; ``nontrivial_divisors`` drops that divisor.
    """
    cap = n * m - min(n, m)
    out = set(range(max(n, m), n + m + 1))
    for own, other in ((n, m), (m, n)):
        for t in divisors(own):
            if nontrivial_divisors and t == 1:
                continue
            out.update(t * x for x in range(cap // t + 1))
    return out


def check_conjecture_intersection(m: int, n: int, bound: int = 12,
                                  workers: int = 1) -> ClaimReport:
    if m < 1 or n < 1:
        raise InvalidInputError("m and n must be positive")
    lo, hi = max(m, n) + 1, n * m - min(n, m)
    gset = compute_gset(SweepConfig("intersection", m, n, max(bound, max(m, n) + 1),
                                    worker_count=workers))
    attained = sorted(a for a in gset.attained if lo <= a <= hi)
    details = {"interval": [lo, hi], "attained_in_interval": attained}
    verdict = "PASS"
    for label, strict in (("literal", False), ("nontrivial_divisors", True)):
        predicted = sorted(a for a in conjecture_predicted(m, n, strict) if lo <= a <= hi)
        included = set(attained) <= set(predicted)
        details[label] = {
            "predicted_in_interval": predicted,
            "inclusion": included,
            "equality": set(attained) == set(predicted),
            "unexpected": sorted(set(attained) - set(predicted)),
            "missing": sorted(set(predicted) - set(attained)),
        }
        if label == "literal" and not included:
            verdict = "COUNTEREXAMPLE"
    counterexample = None
    if verdict == "COUNTEREXAMPLE":
        counterexample = gset.witnesses[details["literal"]["unexpected"][0]]
    bounds = {"m": m, "n": n, "max_cycle_length": bound}
    return ClaimReport("conj:intersection", bounds, verdict, counterexample, (gset,), details)


def check_conjecture_reversal(m: int, k_max: int = 5, sigma_max: int = 2,
                              workers: int = 1) -> ClaimReport:
    """α = 1 must never appear; gaps above 2 cannot be proven magic by search."""
    if m < 2:
        raise InvalidInputError("the reversal conjecture concerns m >= 2")
    gset = compute_gset(SweepConfig("reversal", m, max_states=k_max,
                                    max_alphabet=sigma_max, worker_count=workers))
    attained = list(gset.attained)
    gaps = [a for a in range(2, max(attained, default=1) + 1) if a not in attained]
    details = {"attained": attained, "alpha_one_attained": 1 in attained,
               "gaps": gaps}
    counterexample = None
    if 1 in attained:
        verdict, counterexample = "COUNTEREXAMPLE", gset.witnesses[1]
    elif gaps or not attained:
        verdict = "INCONCLUSIVE"
    else:
        verdict = "PASS"
    bounds = {"m": m, "max_states": k_max, "max_alphabet": sigma_max}
    return ClaimReport("conj:reversal", bounds, verdict, counterexample, (gset,), details)


# ---------------------------------------------------------------- tail + cycle DFAs

@lru_cache(maxsize=None)
def tail_cycle_population(max_len: int, accepting: int) -> tuple:
    """Minimal unary DFAs as ``(tail_len, tail_mask, cycle_len, cycle_mask)``
    with ``tail_len + cycle_len <= max_len`` and ``accepting`` accepting states."""
    out = []
    for size in range(1, max_len + 1):
        for tail_len in range(size):
            cycle_len = size - tail_len
            for tail in range(1 << tail_len):
                t_ones = tail.bit_count()
                if t_ones > accepting:
                    continue
                for word in enumerate_unary_pfas(cycle_len, accepting - t_ones, True) \
                        if accepting - t_ones <= cycle_len else ():
                    cyc = _bits_to_mask(word.bits)
                    if tail_len and (tail >> (tail_len - 1) & 1) == (cyc >> (cycle_len - 1) & 1):
                        continue
                    out.append((tail_len, tail, cycle_len, cyc))
    return tuple(out)


def tail_cycle_dfa(tail_len: int, tail: int, cycle_len: int, cyc: int) -> Dfa:
    k = tail_len + cycle_len
    rows = tuple((q + 1 if q + 1 < k else tail_len,) for q in range(k))
    acc = [q for q in range(tail_len) if tail >> q & 1]
    acc += [tail_len + q for q in range(cycle_len) if cyc >> q & 1]
    return Dfa(k, 1, rows, 0, frozenset(acc))


def _unroll(tail_len, tail, cycle_len, cyc, total):
    span = total - tail_len
    reps = -(-span // cycle_len)
    body = _spread(cyc, cycle_len, reps * cycle_len) & ((1 << span) - 1)
    return tail | body << tail_len


def tail_cycle_intersection(x, y) -> tuple[int, int]:
    """asc of the intersection and its initially reachable accepting count."""
    t = max(x[0], y[0])
    length = x[2] * y[2] // math.gcd(x[2], y[2])
    total = t + length
    seq = _unroll(*x, total) & _unroll(*y, total)
    cyc = seq >> t
    p = cycle_period(cyc, length)
    while t and (seq >> (t - 1) & 1) == (seq >> (t - 1 + p) & 1):
        t -= 1
    alpha = (seq & ((1 << t) - 1)).bit_count() + (seq >> t & ((1 << p) - 1)).bit_count()
    return alpha, seq.bit_count()


def _tail_cycle_chunk(task):
    m, n, max_len, part, parts = task
    lefts = tail_cycle_population(max_len, m)[part::parts]
    rights = tail_cycle_population(max_len, n)
    cap = n * m - min(n, m) + 1
    best, bad_counts, pairs = {}, [], 0
    for x in lefts:
        for y in rights:
            pairs += 1
            alpha, count = tail_cycle_intersection(x, y)
            if alpha not in best:
                best[alpha] = (x, y)
            accepting_tail = (x[1] or y[1])
            if accepting_tail and count > cap and len(bad_counts) < 5:
                bad_counts.append((x, y))
    return best, bad_counts, pairs


# ---------------------------------------------------------------- claims

@dataclass(frozen=True)
class ClaimSpec:
    description: str
    defaults: dict
    exploratory: bool = False


CLAIMS = {
    "thm:intersection-magic": ClaimSpec(
        "Unary PFA intersection never attains asc in [nm-min(m,n)+1, nm-1]; "
        "also checks rectangle closure, the divisor property and the "
        "reachable-accepting-count gap on every swept pair",
        {"m": [1, 2, 3, 4], "n": [1, 2, 3, 4], "max_len": 12}),
    "cor:intersection-dfa": ClaimSpec(
        "Unary DFA (tail + cycle) intersection never attains asc in "
        "[nm-min(m,n)+2, nm-1]; product has at most nm-min(m,n)+1 reachable "
        "accepting states when an accepting state lies on a tail",
        {"m": [1, 2, 3], "n": [1, 2, 3], "max_len": 8}),
    "lemma:reversal-alpha1": ClaimSpec(
        "No PFA with asc m >= 2 has a reversal with asc 1",
        {"m": [2, 3], "states": 5, "sigma": 2}),
    "cor:quotient-range": ClaimSpec(
        "Right quotient of unary PFAs with asc m, n >= 1 attains only [1, mn]",
        {"m": [1, 2, 3], "n": [1, 2, 3], "max_len": 12}),
    "lemma:rectangle": ClaimSpec(
        "Reachable pairs of a product of unary cycles are closed under "
        "completing rectangles",
        {"max_len": 12}),
    "lemma:number-AR": ClaimSpec(
        "For a minimal PFA every state lies in the same number of reachable "
        "subset states of the reversal automaton",
        {"states": 4, "sigma": 2, "max_len": 10}),
    "lemma:AR-pfa": ClaimSpec(
        "The reachable subset reversal automaton of a PFA is a PFA",
        {"states": 4, "sigma": 2, "max_len": 10}),
    "conj:intersection": ClaimSpec(
        "Middle-interval intersection values lie in the conjectured non-magic set",
        {"m": [1, 2, 3, 4], "n": [1, 2, 3, 4], "max_len": 12}),
    "conj:reversal": ClaimSpec(
        "Reversal of PFAs with asc m >= 2 attains every alpha >= 2 and never 1",
        {"m": [2, 3], "states": 5, "sigma": 2}),
    "explore:rectangle-binary": ClaimSpec(
        "Rectangle closure for products of minimal binary PFAs (open question; "
        "counterexamples are reported, not treated as failures)",
        {"states": 3, "sigma": 2}, exploratory=True),
}


def claim_bounds(claim_id: str, m=None, n=None, max_len=None, states=None,
                 sigma=None) -> dict:
    if claim_id not in CLAIMS:
        raise InvalidInputError(f"unknown claim id {claim_id!r}")
    bounds = {key: (list(v) if isinstance(v, list) else v)
              for key, v in CLAIMS[claim_id].defaults.items()}
    for key, value in (("m", m), ("n", n)):
        if value is not None and key in bounds:
            bounds[key] = [value]
    for key, value in (("max_len", max_len), ("states", states), ("sigma", sigma)):
        if value is not None and key in bounds:
            bounds[key] = value
    return bounds


def verify_claim(claim_id: str, workers: int = 1, **overrides) -> ClaimReport:
    bounds = claim_bounds(claim_id, **overrides)
    runner = _RUNNERS[claim_id]
    return runner(bounds, workers)


def _verify_intersection_magic(bounds, workers):
    details, gsets, counterexample = {}, [], None
    for m, n in itertools.product(bounds["m"], bounds["n"]):
        max_len = max(bounds["max_len"], max(m, n) + 1)
        lo, hi = n * m - min(n, m) + 1, n * m - 1
        gset = compute_gset(SweepConfig("intersection", m, n, max_len, worker_count=workers))
        gsets.append(gset)
        bad = [a for a in gset.attained if lo <= a <= hi]
        a, b, _ = _sorted_pair("intersection", m, n)
        checks = _unary_pair_sweep("intersection", a, b, max_len, True, workers)[1]
        details[f"{m},{n}"] = {"magic_interval": [lo, hi], "attained_in_interval": bad,
                               "structural_checks": checks}
        if bad and counterexample is None:
            counterexample = gset.witnesses[bad[0]]
        if checks and (checks["count_interval_total"] or checks["divisor_total"]
                       or checks["rectangle_total"]) and counterexample is None:
            bits1, bits2 = (checks["count_interval"] + checks["divisor"]
                            + checks["rectangle"])[0]
            A, B = decode(bits1), decode(bits2)
            if (m, n) != (a, b):
                A, B = B, A
            counterexample = WitnessPair("thm:intersection-magic", "intersection", A, B,
                                         m, n, asc(ops.intersection(A, B)), "search-derived")
    verdict = "COUNTEREXAMPLE" if counterexample else "PASS"
    return ClaimReport("thm:intersection-magic", bounds, verdict, counterexample,
                       tuple(gsets), details)


def _verify_intersection_dfa(bounds, workers):
    details, counterexample = {}, None
    for m, n in itertools.product(bounds["m"], bounds["n"]):
        tasks = [(m, n, bounds["max_len"], i, workers) for i in range(workers)]
        results = _run(_tail_cycle_chunk, tasks, workers)
        best = _merge_best(r[0] for r in results)
        bad_counts = sorted(k for r in results for k in r[1])
        lo, hi = n * m - min(n, m) + 2, n * m - 1
        bad = sorted(a for a in best if lo <= a <= hi)
        details[f"{m},{n}"] = {
            "magic_interval": [lo, hi], "attained": sorted(best),
            "attained_in_interval": bad, "tail_count_violations": len(bad_counts),
            "pairs": sum(r[2] for r in results)}
        culprit = best[bad[0]] if bad else (bad_counts[0] if bad_counts else None)
        if culprit and counterexample is None:
            A, B = tail_cycle_dfa(*culprit[0]), tail_cycle_dfa(*culprit[1])
            counterexample = WitnessPair("cor:intersection-dfa", "intersection", A, B, m, n,
                                         asc(ops.intersection(A, B)), "search-derived")
    verdict = "COUNTEREXAMPLE" if counterexample else "PASS"
    return ClaimReport("cor:intersection-dfa", bounds, verdict, counterexample, (), details)


def _verify_reversal_alpha1(bounds, workers):
    details, gsets, counterexample = {}, [], None
    for m in bounds["m"]:
        gset = compute_gset(SweepConfig("reversal", m, max_states=bounds["states"],
                                        max_alphabet=bounds["sigma"], worker_count=workers))
        gsets.append(gset)
        details[str(m)] = {"attained": list(gset.attained)}
        if m >= 2 and 1 in gset.attained and counterexample is None:
            counterexample = gset.witnesses[1]
    verdict = "COUNTEREXAMPLE" if counterexample else "PASS"
    return ClaimReport("lemma:reversal-alpha1", bounds, verdict, counterexample,
                       tuple(gsets), details)


def _verify_quotient_range(bounds, workers):
    details, gsets, counterexample = {}, [], None
    for m, n in itertools.product(bounds["m"], bounds["n"]):
        max_len = max(bounds["max_len"], max(m, n) + 1)
        gset = compute_gset(SweepConfig("quotient", m, n, max_len, worker_count=workers))
        gsets.append(gset)
        bad = [a for a in gset.attained if not 1 <= a <= m * n]
        details[f"{m},{n}"] = {"range": [1, m * n], "attained": list(gset.attained),
                               "outside": bad}
        if bad and counterexample is None:
            counterexample = gset.witnesses[bad[0]]
    verdict = "COUNTEREXAMPLE" if counterexample else "PASS"
    return ClaimReport("cor:quotient-range", bounds, verdict, counterexample,
                       tuple(gsets), details)


def _verify_rectangle(bounds, workers):
    checked, counterexample = 0, None
    max_len = bounds["max_len"]
    for k1 in range(1, max_len + 1):
        for k2 in range(1, max_len + 1):
            # closure depends only on the cycle lengths, not the accepting sets
            A, B = decode("1" + "0" * (k1 - 1)), decode("1" + "0" * (k2 - 1))
            checked += 1
            if ops.rectangle_violations(A, B) and counterexample is None:
                counterexample = WitnessPair("lemma:rectangle", "intersection", A, B, 1, 1,
                                             asc(ops.intersection(A, B)), "search-derived")
    verdict = "COUNTEREXAMPLE" if counterexample else "PASS"
    return ClaimReport("lemma:rectangle", bounds, verdict, counterexample, (),
                       {"length_pairs": checked})


def pfa_population(k_max: int, sigma: int, unary_max_len: int = 0) -> Iterator[Dfa]:
    """All PFAs with up to ``k_max`` states over ``sigma`` letters, then all
    unary cycle words up to ``unary_max_len``."""
    for k in range(1, k_max + 1):
        for count in range(k + 1):
            yield from enumerate_pfas(k, sigma, count)
    for length in range(1, unary_max_len + 1):
        for bits in itertools.product("01", repeat=length):
            yield decode("".join(bits))


def number_ar_counts(A: Dfa) -> dict[int, int]:
    """For each state q, how many reachable subset states contain q."""
    subsets = ops.reversal_subsets(A)
    return {q: sum(1 for s in subsets if q in s) for q in range(A.state_count)}


def _verify_number_ar(bounds, workers):
    checked, bad = 0, None
    for A in pfa_population(bounds["states"], bounds["sigma"], bounds["max_len"]):
        if sc(A) != A.state_count:
            continue
        checked += 1
        counts = set(number_ar_counts(A).values())
        # with F empty the only subset is the empty one, so x = 0
        if len(counts) != 1 or (A.accepting and min(counts) < 1):
            bad = A
            break
    return _single_automaton_report("lemma:number-AR", bounds, bad, checked)


def _verify_ar_pfa(bounds, workers):
    checked, bad = 0, None
    for A in pfa_population(bounds["states"], bounds["sigma"], bounds["max_len"]):
        checked += 1
        if not is_permutation(ops.reverse_pfa(A)):
            bad = A
            break
    return _single_automaton_report("lemma:AR-pfa", bounds, bad, checked)


def _single_automaton_report(claim_id, bounds, bad, checked):
    counterexample = None
    if bad is not None:
        counterexample = WitnessPair(claim_id, "reversal", bad, None, asc(bad), None,
                                     asc(ops.reverse_pfa(bad)), "search-derived",
                                     minimal_inputs=False)
    verdict = "COUNTEREXAMPLE" if bad is not None else "PASS"
    return ClaimReport(claim_id, bounds, verdict, counterexample, (),
                       {"automata_checked": checked})


def _verify_conj_intersection(bounds, workers):
    reports = [check_conjecture_intersection(m, n, bounds["max_len"], workers)
               for m, n in itertools.product(bounds["m"], bounds["n"])]
    return _combine("conj:intersection", bounds, reports,
                    lambda r: f"{r.bounds['m']},{r.bounds['n']}")


def _verify_conj_reversal(bounds, workers):
    reports = [check_conjecture_reversal(m, bounds["states"], bounds["sigma"], workers)
               for m in bounds["m"]]
    return _combine("conj:reversal", bounds, reports, lambda r: str(r.bounds["m"]))


def _combine(claim_id, bounds, reports, label):
    verdicts = {r.verdict for r in reports}
    verdict = ("COUNTEREXAMPLE" if "COUNTEREXAMPLE" in verdicts
               else "INCONCLUSIVE" if "INCONCLUSIVE" in verdicts else "PASS")
    counterexample = next((r.counterexample for r in reports if r.counterexample), None)
    attained = tuple(g for r in reports for g in r.attained)
    details = {label(r): dict(r.details, verdict=r.verdict) for r in reports}
    return ClaimReport(claim_id, bounds, verdict, counterexample, attained, details)


def _explore_rectangle_binary(bounds, workers):
    minimal = [A for A in pfa_population(bounds["states"], bounds["sigma"])
               if sc(A) == A.state_count]
    found = []
    for A in minimal:
        for B in minimal:
            if ops.rectangle_violations(A, B):
                found.append((A, B))
    counterexample = None
    if found:
        A, B = found[0]
        counterexample = WitnessPair("explore:rectangle-binary", "intersection", A, B,
                                     asc(A), asc(B), asc(ops.intersection(A, B)),
                                     "search-derived")
    verdict = "COUNTEREXAMPLE" if found else "PASS"
    return ClaimReport("explore:rectangle-binary", bounds, verdict, counterexample, (),
                       {"minimal_pfas": len(minimal), "violating_pairs": len(found)})


_RUNNERS = {
    "thm:intersection-magic": _verify_intersection_magic,
    "cor:intersection-dfa": _verify_intersection_dfa,
    "lemma:reversal-alpha1": _verify_reversal_alpha1,
    "cor:quotient-range": _verify_quotient_range,
    "lemma:rectangle": _verify_rectangle,
    "lemma:number-AR": _verify_number_ar,
    "lemma:AR-pfa": _verify_ar_pfa,
    "conj:intersection": _verify_conj_intersection,
    "conj:reversal": _verify_conj_reversal,
    "explore:rectangle-binary": _explore_rectangle_binary,
}


def union_stratum(m: int, n: int, alpha: int) -> Optional[int]:
    """Smallest ``i >= 1`` with ``alpha`` in ``[max(i*small, big), i*small + big]``."""
    big, small = max(m, n), min(m, n)
    if small < 1 or alpha < big:
        return None
    i = 1
    while i * small <= alpha:
        if max(i * small, big) <= alpha <= i * small + big:
            return i
        i += 1
    return None
