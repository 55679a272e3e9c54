"""Language operations on DFAs, including the permutation-specific reversal
and quotient constructions.

Every construction materializes only initially reachable states.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable

from .automata import Dfa, is_permutation
from .errors import DomainError, InvalidInputError


@dataclass(frozen=True)
class Nfa:
    state_count: int
    alphabet_size: int
    transitions: dict = field(default_factory=dict)  # (q, a) -> frozenset
    initial_states: frozenset[int] = frozenset()
    accepting: frozenset[int] = frozenset()
    epsilon: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        k = self.state_count
        idx = set(self.initial_states) | set(self.accepting)
        for (q, a), targets in self.transitions.items():
            if not 0 <= a < self.alphabet_size:
                raise InvalidInputError(f"symbol {a} out of range")
            idx.add(q)
            idx.update(targets)
        for p, q in self.epsilon:
            idx.update((p, q))
        if any(not 0 <= q < k for q in idx):
            raise InvalidInputError("NFA state index out of range")


def determinize(nfa: Nfa) -> Dfa:
    """Subset construction over reachable subsets (the empty set becomes a sink)."""
    eps: dict[int, list[int]] = {}
    for p, q in nfa.epsilon:
        eps.setdefault(p, []).append(q)

    def close(states):
        seen = set(states)
        stack = list(seen)
        while stack:
            p = stack.pop()
            for q in eps.get(p, ()):
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return frozenset(seen)

    start = close(nfa.initial_states)
    index = {start: 0}
    subsets = [start]
    rows = []
    queue = deque([start])
    while queue:
        current = queue.popleft()
        row = []
        for a in range(nfa.alphabet_size):
            nxt = set()
            for q in current:
                nxt.update(nfa.transitions.get((q, a), ()))
            nxt = close(nxt)
            if nxt not in index:
                index[nxt] = len(subsets)
                subsets.append(nxt)
                queue.append(nxt)
            row.append(index[nxt])
        rows.append(tuple(row))
    accepting = frozenset(i for i, s in enumerate(subsets) if s & nfa.accepting)
    return Dfa(len(subsets), nfa.alphabet_size, tuple(rows), 0, accepting)


def dfa_to_nfa(A: Dfa) -> Nfa:
    trans = {(q, a): frozenset({t}) for q, row in enumerate(A.transitions)
             for a, t in enumerate(row)}
    return Nfa(A.state_count, A.alphabet_size, trans, frozenset({A.initial}), A.accepting)


def complement(A: Dfa) -> Dfa:
    return A.with_accepting(set(range(A.state_count)) - A.accepting)


COMBINERS: dict[str, Callable[[bool, bool], bool]] = {
    "or": lambda x, y: x or y,
    "and": lambda x, y: x and y,
    "and_not": lambda x, y: x and not y,
}


def _check_alphabets(A: Dfa, B: Dfa):
    if A.alphabet_size != B.alphabet_size:
        raise InvalidInputError(
            f"alphabet sizes differ: {A.alphabet_size} vs {B.alphabet_size}")


def reachable_pairs(A: Dfa, B: Dfa) -> list[tuple[int, int]]:
    """Initially reachable pairs of the cross product, in BFS order."""
    _check_alphabets(A, B)
    start = (A.initial, B.initial)
    order = [start]
    seen = {start}
    queue = deque(order)
    while queue:
        p, q = queue.popleft()
        for a in range(A.alphabet_size):
            nxt = (A.transitions[p][a], B.transitions[q][a])
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    return order


def product(A: Dfa, B: Dfa, combine: str | Callable[[bool, bool], bool]) -> Dfa:
    """Cross product over reachable pairs.  ``combine`` is ``"or"``, ``"and"``,
    ``"and_not"`` or a boolean function of the two acceptance flags."""
    fn = COMBINERS[combine] if isinstance(combine, str) else combine
    pairs = reachable_pairs(A, B)
    index = {pq: i for i, pq in enumerate(pairs)}
    rows = tuple(
        tuple(index[A.transitions[p][a], B.transitions[q][a]]
              for a in range(A.alphabet_size))
        for p, q in pairs)
    accepting = frozenset(
        i for i, (p, q) in enumerate(pairs) if fn(p in A.accepting, q in B.accepting))
    return Dfa(len(pairs), A.alphabet_size, rows, 0, accepting)


def union(A: Dfa, B: Dfa) -> Dfa:
    return product(A, B, "or")


def intersection(A: Dfa, B: Dfa) -> Dfa:
    return product(A, B, "and")


def difference(A: Dfa, B: Dfa) -> Dfa:
    return product(A, B, "and_not")


def initially_reachable_accepting_count(A: Dfa, B: Dfa) -> int:
    return sum(1 for p, q in reachable_pairs(A, B)
               if p in A.accepting and q in B.accepting)


def _closure_nfa(A: Dfa, accept_empty: bool) -> Nfa:
    # fresh state k enters A by epsilon; accepting states loop back to A's start
    k = A.state_count
    trans = {(q, a): frozenset({t}) for q, row in enumerate(A.transitions)
             for a, t in enumerate(row)}
    eps = {(k, A.initial)} | {(f, A.initial) for f in A.accepting}
    accepting = set(A.accepting) | ({k} if accept_empty else set())
    return Nfa(k + 1, A.alphabet_size, trans, frozenset({k}), frozenset(accepting),
               frozenset(eps))


def star(A: Dfa) -> Dfa:
    return determinize(_closure_nfa(A, accept_empty=True))


def plus(A: Dfa) -> Dfa:
    return determinize(_closure_nfa(A, accept_empty=False))


def _inverse(perm: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for q, t in enumerate(perm):
        inv[t] = q
    return tuple(inv)


def reversal_subsets(A: Dfa) -> list[frozenset[int]]:
    """Initially reachable states of the fixed-cardinality subset automaton
    for L(A)^R, in BFS order.  Subset ``R`` moves on ``a`` to the preimage of
    ``R`` under ``a``; the start subset is the accepting set of ``A``."""
    if not is_permutation(A):
        raise DomainError("reverse_pfa requires a permutation automaton")
    return _reversal_walk(A)[0]


def _reversal_walk(A: Dfa):
    inverses = [_inverse(A.letter_map(a)) for a in range(A.alphabet_size)]
    start = frozenset(A.accepting)
    index = {start: 0}
    subsets = [start]
    rows = []
    queue = deque([start])
    while queue:
        current = queue.popleft()
        row = []
        for inv in inverses:
            nxt = frozenset(inv[q] for q in current)
            if nxt not in index:
                index[nxt] = len(subsets)
                subsets.append(nxt)
                queue.append(nxt)
            row.append(index[nxt])
        rows.append(tuple(row))
    return subsets, rows


def reverse_pfa(A: Dfa) -> Dfa:
    """Deterministic automaton for L(A)^R built on |F|-element subsets."""
    if not is_permutation(A):
        raise DomainError("reverse_pfa requires a permutation automaton")
    subsets, rows = _reversal_walk(A)
    accepting = frozenset(i for i, s in enumerate(subsets) if A.initial in s)
    return Dfa(len(subsets), A.alphabet_size, tuple(rows), 0, accepting)


def reverse_generic(A: Dfa) -> Dfa:
    """Reverse every transition, swap initial and accepting roles, determinize."""
    trans: dict[tuple[int, int], set[int]] = {}
    for q, row in enumerate(A.transitions):
        for a, t in enumerate(row):
            trans.setdefault((t, a), set()).add(q)
    nfa = Nfa(A.state_count, A.alphabet_size,
              {key: frozenset(v) for key, v in trans.items()},
              frozenset(A.accepting), frozenset({A.initial}))
    return determinize(nfa)


def quotient_accepting_set(A: Dfa, B: Dfa) -> frozenset[int]:
    """States ``q`` of ``A`` with ``q.w`` accepting for some ``w`` in L(B)."""
    _check_alphabets(A, B)
    sigma = A.alphabet_size
    # backward search over Q_A x Q_B from the accepting pairs
    preds: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for p in range(A.state_count):
        for q in range(B.state_count):
            for a in range(sigma):
                preds.setdefault((A.transitions[p][a], B.transitions[q][a]), []).append((p, q))
    targets = [(p, q) for p in A.accepting for q in B.accepting]
    seen = set(targets)
    stack = list(targets)
    while stack:
        pair = stack.pop()
        for prev in preds.get(pair, ()):
            if prev not in seen:
                seen.add(prev)
                stack.append(prev)
    return frozenset(p for p in range(A.state_count) if (p, B.initial) in seen)


def right_quotient(A: Dfa, B: Dfa) -> Dfa:
    """L(A) L(B)^{-1}: the structure of ``A`` with a new accepting set."""
    return A.with_accepting(quotient_accepting_set(A, B))


def left_quotient(B: Dfa, A: Dfa) -> Dfa:
    """L(B)^{-1} L(A): start ``A`` from every state ``s.w`` with ``w`` in L(B)."""
    starts = frozenset(p for p, q in reachable_pairs(A, B) if q in B.accepting)
    nfa = dfa_to_nfa(A)
    return determinize(Nfa(nfa.state_count, nfa.alphabet_size, nfa.transitions,
                           starts, nfa.accepting))


def rectangle_violations(A: Dfa, B: Dfa) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Reachable pairs ``(q0,p0)`` for which some ``(q1,p0)`` and ``(q0,p1)``
    are reachable but ``(q1,p1)`` is not.  Returns ``((q0,p0),(q1,p1))`` items."""
    pairs = set(reachable_pairs(A, B))
    by_first: dict[int, set[int]] = {}
    by_second: dict[int, set[int]] = {}
    for q, p in pairs:
        by_first.setdefault(q, set()).add(p)
        by_second.setdefault(p, set()).add(q)
    bad = []
    for q0, p0 in sorted(pairs):
        for q1 in sorted(by_second[p0]):
            for p1 in sorted(by_first[q0]):
                if (q1, p1) not in pairs:
                    bad.append(((q0, p0), (q1, p1)))
    return bad
