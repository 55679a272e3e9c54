"""Deterministic automata, the unary cycle encoding, and minimization.

Automata are immutable values.  States and symbols are plain integers
``0..state_count-1`` and ``0..alphabet_size-1``; ``transitions[q][a]`` is the
successor of ``q`` on symbol ``a``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, InvalidInputError


@dataclass(frozen=True)
class Dfa:
    state_count: int
    alphabet_size: int
    transitions: tuple[tuple[int, ...], ...]
    initial: int = 0
    accepting: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        k, sigma = self.state_count, self.alphabet_size
        if k < 1 or sigma < 1:
            raise InvalidInputError("state_count and alphabet_size must be positive")
        rows = tuple(tuple(int(t) for t in row) for row in self.transitions)
        if len(rows) != k or any(len(row) != sigma for row in rows):
            raise InvalidInputError("transition table must be complete")
        if any(not 0 <= t < k for row in rows for t in row):
            raise InvalidInputError("transition target out of range")
        if not 0 <= self.initial < k:
            raise InvalidInputError(f"initial state {self.initial} out of range")
        acc = frozenset(int(q) for q in self.accepting)
        if any(not 0 <= q < k for q in acc):
            raise InvalidInputError("accepting state out of range")
        object.__setattr__(self, "transitions", rows)
        object.__setattr__(self, "accepting", acc)

    def step(self, state: int, symbol: int) -> int:
        return self.transitions[state][symbol]

    def letter_map(self, symbol: int) -> tuple[int, ...]:
        """The state map induced by ``symbol``."""
        return tuple(row[symbol] for row in self.transitions)

    def run(self, word: Sequence[int], state: int | None = None) -> int:
        q = self.initial if state is None else state
        for a in word:
            q = self.transitions[q][a]
        return q

    def with_accepting(self, accepting: Iterable[int]) -> "Dfa":
        return Dfa(self.state_count, self.alphabet_size, self.transitions,
                   self.initial, frozenset(accepting))


@dataclass(frozen=True)
class UnaryPfaWord:
    """Binary word describing a unary single-cycle permutation automaton.

    State ``i`` moves to ``i+1 mod len(bits)`` and is accepting iff
    ``bits[i] == "1"``.  Every position, including the last, is eligible.
    """

    bits: str

    def __post_init__(self):
        bits = str(self.bits)
        if not bits or set(bits) - {"0", "1"}:
            raise InvalidInputError(f"not a nonempty binary word: {self.bits!r}")
        object.__setattr__(self, "bits", bits)

    def __len__(self):
        return len(self.bits)

    def __str__(self):
        return self.bits

    @property
    def ones(self) -> int:
        return self.bits.count("1")

    @property
    def accepting_positions(self) -> frozenset[int]:
        return frozenset(i for i, b in enumerate(self.bits) if b == "1")


@dataclass(frozen=True)
class ResidueSpec:
    """The language union of ``a^i (a^modulus)^*`` over ``i`` in ``residues``."""

    residues: frozenset[int]
    modulus: int

    def __post_init__(self):
        res = frozenset(int(i) for i in self.residues)
        if self.modulus < 1:
            raise InvalidInputError("modulus must be positive")
        if any(i < 0 or i >= self.modulus for i in res):
            raise InvalidInputError(
                f"residues {sorted(res)} must lie in [0, {self.modulus - 1}]")
        object.__setattr__(self, "residues", res)


@dataclass(frozen=True)
class NerodePartition:
    blocks: frozenset[frozenset[int]]

    @classmethod
    def from_classes(cls, classes: dict[int, object]) -> "NerodePartition":
        """Build from a ``state -> class label`` map."""
        groups: dict[object, set[int]] = {}
        for q, label in classes.items():
            groups.setdefault(label, set()).add(q)
        return cls(frozenset(frozenset(g) for g in groups.values()))

    def __len__(self):
        return len(self.blocks)

    def as_sorted(self) -> list[list[int]]:
        return sorted(sorted(b) for b in self.blocks)


def _as_word(w) -> UnaryPfaWord:
    return w if isinstance(w, UnaryPfaWord) else UnaryPfaWord(w)


def cycle_dfa(length: int, accepting: Iterable[int]) -> Dfa:
    rows = tuple(((i + 1) % length,) for i in range(length))
    return Dfa(length, 1, rows, 0, frozenset(accepting))


def decode(w) -> Dfa:
    """The unary cycle automaton described by the binary word ``w``."""
    w = _as_word(w)
    return cycle_dfa(len(w), w.accepting_positions)


def encode(A: Dfa) -> UnaryPfaWord:
    """Inverse of :func:`decode` for unary single-cycle permutation automata."""
    if A.alphabet_size != 1:
        raise DomainError("encode requires a unary automaton")
    if not is_permutation(A):
        raise DomainError("encode requires a permutation automaton")
    bits = []
    q = A.initial
    for _ in range(A.state_count):
        bits.append("1" if q in A.accepting else "0")
        q = A.transitions[q][0]
    if len(reachable(A)) != A.state_count:
        raise DomainError("encode requires a single cycle through the initial state")
    return UnaryPfaWord("".join(bits))


def residue_pfa(spec: ResidueSpec) -> Dfa:
    return cycle_dfa(spec.modulus, spec.residues)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def is_unary_pfa_minimal(w) -> bool:
    """True iff no proper divisor of the cycle length is a period of ``w``."""
    w = _as_word(w)
    length, acc = len(w), w.accepting_positions
    for t in divisors(length)[:-1]:
        if all((i + t) % length in acc for i in acc):
            return False
    return True


def empty_dfa(alphabet_size: int = 1) -> Dfa:
    return Dfa(1, alphabet_size, ((0,) * alphabet_size,), 0, frozenset())


def universal_dfa(alphabet_size: int = 1) -> Dfa:
    return Dfa(1, alphabet_size, ((0,) * alphabet_size,), 0, frozenset({0}))


def epsilon_dfa(alphabet_size: int = 1) -> Dfa:
    """Accepts only the empty word."""
    return Dfa(2, alphabet_size, ((1,) * alphabet_size, (1,) * alphabet_size),
               0, frozenset({0}))


def reachable(A: Dfa) -> frozenset[int]:
    return frozenset(_bfs_order(A))


def _bfs_order(A: Dfa) -> list[int]:
    seen = {A.initial}
    order = [A.initial]
    queue = deque(order)
    while queue:
        q = queue.popleft()
        for t in A.transitions[q]:
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return order


def _refine(A: Dfa) -> tuple[list[int], dict[int, int]]:
    """Moore partition refinement on the reachable part.

    Returns the reachable states in BFS order and a ``state -> block id`` map.
    """
    order = _bfs_order(A)
    acc = A.accepting
    rows = A.transitions
    cls = {q: (1 if q in acc else 0) for q in order}
    count = len(set(cls.values()))
    while True:
        ids: dict[tuple, int] = {}
        new = {}
        for q in order:
            sig = (cls[q],) + tuple(cls[t] for t in rows[q])
            new[q] = ids.setdefault(sig, len(ids))
        cls = new
        if len(ids) == count:
            return order, cls
        count = len(ids)


def refine_partition(A: Dfa) -> NerodePartition:
    """Nerode partition of the reachable states, computed by refinement."""
    _, cls = _refine(A)
    return NerodePartition.from_classes(cls)


def minimize(A: Dfa) -> Dfa:
    """Canonical minimal DFA: states numbered in BFS order, symbols ascending."""
    order, cls = _refine(A)
    rep: dict[int, int] = {}
    for q in order:
        rep.setdefault(cls[q], q)
    number = {cls[A.initial]: 0}
    queue = deque([cls[A.initial]])
    rows = []
    while queue:
        b = queue.popleft()
        row = []
        for t in A.transitions[rep[b]]:
            tb = cls[t]
            if tb not in number:
                number[tb] = len(number)
                queue.append(tb)
            row.append(number[tb])
        rows.append(tuple(row))
    accepting = frozenset(number[b] for b, q in rep.items() if q in A.accepting)
    return Dfa(len(rows), A.alphabet_size, tuple(rows), 0, accepting)


def nerode_oracle(A: Dfa) -> NerodePartition:
    """Brute-force Nerode partition: compare acceptance on every word shorter
    than ``state_count``.  Meant as a test oracle, not for production use."""
    k, sigma = A.state_count, A.alphabet_size
    delta = np.asarray(A.transitions, dtype=np.int64)
    acc = np.zeros(k, dtype=bool)
    acc[list(A.accepting)] = True
    # level[r, q] = q . w_r for every word w_r of the current length
    level = np.arange(k, dtype=np.int64)[None, :]
    columns = [acc[level]]
    for _ in range(k - 1):
        level = np.concatenate([delta[level, a] for a in range(sigma)], axis=0)
        columns.append(acc[level])
    table = np.concatenate(columns, axis=0)
    return NerodePartition.from_classes(
        {q: table[:, q].tobytes() for q in reachable(A)})


def sc(A: Dfa) -> int:
    return len(set(_refine(A)[1].values()))


def asc(A: Dfa) -> int:
    """Accepting state complexity of L(A); the empty language has asc 0."""
    _, cls = _refine(A)
    return len({cls[q] for q in cls if q in A.accepting})


def is_minimal(A: Dfa) -> bool:
    return sc(A) == A.state_count


def is_permutation(A: Dfa) -> bool:
    k = A.state_count
    return all(len(set(A.letter_map(a))) == k for a in range(A.alphabet_size))


def parse_word(word, alphabet_size: int) -> tuple[int, ...]:
    """Symbols from a sequence of ints or a string over ``a, b, c, ...``."""
    if isinstance(word, str):
        symbols = tuple(ord(c) - ord("a") for c in word)
    else:
        symbols = tuple(int(a) for a in word)
    for a in symbols:
        if not 0 <= a < alphabet_size:
            raise InvalidInputError(f"symbol {a} outside alphabet of size {alphabet_size}")
    return symbols


def accepts(A: Dfa, word) -> bool:
    return A.run(parse_word(word, A.alphabet_size)) in A.accepting


def _product_distinguishable(A: Dfa, B: Dfa) -> bool:
    start = (A.initial, B.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        if (p in A.accepting) != (q in B.accepting):
            return True
        for a in range(A.alphabet_size):
            nxt = (A.transitions[p][a], B.transitions[q][a])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


def equivalent(A: Dfa, B: Dfa, method: str = "product") -> bool:
    """Language equality, by product search or canonical-form comparison."""
    if A.alphabet_size != B.alphabet_size:
        raise InvalidInputError("alphabet sizes differ")
    if method == "product":
        return not _product_distinguishable(A, B)
    if method == "minimize":
        return minimize(A) == minimize(B)
    raise InvalidInputError(f"unknown method {method!r}")
