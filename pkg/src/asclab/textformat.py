"""Line-based text format for automata.

Either a single ``word:<bits>`` line for a unary cycle automaton, or::

    dfa
    states 3
    alphabet 2
    initial 0
    accepting 0 2
    trans 0 0 1
    ...

with one ``trans`` line per (state, symbol) pair.  Blank lines and ``#``
comments are ignored.
"""

from __future__ import annotations

from pathlib import Path

from .automata import Dfa, decode, encode, is_permutation, reachable
from .errors import AsclabError, ParseError

_HEADER_KEYS = ("states", "alphabet", "initial", "accepting")


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def parse_automaton(text: str) -> Dfa:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines:
        raise ParseError("empty automaton description")

    lineno, first = lines[0]
    if first.startswith("word:"):
        if len(lines) != 1:
            raise ParseError(f"line {lines[1][0]}: trailing content after word line")
        try:
            return decode(first[len("word:"):].strip())
        except AsclabError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if first != "dfa":
        raise ParseError(f"line {lineno}: expected 'dfa' or 'word:<bits>'")

    header: dict[str, list[int]] = {}
    trans: dict[tuple[int, int], int] = {}
    for lineno, line in lines[1:]:
        key, *rest = line.split()
        if key in _HEADER_KEYS:
            if key in header:
                raise ParseError(f"line {lineno}: duplicate '{key}'")
            values = _ints(rest, lineno)
            if key != "accepting" and len(values) != 1:
                raise ParseError(f"line {lineno}: '{key}' takes one integer")
            header[key] = values
        elif key == "trans":
            values = _ints(rest, lineno)
            if len(values) != 3:
                raise ParseError(f"line {lineno}: 'trans' takes <q> <sym> <q'>")
            q, a, t = values
            if (q, a) in trans:
                raise ParseError(f"line {lineno}: duplicate transition for ({q}, {a})")
            trans[q, a] = t
        else:
            raise ParseError(f"line {lineno}: unknown keyword {key!r}")

    missing = [k for k in _HEADER_KEYS if k not in header]
    if missing:
        raise ParseError(f"missing header line(s): {', '.join(missing)}")
    k, sigma = header["states"][0], header["alphabet"][0]
    if k < 1 or sigma < 1:
        raise ParseError("states and alphabet must be positive")
    extra = [key for key in trans if not (0 <= key[0] < k and 0 <= key[1] < sigma)]
    if extra:
        raise ParseError(f"transition {extra[0]} outside the declared sizes")
    absent = [(q, a) for q in range(k) for a in range(sigma) if (q, a) not in trans]
    if absent:
        raise ParseError(f"incomplete transition table: no transition for {absent[0]}")
    rows = tuple(tuple(trans[q, a] for a in range(sigma)) for q in range(k))
    try:
        return Dfa(k, sigma, rows, header["initial"][0], frozenset(header["accepting"]))
    except AsclabError as exc:
        raise ParseError(str(exc)) from None


def load_automaton(path) -> Dfa:
    return parse_automaton(Path(path).read_text(encoding="utf-8"))


def _is_single_cycle(A: Dfa) -> bool:
    return (A.alphabet_size == 1 and is_permutation(A)
            and len(reachable(A)) == A.state_count)


def format_automaton(A: Dfa, prefer_word: bool = True) -> str:
    """Serialize ``A``; unary single cycles become ``word:`` lines when allowed.

    A ``word:`` line renumbers states along the cycle starting at the initial
    state, so it is used only when that numbering is already the identity.
    """
    if prefer_word and _is_single_cycle(A):
        w = encode(A)
        if decode(w) == A:
            return f"word:{w.bits}\n"
    out = [
        "dfa",
        f"states {A.state_count}",
        f"alphabet {A.alphabet_size}",
        f"initial {A.initial}",
        " ".join(["accepting"] + [str(q) for q in sorted(A.accepting)]),
    ]
    for q, row in enumerate(A.transitions):
        for a, t in enumerate(row):
            out.append(f"trans {q} {a} {t}")
    return "\n".join(out) + "\n"
