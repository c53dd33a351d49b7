"""Splitting a dual braid into lower-strand slices and the normal form
built from them.

A braid of the n-strand dual monoid is peeled from the right: first the
maximal right-divisor leaving strand n unbraided, then (after turning by
one notch) the maximal right-divisor leaving strand 1 unbraided, and so
on cyclically.  Concatenating the turned slices back reproduces the
braid, and recursing on the slices yields a unique normal word.  The
fraction form extends the normal form to arbitrary braids as a power of
d1.<n>^-1 followed by a normal positive part.
"""
from __future__ import annotations

import dataclasses
import functools

from .garside import (
    DualBraid,
    InvariantViolation,
    _RightEngine,
    _shift_pair,
    delta_word_atoms,
    engine_from,
    to_a_word,
)
from .words import BandLetter, DLetter, SigmaLetter, Word, band, dletter, free_reduce, phi, to_sigma

Pair = tuple[int, int]


@dataclasses.dataclass(frozen=True)
class Splitting:
    """The slice sequence (w_b, ..., w_1) of a braid.

    Entries are positive a-words over strands 1..n-1, each already in
    normal form, carried in ambient strand count n.  Breadth 0 flags the
    trivial braid, whose splitting is not otherwise defined.
    """

    n: int
    entries: tuple[Word, ...]

    @property
    def breadth(self) -> int:
        return len(self.entries)

    def entry(self, k: int) -> Word:
        """w_k, counting 1-based from the right end."""
        return self.entries[len(self.entries) - k]


@dataclasses.dataclass(frozen=True)
class RotNF:
    """Fraction form: depth t and normal positive part w.

    The represented braid is d1.<n>^-t followed by w; when t > 0 the
    positive part is not left-divisible by the full turn.
    """

    n: int
    depth: int
    word: Word

    def to_word(self) -> Word:
        neg = (dletter(1, self.n, -1),) * self.depth
        return Word(self.n, neg + self.word.letters)

    @property
    def nlength(self) -> int:
        return self.depth + len(self.word)


def _avoided_strand(n: int, k: int) -> int:
    """Strand left unbraided by the k-th slice (k is 1-based)."""
    return (n + k - 2) % n + 1


def _split_atoms(n: int, pairs: list[Pair]) -> list[list[Pair]]:
    """Slice atom lists, w_1 first, already turned back to strands < n."""
    eng = _RightEngine(n).feed(pairs)
    entries: list[list[Pair]] = []
    k = 1
    idle = 0
    while not eng.is_trivial():
        avoid = _avoided_strand(n, k)
        tau = eng.strip_tail(lambda p, q, a=avoid: p != a and q != a)
        idle = 0 if tau else idle + 1
        if idle >= 3:
            raise InvariantViolation("splitting stalled on a nontrivial remainder")
        entries.append([_shift_pair(p, q, -(k - 1), n) for p, q in tau])
        k += 1
    return entries


def _normal_atoms(n: int, pairs: list[Pair]) -> list[Pair]:
    """Atoms of the normal word equivalent to the given positive word."""
    if n == 2 or not pairs:
        return list(pairs)
    parts = _split_atoms(n, pairs)
    out: list[Pair] = []
    for k in range(len(parts), 0, -1):
        sub = _normal_atoms(n - 1, parts[k - 1])
        out.extend(_shift_pair(p, q, k - 1, n) for p, q in sub)
    return out


def _pairs_word(n: int, pairs: list[Pair]) -> Word:
    return Word(n, tuple(band(p, q) for p, q in pairs))


def phi_splitting(beta: DualBraid) -> Splitting:
    """The slice sequence of a braid of the dual monoid; entries normal."""
    n = beta.n
    if n < 3:
        raise ValueError("splitting needs at least 3 strands")
    pairs = [(x.p, x.q) for x in to_a_word(beta)]
    parts = _split_atoms(n, pairs)
    entries = tuple(
        _pairs_word(n, _normal_atoms(n - 1, parts[k])) for k in range(len(parts) - 1, -1, -1)
    )
    return Splitting(n, entries)


def rnf_positive(beta: DualBraid) -> Word:
    """The normal positive a-word of a dual-monoid element."""
    n = beta.n
    pairs = [(x.p, x.q) for x in to_a_word(beta)]
    if n == 2:
        return _pairs_word(n, pairs)
    return _pairs_word(n, _normal_atoms(n, pairs))


def read_splitting(w: Word) -> Splitting:
    """Read the slice sequence off a normal word by a right-to-left scan.

    Correct only for normal input; no validation is attempted, and for a
    non-normal word the grouping is still returned but meaningless.
    """
    if not w.is_a_word or not w.is_positive:
        raise ValueError("expected a positive a-word")
    n = w.n
    letters = w.letters
    idx = len(letters)
    parts: list[Word] = []
    k = 0
    while idx > 0:
        avoid = _avoided_strand(n, k + 1)
        j = idx
        while j > 0:
            x = letters[j - 1]
            if x.p == avoid or x.q == avoid:
                break
            j -= 1
        seg = Word(n, letters[j:idx])
        parts.append(phi(seg, -k))
        idx = j
        k += 1
    return Splitting(n, tuple(reversed(parts)))


@functools.lru_cache(maxsize=None)
def theta_pairs(i: int, n: int) -> tuple[Pair, ...]:
    """Atoms of the length n-2 positive word equivalent to the full turn
    with the crossing s<i> removed from its right end."""
    if not (n >= 3 and 1 <= i <= n - 1):
        raise ValueError(f"bad theta indices i={i}, n={n}")
    base = delta_word_atoms(n - 1)
    return tuple(_shift_pair(p, q, i + 1, n) for p, q in base)


def _positive_atoms(w: Word) -> list[Pair]:
    out: list[Pair] = []
    for x in w:
        if isinstance(x, SigmaLetter):
            out.append((x.i, x.i + 1))
        elif isinstance(x, BandLetter):
            out.append((x.p, x.q))
        else:
            out.extend((j, j + 1) for j in range(x.p, x.q))
    return out


def rnf_general(w: Word) -> RotNF:
    """Fraction-form normal form of the braid represented by any word."""
    n = w.n
    if n == 2:
        k = sum(x.sign for x in to_sigma(w))
        if k >= 0:
            return RotNF(2, 0, _pairs_word(2, [(1, 2)] * k))
        return RotNF(2, -k, Word(2))
    if w.is_positive:
        v = _positive_atoms(w)
        c = 0
    else:
        sw = to_sigma(w)
        segments: list[list[int]] = [[]]
        negs: list[int] = []
        for x in sw:
            if x.sign == 1:
                segments[-1].append(x.i)
            else:
                negs.append(x.i)
                segments.append([])
        c = len(negs)
        v = []
        for j, seg in enumerate(segments):
            shift = c - j
            if j >= 1:
                v.extend(_shift_pair(p, q, shift, n) for p, q in theta_pairs(negs[j - 1], n))
            v.extend(_shift_pair(i, i + 1, shift, n) for i in seg)
    eng = _RightEngine(n).feed(v)
    s = eng.valuation()
    quot = eng.quotient_atoms()
    if s >= c:
        t = 0
        pre: list[Pair] = []
        for _ in range(s - c):
            pre.extend(delta_word_atoms(n))
        quot = pre + quot
    else:
        t = c - s
    return RotNF(n, t, _pairs_word(n, _normal_atoms(n, quot)))


def depth(w: Word) -> int:
    """Denominator exponent of the fraction form."""
    return rnf_general(w).depth


def nlength(w: Word) -> int:
    """Length of the fraction form: depth plus positive-part length."""
    return rnf_general(w).nlength


def breadth(w: Word) -> int:
    """Breadth of the positive part of the fraction form."""
    if w.n == 2:
        raise ValueError("breadth is undefined on 2 strands")
    return read_splitting(rnf_general(w).word).breadth
