"""Garside arithmetic in the dual braid monoid.

Simple elements (the divisors of the half-turn element delta) are stored
as permutation tables whose cycles are the blocks of a noncrossing
partition of {1..n}, each block traversed in decreasing circular order.
With that convention delta itself is the n-cycle i -> i-1 and the
product of the word a1.2 a2.3 ... a<n-1>.<n>.

Tables are 0-based internally; the public API speaks 1-based strand
positions throughout.
"""
from __future__ import annotations

import dataclasses
import functools
import itertools
from typing import Callable, Iterable, Sequence

from .words import BandLetter, Word, band

Perm = tuple[int, ...]


class InvariantViolation(RuntimeError):
    """A structural bound guaranteed by the construction failed at runtime."""


# ---------------------------------------------------------------------------
# permutation-table primitives (0-based)


@functools.lru_cache(maxsize=None)
def _identity(n: int) -> Perm:
    return tuple(range(n))


@functools.lru_cache(maxsize=None)
def _delta(n: int) -> Perm:
    return tuple((i - 1) % n for i in range(n))


def _compose(t: Perm, u: Perm) -> Perm:
    """Table of the braid product: apply t, then u."""
    return tuple(u[x] for x in t)


def _inverse(t: Perm) -> Perm:
    out = [0] * len(t)
    for i, x in enumerate(t):
        out[x] = i
    return tuple(out)


def _cycles(t: Perm) -> list[list[int]]:
    seen = [False] * len(t)
    out = []
    for i in range(len(t)):
        if seen[i]:
            continue
        cyc = []
        j = i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = t[j]
        out.append(cyc)
    return out


@functools.lru_cache(maxsize=None)
def _block_ids(t: Perm) -> tuple[int, ...]:
    """Block label of every position; labels are block minima."""
    out = [0] * len(t)
    for cyc in _cycles(t):
        m = min(cyc)
        for i in cyc:
            out[i] = m
    return tuple(out)


def _rlen(t: Perm) -> int:
    """Atom length of a simple: n minus the number of blocks."""
    return len(t) - len(set(_block_ids(t)))


def _from_blocks(n: int, blocks: Iterable[Sequence[int]]) -> Perm:
    """Simple whose blocks are the given position sets (0-based)."""
    out = list(range(n))
    for blk in blocks:
        b = sorted(blk)
        for i in range(1, len(b)):
            out[b[i]] = b[i - 1]
        if len(b) > 1:
            out[b[0]] = b[-1]
    return tuple(out)


def _is_simple(t: Perm) -> bool:
    """Check descending cycles forming a noncrossing partition."""
    n = len(t)
    for cyc in _cycles(t):
        b = sorted(cyc)
        for i in range(1, len(b)):
            if t[b[i]] != b[i - 1]:
                return False
        if len(b) > 1 and t[b[0]] != b[-1]:
            return False
    bid = _block_ids(t)
    last = {}
    for i, b in enumerate(bid):
        last[b] = i
    stack: list[int] = []
    open_seen = set()
    for i, b in enumerate(bid):
        if not stack or stack[-1] != b:
            if b in open_seen:
                return False
            stack.append(b)
            open_seen.add(b)
        while stack and last[stack[-1]] == i:
            stack.pop()
    return True


@functools.lru_cache(maxsize=None)
def _meet(t: Perm, u: Perm) -> Perm:
    """Lattice meet of two simples: the common refinement of their blocks."""
    bt, bu = _block_ids(t), _block_ids(u)
    groups: dict[tuple[int, int], list[int]] = {}
    for i in range(len(t)):
        groups.setdefault((bt[i], bu[i]), []).append(i)
    return _from_blocks(len(t), groups.values())


@functools.lru_cache(maxsize=None)
def _rcomp(t: Perm) -> Perm:
    """Right complement: the simple c with t * c = delta."""
    return _compose(_inverse(t), _delta(len(t)))


@functools.lru_cache(maxsize=None)
def _lcomp(t: Perm) -> Perm:
    """Left complement: the simple c with c * t = delta."""
    return _compose(_delta(len(t)), _inverse(t))


def _atoms(t: Perm) -> list[tuple[int, int]]:
    """Atom divisors of a simple as 0-based pairs, lexicographically."""
    out = []
    for cyc in _cycles(t):
        if len(cyc) > 1:
            out.extend(itertools.combinations(sorted(cyc), 2))
    out.sort()
    return out


def _swap(t: Perm, p0: int, q0: int) -> Perm:
    """Compose with the transposition of values p0, q0 (right division)."""
    out = list(t)
    for i, x in enumerate(out):
        if x == p0:
            out[i] = q0
        elif x == q0:
            out[i] = p0
    return tuple(out)


def _shift_pair(p: int, q: int, k: int, n: int) -> tuple[int, int]:
    """Rotate a 1-based atom pair by k positions."""
    p = (p + k - 1) % n + 1
    q = (q + k - 1) % n + 1
    return (p, q) if p < q else (q, p)


# ---------------------------------------------------------------------------
# greedy machinery


def _slide_left(x: Perm, y: Perm) -> tuple[Perm, Perm] | None:
    """Move the largest head of y into x; None when already left-weighted."""
    g = _meet(_rcomp(x), y)
    if _rlen(g) == 0:
        return None
    return _compose(x, g), _compose(_inverse(g), y)


def _slide_right(x: Perm, y: Perm) -> tuple[Perm, Perm] | None:
    """Move the largest tail of x into y; None when already right-weighted."""
    g = _meet(x, _lcomp(y))
    if _rlen(g) == 0:
        return None
    return _compose(x, _inverse(g)), _compose(g, y)


def _fix_pairs(fac: list[Perm], seeds: Iterable[int], slide, n: int) -> None:
    """Restore pairwise weightedness around the seed positions, in place."""
    ident = _identity(n)
    work = list(seeds)
    while work:
        i = work.pop()
        if i < 0 or i + 1 >= len(fac):
            continue
        res = slide(fac[i], fac[i + 1])
        if res is None:
            continue
        x, y = res
        fac[i] = x
        if y == ident:
            del fac[i + 1]
            work = [j if j <= i else j - 1 for j in work]
            work.extend((i - 1, i))
        elif x == ident:
            fac[i] = y
            del fac[i + 1]
            work = [j if j <= i else j - 1 for j in work]
            work.extend((i - 1, i))
        else:
            fac[i + 1] = y
            work.extend((i - 1, i + 1))


class _LeftBuilder:
    """Incremental left-greedy form: delta power and weighted factors."""

    def __init__(self, n: int):
        self.n = n
        self.s = 0
        self.fac: list[Perm] = []
        self._delta = _delta(n)
        self._ident = _identity(n)

    def append_atom(self, p: int, q: int) -> None:
        t = _from_blocks(self.n, [(p - 1, q - 1)])
        self.fac.append(t)
        _fix_pairs(self.fac, [len(self.fac) - 2], _slide_left, self.n)
        while self.fac and self.fac[0] == self._delta:
            del self.fac[0]
            self.s += 1

    def feed(self, pairs: Iterable[tuple[int, int]]) -> "_LeftBuilder":
        for p, q in pairs:
            self.append_atom(p, q)
        return self


class _RightEngine:
    """Right-greedy factor list with a lazy rotation twist.

    Represents beta = delta^s . phi^j(f_1 ... f_k) with every adjacent
    pair right-weighted and no factor equal to 1 or delta.  All atom
    queries and strips are phrased in the actual (untwisted) frame; the
    twist makes absorbing a full delta an O(1) operation.
    """

    def __init__(self, n: int):
        self.n = n
        self.s = 0
        self.j = 0
        self.fac: list[Perm] = []
        self._delta = _delta(n)
        self._ident = _identity(n)

    def is_trivial(self) -> bool:
        return self.s == 0 and not self.fac

    def _pop_trailing_delta(self) -> None:
        while self.fac and self.fac[-1] == self._delta:
            self.fac.pop()
            self.s += 1
            self.j -= 1

    def _fix_from(self, i: int) -> None:
        _fix_pairs(self.fac, [i], _slide_right, self.n)
        self._pop_trailing_delta()

    def append_atom(self, p: int, q: int) -> None:
        p0, q0 = _shift_pair(p, q, -self.j, self.n)
        self.fac.append(_from_blocks(self.n, [(p0 - 1, q0 - 1)]))
        self._fix_from(len(self.fac) - 2)

    def feed(self, pairs: Iterable[tuple[int, int]]) -> "_RightEngine":
        for p, q in pairs:
            self.append_atom(p, q)
        return self

    def last_atoms(self) -> list[tuple[int, int]]:
        """1-based atom pairs right-dividing the braid, lexicographically."""
        if self.s > 0:
            return [(p, q) for p in range(1, self.n) for q in range(p + 1, self.n + 1)]
        if not self.fac:
            return []
        pairs = [_shift_pair(p0 + 1, q0 + 1, self.j, self.n) for p0, q0 in _atoms(self.fac[-1])]
        pairs.sort()
        return pairs

    def strip_atom(self, p: int, q: int) -> None:
        """Divide on the right by the atom (p, q), which must divide."""
        if self.fac:
            p0, q0 = _shift_pair(p, q, -self.j, self.n)
            bid = _block_ids(self.fac[-1])
            if bid[p0 - 1] == bid[q0 - 1]:
                y = _swap(self.fac[-1], p0 - 1, q0 - 1)
                if y == self._ident:
                    self.fac.pop()
                else:
                    self.fac[-1] = y
                self._fix_from(len(self.fac) - 2)
                return
        if self.s <= 0:
            raise InvariantViolation(f"atom ({p},{q}) does not right-divide")
        # divide through one delta: beta a^-1 = delta^(s-1) phi^(j+1)(F . c)
        # where c is the left complement of the atom in the new frame
        self.s -= 1
        self.j += 1
        p0, q0 = _shift_pair(p, q, -self.j, self.n)
        c = _swap(self._delta, p0 - 1, q0 - 1)
        if c != self._ident:
            self.fac.append(c)
            self._fix_from(len(self.fac) - 2)

    def strip_tail(self, allowed: Callable[[int, int], bool]) -> list[tuple[int, int]]:
        """Strip the maximal right-divisor generated by allowed atoms.

        Returns its atoms as a word (left to right).
        """
        stripped: list[tuple[int, int]] = []
        while True:
            cand = None
            for p, q in self.last_atoms():
                if allowed(p, q):
                    cand = (p, q)
                    break
            if cand is None:
                return stripped[::-1]
            self.strip_atom(*cand)
            stripped.append(cand)

    def valuation(self) -> int:
        return self.s

    def quotient_atoms(self) -> list[tuple[int, int]]:
        """Atoms of beta' where beta = delta^s beta', in the actual frame."""
        out: list[tuple[int, int]] = []
        for t in self.fac:
            for cyc in _cycles(t):
                b = sorted(cyc)
                for i in range(len(b) - 1):
                    out.append(_shift_pair(b[i] + 1, b[i + 1] + 1, self.j, self.n))
        return out


# ---------------------------------------------------------------------------
# public types


@dataclasses.dataclass(frozen=True)
class NCSimple:
    """A divisor of delta, encoded by its permutation table."""

    n: int
    table: Perm

    def __post_init__(self):
        if len(self.table) != self.n:
            raise ValueError("table size does not match strand count")
        if not _is_simple(self.table):
            raise ValueError(f"{self.table} is not a noncrossing simple")

    @property
    def atom_length(self) -> int:
        return _rlen(self.table)

    def blocks(self) -> list[tuple[int, ...]]:
        """Blocks as 1-based position tuples, sorted."""
        return sorted(tuple(i + 1 for i in sorted(c)) for c in _cycles(self.table))

    def atom_word(self) -> list[tuple[int, int]]:
        """A positive word for the simple, one ascending run per block."""
        out = []
        for blk in self.blocks():
            for i in range(len(blk) - 1):
                out.append((blk[i], blk[i + 1]))
        return out

    def is_identity(self) -> bool:
        return _rlen(self.table) == 0

    def is_delta(self) -> bool:
        return self.table == _delta(self.n)

    def __str__(self) -> str:
        blks = [blk for blk in self.blocks() if len(blk) > 1]
        return "(" + " ".join("{" + ",".join(map(str, b)) + "}" for b in blks) + ")"


@dataclasses.dataclass(frozen=True)
class GreedyForm:
    """Left-greedy decomposition delta^s . s_1 ... s_m."""

    n: int
    s: int
    simples: tuple[NCSimple, ...]

    def atom_length(self) -> int:
        return self.s * (self.n - 1) + sum(x.atom_length for x in self.simples)

    def __str__(self) -> str:
        parts = [f"delta^{self.s}"]
        parts.extend(str(x) for x in self.simples)
        return " ".join(parts)


@dataclasses.dataclass(frozen=True)
class DualBraid:
    """An element of the dual monoid, canonical by its greedy form."""

    form: GreedyForm

    @property
    def n(self) -> int:
        return self.form.n

    def atom_length(self) -> int:
        return self.form.atom_length()

    def is_trivial(self) -> bool:
        return self.form.s == 0 and not self.form.simples

    def __str__(self) -> str:
        return str(self.form)


# ---------------------------------------------------------------------------
# operations


def atom(p: int, q: int, n: int) -> NCSimple:
    """The band generator as a simple: the transposition (p q)."""
    if not 1 <= p < q <= n:
        raise ValueError(f"need 1 <= p < q <= n, got ({p},{q}) with n={n}")
    return NCSimple(n, _from_blocks(n, [(p - 1, q - 1)]))


def delta(n: int) -> DualBraid:
    return DualBraid(GreedyForm(n, 1, ()))


def identity(n: int) -> DualBraid:
    return DualBraid(GreedyForm(n, 0, ()))


def _word_atoms(w: Word) -> list[tuple[int, int]]:
    if not (w.is_a_word and w.is_positive):
        raise ValueError("expected a positive a-word")
    return [(x.p, x.q) for x in w]  # type: ignore[union-attr]


def from_a_word(w: Word) -> DualBraid:
    """Canonical form of the braid represented by a positive a-word."""
    b = _LeftBuilder(w.n).feed(_word_atoms(w))
    return DualBraid(GreedyForm(w.n, b.s, tuple(NCSimple(w.n, t) for t in b.fac)))


def from_atoms(n: int, pairs: Iterable[tuple[int, int]]) -> DualBraid:
    b = _LeftBuilder(n).feed(pairs)
    return DualBraid(GreedyForm(n, b.s, tuple(NCSimple(n, t) for t in b.fac)))


def delta_word_atoms(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(1, n)]


def to_a_word(beta: DualBraid) -> Word:
    """Some positive a-word for beta; its length is the atom length."""
    n = beta.n
    pairs: list[tuple[int, int]] = []
    for _ in range(beta.form.s):
        pairs.extend(delta_word_atoms(n))
    for simple in beta.form.simples:
        pairs.extend(simple.atom_word())
    return Word(n, tuple(band(p, q) for p, q in pairs))


def engine_from(beta: DualBraid) -> _RightEngine:
    eng = _RightEngine(beta.n)
    for _ in range(beta.form.s):
        eng.feed(delta_word_atoms(beta.n))
    for simple in beta.form.simples:
        eng.feed(simple.atom_word())
    return eng


def right_divisible_by_atom(beta: DualBraid, p: int, q: int) -> bool:
    """Whether the band generator (p, q) right-divides beta."""
    if not 1 <= p < q <= beta.n:
        raise ValueError(f"need 1 <= p < q <= n, got ({p},{q})")
    return (p, q) in engine_from(beta).last_atoms()


def tail(beta: DualBraid, m: int) -> DualBraid:
    """Maximal right-divisor of beta using strands 1..m only."""
    n = beta.n
    if not 2 <= m < n:
        raise ValueError(f"need 2 <= m < n, got m={m}, n={n}")
    eng = engine_from(beta)
    pairs = eng.strip_tail(lambda p, q: q <= m)
    return from_atoms(n, pairs)


def delta_valuation(beta: DualBraid) -> tuple[int, DualBraid]:
    """Largest s with delta^s a left-divisor, and the quotient."""
    form = beta.form
    return form.s, DualBraid(GreedyForm(form.n, 0, form.simples))
