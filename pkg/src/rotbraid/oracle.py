"""Independent equivalence checker for braid words.

Uses the classical Garside structure: factors are permutation braids and
the distinguished element is the half twist.  Deliberately shares no
code with the dual-monoid machinery; only the letterwise translation to
crossings is reused, so agreement between this module and the rest of
the package is meaningful evidence of correctness.
"""
from __future__ import annotations

import dataclasses
import functools
from collections import deque

from .words import Word, free_reduce, to_sigma

Perm = tuple[int, ...]


@functools.lru_cache(maxsize=None)
def _ident(n: int) -> Perm:
    return tuple(range(n))


@functools.lru_cache(maxsize=None)
def _half_twist(n: int) -> Perm:
    return tuple(range(n - 1, -1, -1))


def _compose(t: Perm, u: Perm) -> Perm:
    """Apply t, then u (braid concatenation order)."""
    return tuple(u[x] for x in t)


def _inverse(t: Perm) -> Perm:
    out = [0] * len(t)
    for i, x in enumerate(t):
        out[x] = i
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _gen(n: int, i: int) -> Perm:
    out = list(range(n))
    out[i - 1], out[i] = out[i], out[i - 1]
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _flip(t: Perm) -> Perm:
    """Conjugation by the half twist."""
    n = len(t)
    return tuple(n - 1 - t[n - 1 - i] for i in range(n))


@functools.lru_cache(maxsize=None)
def _left_descents(t: Perm) -> frozenset[int]:
    """Indices i with the crossing si a left divisor of the factor."""
    return frozenset(i for i in range(1, len(t)) if t[i - 1] > t[i])


@functools.lru_cache(maxsize=None)
def _right_descents(t: Perm) -> frozenset[int]:
    inv = _inverse(t)
    return frozenset(i for i in range(1, len(t)) if inv[i - 1] > inv[i])


def _slide(x: Perm, y: Perm) -> tuple[Perm, Perm] | None:
    """Move initial crossings of y into x; None when left-weighted."""
    moved = False
    while True:
        diff = _left_descents(y) - _right_descents(x)
        if not diff:
            return (x, y) if moved else None
        g = _gen(len(x), min(diff))
        x = _compose(x, g)
        y = _compose(g, y)
        moved = True


def _normalize(n: int, fac: list[Perm], seeds: list[int]) -> list[Perm]:
    ident = _ident(n)
    work = list(seeds)
    while work:
        i = work.pop()
        if i < 0 or i + 1 >= len(fac):
            continue
        res = _slide(fac[i], fac[i + 1])
        if res is None:
            continue
        x, y = res
        fac[i] = x
        if y == ident:
            del fac[i + 1]
            work = [j if j <= i else j - 1 for j in work]
            work.extend((i - 1, i))
        else:
            fac[i + 1] = y
            work.extend((i - 1, i + 1))
    return fac


@dataclasses.dataclass(frozen=True)
class ClassicalGreedyForm:
    """Half-twist power plus left-weighted permutation-braid factors."""

    n: int
    power: int
    factors: tuple[Perm, ...]


def classical_form(w: Word) -> ClassicalGreedyForm:
    """Canonical classical form of any word; negatives use twist padding.

    The running state is half^power . flip^parity(factors): a negative
    crossing contributes one inverse half twist, absorbed as a power and
    a deferred flip, plus the padded factor half . s_i^-1.
    """
    n = w.n
    half = _half_twist(n)
    power = 0
    parity = 0
    fac: list[Perm] = []
    ident = _ident(n)
    for x in to_sigma(w):
        if x.sign == 1:
            t = _gen(n, x.i)
        else:
            power -= 1
            parity ^= 1
            t = _compose(half, _gen(n, x.i))
        if t == ident:
            continue
        if parity:
            t = _flip(t)
        fac.append(t)
        _normalize(n, fac, [len(fac) - 2])
        while fac and fac[0] == half:
            del fac[0]
            power += 1
    if parity:
        fac = [_flip(t) for t in fac]
    return ClassicalGreedyForm(n, power, tuple(fac))


def equivalent(w1: Word, w2: Word, n: int | None = None) -> bool:
    """Whether two words represent the same braid."""
    if n is None:
        if w1.n != w2.n:
            raise ValueError("strand counts differ")
        n = w1.n
    if w1.n != n or w2.n != n:
        raise ValueError("strand counts differ")
    return classical_form(w1) == classical_form(w2)


def is_trivial(w: Word, n: int | None = None) -> bool:
    if n is None:
        n = w.n
    form = classical_form(w)
    return form.power == 0 and not form.factors


def _perm_of(w: Word) -> Perm:
    t = _ident(w.n)
    for x in to_sigma(w):
        t = _compose(t, _gen(w.n, x.i))
    return t


def _exp_sum(w: Word) -> int:
    return sum(x.sign for x in to_sigma(w))


def _neighbors(word: tuple, n: int, maxlen: int):
    L = len(word)
    # commutation and braid moves
    for i in range(L - 1):
        a, b = word[i], word[i + 1]
        if abs(a[0] - b[0]) >= 2:
            yield word[:i] + (b, a) + word[i + 2 :]
    for i in range(L - 2):
        a, b, c = word[i], word[i + 1], word[i + 2]
        if a == c and abs(a[0] - b[0]) == 1 and a[1] == b[1]:
            yield word[:i] + (b, a, b) + word[i + 3 :]
    # free cancellation
    for i in range(L - 1):
        a, b = word[i], word[i + 1]
        if a[0] == b[0] and a[1] == -b[1]:
            yield word[:i] + word[i + 2 :]
    # free insertion, capped
    if L + 2 <= maxlen:
        for i in range(L + 1):
            for g in range(1, n):
                for s in (1, -1):
                    yield word[:i] + ((g, s), (g, -s)) + word[i:]


def bfs_equivalent_small(w1: Word, w2: Word, n: int, budget: int = 20000) -> bool | None:
    """Second, even more independent oracle for short words.

    Explores the closure of w1 under single defining relations, free
    cancellations and capped free insertions.  Returns True or False when
    the answer is certain within the budget, None otherwise.
    """
    u1, u2 = free_reduce(to_sigma(w1)), free_reduce(to_sigma(w2))
    if _perm_of(u1) != _perm_of(u2) or _exp_sum(u1) != _exp_sum(u2):
        return False
    t1 = tuple((x.i, x.sign) for x in u1)
    t2 = tuple((x.i, x.sign) for x in u2)
    if t1 == t2:
        return True
    positive = all(s == 1 for _, s in t1) and all(s == 1 for _, s in t2)
    maxlen = max(len(t1), len(t2)) + (0 if positive else 2)
    seen = {t1}
    queue = deque([t1])
    while queue and len(seen) <= budget:
        cur = queue.popleft()
        for nxt in _neighbors(cur, n, maxlen):
            if nxt == t2:
                return True
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    if not queue and positive:
        # the closure of a positive word under the relations is complete
        return False
    return None
