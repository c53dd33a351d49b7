"""Barriers and ladder decompositions of normal words.

A letter a<r>.<s> blocks the band a<p>.<n> from commuting rightward
exactly when r < p < s <= n-1; such a letter is called a barrier here.
A normal word whose barriers climb all the way to level n-1 decomposes
as alternating barrier-free segments and strictly rising bars; this
module extracts that decomposition and uses it to validate slice
sequences structurally.
"""
from __future__ import annotations

import dataclasses

from .rotating import Splitting
from .words import BandLetter, Word


def is_barrier(r: int, s: int, p: int, n: int) -> bool:
    """Whether a<r>.<s> blocks a<p>.<n>."""
    return 1 <= r < p < s <= n - 1


@dataclasses.dataclass(frozen=True)
class LadderDecomposition:
    """w = w_0 x_1 w_1 ... x_h w_h with rising bars x_k.

    ``rungs`` is the level sequence p = f(0) < f(1) < ... < f(h) = n-1;
    bar x_k is a barrier for level f(k-1) ending at level f(k), and the
    segment w_k contains no barrier for level f(k).
    """

    n: int
    p: int
    height: int
    segments: tuple[Word, ...]
    bars: tuple[BandLetter, ...]
    rungs: tuple[int, ...]
    lent_on: BandLetter

    def reconstruct(self) -> Word:
        letters: list = []
        for k, bar in enumerate(self.bars):
            letters.extend(self.segments[k].letters)
            letters.append(bar)
        letters.extend(self.segments[-1].letters)
        return Word(self.n, tuple(letters))


def decompose(w: Word, p: int, n: int | None = None) -> LadderDecomposition | None:
    """Greedy leftmost ladder decomposition of w for level p.

    Returns None when w is not a ladder for that level: wrong last
    letter, or the bars stop before reaching level n-1.
    """
    if n is None:
        n = w.n
    if len(w) == 0 or not (1 <= p <= n - 1):
        return None
    if not (w.is_a_word and w.is_positive):
        return None
    last = w.letters[-1]
    if not (isinstance(last, BandLetter) and last.q == n - 1):
        return None
    f = p
    rungs = [p]
    segments: list[Word] = []
    bars: list[BandLetter] = []
    cur: list[BandLetter] = []
    for x in w:
        assert isinstance(x, BandLetter)
        if is_barrier(x.p, x.q, f, n):
            segments.append(Word(n, tuple(cur)))
            bars.append(x)
            cur = []
            f = x.q
            rungs.append(f)
        else:
            cur.append(x)
    segments.append(Word(n, tuple(cur)))
    if f != n - 1:
        return None
    return LadderDecomposition(
        n=n,
        p=p,
        height=len(bars),
        segments=tuple(segments),
        bars=tuple(bars),
        rungs=tuple(rungs),
        lent_on=last,
    )


@dataclasses.dataclass(frozen=True)
class LadderCheck:
    k: int
    clause: str
    ok: bool
    detail: str = ""

    def __str__(self) -> str:
        status = "pass" if self.ok else "FAIL"
        line = f"k={self.k} {self.clause}: {status}"
        return f"{line} ({self.detail})" if self.detail else line


@dataclasses.dataclass(frozen=True)
class LadderReport:
    checks: tuple[LadderCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[LadderCheck]:
        return [c for c in self.checks if not c.ok]

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.checks)


def _last(w: Word) -> BandLetter | None:
    if len(w) == 0:
        return None
    x = w.letters[-1]
    return x if isinstance(x, BandLetter) else None


def verify_splitting_ladders(s: Splitting) -> LadderReport:
    """Structural validation of a slice sequence.

    Checks, for each interior index k: nonemptiness (k >= 3), the last
    letter landing on level n-1, the forced last letter before an empty
    or single-crossing slice, the segment law for slices ending on the
    top crossing, and the ladder decomposition against the level set by
    the next slice's last letter.
    """
    n = s.n
    b = s.breadth
    checks: list[LadderCheck] = []
    if b == 0:
        return LadderReport((LadderCheck(0, "nonempty splitting", False, "breadth 0"),))
    top = _last(s.entry(b))
    checks.append(LadderCheck(b, "w_b nonempty", len(s.entry(b)) > 0))
    for k in range(b, 0, -1):
        w_k = s.entry(k)
        if any(x.q > n - 1 or x.sign != 1 for x in w_k):
            checks.append(LadderCheck(k, "entry inside lower monoid", False, str(w_k)))
            continue
        if k >= 3 and len(w_k) == 0:
            checks.append(LadderCheck(k, "entry nonempty for k>=3", False))
            continue
        if k >= 2 and len(w_k) > 0:
            x = _last(w_k)
            ok = x is not None and x.q == n - 1
            checks.append(LadderCheck(k, "last letter at level n-1", ok, str(x)))
        if k >= 2 and len(w_k) >= 2:
            x = _last(w_k)
            if x is not None and x.p == n - 2 and x.q == n - 1:
                y = w_k.letters[-2]
                ok = isinstance(y, BandLetter) and y.q == n - 1
                checks.append(
                    LadderCheck(k, "letter before top crossing at level n-1", ok, str(y))
                )
    for k in range(b - 1, 1, -1):
        w_k, w_k1 = s.entry(k), s.entry(k + 1)
        x1 = _last(w_k1)
        if x1 is None:
            continue
        single_top = len(w_k) == 1 and w_k.letters[0] == BandLetter(n - 2, n - 1)
        if len(w_k) == 0 or single_top:
            ok = x1.p == n - 2 and x1.q == n - 1
            checks.append(
                LadderCheck(k, "empty/top slice forces top last letter above", ok, str(x1))
            )
            continue
        p = x1.p + 1
        lad = decompose(w_k, p, n)
        checks.append(
            LadderCheck(k, f"ladder for level {p}", lad is not None, str(w_k))
        )
    return LadderReport(tuple(checks))
