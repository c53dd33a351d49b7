"""Rightward pushing of negative run letters through positive words.

The rewrite system replaces a subword d<p>.<n-1>^-1 x, where x is a
positive band or run letter, by an equivalent word in which the
negative runs sit further right (or vanish).  Fed with a dangerous word
followed by a ladder, the process terminates in a wall: a structured
sigma-nonnegative word with a positive a-word prefix and a dangerous
suffix.  Walls absorb further dangerous letters, which is what makes
the inductive elimination of negative crossings possible.
"""
from __future__ import annotations

import dataclasses
from typing import Callable, Iterable

from .garside import InvariantViolation
from .rotating import Splitting
from .words import (
    BandLetter,
    DLetter,
    Letter,
    Word,
    band,
    classify_sigma,
    dletter,
    dletters,
    phi,
)


class ReversingBudgetExceeded(RuntimeError):
    """The step budget ran out; the input was not of the structured kind."""


class WallError(ValueError):
    """A word failed to decompose as a wall; the message names the clause."""


def _match(x: Letter, y: Letter, n: int) -> tuple[Letter, ...] | None:
    """Replacement for the pair (x, y), or None when no rule applies."""
    if not (isinstance(x, DLetter) and x.sign == -1 and x.q == n - 1):
        return None
    p = x.p
    if isinstance(y, BandLetter) and y.sign == 1:
        r, s = y.p, y.q
        if r < p < s <= n - 1:
            return (
                dletter(r, n - 1),
                *dletters(p - 1, n - 2, -1),
                *dletters(r, s - 1, -1),
                *dletters(s, n - 1, -1),
            )
        if s == p:
            return (band(r, n - 1), x)
        if s < p:
            return (y, x)
        if r == p and s <= n - 1:
            return (band(s - 1, n - 1), x)
        if r > p:
            return (band(r - 1, s - 1), x)
        return None
    if isinstance(y, DLetter) and y.sign == 1 and y.q == n - 1 and y.p < p:
        return (y, *dletters(p - 1, n - 2, -1))
    return None


def reverse_step(w: Word) -> Word | None:
    """Apply one rewrite at the rightmost possible position."""
    n = w.n
    letters = w.letters
    for i in range(len(letters) - 2, -1, -1):
        rep = _match(letters[i], letters[i + 1], n)
        if rep is not None:
            return Word(n, letters[:i] + rep + letters[i + 2 :])
    return None


def reverse_all(
    w: Word,
    budget: int | None = None,
    trace: Callable[[str], None] | None = None,
) -> Word:
    """Rewrite rightmost-first to a fixpoint.

    The budget guards against runaway on unstructured input; on the
    words this package feeds in, termination is guaranteed well below
    the default of 4 len(w)^2 steps.
    """
    n = w.n
    if budget is None:
        budget = max(64, 4 * len(w) * len(w))
    letters = list(w.letters)
    steps = 0
    # After a rewrite at i the region right of the inserted block is
    # unchanged and was already pairwise irreducible, so the scan resumes
    # at the block's right edge instead of the word's end.
    scan = len(letters) - 2
    while True:
        i = min(scan, len(letters) - 2)
        while i >= 0:
            rep = _match(letters[i], letters[i + 1], n)
            if rep is not None:
                break
            i -= 1
        if i < 0:
            return Word(n, tuple(letters))
        steps += 1
        if steps > budget:
            raise ReversingBudgetExceeded(
                f"no fixpoint after {budget} steps (length {len(letters)})"
            )
        if trace is not None:
            lhs = f"{letters[i]} {letters[i + 1]}"
            rhs = " ".join(str(t) for t in rep)
            trace(f"{i} {lhs} -> {rhs}")
        letters[i : i + 2] = rep
        scan = i + len(rep) - 1


def _reverse_counted(w: Word) -> tuple[Word, int]:
    steps = 0

    def bump(_line: str) -> None:
        nonlocal steps
        steps += 1

    return reverse_all(w, trace=bump), steps


def count_reversing_steps(w: Word) -> int:
    """Number of rewrites needed to reach the fixpoint of w."""
    return _reverse_counted(w)[1]


@dataclasses.dataclass(frozen=True)
class DangerousWord:
    """A product of negative runs d<f>.<n-1>^-1 with non-increasing f.

    ``fs`` lists the start indices in word order, so fs[0] is the type
    and fs[-1] the base.  The empty sequence is the unique dangerous
    word for base n-1.
    """

    n: int
    fs: tuple[int, ...] = ()

    def __post_init__(self):
        for f in self.fs:
            if not 1 <= f <= self.n - 2:
                raise ValueError(f"bad dangerous index {f} for n={self.n}")
        if any(self.fs[i] < self.fs[i + 1] for i in range(len(self.fs) - 1)):
            raise ValueError(f"dangerous indices must not increase: {self.fs}")

    def __len__(self) -> int:
        return len(self.fs)

    @property
    def base(self) -> int:
        return self.fs[-1] if self.fs else self.n - 1

    @property
    def type(self) -> int | None:
        return self.fs[0] if self.fs else None

    def letters(self) -> tuple[DLetter, ...]:
        return tuple(dletter(f, self.n - 1, -1) for f in self.fs)

    def to_word(self, ambient: int | None = None) -> Word:
        return Word(ambient or self.n, self.letters())

    def lifted(self) -> "DangerousWord":
        """Image one context up: every index and the run ends shift by 1."""
        return DangerousWord(self.n + 1, tuple(f + 1 for f in self.fs))


@dataclasses.dataclass(frozen=True)
class Wall:
    """Structured view of a wall word.

    kind 'high' means prefix . d<r>.<n-1> . middle . d<q-1>.<n-1> .
    dangerous; 'low' and 'top' lack the middle part, 'top' being the
    case of the maximal level n-1.  Index witnesses cut the stored word,
    so no letters are copied.
    """

    kind: str
    n: int
    p: int
    q: int
    word: Word
    f_len: int
    d_len: int
    r: int | None = None
    steps: int = 0

    @property
    def F(self) -> Word:
        return self.word[: self.f_len]

    @property
    def D(self) -> DangerousWord:
        fs = tuple(x.p for x in self.word.letters[len(self.word) - self.d_len :])
        return DangerousWord(self.n - 1, fs)

    @property
    def middle(self) -> Word:
        if self.kind != "high":
            return Word(self.n)
        return self.word[self.f_len + 1 : len(self.word) - self.d_len - 1]

    @property
    def lent_index(self) -> int:
        """q - 1, the level of the letter the wall is lent on."""
        return self.q - 1


def recognize_wall(w: Word, p: int, n: int | None = None) -> Wall:
    """Extract the wall decomposition of w for level p, or raise WallError."""
    if n is None:
        n = w.n
    letters = w.letters
    for x in letters:
        if not isinstance(x, (BandLetter, DLetter)):
            raise WallError(f"crossing letter {x} in a wall candidate")
        if x.q > n - 1:
            raise WallError(f"stray letter {x} touching strand {x.q}")
    # maximal dangerous suffix: negative runs ending at n-2, non-increasing
    i = len(letters)
    prev = 0
    while i > 0:
        x = letters[i - 1]
        if not (isinstance(x, DLetter) and x.sign == -1 and x.q == n - 2 and x.p >= prev):
            break
        prev = x.p
        i -= 1
    d_len = len(letters) - i
    if i == 0:
        raise WallError("no positive letter before the dangerous suffix")
    lent = letters[i - 1]
    if not (isinstance(lent, DLetter) and lent.sign == 1 and lent.q == n - 1):
        raise WallError(f"expected a positive run to level n-1 before the suffix, got {lent}")
    q = lent.p + 1
    if d_len > 0 and letters[-1].p != q - 1:
        raise WallError("dangerous suffix base does not match the lent letter")
    if d_len == 0 and q - 1 != n - 2:
        raise WallError("empty dangerous suffix needs the lent letter at level n-2")
    head = letters[: i - 1]
    f_len = 0
    while f_len < len(head) and isinstance(head[f_len], BandLetter) and head[f_len].sign == 1:
        f_len += 1
    if f_len == len(head):
        if p == n - 1:
            return Wall("top", n, p, q, w, f_len, d_len)
        if not q - 1 < p:
            raise WallError(f"low wall needs lent level {q - 1} below {p}")
        dw = tuple(x.p for x in letters[len(letters) - d_len :])
        if dw and not dw[0] < p:
            raise WallError(f"low wall needs dangerous type {dw[0]} below {p}")
        return Wall("low", n, p, q, w, f_len, d_len)
    x = head[f_len]
    if not (isinstance(x, DLetter) and x.sign == 1 and x.q == n - 1):
        raise WallError(f"expected a positive run to level n-1 after the prefix, got {x}")
    if not x.p < p:
        raise WallError(f"high wall needs its first run start {x.p} below {p}")
    middle = Word(n, head[f_len + 1 :])
    if not classify_sigma(middle).nonnegative_for(n - 2):
        raise WallError("middle part is not sigma-nonnegative at level n-2")
    return Wall("high", n, p, q, w, f_len, d_len, r=x.p)


def _split_trailing_band(letters: list[Letter], n: int) -> None:
    """Rewrite a trailing a<x>.<n-1> as d<x>.<n-1> d<x>.<n-2>^-1 in place."""
    last = letters[-1]
    assert isinstance(last, BandLetter) and last.sign == 1 and last.q == n - 1
    letters[-1] = dletter(last.p, n - 1)
    letters.extend(dletters(last.p, n - 2, -1))


def dangerous_times_ladder(u: DangerousWord, w: Word) -> Wall:
    """Reverse the dangerous word u into the ladder w, returning the wall.

    w must be a ladder for the base level of u, lent on its last letter.
    A violated precondition surfaces as a reversing stuck-state, budget
    overrun, or wall recognition failure.
    """
    n = w.n
    if u.n != n:
        raise ValueError(f"dangerous word lives on {u.n} strands, ladder on {n}")
    if len(w) == 0 or not (w.is_a_word and w.is_positive):
        raise ValueError("the ladder must be a nonempty positive a-word")
    last = w.letters[-1]
    if not (isinstance(last, BandLetter) and last.q == n - 1):
        raise ValueError(f"the ladder must end at level n-1, got {last}")
    p = u.base
    steps = 0
    cur = list(w.letters)
    if not u.fs:
        _split_trailing_band(cur, n)
    else:
        for stage, f in enumerate(reversed(u.fs)):
            out, count = _reverse_counted(Word(n, (dletter(f, n - 1, -1), *cur)))
            steps += count
            cur = list(out.letters)
            if stage == 0:
                tail = cur[-1]
                if isinstance(tail, BandLetter) and tail.sign == 1:
                    _split_trailing_band(cur, n)
    wall_word = Word(n, tuple(cur))
    wall = recognize_wall(wall_word, p, n)
    if wall.d_len > len(u) + 1:
        raise InvariantViolation(
            f"dangerous suffix bound violated: {wall.d_len} > {len(u)} + 1"
        )
    if len(wall_word) > 3 * len(w) + len(u) - 1:
        raise InvariantViolation(
            f"wall length bound violated: {len(wall_word)} > 3*{len(w)} + {len(u)} - 1"
        )
    return dataclasses.replace(wall, steps=steps)


def push_through_splitting(
    u_top: DangerousWord, s: Splitting, c: int
) -> tuple[Word, DangerousWord]:
    """Carry a dangerous word from the top slice down to slice c.

    u_top must be dangerous for the last letter of the top slice, one
    context below the ambient count.  Returns the sigma-nonnegative word
    collected on the way and the dangerous word arriving at slice c.
    """
    n = s.n
    b = s.breadth
    if b < 3:
        raise ValueError(f"need breadth >= 3, got {b}")
    if not 3 <= c <= b:
        raise ValueError(f"need 3 <= c <= breadth, got c={c}")
    if u_top.n != n - 1:
        raise ValueError(f"dangerous word must live one context below, on {n - 1} strands")
    top_last = s.entry(b).letters[-1] if len(s.entry(b)) else None
    if top_last is not None and u_top.base != top_last.p:
        raise ValueError(
            f"dangerous base {u_top.base} does not match top slice last letter {top_last}"
        )
    u = u_top
    out: list[Letter] = []
    for k in range(b, c, -1):
        wall = dangerous_times_ladder(u.lifted(), s.entry(k - 1))
        u = wall.D
        cut = len(wall.word) - wall.d_len - 1
        v_prime = wall.word[:cut]
        out.extend(phi(v_prime, 1).letters)
        out.append(dletter(1, wall.q, -1))
    return Word(n, tuple(out)), u
