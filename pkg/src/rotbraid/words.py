"""Braid words over three alphabets.

A word is a sequence of signed letters on n strands, mixing three kinds:

- ``s<i>``     the elementary crossing of strands i and i+1,
- ``a<p>.<q>`` the band generator where strand q crosses over strand p
  behind the intermediate strands (1 <= p < q <= n),
- ``d<p>.<q>`` the ascending run s<p> s<p+1> ... s<q-1> used as a single
  symbol (``d<p>.<p>`` denotes the empty word and is dropped at parse
  time).

The token grammar is whitespace separated; every token may carry an
integer exponent suffix ``^<k>``.  ``^-1`` is the inverse letter and
larger exponents repeat the letter.  Printing emits the same grammar
with maximal run-length compression, so ``parse(str(w), n) == w``.
"""
from __future__ import annotations

import dataclasses
import functools
import re
from typing import Iterable, Iterator, Union


class ParseError(ValueError):
    """Raised on bad word syntax or out-of-range indices.

    ``position`` is the 0-based character offset of the offending token.
    """

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PhiError(ValueError):
    """Raised when a letter has no image under the rotation map."""


@dataclasses.dataclass(frozen=True)
class SigmaLetter:
    """Artin generator s<i> with a sign."""

    i: int
    sign: int = 1

    def __post_init__(self):
        if self.i < 1:
            raise ValueError(f"bad generator index {self.i}")
        if self.sign not in (1, -1):
            raise ValueError(f"bad sign {self.sign}")

    @property
    def max_strand(self) -> int:
        return self.i + 1

    def inverse(self) -> "SigmaLetter":
        return sigma(self.i, -self.sign)

    def __str__(self) -> str:
        return f"s{self.i}" + ("" if self.sign == 1 else "^-1")


@dataclasses.dataclass(frozen=True)
class BandLetter:
    """Band generator a<p>.<q> with a sign; requires p < q."""

    p: int
    q: int
    sign: int = 1

    def __post_init__(self):
        if not 1 <= self.p < self.q:
            raise ValueError(f"bad band indices ({self.p},{self.q})")
        if self.sign not in (1, -1):
            raise ValueError(f"bad sign {self.sign}")

    @property
    def max_strand(self) -> int:
        return self.q

    def inverse(self) -> "BandLetter":
        return band(self.p, self.q, -self.sign)

    def __str__(self) -> str:
        return f"a{self.p}.{self.q}" + ("" if self.sign == 1 else "^-1")


@dataclasses.dataclass(frozen=True)
class DLetter:
    """Run generator d<p>.<q> with a sign; requires p < q.

    d<p>.<p> is the empty word by convention and is never constructed;
    use :func:`dletters` when the indices may coincide.
    """

    p: int
    q: int
    sign: int = 1

    def __post_init__(self):
        if not 1 <= self.p < self.q:
            raise ValueError(f"bad run indices ({self.p},{self.q})")
        if self.sign not in (1, -1):
            raise ValueError(f"bad sign {self.sign}")

    @property
    def max_strand(self) -> int:
        return self.q

    def inverse(self) -> "DLetter":
        return dletter(self.p, self.q, -self.sign)

    def __str__(self) -> str:
        return f"d{self.p}.{self.q}" + ("" if self.sign == 1 else "^-1")


Letter = Union[SigmaLetter, BandLetter, DLetter]


# Letters are tiny immutable values drawn from a small universe, so the
# constructors are cached; hot loops compare letters taken from the caches.
@functools.lru_cache(maxsize=None)
def sigma(i: int, sign: int = 1) -> SigmaLetter:
    return SigmaLetter(i, sign)


@functools.lru_cache(maxsize=None)
def band(p: int, q: int, sign: int = 1) -> BandLetter:
    return BandLetter(p, q, sign)


@functools.lru_cache(maxsize=None)
def dletter(p: int, q: int, sign: int = 1) -> DLetter:
    return DLetter(p, q, sign)


def dletters(p: int, q: int, sign: int = 1) -> tuple[Letter, ...]:
    """d<p>.<q> as a letter tuple, empty when p == q."""
    if p == q:
        return ()
    return (dletter(p, q, sign),)


@dataclasses.dataclass(frozen=True)
class Word:
    """An immutable word on ``n`` strands."""

    n: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"strand count must be >= 2, got {self.n}")
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))
        for x in self.letters:
            if x.max_strand > self.n:
                raise ValueError(f"letter {x} exceeds strand count {self.n}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.n, self.letters[item])
        return self.letters[item]

    def __mul__(self, other: "Word") -> "Word":
        if self.n != other.n:
            raise ValueError("cannot concatenate words with different strand counts")
        return Word(self.n, self.letters + other.letters)

    def __str__(self) -> str:
        out = []
        i = 0
        L = self.letters
        while i < len(L):
            j = i
            while j < len(L) and L[j] is L[i]:
                j += 1
            x, k = L[i], j - i
            base = str(x).split("^")[0]
            e = k * x.sign
            if e == 1:
                out.append(base)
            else:
                out.append(f"{base}^{e}")
            i = j
        return " ".join(out)

    @property
    def is_positive(self) -> bool:
        return all(x.sign == 1 for x in self.letters)

    @property
    def is_sigma_word(self) -> bool:
        return all(isinstance(x, SigmaLetter) for x in self.letters)

    @property
    def is_a_word(self) -> bool:
        return all(isinstance(x, BandLetter) for x in self.letters)

    @property
    def is_d_word(self) -> bool:
        return all(isinstance(x, DLetter) for x in self.letters)

    def inverse(self) -> "Word":
        return Word(self.n, tuple(x.inverse() for x in reversed(self.letters)))


_TOKEN = re.compile(r"^([sad])(\d+)(?:\.(\d+))?(?:\^(-?\d+))?$")


def parse(text: str, n: int) -> Word:
    """Parse ``text`` into an n-strand word, expanding exponents."""
    letters: list[Letter] = []
    for m in re.finditer(r"\S+", text):
        tok, pos = m.group(0), m.start()
        tm = _TOKEN.match(tok)
        if tm is None:
            raise ParseError(f"bad token {tok!r}", pos)
        kind, first, second, exp = tm.groups()
        e = 1 if exp is None else int(exp)
        if kind == "s":
            if second is not None:
                raise ParseError(f"bad token {tok!r}: s-letters take one index", pos)
            i = int(first)
            if not 1 <= i <= n - 1:
                raise ParseError(f"index out of range in {tok!r} for n={n}", pos)
            base: tuple[Letter, ...] = (sigma(i, 1 if e >= 0 else -1),)
        else:
            if second is None:
                raise ParseError(f"bad token {tok!r}: missing '.' index", pos)
            p, q = int(first), int(second)
            if not 1 <= p <= q <= n:
                raise ParseError(f"index out of range in {tok!r} for n={n}", pos)
            if kind == "a":
                if p == q:
                    raise ParseError(f"index out of range in {tok!r}: need p < q", pos)
                base = (band(p, q, 1 if e >= 0 else -1),)
            else:
                base = dletters(p, q, 1 if e >= 0 else -1)
        letters.extend(base * abs(e))
    return Word(n, tuple(letters))


def _sigma_run(p: int, q: int, sign: int) -> tuple[SigmaLetter, ...]:
    # d<p>.<q> translates to s<p> ... s<q-1>; the inverse reverses the run.
    if sign == 1:
        return tuple(sigma(i) for i in range(p, q))
    return tuple(sigma(i, -1) for i in range(q - 1, p - 1, -1))


@functools.lru_cache(maxsize=None)
def _letter_to_sigma(x: Letter) -> tuple[SigmaLetter, ...]:
    if isinstance(x, SigmaLetter):
        return (x,)
    if isinstance(x, DLetter):
        return _sigma_run(x.p, x.q, x.sign)
    p, q = x.p, x.q
    up = tuple(sigma(i) for i in range(p, q - 1))
    down = tuple(sigma(i, -1) for i in range(q - 2, p - 1, -1))
    if x.sign == 1:
        return up + (sigma(q - 1),) + down
    return up + (sigma(q - 1, -1),) + down


def to_sigma(w: Word) -> Word:
    """Letterwise translation into Artin generators.

    Each band or run letter expands to at most 2n-3 crossings.
    """
    out: list[Letter] = []
    for x in w:
        out.extend(_letter_to_sigma(x))
    return Word(w.n, tuple(out))


def phi_letter(x: Letter, n: int, k: int = 1) -> Letter:
    """Image of a single band or run letter under the k-th rotation power."""
    k %= n
    if k == 0:
        return x
    if isinstance(x, BandLetter):
        p = (x.p + k - 1) % n + 1
        q = (x.q + k - 1) % n + 1
        if p > q:
            p, q = q, p
        return band(p, q, x.sign)
    if isinstance(x, DLetter):
        if x.p == 1 and x.q == n:
            return x
        y: Letter = x
        for _ in range(k):
            assert isinstance(y, DLetter)
            if y.q + 1 > n:
                raise PhiError(f"letter {x} leaves the d-alphabet under rotation")
            y = dletter(y.p + 1, y.q + 1, y.sign)
        return y
    raise PhiError(f"rotation is not defined on {x}")


def phi(w: Word, k: int = 1) -> Word:
    """Apply the rotation automorphism k times, letterwise.

    Defined on words of band and run letters only.  Band indices shift
    cyclically; a run letter must stay inside the alphabet at every
    intermediate step, except d1.<n> which is fixed.  Negative k works
    since the map has order n.
    """
    n = w.n
    k %= n
    if k == 0:
        return w
    return Word(n, tuple(phi_letter(x, n, k) for x in w))


@dataclasses.dataclass(frozen=True)
class Classification:
    """Outcome of :func:`classify_sigma`: kind plus the maximal index."""

    kind: str  # 'positive' | 'negative' | 'trivial' | 'mixed'
    index: int | None = None

    def __str__(self) -> str:
        if self.kind == "trivial":
            return "trivial"
        return f"sigma{self.index}-{self.kind}"

    @property
    def is_definite(self) -> bool:
        return self.kind != "mixed"

    def nonnegative_for(self, i: int) -> bool:
        """True when no inverse crossing of index >= i can occur."""
        if self.kind == "trivial":
            return True
        assert self.index is not None
        if self.index < i:
            return True
        return self.index == i and self.kind == "positive"


def classify_sigma(w: Word) -> Classification:
    """Syntactic sign classification of the highest crossing index.

    The word is translated letterwise (no rewriting is applied); the
    result reports whether the maximal index occurs with one sign only.
    """
    top = 0
    pos = neg = False
    for x in w:
        for s in _letter_to_sigma(x):
            if s.i > top:
                top = s.i
                pos = neg = False
            if s.i == top:
                if s.sign == 1:
                    pos = True
                else:
                    neg = True
    if top == 0:
        return Classification("trivial")
    if pos and neg:
        return Classification("mixed", top)
    return Classification("positive" if pos else "negative", top)


def free_reduce(w: Word) -> Word:
    """Cancel adjacent inverse pairs of crossings to a fixpoint."""
    if not w.is_sigma_word:
        raise ValueError("free reduction applies to s-words only")
    out: list[SigmaLetter] = []
    for x in w:
        if out and out[-1].i == x.i and out[-1].sign == -x.sign:
            out.pop()
        else:
            out.append(x)
    return Word(w.n, tuple(out))


def concat(n: int, *parts: Iterable[Letter]) -> Word:
    """Build an n-strand word from letter iterables."""
    letters: list[Letter] = []
    for part in parts:
        letters.extend(part)
    return Word(n, tuple(letters))
