"""Free group words and exact power arithmetic.

A word is a freely reduced tuple of nonzero signed integers: letter i stands
for the i-th generator, -i for its inverse. Alphabets carry a display letter
('a' and 'b' for the two direct factors, 'x' for presentation alphabets) so
elements of different groups cannot be mixed up silently.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Sequence

from .lattices import IntLattice2

_LETTER_NAMES = ("a", "b", "x")


class ParseError(ValueError):
    """Input text that does not match the expected grammar."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where = f" ({where})"
        super().__init__(message + where)


@dataclass(frozen=True)
class Alphabet:
    """A free basis of a given rank with a display letter."""

    rank: int
    letter: str = "a"

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise ValueError(f"rank must be at least 1, got {self.rank}")
        if self.letter not in _LETTER_NAMES:
            raise ValueError(f"display letter must be one of {_LETTER_NAMES}")

    def generators(self) -> tuple["Word", ...]:
        return tuple(Word(self, (i,)) for i in range(1, self.rank + 1))

    def __str__(self) -> str:
        return f"F[{self.letter}1..{self.letter}{self.rank}]"


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word. Construct unreduced input via `word(...)`."""

    alphabet: Alphabet
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        prev = 0
        for x in self.letters:
            if x == 0 or abs(x) > self.alphabet.rank:
                raise ValueError(f"letter {x} outside {self.alphabet}")
            if x == -prev:
                raise ValueError(f"not freely reduced at ...{prev},{x}...")
            prev = x

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: "Word") -> "Word":
        if self.alphabet != other.alphabet:
            raise ValueError(f"cannot multiply {self.alphabet} by {other.alphabet}")
        return Word(self.alphabet, free_reduce(self.letters + other.letters))

    def inverse(self) -> "Word":
        return Word(self.alphabet, tuple(-x for x in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        result = Word(self.alphabet)
        chunk = self
        while n:
            if n & 1:
                result = result * chunk
            chunk = chunk * chunk
            n >>= 1
        return result

    def conjugated_by(self, c: "Word") -> "Word":
        """c * self * c^-1."""
        return c * self * c.inverse()

    def __str__(self) -> str:
        return render_word(self)


def word(alphabet: Alphabet, letters: Iterable[int]) -> Word:
    """Build a word from a possibly unreduced letter sequence."""
    return Word(alphabet, free_reduce(letters))


def identity(alphabet: Alphabet) -> Word:
    return Word(alphabet)


def generator(alphabet: Alphabet, i: int) -> Word:
    """The i-th basis element (1-based); negative i gives the inverse."""
    if i == 0 or abs(i) > alphabet.rank:
        raise ValueError(f"no generator {i} in {alphabet}")
    return Word(alphabet, (i,))


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Split w as conj * core * conj^-1 with core cyclically reduced.

    Returns (core, conj).
    """
    ls = w.letters
    i, j = 0, len(ls)
    while j - i >= 2 and ls[i] == -ls[j - 1]:
        i += 1
        j -= 1
    return Word(w.alphabet, ls[i:j]), Word(w.alphabet, ls[:i])


@dataclass(frozen=True)
class Root:
    """w == base ** exponent with base primitive; exponent 0 only for w == 1."""

    base: Word
    exponent: int


def root(w: Word) -> Root:
    """Primitive root decomposition. root(1) = (1, 0), else exponent >= 1.

    The primitive root of a nontrivial element is unique (not merely unique
    up to inversion), so this is a canonical form.
    """
    if w.is_identity():
        return Root(w, 0)
    core, conj = cyclic_reduce(w)
    n = len(core)
    for p in range(1, n + 1):
        if n % p:
            continue
        seed = core.letters[:p]
        if seed * (n // p) == core.letters:
            base = Word(w.alphabet, seed).conjugated_by(conj)
            return Root(base, n // p)
    raise AssertionError("unreachable: full length always a period")


def commute(u: Word, v: Word) -> bool:
    return u * v == v * u


def exponent_of_power(x: Word, u: Word) -> int | None:
    """The integer k with x == u**k, or None if there is none.

    When u == 1 != x there is no k; when x == 1 the answer is 0 (for u == 1
    as well, by convention the smallest choice).
    """
    if x.is_identity():
        return 0
    if u.is_identity():
        return None
    ru, rx = root(u), root(x)
    if rx.base == ru.base:
        m = rx.exponent
    elif rx.base == ru.base.inverse():
        m = -rx.exponent
    else:
        return None
    return m // ru.exponent if m % ru.exponent == 0 else None


def solve_power_equation(v: Word, w: Word) -> IntLattice2:
    """The lattice of all (m, k) in Z^2 with v**m == w**k.

    Nontrivial non-commuting pairs admit only (0, 0). Commuting nontrivial
    pairs share a unique primitive root rho with v = rho^c, w = rho^d, and
    the solutions form the line spanned by (d/g, c/g), g = gcd(c, d).
    """
    if v.is_identity() and w.is_identity():
        return IntLattice2.full()
    if v.is_identity():
        return IntLattice2.line((1, 0))
    if w.is_identity():
        return IntLattice2.line((0, 1))
    if not commute(v, w):
        return IntLattice2.zero()
    rv, rw = root(v), root(w)
    c = rv.exponent
    if rw.base == rv.base:
        d = rw.exponent
    elif rw.base == rv.base.inverse():
        d = -rw.exponent
    else:
        raise AssertionError("commuting nontrivial words must share a primitive root")
    g = gcd(c, d)
    return IntLattice2.line((d // g, c // g))


def weighted_sum(w: Word, weights: Sequence[int]) -> int:
    """Sum of per-generator weights along w, signs included.

    This is the image of w under the homomorphism to Z sending the i-th
    generator to weights[i-1]; it only depends on the abelianization.
    """
    if len(weights) != w.alphabet.rank:
        raise ValueError(f"expected {w.alphabet.rank} weights, got {len(weights)}")
    return sum((weights[x - 1] if x > 0 else -weights[-x - 1]) for x in w.letters)


def shortlex_key(w: Word) -> tuple:
    """Total order key: length first, then a1 < a1^-1 < a2 < a2^-1 < ..."""
    return (len(w.letters), tuple((abs(x), 0 if x > 0 else 1) for x in w.letters))


def sign_normalized(w: Word) -> Word:
    """The shortlex-smaller of w and its inverse."""
    inv = w.inverse()
    return w if shortlex_key(w) <= shortlex_key(inv) else inv


def enumerate_ball(alphabet: Alphabet, radius: int) -> Iterator[Word]:
    """All reduced words of length <= radius, in length-lexicographic order.

    Letter order within a length: 1 < -1 < 2 < -2 < ...
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    order = [s * i for i in range(1, alphabet.rank + 1) for s in (1, -1)]
    layer: list[tuple[int, ...]] = [()]
    yield Word(alphabet)
    for _ in range(radius):
        nxt: list[tuple[int, ...]] = []
        for prefix in layer:
            for x in order:
                if prefix and prefix[-1] == -x:
                    continue
                ext = prefix + (x,)
                nxt.append(ext)
                yield Word(alphabet, ext)
        layer = nxt


def ball_size(rank: int, radius: int) -> int:
    """Number of reduced words of length <= radius in rank `rank`."""
    total, layer = 1, 1
    for k in range(1, radius + 1):
        layer = layer * (2 * rank - 1) if k > 1 else 2 * rank
        total += layer
    return total


_TOKEN_RE = re.compile(r"(?P<letter>[abx])(?P<index>[0-9]+)(\^(?P<exp>-?[0-9]+))?$")


def parse_word(text: str, alphabet: Alphabet, *, line: int | None = None) -> Word:
    """Parse whitespace-separated tokens like `a1 b2^-3`; `1` alone is the identity."""
    tokens = [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", text)]
    if not tokens:
        raise ParseError("empty word (use `1` for the identity)", line)
    if any(tok == "1" for tok, _ in tokens):
        if len(tokens) > 1:
            _, col = next((t, c) for t, c in tokens if t == "1")
            raise ParseError("`1` must stand alone", line, col)
        return Word(alphabet)
    letters: list[int] = []
    for tok, col in tokens:
        m = _TOKEN_RE.match(tok)
        if not m:
            raise ParseError(f"bad token {tok!r}", line, col)
        if m.group("letter") != alphabet.letter:
            raise ParseError(
                f"letter {m.group('letter')!r} does not belong to {alphabet}", line, col
            )
        index = int(m.group("index"))
        if not 1 <= index <= alphabet.rank:
            raise ParseError(f"index {index} out of range 1..{alphabet.rank}", line, col)
        exp = int(m.group("exp")) if m.group("exp") is not None else 1
        letters.extend([index if exp > 0 else -index] * abs(exp))
    return word(alphabet, letters)


def render_word(w: Word) -> str:
    """Inverse of parse_word; runs of a letter are grouped as `a1^3`."""
    if w.is_identity():
        return "1"
    parts: list[str] = []
    i = 0
    ls = w.letters
    while i < len(ls):
        j = i
        while j < len(ls) and ls[j] == ls[i]:
            j += 1
        run = j - i
        name = f"{w.alphabet.letter}{abs(ls[i])}"
        exp = run if ls[i] > 0 else -run
        parts.append(name if exp == 1 else f"{name}^{exp}")
        i = j
    return " ".join(parts)
