"""Endomorphisms of a product of two free groups, and their shape types.

An endomorphism of F_n x F_m splits into four blocks: writing images of the
two factors componentwise,

    (x, y) |-> (ff(x) * fs(y), sf(x) * ss(y))

for homs ff: F_n -> F_n, fs: F_m -> F_n, sf: F_n -> F_m, ss: F_m -> F_m.
Such block data defines a homomorphism iff for all generators a_i, b_j the
words ff(a_i), fs(b_j) commute in F_n and sf(a_i), ss(b_j) commute in F_m.

Because centralizers in free groups are cyclic, the commutation constraints
force most block patterns into one of seven shapes, told apart by which
blocks vanish. Types VI and VII are the diagonal and the coordinate-swapping
shapes; in the remaining shapes whole coordinates are powers of a fixed word
with exponents read off abelianized inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .homs import FreeHom, identity_hom, trivial_hom
from .words import (
    Alphabet,
    ParseError,
    Word,
    exponent_of_power,
    parse_word,
    render_word,
    root,
    sign_normalized,
    weighted_sum,
)


class CommutationViolation(ValueError):
    """Block data that does not define a homomorphism of the product."""

    def __init__(self, a_index: int, b_index: int, component: str):
        self.a_index = a_index
        self.b_index = b_index
        self.component = component
        super().__init__(
            f"images of a{a_index} and b{b_index} have non-commuting "
            f"{component} components"
        )


class UnclassifiableEndo(ValueError):
    """A valid endomorphism that fits none of the seven shapes."""


@dataclass(frozen=True)
class ProductElement:
    first: Word
    second: Word

    def __post_init__(self) -> None:
        if self.first.alphabet.letter != "a" or self.second.alphabet.letter != "b":
            raise ValueError("product elements pair an a-word with a b-word")

    def __mul__(self, other: "ProductElement") -> "ProductElement":
        return ProductElement(self.first * other.first, self.second * other.second)

    def inverse(self) -> "ProductElement":
        return ProductElement(self.first.inverse(), self.second.inverse())

    def is_identity(self) -> bool:
        return self.first.is_identity() and self.second.is_identity()

    def __str__(self) -> str:
        return f"({render_word(self.first)}, {render_word(self.second)})"


@dataclass(frozen=True)
class ProductEndo:
    """Endomorphism of F_n x F_m in block form; validated on construction."""

    first_from_first: FreeHom
    first_from_second: FreeHom
    second_from_first: FreeHom
    second_from_second: FreeHom

    def __post_init__(self) -> None:
        a = self.first_from_first.source
        b = self.second_from_second.source
        if a.letter != "a" or b.letter != "b":
            raise ValueError("expected an 'a' alphabet and a 'b' alphabet")
        if a.rank < 2 or b.rank < 2:
            raise ValueError("both factors must have rank at least 2")
        shapes = (
            (self.first_from_first, a, a),
            (self.first_from_second, b, a),
            (self.second_from_first, a, b),
            (self.second_from_second, b, b),
        )
        for hom, src, tgt in shapes:
            if hom.source != src or hom.target != tgt:
                raise ValueError(f"block {hom} should map {src} to {tgt}")
        for i, first_a in enumerate(self.first_from_first.images, start=1):
            for j, first_b in enumerate(self.first_from_second.images, start=1):
                if first_a * first_b != first_b * first_a:
                    raise CommutationViolation(i, j, "first")
        for i, second_a in enumerate(self.second_from_first.images, start=1):
            for j, second_b in enumerate(self.second_from_second.images, start=1):
                if second_a * second_b != second_b * second_a:
                    raise CommutationViolation(i, j, "second")

    @property
    def first_alphabet(self) -> Alphabet:
        return self.first_from_first.source

    @property
    def second_alphabet(self) -> Alphabet:
        return self.second_from_second.source

    def apply(self, g: ProductElement) -> ProductElement:
        if g.first.alphabet != self.first_alphabet or g.second.alphabet != self.second_alphabet:
            raise ValueError("element does not belong to this endomorphism's group")
        return ProductElement(
            self.first_from_first.apply(g.first) * self.first_from_second.apply(g.second),
            self.second_from_first.apply(g.first) * self.second_from_second.apply(g.second),
        )

    def then(self, other: "ProductEndo") -> "ProductEndo":
        """Composite mapping g to other(self(g))."""
        if (
            self.first_alphabet != other.first_alphabet
            or self.second_alphabet != other.second_alphabet
        ):
            raise ValueError("cannot compose endomorphisms of different products")
        a, b = self.first_alphabet, self.second_alphabet
        one_a, one_b = Word(a), Word(b)
        ff, sf = [], []
        for g in a.generators():
            img = other.apply(self.apply(ProductElement(g, one_b)))
            ff.append(img.first)
            sf.append(img.second)
        fs, ss = [], []
        for g in b.generators():
            img = other.apply(self.apply(ProductElement(one_a, g)))
            fs.append(img.first)
            ss.append(img.second)
        return ProductEndo(
            FreeHom(a, a, tuple(ff)),
            FreeHom(b, a, tuple(fs)),
            FreeHom(a, b, tuple(sf)),
            FreeHom(b, b, tuple(ss)),
        )

    def is_identity(self) -> bool:
        return (
            self.first_from_first.is_identity()
            and self.second_from_second.is_identity()
            and self.first_from_second.is_trivial()
            and self.second_from_first.is_trivial()
        )

    def fixes(self, g: ProductElement) -> bool:
        return self.apply(g) == g


def identity_endo(n: int, m: int) -> ProductEndo:
    a, b = Alphabet(n, "a"), Alphabet(m, "b")
    return ProductEndo(
        identity_hom(a), trivial_hom(b, a), trivial_hom(a, b), identity_hom(b)
    )


def product_identity(n: int, m: int) -> ProductElement:
    return ProductElement(Word(Alphabet(n, "a")), Word(Alphabet(m, "b")))


# --- the seven shapes ------------------------------------------------------
#
# Payloads follow the block structure. Power blocks are stored as a base
# word plus one integer weight per generator: the block sends x to
# base ** weighted_sum(x, weights).


@dataclass(frozen=True)
class TypeI:
    """Both coordinates are powers of fixed words."""

    first_base: Word
    second_base: Word
    first_a_weights: tuple[int, ...]
    first_b_weights: tuple[int, ...]
    second_a_weights: tuple[int, ...]
    second_b_weights: tuple[int, ...]

    label = "I"

    def exponent_matrix(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Integer matrix whose kernel gives the fixed exponent pairs.

        (first_base**p, second_base**q) is fixed iff this matrix kills
        (p, q).
        """
        self_first = weighted_sum(self.first_base, self.first_a_weights)
        cross_first = weighted_sum(self.second_base, self.first_b_weights)
        cross_second = weighted_sum(self.first_base, self.second_a_weights)
        self_second = weighted_sum(self.second_base, self.second_b_weights)
        return ((self_first - 1, cross_first), (cross_second, self_second - 1))

    def as_endo(self) -> ProductEndo:
        a = self.first_base.alphabet
        b = self.second_base.alphabet
        return ProductEndo(
            FreeHom(a, a, tuple(self.first_base ** w for w in self.first_a_weights)),
            FreeHom(b, a, tuple(self.first_base ** w for w in self.first_b_weights)),
            FreeHom(a, b, tuple(self.second_base ** w for w in self.second_a_weights)),
            FreeHom(b, b, tuple(self.second_base ** w for w in self.second_b_weights)),
        )


@dataclass(frozen=True)
class TypeII:
    """First coordinate from the second factor, second coordinate a power."""

    first_from_second: FreeHom
    second_base: Word
    second_a_weights: tuple[int, ...]
    second_b_weights: tuple[int, ...]

    label = "II"

    def as_endo(self) -> ProductEndo:
        a = self.first_from_second.target
        b = self.first_from_second.source
        return ProductEndo(
            trivial_hom(a, a),
            self.first_from_second,
            FreeHom(a, b, tuple(self.second_base ** w for w in self.second_a_weights)),
            FreeHom(b, b, tuple(self.second_base ** w for w in self.second_b_weights)),
        )


@dataclass(frozen=True)
class TypeIII:
    """First coordinate a power fed by both factors, second an endo of F_m."""

    first_base: Word
    first_a_weights: tuple[int, ...]
    first_b_weights: tuple[int, ...]
    second_from_second: FreeHom

    def self_weight(self) -> int:
        """Multiplier the first exponent picks up from its own coordinate."""
        return weighted_sum(self.first_base, self.first_a_weights)

    @property
    def label(self) -> str:
        return "III.1" if self.self_weight() != 1 else "III.2"

    def as_endo(self) -> ProductEndo:
        a = self.first_base.alphabet
        b = self.second_from_second.source
        return ProductEndo(
            FreeHom(a, a, tuple(self.first_base ** w for w in self.first_a_weights)),
            FreeHom(b, a, tuple(self.first_base ** w for w in self.first_b_weights)),
            trivial_hom(a, b),
            self.second_from_second,
        )


@dataclass(frozen=True)
class TypeIV:
    """Both coordinates read off the second factor."""

    first_from_second: FreeHom
    second_from_second: FreeHom

    label = "IV"

    def as_endo(self) -> ProductEndo:
        a = self.first_from_second.target
        b = self.first_from_second.source
        return ProductEndo(
            trivial_hom(a, a),
            self.first_from_second,
            trivial_hom(a, b),
            self.second_from_second,
        )


@dataclass(frozen=True)
class TypeV:
    """First coordinate collapses, second is a power fed by both factors."""

    second_base: Word
    second_a_weights: tuple[int, ...]
    second_b_weights: tuple[int, ...]
    first_rank: int

    label = "V"

    def as_endo(self) -> ProductEndo:
        a = Alphabet(self.first_rank, "a")
        b = self.second_base.alphabet
        return ProductEndo(
            trivial_hom(a, a),
            trivial_hom(b, a),
            FreeHom(a, b, tuple(self.second_base ** w for w in self.second_a_weights)),
            FreeHom(b, b, tuple(self.second_base ** w for w in self.second_b_weights)),
        )


@dataclass(frozen=True)
class TypeVI:
    """Coordinatewise pair of endomorphisms."""

    first: FreeHom
    second: FreeHom

    label = "VI"

    def as_endo(self) -> ProductEndo:
        a, b = self.first.source, self.second.source
        return ProductEndo(self.first, trivial_hom(b, a), trivial_hom(a, b), self.second)


@dataclass(frozen=True)
class TypeVII:
    """Coordinate-swapping pair of homs."""

    first_from_second: FreeHom
    second_from_first: FreeHom

    label = "VII"

    def as_endo(self) -> ProductEndo:
        a = self.first_from_second.target
        b = self.first_from_second.source
        return ProductEndo(
            trivial_hom(a, a),
            self.first_from_second,
            self.second_from_first,
            trivial_hom(b, b),
        )


EndoType = Union[TypeI, TypeII, TypeIII, TypeIV, TypeV, TypeVI, TypeVII]


def _power_family(blocks: Sequence[Word]) -> tuple[Word, list[int]] | None:
    """Common primitive root (sign-normalized) and exponents, if one exists.

    The exponent of a trivial word is 0. Returns None when some word is not
    a power of the seed's primitive root.
    """
    seed = next((w for w in blocks if not w.is_identity()), None)
    if seed is None:
        return None
    rho = sign_normalized(root(seed).base)
    exps: list[int] = []
    for w in blocks:
        k = exponent_of_power(w, rho)
        if k is None:
            return None
        exps.append(k)
    return rho, exps


def classify(e: ProductEndo) -> EndoType:
    """Sort a valid endomorphism into one of the seven shapes.

    Raises UnclassifiableEndo for the (rare, but real) valid block patterns
    that fit none of them: a coordinate that should be a power family is
    unconstrained because the opposite block vanishes.
    """
    n, m = e.first_alphabet.rank, e.second_alphabet.rank
    z1 = e.first_from_first.is_trivial()
    z2 = e.second_from_first.is_trivial()
    z3 = e.first_from_second.is_trivial()
    z4 = e.second_from_second.is_trivial()
    if z2 and z3:
        return TypeVI(e.first_from_first, e.second_from_second)
    if z1 and z4:
        return TypeVII(e.first_from_second, e.second_from_first)
    if z1 and z2:
        return TypeIV(e.first_from_second, e.second_from_second)
    if z1 and z3:
        fam = _power_family(e.second_from_first.images + e.second_from_second.images)
        assert fam is not None, "commutation forces a common root here"
        base, exps = fam
        return TypeV(base, tuple(exps[:n]), tuple(exps[n:]), n)
    if z1:
        fam = _power_family(e.second_from_first.images + e.second_from_second.images)
        assert fam is not None, "commutation forces a common root here"
        base, exps = fam
        return TypeII(e.first_from_second, base, tuple(exps[:n]), tuple(exps[n:]))
    if z2:
        if z4:
            raise UnclassifiableEndo(
                "first coordinate is a power family fed by both factors but "
                "the second coordinate collapses; no shape covers this"
            )
        fam = _power_family(e.first_from_first.images + e.first_from_second.images)
        assert fam is not None, "commutation forces a common root here"
        base, exps = fam
        return TypeIII(base, tuple(exps[:n]), tuple(exps[n:]), e.second_from_second)
    first_fam = _power_family(e.first_from_first.images + e.first_from_second.images)
    if first_fam is None:
        raise UnclassifiableEndo(
            "first-coordinate blocks are not powers of a common word"
        )
    second_fam = _power_family(e.second_from_first.images + e.second_from_second.images)
    if second_fam is None:
        raise UnclassifiableEndo(
            "second-coordinate blocks are not powers of a common word"
        )
    first_base, first_exps = first_fam
    second_base, second_exps = second_fam
    return TypeI(
        first_base,
        second_base,
        tuple(first_exps[:n]),
        tuple(first_exps[n:]),
        tuple(second_exps[:n]),
        tuple(second_exps[n:]),
    )


# --- endo file format ------------------------------------------------------


def parse_endo_text(text: str) -> ProductEndo:
    """Parse the `endo` file format.

    Header `endo <n> <m>`, then one line per generator of either factor:
    `a<i> -> ( <a-word> , <b-word> )` or `b<j> -> ( <a-word> , <b-word> )`.
    Blank lines and `#` comments are skipped.
    """
    lines = [
        (no, ln.strip())
        for no, ln in enumerate(text.splitlines(), start=1)
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise ParseError("empty endo description")
    lineno, header = lines[0]
    fields = header.split()
    if len(fields) != 3 or fields[0] != "endo":
        raise ParseError("header must be `endo <n> <m>`", lineno)
    try:
        n, m = int(fields[1]), int(fields[2])
    except ValueError:
        raise ParseError("ranks must be integers", lineno) from None
    if n < 2 or m < 2:
        raise ParseError("both ranks must be at least 2", lineno)
    a, b = Alphabet(n, "a"), Alphabet(m, "b")
    first_images: dict[tuple[str, int], Word] = {}
    second_images: dict[tuple[str, int], Word] = {}
    for lineno, line in lines[1:]:
        lhs, arrow, rhs = line.partition("->")
        if not arrow:
            raise ParseError("expected `<gen> -> ( <a-word> , <b-word> )`", lineno)
        gen_tok = lhs.strip()
        side = gen_tok[:1]
        if side not in ("a", "b"):
            raise ParseError(f"left side {gen_tok!r} must be a generator", lineno)
        gen_word = parse_word(gen_tok, a if side == "a" else b, line=lineno)
        if len(gen_word.letters) != 1 or gen_word.letters[0] < 0:
            raise ParseError(f"left side {gen_tok!r} must be a single generator", lineno)
        idx = gen_word.letters[0]
        key = (side, idx)
        if key in first_images:
            raise ParseError(f"generator {gen_tok} listed twice", lineno)
        body = rhs.strip()
        if not body.startswith("(") or not body.endswith(")"):
            raise ParseError("image must be parenthesized: ( <a-word> , <b-word> )", lineno)
        inner = body[1:-1]
        if inner.count(",") != 1:
            raise ParseError("image must contain exactly one comma", lineno)
        first_text, second_text = inner.split(",")
        first_images[key] = parse_word(first_text, a, line=lineno)
        second_images[key] = parse_word(second_text, b, line=lineno)
    missing = [
        f"{side}{i}"
        for side, rank in (("a", n), ("b", m))
        for i in range(1, rank + 1)
        if (side, i) not in first_images
    ]
    if missing:
        raise ParseError(f"missing image for {', '.join(missing)}")
    return ProductEndo(
        FreeHom(a, a, tuple(first_images[("a", i)] for i in range(1, n + 1))),
        FreeHom(b, a, tuple(first_images[("b", j)] for j in range(1, m + 1))),
        FreeHom(a, b, tuple(second_images[("a", i)] for i in range(1, n + 1))),
        FreeHom(b, b, tuple(second_images[("b", j)] for j in range(1, m + 1))),
    )


def render_endo_text(e: ProductEndo) -> str:
    n, m = e.first_alphabet.rank, e.second_alphabet.rank
    lines = [f"endo {n} {m}"]
    for i in range(n):
        lines.append(
            f"a{i + 1} -> ( {render_word(e.first_from_first.images[i])} , "
            f"{render_word(e.second_from_first.images[i])} )"
        )
    for j in range(m):
        lines.append(
            f"b{j + 1} -> ( {render_word(e.first_from_second.images[j])} , "
            f"{render_word(e.second_from_second.images[j])} )"
        )
    return "\n".join(lines) + "\n"
