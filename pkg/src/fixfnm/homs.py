"""Homomorphisms between finitely generated free groups.

A homomorphism is stored by its generator images. Composition is written in
application order: `f.then(g)` maps w to g(f(w)).
"""

from __future__ import annotations

from dataclasses import dataclass

from .words import Alphabet, ParseError, Word, generator, parse_word, render_word, word


@dataclass(frozen=True)
class FreeHom:
    source: Alphabet
    target: Alphabet
    images: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(self.images) != self.source.rank:
            raise ValueError(
                f"need {self.source.rank} generator images, got {len(self.images)}"
            )
        for img in self.images:
            if img.alphabet != self.target:
                raise ValueError(f"image {img} lives in {img.alphabet}, not {self.target}")

    def apply(self, w: Word) -> Word:
        if w.alphabet != self.source:
            raise ValueError(f"{w} is not a word over {self.source}")
        out: list[int] = []
        for x in w.letters:
            img = self.images[abs(x) - 1]
            if x > 0:
                out.extend(img.letters)
            else:
                out.extend(-y for y in reversed(img.letters))
        return word(self.target, out)

    def then(self, other: "FreeHom") -> "FreeHom":
        """Composite mapping w to other(self(w))."""
        if self.target != other.source:
            raise ValueError(f"cannot chain {self.target} into {other.source}")
        return FreeHom(self.source, other.target, tuple(other.apply(i) for i in self.images))

    def is_trivial(self) -> bool:
        return all(img.is_identity() for img in self.images)

    def is_identity(self) -> bool:
        return self.source == self.target and all(
            img.letters == (i + 1,) for i, img in enumerate(self.images)
        )

    def as_permutation(self) -> tuple[int, ...] | None:
        """1-based image indices, if this permutes the basis without inverting."""
        if self.source != self.target:
            return None
        hits: list[int] = []
        for img in self.images:
            if len(img.letters) != 1 or img.letters[0] < 0:
                return None
            hits.append(img.letters[0])
        if sorted(hits) != list(range(1, self.source.rank + 1)):
            return None
        return tuple(hits)

    def __str__(self) -> str:
        pairs = ", ".join(
            f"{self.source.letter}{i + 1} -> {render_word(img)}"
            for i, img in enumerate(self.images)
        )
        return f"[{pairs}]"


def identity_hom(alphabet: Alphabet) -> FreeHom:
    return FreeHom(alphabet, alphabet, alphabet.generators())


def trivial_hom(source: Alphabet, target: Alphabet) -> FreeHom:
    return FreeHom(source, target, (Word(target),) * source.rank)


def inner_hom(z: Word) -> FreeHom:
    """Conjugation x -> z x z^-1 on z's own group."""
    alph = z.alphabet
    return FreeHom(alph, alph, tuple(g.conjugated_by(z) for g in alph.generators()))


def permutation_hom(alphabet: Alphabet, images: tuple[int, ...]) -> FreeHom:
    if sorted(images) != list(range(1, alphabet.rank + 1)):
        raise ValueError(f"{images} is not a permutation of 1..{alphabet.rank}")
    return FreeHom(alphabet, alphabet, tuple(generator(alphabet, i) for i in images))


def parse_hom_text(text: str) -> FreeHom:
    """Parse the `hom` file format.

    Header: `hom <src-rank> <tgt-rank> <src-letter> <tgt-letter>`, then one
    `<gen> -> <word>` line per source generator, in any order but each
    exactly once. Blank lines and lines starting with `#` are skipped.
    """
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty hom description")
    lineno, header = lines[0]
    fields = header.split()
    if len(fields) != 5 or fields[0] != "hom":
        raise ParseError("header must be `hom <src-rank> <tgt-rank> <src-letter> <tgt-letter>`", lineno)
    try:
        src_rank, tgt_rank = int(fields[1]), int(fields[2])
    except ValueError:
        raise ParseError("ranks must be integers", lineno) from None
    try:
        source = Alphabet(src_rank, fields[3])
        target = Alphabet(tgt_rank, fields[4])
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None
    images: dict[int, Word] = {}
    for lineno, line in lines[1:]:
        lhs, arrow, rhs = line.partition("->")
        if not arrow:
            raise ParseError("expected `<gen> -> <word>`", lineno)
        gen_tok = lhs.strip()
        gen_word = parse_word(gen_tok, source, line=lineno)
        if len(gen_word.letters) != 1 or gen_word.letters[0] < 0:
            raise ParseError(f"left side {gen_tok!r} must be a single generator", lineno)
        idx = gen_word.letters[0]
        if idx in images:
            raise ParseError(f"generator {gen_tok} listed twice", lineno)
        images[idx] = parse_word(rhs, target, line=lineno)
    missing = [i for i in range(1, src_rank + 1) if i not in images]
    if missing:
        names = ", ".join(f"{source.letter}{i}" for i in missing)
        raise ParseError(f"missing image for {names}")
    return FreeHom(source, target, tuple(images[i] for i in range(1, src_rank + 1)))


def render_hom_text(h: FreeHom) -> str:
    lines = [f"hom {h.source.rank} {h.target.rank} {h.source.letter} {h.target.letter}"]
    for i, img in enumerate(h.images):
        lines.append(f"{h.source.letter}{i + 1} -> {render_word(img)}")
    return "\n".join(lines) + "\n"


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((lineno, line))
    return out
