"""Shared randomized-instance builders.

Everything takes an explicit random.Random so each test controls its seed;
a failing case can then be replayed by seed alone.
"""

from __future__ import annotations

import random

from fixfnm import (
    Alphabet,
    FreeHom,
    ProductEndo,
    TypeI,
    TypeII,
    TypeIII,
    TypeIV,
    TypeV,
    TypeVI,
    TypeVII,
    Word,
    generator,
    identity_hom,
    inner_hom,
    permutation_hom,
    weighted_sum,
    word,
)

A2 = Alphabet(2, "a")
B2 = Alphabet(2, "b")

RELAB_AB = FreeHom(A2, B2, B2.generators())
RELAB_BA = FreeHom(B2, A2, A2.generators())

# sign-normalized primitive words; classification canonicalizes power bases
# to exactly these forms, which keeps round-trip comparisons literal
PRIMITIVES_A = ("a1", "a2", "a1 a2", "a1 a2^-1", "a1^2 a2")
PRIMITIVES_B = ("b1", "b2", "b1 b2", "b1 b2^-1", "b1^2 b2")


def rng_for(name: str) -> random.Random:
    return random.Random(f"fixfnm:{name}")


def random_word(rng: random.Random, alphabet: Alphabet, length: int) -> Word:
    """A uniformly built reduced word of exactly the requested length."""
    letters: list[int] = []
    choices = [i for i in range(1, alphabet.rank + 1)]
    while len(letters) < length:
        pick = rng.choice(choices) * rng.choice((1, -1))
        if letters and pick == -letters[-1]:
            continue
        letters.append(pick)
    return word(alphabet, letters)


def random_hom(
    rng: random.Random,
    source: Alphabet,
    target: Alphabet,
    max_len: int = 3,
    allow_trivial_images: bool = True,
) -> FreeHom:
    images = []
    for _ in range(source.rank):
        low = 0 if allow_trivial_images else 1
        images.append(random_word(rng, target, rng.randint(low, max_len)))
    if not allow_trivial_images or any(not w.is_identity() for w in images):
        return FreeHom(source, target, tuple(images))
    # ensure the hom is nontrivial overall
    images[rng.randrange(source.rank)] = random_word(rng, target, 1)
    return FreeHom(source, target, tuple(images))


def supported_component(rng: random.Random, alphabet: Alphabet) -> FreeHom:
    """An endomorphism the oracle recognizes without declarations."""
    kind = rng.choice(("identity", "inner", "permutation"))
    if kind == "identity":
        return identity_hom(alphabet)
    if kind == "inner":
        return inner_hom(random_word(rng, alphabet, rng.randint(1, 2)))
    indices = list(range(1, alphabet.rank + 1))
    rng.shuffle(indices)
    return permutation_hom(alphabet, tuple(indices))


def _parse_primitive(text: str, alphabet: Alphabet) -> Word:
    from fixfnm import parse_word

    return parse_word(text, alphabet)


def _nonzero_weights(rng: random.Random, size: int) -> tuple[int, ...]:
    while True:
        w = tuple(rng.randint(-2, 2) for _ in range(size))
        if any(w):
            return w


def _weights_with_sum(rng: random.Random, base: Word, want: int) -> tuple[int, ...]:
    """Random weights whose weighted sum against ``base`` hits ``want``."""
    for _ in range(10_000):
        w = tuple(rng.randint(-3, 3) for _ in range(base.alphabet.rank))
        if weighted_sum(base, w) == want:
            return w
    raise AssertionError(f"no weight tuple reaches {want} for {base}")


def random_shape_payload(rng: random.Random, tag: str):
    """A random shape payload classifying back to the requested tag.

    Bases are drawn sign-normalized and primitive, so classify returns the
    payload verbatim. Free components come from the recognized family, so
    fix_product and decide work with a bare FixOracle().
    """
    u = _parse_primitive(rng.choice(PRIMITIVES_A), A2)
    v = _parse_primitive(rng.choice(PRIMITIVES_B), B2)
    if tag == "I":
        return TypeI(
            u,
            v,
            _nonzero_weights(rng, 2),
            _nonzero_weights(rng, 2),
            _nonzero_weights(rng, 2),
            _nonzero_weights(rng, 2),
        )
    if tag == "II":
        theta = random_hom(rng, B2, A2, allow_trivial_images=False)
        return TypeII(theta, v, _nonzero_weights(rng, 2), _nonzero_weights(rng, 2))
    if tag == "III.1":
        while True:
            p = _nonzero_weights(rng, 2)
            if weighted_sum(u, p) != 1:
                break
        return TypeIII(u, p, _nonzero_weights(rng, 2), supported_component(rng, B2))
    if tag == "III.2":
        p = _weights_with_sum(rng, u, 1)
        return TypeIII(u, p, _nonzero_weights(rng, 2), supported_component(rng, B2))
    if tag == "IV":
        theta = random_hom(rng, B2, A2, allow_trivial_images=False)
        return TypeIV(theta, supported_component(rng, B2))
    if tag == "V":
        return TypeV(v, _nonzero_weights(rng, 2), _nonzero_weights(rng, 2), 2)
    if tag == "VI":
        return TypeVI(supported_component(rng, A2), supported_component(rng, B2))
    if tag == "VII":
        # matched flavors keep the round-trip composites recognizable
        if rng.random() < 0.5:
            za = random_word(rng, A2, rng.randint(0, 2))
            zb = random_word(rng, B2, rng.randint(0, 2))
            to_first = RELAB_BA.then(inner_hom(za))
            to_second = RELAB_AB.then(inner_hom(zb))
        else:
            pa = list(range(1, 3))
            pb = list(range(1, 3))
            rng.shuffle(pa)
            rng.shuffle(pb)
            to_first = RELAB_BA.then(permutation_hom(A2, tuple(pa)))
            to_second = RELAB_AB.then(permutation_hom(B2, tuple(pb)))
        return TypeVII(to_first, to_second)
    raise ValueError(f"unknown tag {tag!r}")


def random_shape_endo(rng: random.Random, tag: str) -> ProductEndo:
    return random_shape_payload(rng, tag).as_endo()


ALL_TAGS = ("I", "II", "III.1", "III.2", "IV", "V", "VI", "VII")
