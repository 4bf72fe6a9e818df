"""Deciding whether two fixed subgroups of a product meet nontrivially.

The first endomorphism must preserve or swap the two coordinates outright
(shape VI or VII); the second may be any of the seven shapes.  Each of the
sixteen pairings gets its own branch, labelled "1.1".."2.8" in the verdict
trace: family 1 is a diagonal first argument, family 2 a swapping one, and
the second digit follows the shape order I, II, III.1, III.2, IV, V, VI, VII.

Membership of a single word in a fixed subgroup is a word equality and
needs no oracle; a branch asks the oracle only when it has to intersect or
map whole fixed subgroups (1.3-1.5, 1.7, 1.8, 2.5, 2.7, 2.8).

Every nontrivial verdict carries either a verified witness or, in one
bounded-search corner of branch 1.5, a rank-comparison certificate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .fixpoints import FixOracle, PairedPowers
from .homs import FreeHom
from .lattices import IntLattice2, kernel_basis
from .product import (
    ProductElement,
    ProductEndo,
    TypeI,
    TypeII,
    TypeIII,
    TypeIV,
    TypeV,
    TypeVI,
    TypeVII,
    classify,
)
from .stallings import (
    SubgroupGraph,
    congruence_subgroup,
    express_in_generators,
    from_generators,
    restricted_kernel_trivial,
)
from .words import (
    Alphabet,
    Word,
    enumerate_ball,
    solve_power_equation,
    weighted_sum,
)


class UnsupportedShape(ValueError):
    """First endomorphism is neither diagonal (VI) nor swapping (VII)."""


@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision run.

    ``certificate`` is None for trivial verdicts, "witness" when a concrete
    nontrivial common fixed point is attached, and "rank-comparison" when
    nontriviality was proven by a rank drop without producing an element.
    """

    trivial: bool
    witness: Optional[ProductElement]
    certificate: Optional[str]
    trace: tuple[str, ...]

    @classmethod
    def intersection_trivial(cls, trace: tuple[str, ...]) -> "Verdict":
        return cls(True, None, None, tuple(trace))

    @classmethod
    def with_witness(
        cls,
        phi: ProductEndo,
        psi: ProductEndo,
        witness: ProductElement,
        trace: tuple[str, ...],
    ) -> "Verdict":
        assert not witness.is_identity(), "witness must be nontrivial"
        assert phi.fixes(witness), "witness must be fixed by the first endomorphism"
        assert psi.fixes(witness), "witness must be fixed by the second endomorphism"
        return cls(False, witness, "witness", tuple(trace))

    @classmethod
    def nontrivial_by_rank(cls, trace: tuple[str, ...]) -> "Verdict":
        return cls(False, None, "rank-comparison", tuple(trace))

    def describe(self) -> str:
        tag = "/".join(self.trace)
        if self.trivial:
            return f"TRIVIAL [{tag}]"
        if self.witness is not None:
            return f"NONTRIVIAL {self.witness} [{tag}]"
        return f"NONTRIVIAL by rank comparison, no witness found [{tag}]"


def _is_fixed(h: FreeHom, w: Word) -> bool:
    return h.apply(w) == w


def _pull_back(domain: SubgroupGraph, h: FreeHom, target: Word) -> Word:
    """Some member of ``domain`` mapping onto ``target`` under ``h``.

    ``target`` must lie in the image of the restriction; it is then
    expressed over the images of the domain basis and the expression is
    replayed over the basis itself.
    """
    gens = domain.basis()
    expression = express_in_generators([h.apply(g) for g in gens], target)
    assert expression is not None, "target must lie in the image"
    out = Word(domain.alphabet)
    for step in expression:
        g = gens[abs(step) - 1]
        out = out * (g if step > 0 else g.inverse())
    assert h.apply(out) == target
    return out


def _kernel_search(domain: SubgroupGraph, h: FreeHom, radius: int) -> Optional[Word]:
    """A nontrivial member of ``domain`` killed by ``h``, by bounded search.

    Expressions over the domain basis of length up to ``radius`` are tried
    in length-lexicographic order.
    """
    gens = domain.basis()
    if not gens:
        return None
    helper = Alphabet(len(gens), "x")
    for expression in enumerate_ball(helper, radius):
        if expression.is_identity():
            continue
        candidate = Word(domain.alphabet)
        for step in expression.letters:
            g = gens[abs(step) - 1]
            candidate = candidate * (g if step > 0 else g.inverse())
        # a reduced expression over a free basis is never the identity
        assert not candidate.is_identity()
        if h.apply(candidate).is_identity():
            return candidate
    return None


def decide(
    phi: ProductEndo,
    psi: ProductEndo,
    oracle: Optional[FixOracle] = None,
    kernel_search_radius: int = 8,
) -> Verdict:
    """Is Fix(phi) meet Fix(psi) bigger than the identity?

    ``phi`` must classify as shape VI or VII.  ``psi`` may be anything the
    classifier accepts.  The oracle supplies fixed subgroups of the free
    component endomorphisms whenever a branch needs them as subgroups; it
    raises MissingOracle for endomorphisms it cannot handle.
    """
    if oracle is None:
        oracle = FixOracle()
    if (
        phi.first_alphabet != psi.first_alphabet
        or phi.second_alphabet != psi.second_alphabet
    ):
        raise ValueError("the two endomorphisms act on different products")
    first_shape = classify(phi)
    if isinstance(first_shape, TypeVI):
        return _decide_with_diagonal(phi, psi, first_shape, oracle, kernel_search_radius)
    if isinstance(first_shape, TypeVII):
        return _decide_with_swap(phi, psi, first_shape, oracle, kernel_search_radius)
    raise UnsupportedShape(
        f"first endomorphism has shape {first_shape.label}; only the diagonal "
        "shape VI and the swapping shape VII are supported in first position"
    )


def _decide_with_diagonal(
    phi: ProductEndo,
    psi: ProductEndo,
    vi: TypeVI,
    oracle: FixOracle,
    kernel_search_radius: int,
) -> Verdict:
    a = phi.first_alphabet
    b = phi.second_alphabet
    shape = classify(psi)

    if isinstance(shape, TypeI):
        trace = ("1.1",)
        u, v = shape.first_base, shape.second_base
        lattice = IntLattice2.from_rows(kernel_basis(shape.exponent_matrix(), 2))
        # a nontrivial power is fixed iff its base is (roots are unique), so
        # an unfixed base pins the matching exponent to zero
        if not (u.is_identity() or _is_fixed(vi.first, u)):
            lattice = lattice.intersect(IntLattice2.line((0, 1)))
        if not (v.is_identity() or _is_fixed(vi.second, v)):
            lattice = lattice.intersect(IntLattice2.line((1, 0)))
        witness = PairedPowers(u, v, lattice).nontrivial_witness()
        if witness is None:
            return Verdict.intersection_trivial(trace)
        return Verdict.with_witness(phi, psi, witness, trace)

    if isinstance(shape, TypeII):
        trace = ("1.2",)
        v = shape.second_base
        mapped = shape.first_from_second.apply(v)
        gain = weighted_sum(mapped, shape.second_a_weights) + weighted_sum(
            v, shape.second_b_weights
        )
        if gain != 1:
            # the second coordinate of psi's fixed points is then trivial
            return Verdict.intersection_trivial(trace)
        # gain == 1 rules out v == 1, whose gain would be 0
        if not _is_fixed(vi.second, v):
            return Verdict.intersection_trivial(trace)
        if mapped.is_identity() or _is_fixed(vi.first, mapped):
            return Verdict.with_witness(phi, psi, ProductElement(mapped, v), trace)
        return Verdict.intersection_trivial(trace)

    if isinstance(shape, TypeIII):
        u = shape.first_base
        weights = shape.first_b_weights
        if shape.self_weight() != 1:
            trace = ("1.3",)
            d = 1 - shape.self_weight()
            window = congruence_subgroup(b, weights, abs(d))
            narrowed = oracle.fix(shape.second_from_second).intersect(window)
            k = narrowed.intersect(oracle.fix(vi.second))
            if k.is_trivial():
                return Verdict.intersection_trivial(trace)
            if u.is_identity() or _is_fixed(vi.first, u):
                y = k.basis()[0]
                exponent = weighted_sum(y, weights) // d
                return Verdict.with_witness(
                    phi, psi, ProductElement(u**exponent, y), trace
                )
            ok, y = restricted_kernel_trivial(k, weights)
            if ok:
                return Verdict.intersection_trivial(trace)
            assert y is not None
            return Verdict.with_witness(phi, psi, ProductElement(Word(a), y), trace)
        trace = ("1.4",)
        if not u.is_identity() and _is_fixed(vi.first, u):
            return Verdict.with_witness(phi, psi, ProductElement(u, Word(b)), trace)
        k = oracle.fix(shape.second_from_second).intersect(oracle.fix(vi.second))
        ok, y = restricted_kernel_trivial(k, weights)
        if ok:
            return Verdict.intersection_trivial(trace)
        assert y is not None
        return Verdict.with_witness(phi, psi, ProductElement(Word(a), y), trace)

    if isinstance(shape, TypeIV):
        trace = ("1.5",)
        theta = shape.first_from_second
        k = oracle.fix(shape.second_from_second).intersect(oracle.fix(vi.second))
        img = from_generators([theta.apply(g) for g in k.basis()], a)
        j = img.intersect(oracle.fix(vi.first))
        if not j.is_trivial():
            target = j.basis()[0]
            y = _pull_back(k, theta, target)
            return Verdict.with_witness(phi, psi, ProductElement(target, y), trace)
        if img.rank == k.rank:
            # the restriction of theta to k is injective (free groups are
            # Hopfian), so nothing nontrivial maps into Fix of vi.first
            return Verdict.intersection_trivial(trace)
        y = _kernel_search(k, theta, kernel_search_radius)
        if y is None:
            return Verdict.nontrivial_by_rank(trace)
        return Verdict.with_witness(phi, psi, ProductElement(Word(a), y), trace)

    if isinstance(shape, TypeV):
        trace = ("1.6",)
        v = shape.second_base
        if weighted_sum(v, shape.second_b_weights) != 1:
            return Verdict.intersection_trivial(trace)
        if _is_fixed(vi.second, v):
            return Verdict.with_witness(phi, psi, ProductElement(Word(a), v), trace)
        return Verdict.intersection_trivial(trace)

    if isinstance(shape, TypeVI):
        trace = ("1.7",)
        first_meet = oracle.fix(vi.first).intersect(oracle.fix(shape.first))
        if not first_meet.is_trivial():
            witness = ProductElement(first_meet.basis()[0], Word(b))
            return Verdict.with_witness(phi, psi, witness, trace)
        second_meet = oracle.fix(vi.second).intersect(oracle.fix(shape.second))
        if not second_meet.is_trivial():
            witness = ProductElement(Word(a), second_meet.basis()[0])
            return Verdict.with_witness(phi, psi, witness, trace)
        return Verdict.intersection_trivial(trace)

    assert isinstance(shape, TypeVII)
    return _diagonal_meets_swap(phi, psi, vi, shape, oracle, ("1.8",))


def _diagonal_meets_swap(
    phi: ProductEndo,
    psi: ProductEndo,
    vi: TypeVI,
    vii: TypeVII,
    oracle: FixOracle,
    trace: tuple[str, ...],
) -> Verdict:
    """Common engine for 1.8 and (with the roles reversed) 2.7.

    Members of the swapping shape's fixed subgroup are the pairs
    (x, to_second(x)) with x fixed by the round trip through both blocks.
    Pushing the admissible x forward must land inside the diagonal shape's
    second fixed subgroup; the push-forward being injective there, the
    intersection is trivial exactly when that image meet is.
    """
    to_first = vii.first_from_second
    to_second = vii.second_from_first
    round_trip = to_second.then(to_first)
    k = oracle.fix(round_trip).intersect(oracle.fix(vi.first))
    img = from_generators([to_second.apply(g) for g in k.basis()], to_second.target)
    j = img.intersect(oracle.fix(vi.second))
    if j.is_trivial():
        # any member has second coordinate in j; killing it kills the first
        # coordinate too since x = to_first(to_second(x))
        return Verdict.intersection_trivial(trace)
    target = j.basis()[0]
    x = _pull_back(k, to_second, target)
    return Verdict.with_witness(phi, psi, ProductElement(x, target), trace)


def _decide_with_swap(
    phi: ProductEndo,
    psi: ProductEndo,
    vii: TypeVII,
    oracle: FixOracle,
    kernel_search_radius: int,
) -> Verdict:
    a = phi.first_alphabet
    b = phi.second_alphabet
    to_first = vii.first_from_second
    to_second = vii.second_from_first
    round_trip = to_second.then(to_first)
    shape = classify(psi)

    if isinstance(shape, TypeI):
        trace = ("2.1",)
        u, v = shape.first_base, shape.second_base
        lattice = IntLattice2.from_rows(kernel_basis(shape.exponent_matrix(), 2))
        # a member (u^p, v^q) of Fix(phi) forces v^q = to_second(u)^p; the
        # remaining equation u^p = to_first(v^q) then holds automatically
        # whenever the round trip fixes u, and otherwise pins p to zero
        lattice = lattice.intersect(
            solve_power_equation(v, to_second.apply(u)).swapped()
        )
        if not (u.is_identity() or _is_fixed(round_trip, u)):
            lattice = lattice.intersect(IntLattice2.line((0, 1)))
        witness = PairedPowers(u, v, lattice).nontrivial_witness()
        if witness is None:
            return Verdict.intersection_trivial(trace)
        return Verdict.with_witness(phi, psi, witness, trace)

    if isinstance(shape, TypeII):
        trace = ("2.2",)
        v = shape.second_base
        mapped = shape.first_from_second.apply(v)
        gain = weighted_sum(mapped, shape.second_a_weights) + weighted_sum(
            v, shape.second_b_weights
        )
        if gain != 1:
            return Verdict.intersection_trivial(trace)
        # unique roots collapse the power family onto its seed: the pair
        # (mapped, v) is in the intersection iff any nontrivial power is
        if mapped != to_first.apply(v):
            return Verdict.intersection_trivial(trace)
        if to_second.apply(mapped) != v:
            return Verdict.intersection_trivial(trace)
        return Verdict.with_witness(phi, psi, ProductElement(mapped, v), trace)

    if isinstance(shape, TypeIII):
        u = shape.first_base
        weights = shape.first_b_weights
        mapped = to_second.apply(u)
        theta = shape.second_from_second
        if shape.self_weight() != 1:
            trace = ("2.3",)
            if not _is_fixed(round_trip, u):
                return Verdict.intersection_trivial(trace)
            if not _is_fixed(theta, mapped):
                return Verdict.intersection_trivial(trace)
            if weighted_sum(mapped, weights) != 1 - shape.self_weight():
                return Verdict.intersection_trivial(trace)
            return Verdict.with_witness(phi, psi, ProductElement(u, mapped), trace)
        trace = ("2.4",)
        if not _is_fixed(round_trip, u):
            return Verdict.intersection_trivial(trace)
        if weighted_sum(mapped, weights) != 0:
            return Verdict.intersection_trivial(trace)
        if not _is_fixed(theta, mapped):
            return Verdict.intersection_trivial(trace)
        return Verdict.with_witness(phi, psi, ProductElement(u, mapped), trace)

    if isinstance(shape, TypeIV):
        trace = ("2.5",)
        theta = shape.first_from_second
        k = oracle.fix(theta.then(to_second)).intersect(
            oracle.fix(shape.second_from_second)
        )
        img = from_generators([theta.apply(g) for g in k.basis()], a)
        j = img.intersect(oracle.fix(round_trip))
        if j.is_trivial():
            # a member's first coordinate lies in j and its second is the
            # to_second-image of the first, so both die with j
            return Verdict.intersection_trivial(trace)
        target = j.basis()[0]
        y = _pull_back(k, theta, target)
        return Verdict.with_witness(phi, psi, ProductElement(target, y), trace)

    if isinstance(shape, TypeV):
        # members (1, v^b) of Fix(psi) would need v^b = to_second(1) = 1 to
        # be fixed by the swap, leaving only the identity
        return Verdict.intersection_trivial(("2.6",))

    if isinstance(shape, TypeVI):
        return _diagonal_meets_swap(phi, psi, shape, vii, oracle, ("2.7", "1.8"))

    assert isinstance(shape, TypeVII)
    trace = ("2.8",)
    theta = shape.first_from_second
    sigma = shape.second_from_first
    k = oracle.fix(sigma.then(theta)).intersect(oracle.fix(sigma.then(to_first)))
    img = from_generators([sigma.apply(g) for g in k.basis()], b)
    j = img.intersect(oracle.fix(to_first.then(to_second)))
    if j.is_trivial():
        return Verdict.intersection_trivial(trace)
    target = j.basis()[0]
    x = _pull_back(k, sigma, target)
    return Verdict.with_witness(phi, psi, ProductElement(x, target), trace)
