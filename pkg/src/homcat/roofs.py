"""Roofs, cospan flips, and composition in the localized homotopy category.

A roof from A to B is a diagram A <- apex -> B whose backwards leg is a
quasi-isomorphism.  Composing two roofs needs the middle cospan

    L --alpha--> Kbar <--beta-- M        (beta a quasi-isomorphism)

flipped into a span.  The flip builds K with degreewise pieces
K^i = L^i (+) M^i (+) Kbar^{i-1}, block order (L, M, Kbar), and
differential

    [ d_L^i      0         0            ]
    [ 0          d_M^i     0            ]
    [ -alpha^i   -beta^i   -d_Kbar^{i-1} ]

which is the shift by -1 of the cone of L -> MC(beta).  The two
projections gamma2 = (id, 0, 0): K -> L and gamma1 = (0, -id, 0):
K -> M close the square up to the explicit homotopy h^i = (0, 0, -id),
and gamma2 inherits quasi-isomorphy from beta.

Roof equivalence is only ever *verified* against a supplied five-part
witness; the squares are checked in the homotopy category, so every
comparison goes through find_homotopy rather than matrix equality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chainmaps import (
    ChainMap,
    Homotopy,
    check_homotopy,
    compose_chain_maps,
    find_homotopy,
    identity_chain_map,
    is_quasi_iso,
    validate_chain_map,
)
from .complexes import CochainComplex
from .errors import InvalidChainMapError, NotQuasiIsoError, ShapeMismatchError
from .matrices import Matrix, block, mat_neg, mat_sub

__all__ = [
    "Roof",
    "Cospan",
    "FlipResult",
    "RoofEquivalenceWitness",
    "flip_cospan",
    "compose_roofs",
    "lift_map_to_roof",
    "verify_roof_equivalence",
]


@dataclass(frozen=True)
class Roof:
    """A <- apex -> B with a quasi-isomorphism denominator apex -> A."""

    apex: CochainComplex
    denom: ChainMap
    numer: ChainMap

    def __post_init__(self) -> None:
        if self.denom.source != self.apex or self.numer.source != self.apex:
            raise ShapeMismatchError("roof legs must start at the apex")
        if not is_quasi_iso(self.denom):
            raise NotQuasiIsoError("roof denominator is not a quasi-isomorphism")


@dataclass(frozen=True)
class Cospan:
    """alpha: L -> Kbar and beta: M -> Kbar with beta a quasi-isomorphism."""

    alpha: ChainMap
    beta: ChainMap

    def __post_init__(self) -> None:
        if self.alpha.target != self.beta.target:
            raise ShapeMismatchError("cospan legs must share their target")
        if not is_quasi_iso(self.beta):
            raise NotQuasiIsoError("cospan wrong leg: beta is not a quasi-isomorphism")


@dataclass(frozen=True)
class FlipResult:
    """The span produced by flip_cospan, with its explicit homotopy witness."""

    k_complex: CochainComplex
    gamma2: ChainMap
    gamma1: ChainMap
    witness: Homotopy

    def __post_init__(self) -> None:
        if (
            self.gamma2.source != self.k_complex
            or self.gamma1.source != self.k_complex
            or self.witness.source != self.k_complex
        ):
            raise ShapeMismatchError("flip components must start at the flipped complex")


@dataclass(frozen=True)
class RoofEquivalenceWitness:
    """A third apex with maps comparing two roofs over the same endpoints."""

    apex3: CochainComplex
    denom3: ChainMap
    numer3: ChainMap
    up: ChainMap
    down: ChainMap

    def __post_init__(self) -> None:
        for leg in (self.denom3, self.numer3, self.up, self.down):
            if leg.source != self.apex3:
                raise ShapeMismatchError("witness legs must start at the witness apex")


def flip_cospan(c: Cospan) -> FlipResult:
    """Flip a cospan into a span, returning the homotopy that closes it.

    The construction is self checking: it asserts the block identity
    (alpha gamma2 - beta gamma1)^i = [alpha^i  beta^i  0], verifies the
    witness through check_homotopy, and verifies gamma2 is a
    quasi-isomorphism before returning.
    """
    alpha, beta = c.alpha, c.beta
    big_l, big_m = alpha.source, beta.source
    kbar = alpha.target
    fld = big_l.field
    lo = min(big_l.lo, big_m.lo, kbar.lo + 1)
    hi = max(big_l.hi, big_m.hi, kbar.hi + 1)
    dims = {i: big_l.dim(i) + big_m.dim(i) + kbar.dim(i - 1) for i in range(lo, hi + 1)}
    diff = {}
    for i in range(lo, hi):
        z = Matrix.zeros
        diff[i] = block(
            fld,
            [
                [big_l.d(i), z(fld, big_l.dim(i + 1), big_m.dim(i)), z(fld, big_l.dim(i + 1), kbar.dim(i - 1))],
                [z(fld, big_m.dim(i + 1), big_l.dim(i)), big_m.d(i), z(fld, big_m.dim(i + 1), kbar.dim(i - 1))],
                [mat_neg(alpha.component(i)), mat_neg(beta.component(i)), mat_neg(kbar.d(i - 1))],
            ],
        )
    k_complex = CochainComplex.create(fld, dims, diff, lo=lo, hi=hi)

    gamma2_comps = {}
    gamma1_comps = {}
    witness_comps = {}
    for i in range(lo, hi + 1):
        nl, nm, nk = big_l.dim(i), big_m.dim(i), kbar.dim(i - 1)
        gamma2_comps[i] = block(
            fld, [[Matrix.identity(fld, nl), Matrix.zeros(fld, nl, nm), Matrix.zeros(fld, nl, nk)]]
        )
        gamma1_comps[i] = block(
            fld, [[Matrix.zeros(fld, nm, nl), mat_neg(Matrix.identity(fld, nm)), Matrix.zeros(fld, nm, nk)]]
        )
        witness_comps[i] = block(
            fld, [[Matrix.zeros(fld, nk, nl), Matrix.zeros(fld, nk, nm), mat_neg(Matrix.identity(fld, nk))]]
        )
    gamma2 = ChainMap.create(k_complex, big_l, gamma2_comps)
    gamma1 = ChainMap.create(k_complex, big_m, gamma1_comps)
    witness = Homotopy.create(k_complex, kbar, witness_comps)

    top = compose_chain_maps(gamma2, alpha)
    bottom = compose_chain_maps(gamma1, beta)
    for i in range(k_complex.lo, k_complex.hi + 1):
        expected = block(
            fld,
            [[alpha.component(i), beta.component(i), Matrix.zeros(fld, kbar.dim(i), kbar.dim(i - 1))]],
        )
        assert mat_sub(top.component(i), bottom.component(i)) == expected, (
            f"flip difference is not (alpha, beta, 0) at degree {i}"
        )
    assert check_homotopy(bottom, top, witness), "flip witness failed verification"
    assert is_quasi_iso(gamma2), "flip projection onto the wrong leg must be a quasi-isomorphism"
    return FlipResult(k_complex, gamma2, gamma1, witness)


def compose_roofs(r1: Roof, r2: Roof) -> Roof:
    """Compose A <- B' -> B with B <- C' -> C by flipping the middle cospan."""
    if r1.numer.target != r2.denom.target:
        raise ShapeMismatchError("roofs are not composable: middle objects differ")
    flip = flip_cospan(Cospan(alpha=r1.numer, beta=r2.denom))
    return Roof(
        apex=flip.k_complex,
        denom=compose_chain_maps(flip.gamma2, r1.denom),
        numer=compose_chain_maps(flip.gamma1, r2.numer),
    )


def lift_map_to_roof(f: ChainMap) -> Roof:
    """A plain chain map as a roof with identity denominator."""
    report = validate_chain_map(f)
    if not report.ok:
        raise InvalidChainMapError(f"lifted map fails to commute at degree {report.degree}")
    return Roof(apex=f.source, denom=identity_chain_map(f.source), numer=f)


def verify_roof_equivalence(r1: Roof, r2: Roof, w: RoofEquivalenceWitness) -> bool:
    """Check a claimed equivalence of two parallel roofs through a witness.

    The witness apex must map onto both roof apexes; all four
    comparison squares are checked up to homotopy, and the witness
    denominator must itself be a quasi-isomorphism.  This never searches
    for the witness, only verifies the one supplied.
    """
    a = r1.denom.target
    b = r1.numer.target
    if r2.denom.target != a or r2.numer.target != b:
        raise ShapeMismatchError("roofs do not share their endpoints")
    if w.up.target != r1.apex or w.down.target != r2.apex:
        raise ShapeMismatchError("witness legs do not land on the roof apexes")
    if w.denom3.target != a or w.numer3.target != b:
        raise ShapeMismatchError("witness comparison legs do not land on the endpoints")
    if not is_quasi_iso(w.denom3):
        return False
    pairs = (
        (compose_chain_maps(w.up, r1.denom), w.denom3),
        (compose_chain_maps(w.up, r1.numer), w.numer3),
        (compose_chain_maps(w.down, r2.denom), w.denom3),
        (compose_chain_maps(w.down, r2.numer), w.numer3),
    )
    return all(find_homotopy(lhs, rhs) is not None for lhs, rhs in pairs)
