"""Mapping cones, distinguished triangles, and long exact sequence checks.

For f: A -> B the cone lives in degrees i with MC(f)^i = A^{i+1} (+) B^i,
A-block first.  Its differential in block form is

    [ -d_A^{i+1}    0     ]
    [  f^{i+1}    d_B^i   ]

so the structural maps are the inclusion of B (bottom block) and the
projection onto the shifted A (top block).  A triangle records three
composable maps whose last target is the shift of the first source;
rotation moves everything one step left and negates the shifted map.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .chainmaps import (
    ChainMap,
    Homotopy,
    check_homotopy,
    compose_chain_maps,
    induced_cohomology_map,
    negate_chain_map,
    shift_chain_map,
    validate_chain_map,
    zero_homotopy,
)
from .complexes import CochainComplex, shift
from .errors import InvalidChainMapError, ShapeMismatchError
from .matrices import Matrix, block, mat_mul, mat_neg, rank

__all__ = [
    "MappingCone",
    "Triangle",
    "mapping_cone",
    "cone_triangle",
    "rotate_triangle",
    "check_les_exact",
    "complete_triangle_morphism",
]


class MappingCone(NamedTuple):
    cone: CochainComplex
    incl: ChainMap
    proj: ChainMap


@dataclass(frozen=True)
class Triangle:
    """Maps f: X -> Y, g: Y -> Z, h: Z -> X[1], endpoints checked exactly."""

    f: ChainMap
    g: ChainMap
    h: ChainMap

    def __post_init__(self) -> None:
        if self.f.target != self.g.source:
            raise ShapeMismatchError("triangle: target of f is not source of g")
        if self.g.target != self.h.source:
            raise ShapeMismatchError("triangle: target of g is not source of h")
        if self.h.target != shift(self.f.source, 1):
            raise ShapeMismatchError("triangle: target of h is not the shift of the source of f")


def mapping_cone(f: ChainMap) -> MappingCone:
    """The cone of a valid chain map plus its two structural maps."""
    report = validate_chain_map(f)
    if not report.ok:
        raise InvalidChainMapError(f"cone input fails to commute at degree {report.degree}")
    a, b = f.source, f.target
    fld = a.field
    lo = min(a.lo - 1, b.lo)
    hi = max(a.hi - 1, b.hi)
    dims = {i: a.dim(i + 1) + b.dim(i) for i in range(lo, hi + 1)}
    diff = {}
    for i in range(lo, hi):
        diff[i] = block(
            fld,
            [
                [mat_neg(a.d(i + 1)), Matrix.zeros(fld, a.dim(i + 2), b.dim(i))],
                [f.component(i + 1), b.d(i)],
            ],
        )
    cone = CochainComplex.create(fld, dims, diff, lo=lo, hi=hi)
    incl_comps = {
        i: block(
            fld,
            [
                [Matrix.zeros(fld, a.dim(i + 1), b.dim(i))],
                [Matrix.identity(fld, b.dim(i))],
            ],
        )
        for i in range(lo, hi + 1)
    }
    proj_comps = {
        i: block(
            fld,
            [[Matrix.identity(fld, a.dim(i + 1)), Matrix.zeros(fld, a.dim(i + 1), b.dim(i))]],
        )
        for i in range(lo, hi + 1)
    }
    incl = ChainMap.create(b, cone, incl_comps)
    proj = ChainMap.create(cone, shift(a, 1), proj_comps)
    return MappingCone(cone, incl, proj)


def cone_triangle(f: ChainMap) -> Triangle:
    """The distinguished triangle (f, inclusion, projection) on the cone of f."""
    mc = mapping_cone(f)
    return Triangle(f, mc.incl, mc.proj)


def rotate_triangle(t: Triangle) -> Triangle:
    """(f, g, h) becomes (g, h, -f[1])."""
    return Triangle(t.g, t.h, negate_chain_map(shift_chain_map(t.f, 1)))


def check_les_exact(t: Triangle) -> bool:
    """Exactness of the long cohomology sequence of a triangle.

    The maps H^i(f), H^i(g), H^i(h) are chained over a window padded by
    one degree on each side.  The canonical cohomology data of X[1] in
    degree i coincides entry for entry with that of X in degree i+1
    (reduced echelon forms are blind to the sign flip on differentials),
    so H^i(h) feeds H^{i+1}(f) directly.  Exactness at a node demands a
    zero composite and rank(incoming) equal to the kernel dimension of
    the outgoing map.
    """
    x, y, z = t.f.source, t.f.target, t.g.target
    lo = min(x.lo, y.lo, z.lo) - 1
    hi = max(x.hi, y.hi, z.hi) + 1
    maps = []
    for i in range(lo, hi + 1):
        maps.append(induced_cohomology_map(t.f, i))
        maps.append(induced_cohomology_map(t.g, i))
        maps.append(induced_cohomology_map(t.h, i))
    for incoming, outgoing in zip(maps, maps[1:]):
        assert outgoing.cols == incoming.rows, "triangle endpoints guarantee matching nodes"
        if not mat_mul(outgoing, incoming).is_zero():
            return False
        if rank(incoming) + rank(outgoing) != outgoing.cols:
            return False
    return True


def complete_triangle_morphism(
    f1: ChainMap,
    f2: ChainMap,
    k1: ChainMap,
    k2: ChainMap,
    s: Optional[Homotopy] = None,
) -> ChainMap:
    """Fill in the cone-to-cone map for a square k2 f1 = f2 k1.

    The square must commute strictly (s omitted) or up to the homotopy s
    from the source of f1 to the target of f2.  The returned map sends
    (a, b) in degree i to (k1^{i+1} a, s^{i+1} a + k2^i b) and is a
    valid chain map between the cones.
    """
    if k1.source != f1.source or k2.source != f1.target:
        raise ShapeMismatchError("vertical maps do not start on the first map")
    if k1.target != f2.source or k2.target != f2.target:
        raise ShapeMismatchError("vertical maps do not land on the second map")
    for m in (f1, f2, k1, k2):
        report = validate_chain_map(m)
        if not report.ok:
            raise InvalidChainMapError(f"input map fails to commute at degree {report.degree}")
    left = compose_chain_maps(k1, f2)
    right = compose_chain_maps(f1, k2)
    if s is None:
        if left != right:
            raise InvalidChainMapError(
                "square does not commute strictly and no homotopy witness was given"
            )
        s = zero_homotopy(f1.source, f2.target)
    else:
        if s.source != f1.source or s.target != f2.target:
            raise ShapeMismatchError("homotopy witness does not connect the square's corners")
        if not check_homotopy(left, right, s):
            raise InvalidChainMapError("homotopy witness does not make the square commute")
    mc1 = mapping_cone(f1)
    mc2 = mapping_cone(f2)
    fld = f1.source.field
    a1, b1 = f1.source, f1.target
    a2, b2 = f2.source, f2.target
    comps = {}
    for i in range(mc1.cone.lo, mc1.cone.hi + 1):
        comps[i] = block(
            fld,
            [
                [k1.component(i + 1), Matrix.zeros(fld, a2.dim(i + 1), b1.dim(i))],
                [s.component(i + 1), k2.component(i)],
            ],
        )
    return ChainMap.create(mc1.cone, mc2.cone, comps)
