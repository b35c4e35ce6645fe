"""Bounded cochain complexes and their cohomology.

A complex stores a support window [lo, hi], the dimension of each degree
inside it, and the differentials d^i: degree i -> degree i+1 as matrices
of shape dims[i+1] x dims[i].  Degrees outside the window are zero.  The
window is part of the data: two complexes are equal only if windows,
dimensions and differentials all agree exactly.

Shift convention used throughout the package: shifting by n moves degree
i+n to degree i and scales every differential by (-1)^n.

Cohomology at a degree comes with a canonical basis.  The cocycle basis
is the canonical kernel basis of d^i; the coboundary subspace is
re-expressed in those coordinates and row-reduced; the representative
cocycles are the kernel basis columns whose coordinate is not a pivot of
that reduced form.  Everything downstream (induced maps, exactness
checks) leans on this choice being deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Optional

from .errors import FieldMismatchError, InvalidComplexError, ShapeMismatchError
from .fields import FieldSpec
from .matrices import (
    Matrix,
    block_diag,
    kernel_basis,
    mat_mul,
    mat_scale,
    rref,
    solve_linear,
    transpose,
)

__all__ = [
    "CochainComplex",
    "CohomologySpace",
    "ComplexValidation",
    "validate_complex",
    "shift",
    "direct_sum_complex",
    "cohomology",
    "is_acyclic",
]


@dataclass(frozen=True)
class CochainComplex:
    """A bounded complex: window [lo, hi], per-degree dims, differentials.

    ``dims[k]`` is the dimension in degree lo+k.  ``diff[k]`` is the
    differential out of degree lo+k, for k up to hi-lo-1; the
    differential out of degree hi lands in the zero space and is not
    stored.  Construct through :meth:`create`.
    """

    field: FieldSpec
    lo: int
    hi: int
    dims: tuple[int, ...]
    diff: tuple[Matrix, ...]

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ShapeMismatchError(f"window [{self.lo}, {self.hi}] is empty")
        if len(self.dims) != self.hi - self.lo + 1:
            raise ShapeMismatchError("dims tuple does not span the window")
        if len(self.diff) != self.hi - self.lo:
            raise ShapeMismatchError("diff tuple does not span the window")

    @classmethod
    def create(
        cls,
        field: FieldSpec,
        dims: Mapping[int, int],
        diff: Mapping[int, Matrix] | None = None,
        lo: int | None = None,
        hi: int | None = None,
    ) -> "CochainComplex":
        """Normalize sparse degree maps into canonical tuples.

        The window defaults to the hull of all declared degrees (a diff
        at degree i declares both i and i+1).  Omitted dims are zero,
        omitted differentials are zero matrices of the forced shape.
        """
        diff = dict(diff or {})
        degrees = set(dims)
        for i in diff:
            degrees.add(i)
            degrees.add(i + 1)
        if lo is None:
            lo = min(degrees) if degrees else 0
        if hi is None:
            hi = max(degrees) if degrees else 0
        if lo > hi:
            raise ShapeMismatchError(f"window [{lo}, {hi}] is empty")
        for i, n in dims.items():
            if not (lo <= i <= hi):
                raise ShapeMismatchError(f"degree {i} outside window [{lo}, {hi}]")
            if n < 0:
                raise ShapeMismatchError(f"negative dimension {n} in degree {i}")
        dim_tuple = tuple(dims.get(i, 0) for i in range(lo, hi + 1))
        mats = []
        for i in range(lo, hi):
            want_rows = dim_tuple[i + 1 - lo]
            want_cols = dim_tuple[i - lo]
            d = diff.pop(i, None)
            if d is None:
                d = Matrix.zeros(field, want_rows, want_cols)
            if d.field != field:
                raise FieldMismatchError(f"differential at degree {i} is over {d.field}, complex over {field}")
            if (d.rows, d.cols) != (want_rows, want_cols):
                raise ShapeMismatchError(
                    f"differential at degree {i} has shape {d.rows}x{d.cols}, "
                    f"needs {want_rows}x{want_cols}"
                )
            mats.append(d)
        for i, d in diff.items():
            # leftovers may only be differentials with no entries to carry
            rows = dim_tuple[i + 1 - lo] if lo <= i + 1 <= hi else 0
            cols = dim_tuple[i - lo] if lo <= i <= hi else 0
            if (d.rows, d.cols) != (rows, cols) or d.rows * d.cols != 0:
                raise ShapeMismatchError(f"differential at degree {i} does not fit the window")
        return cls(field, lo, hi, dim_tuple, tuple(mats))

    @classmethod
    def zero(cls, field: FieldSpec) -> "CochainComplex":
        return cls(field, 0, 0, (0,), ())

    def dim(self, i: int) -> int:
        if self.lo <= i <= self.hi:
            return self.dims[i - self.lo]
        return 0

    def d(self, i: int) -> Matrix:
        """The differential out of degree i, synthesized as zero off-window."""
        if self.lo <= i < self.hi:
            return self.diff[i - self.lo]
        return Matrix.zeros(self.field, self.dim(i + 1), self.dim(i))

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def total_dim(self) -> int:
        return sum(self.dims)

    def __repr__(self) -> str:
        spans = ", ".join(f"{i}:{self.dim(i)}" for i in self.degrees())
        return f"CochainComplex([{spans}] over {self.field})"


@dataclass(frozen=True)
class ComplexValidation:
    """Outcome of validate_complex; on failure carries the first bad degree."""

    ok: bool
    degree: Optional[int] = None
    product: Optional[Matrix] = None


@lru_cache(maxsize=None)
def validate_complex(c: CochainComplex) -> ComplexValidation:
    """Check d(d(x)) = 0 in every degree; shapes were enforced at creation."""
    for i in range(c.lo, c.hi - 1):
        prod = mat_mul(c.d(i + 1), c.d(i))
        if not prod.is_zero():
            return ComplexValidation(False, i, prod)
    return ComplexValidation(True)


def shift(c: CochainComplex, n: int) -> CochainComplex:
    """Shift by n: degree i of the result is degree i+n of ``c``.

    Differentials pick up the sign (-1)^n.
    """
    dims = {i - n: c.dim(i) for i in c.degrees()}
    diff = {}
    for i in range(c.lo, c.hi):
        d = c.diff[i - c.lo]
        diff[i - n] = mat_scale(-1, d) if n % 2 else d
    return CochainComplex.create(c.field, dims, diff, lo=c.lo - n, hi=c.hi - n)


def direct_sum_complex(a: CochainComplex, b: CochainComplex) -> CochainComplex:
    """Degreewise direct sum, a-summand first, over the hull window."""
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} vs {b.field}")
    lo, hi = min(a.lo, b.lo), max(a.hi, b.hi)
    dims = {i: a.dim(i) + b.dim(i) for i in range(lo, hi + 1)}
    diff = {i: block_diag(a.d(i), b.d(i)) for i in range(lo, hi)}
    return CochainComplex.create(a.field, dims, diff, lo=lo, hi=hi)


@dataclass(frozen=True)
class CohomologySpace:
    """Canonical presentation of H^degree.

    ``cocycle_basis`` has one column per kernel basis vector of d^i.
    ``rep_columns`` lists the cocycle columns chosen as quotient
    representatives.  ``projection`` maps cocycle coordinates onto
    quotient coordinates; it kills the coboundary subspace and is the
    identity on the representative columns.
    """

    degree: int
    dim: int
    cocycle_basis: Matrix
    rep_columns: tuple[int, ...]
    projection: Matrix

    def representatives(self) -> Matrix:
        """Representative cocycles as honest vectors of the underlying degree."""
        return self.cocycle_basis.take_columns(list(self.rep_columns))


def _require_valid(c: CochainComplex) -> None:
    report = validate_complex(c)
    if not report.ok:
        raise InvalidComplexError(
            f"differential fails d(d(x)) = 0 at degree {report.degree}"
        )


@lru_cache(maxsize=None)
def cohomology(c: CochainComplex, i: int) -> CohomologySpace:
    """H^i with the canonical basis data described in the module docstring."""
    _require_valid(c)
    f = c.field
    zmat = kernel_basis(c.d(i))
    nz = zmat.cols
    coords = solve_linear(zmat, c.d(i - 1))
    if coords is None:
        raise RuntimeError(
            "coboundaries escaped the cocycle space; validation should have caught this"
        )
    reduced, pivots = rref(transpose(coords))
    pivot_set = set(pivots)
    reps = tuple(j for j in range(nz) if j not in pivot_set)
    h = len(reps)
    flat = [f.zero()] * (h * nz)
    for t, j in enumerate(reps):
        flat[t * nz + j] = f.one()
        for r, pc in enumerate(pivots):
            flat[t * nz + pc] = f.neg(reduced[r, j])
    projection = Matrix(h, nz, tuple(flat), f)
    return CohomologySpace(i, h, zmat, reps, projection)


def is_acyclic(c: CochainComplex) -> bool:
    return all(cohomology(c, i).dim == 0 for i in c.degrees())
