"""The orthomodular lattice of projections of the matrix model.

Meets and joins are computed through the support projection: the join of
p and q is the carrier of p + q (support of a sum of positive elements is
the join of the supports), and the meet follows by De Morgan duality.
The center consists of the blockwise 0/1 projections; the central cover
of an element is read off from which blocks carry it.
"""

from __future__ import annotations

import numpy as np

from .core import (
    Element,
    ModelShape,
    PreconditionError,
    Projection,
    Tolerances,
    active_tol,
    as_projection,
    carrier,
    commutes,
    dist,
    opnorm,
    order_unit_norm,
    quad,
    unit_projection,
)
from .report import Accumulator


def ortho(p: Projection, tol: Tolerances | None = None) -> Projection:
    """Orthocomplement 1 - p."""
    return Projection(p.shape, np.eye(p.shape.dim) - p.data, tol=active_tol(tol))


def join(p: Projection, q: Projection, tol: Tolerances | None = None) -> Projection:
    """Least upper bound, computed as the support of p + q."""
    return carrier(p + q, tol)


def meet(p: Projection, q: Projection, tol: Tolerances | None = None) -> Projection:
    """Greatest lower bound, by De Morgan duality from the join."""
    return ortho(join(ortho(p, tol), ortho(q, tol), tol), tol)


def orthogonal(p: Projection, q: Projection, tol: Tolerances | None = None) -> bool:
    """p and q have orthogonal ranges (pq = 0)."""
    tol = active_tol(tol)
    return opnorm(p.data @ q.data) <= tol.proj


def compatible(p: Projection, q: Projection, tol: Tolerances | None = None) -> bool:
    """Compatibility of projections coincides with commuting."""
    return commutes(p, q, tol)


def sasaki(p: Projection, q: Projection, tol: Tolerances | None = None) -> Projection:
    """Sasaki projection of q by p: the support of the compression p q p.

    Lattice-theoretically this equals p meet (ortho(p) join q).
    """
    return carrier(quad(p, q), tol)


class CentralProjection(Projection):
    """Projection that is blockwise 0 or 1, hence commutes with the model."""

    __slots__ = ("block_mask",)

    def __init__(self, shape, data, *, tol: Tolerances | None = None):
        tol = active_tol(tol)
        super().__init__(shape, data, tol=tol)
        mask = []
        for i, b in enumerate(shape.blocks):
            blk = self.block(i)
            if opnorm(blk - np.eye(b)) <= tol.proj:
                mask.append(True)
            elif opnorm(blk) <= tol.proj:
                mask.append(False)
            else:
                raise PreconditionError("projection is not blockwise 0 or 1")
        object.__setattr__(self, "block_mask", tuple(mask))

    @classmethod
    def from_mask(cls, shape: ModelShape, mask) -> "CentralProjection":
        n = shape.dim
        data = np.zeros((n, n))
        for on, s in zip(mask, shape.slices()):
            if on:
                data[s, s] = np.eye(s.stop - s.start)
        return cls(shape, data)


def is_central(p: Projection, tol: Tolerances | None = None) -> bool:
    """True iff p is blockwise 0 or 1 (equivalently, commutes with the model)."""
    tol = active_tol(tol)
    for i, b in enumerate(p.shape.blocks):
        blk = p.block(i)
        if opnorm(blk - np.eye(b)) > tol.proj and opnorm(blk) > tol.proj:
            return False
    return True


def center_basis(shape: ModelShape) -> list[CentralProjection]:
    """The atomic central projections, one per block.

    Their 2^k sums enumerate the whole center, a boolean algebra.
    """
    out = []
    for i in range(shape.nblocks):
        mask = [j == i for j in range(shape.nblocks)]
        out.append(CentralProjection.from_mask(shape, mask))
    return out


def center_elements(shape: ModelShape) -> list[CentralProjection]:
    """All 2^k central projections of the model."""
    k = shape.nblocks
    out = []
    for bits in range(1 << k):
        mask = [(bits >> j) & 1 == 1 for j in range(k)]
        out.append(CentralProjection.from_mask(shape, mask))
    return out


def central_cover(a: Element, tol: Tolerances | None = None) -> CentralProjection:
    """Smallest central projection dominating the support of a.

    Blockwise: a block contributes iff a's restriction to it is nonzero.
    """
    tol = active_tol(tol)
    mask = [opnorm(a.block(i)) > tol.rank for i in range(a.shape.nblocks)]
    return CentralProjection.from_mask(a.shape, mask)


def centrally_orthogonal(ps: list[Projection], tol: Tolerances | None = None) -> list[CentralProjection] | None:
    """Witnessing family of pairwise orthogonal central covers, if one exists.

    The central covers are the minimal candidates, so the family is
    centrally orthogonal iff they are already pairwise orthogonal.
    """
    covers = [central_cover(p, tol) for p in ps]
    for i in range(len(covers)):
        for j in range(i + 1, len(covers)):
            if any(a and b for a, b in zip(covers[i].block_mask, covers[j].block_mask)):
                return None
    return covers


def co_join(ps: list[Projection], shape: ModelShape | None = None, tol: Tolerances | None = None) -> Projection:
    """Supremum of a centrally orthogonal family; equals its plain sum."""
    if not ps:
        if shape is None:
            raise ValueError("co_join of an empty family needs an explicit shape")
        return Projection(shape, np.zeros((shape.dim, shape.dim)))
    if centrally_orthogonal(ps, tol) is None:
        raise PreconditionError("family is not centrally orthogonal")
    acc = ps[0].data.copy()
    for p in ps[1:]:
        acc = acc + p.data
    return as_projection(Element(ps[0].shape, acc), tol=tol)


class IntervalModel:
    """The compressed sub-model pAp below a fixed projection p.

    Members are the elements fixed by compression by p; the projection
    lattice of the sub-model is the interval [0, p] with q -> p - q as
    orthocomplementation.
    """

    def __init__(self, p: Projection, tol: Tolerances | None = None):
        self.p = p
        self.tol = active_tol(tol)

    def compress(self, a: Element) -> Element:
        return quad(self.p, a)

    def contains(self, a: Element) -> bool:
        return dist(self.compress(a), a) <= self.tol.proj * (1.0 + order_unit_norm(a))

    def _require_member(self, q: Projection) -> None:
        if not self.contains(q):
            raise PreconditionError("projection is not below the interval top")

    def ortho(self, q: Projection) -> Projection:
        """Relative orthocomplement p - q inside [0, p]."""
        self._require_member(q)
        return as_projection(self.p - q, tol=self.tol)

    def join(self, q: Projection, r: Projection) -> Projection:
        return join(q, r, self.tol)

    def meet(self, q: Projection, r: Projection) -> Projection:
        """Meet inside [0, p], via De Morgan with the relative complement."""
        return self.ortho(self.join(self.ortho(q), self.ortho(r)))

    def sasaki(self, q: Projection, r: Projection) -> Projection:
        """Sasaki projection computed entirely inside the interval.

        Uses the lattice formula with the relative complement, which is a
        route independent of the ambient carrier-based Sasaki projection.
        """
        self._require_member(q)
        self._require_member(r)
        return self.meet(q, self.join(self.ortho(q), r))


def interval(p: Projection, tol: Tolerances | None = None) -> IntervalModel:
    return IntervalModel(p, tol)


def interval_ortho(m: IntervalModel, q: Projection) -> Projection:
    return m.ortho(q)


def interval_sasaki(m: IntervalModel, q: Projection, r: Projection) -> Projection:
    return m.sasaki(q, r)


def gamma_props_suite(seed: int, shape: ModelShape | None = None, trials: int = 40,
                      tol: Tolerances | None = None) -> Accumulator:
    """Randomized verification of the central cover laws.

    Checks, over random projections: idempotence and monotonicity of the
    cover, the cover of a meet with a central cover, the orthogonality
    transfers, finite join additivity, and that covers land in (and
    exhaust) the center.  On tiny shapes the center is swept exhaustively.
    """
    from .rng import XorShift64Star

    tol = active_tol(tol)
    shape = shape or ModelShape((2, 2))
    rng = XorShift64Star(seed)
    acc = Accumulator(prefix="gamma.")
    one = unit_projection(shape)
    zero_p = Projection(shape, np.zeros((shape.dim, shape.dim)))
    acc.check("unit_cover_is_unit", central_cover(one, tol).block_mask == tuple([True] * shape.nblocks))
    acc.check("zero_cover_is_zero", central_cover(zero_p, tol).block_mask == tuple([False] * shape.nblocks))
    for c in center_elements(shape):
        acc.observe("cover_fixes_center", dist(central_cover(c, tol), c), tol.proj)
    for _ in range(trials):
        p = rng.projection(shape)
        q = rng.projection(shape)
        gp = central_cover(p, tol)
        gq = central_cover(q, tol)
        acc.check("cover_is_central", is_central(gp, tol))
        acc.check("cover_nonzero_iff", (p.rank() == 0) == (gp.rank() == 0))
        acc.observe("cover_idempotent", dist(central_cover(gp, tol), gp), tol.proj)
        sub = rng.subprojection(q)
        mono = all(not a or b for a, b in
                   zip(central_cover(sub, tol).block_mask, gq.block_mask))
        acc.check("cover_monotone", mono)
        lhs = central_cover(meet(p, gq, tol), tol)
        rhs = CentralProjection.from_mask(shape, [a and b for a, b in zip(gp.block_mask, gq.block_mask)])
        acc.observe("cover_of_meet_with_cover", dist(lhs, rhs), tol.proj)
        o1 = orthogonal(gp, q, tol)
        o2 = orthogonal(gp, gq, tol)
        o3 = orthogonal(p, gq, tol)
        acc.check("orthogonality_transfer", o1 == o2 == o3)
        if o1:
            acc.check("orthogonality_descends", orthogonal(p, q, tol))
        fam = [rng.projection(shape) for _ in range(3)]
        big = join(join(fam[0], fam[1], tol), fam[2], tol)
        mask = [False] * shape.nblocks
        for f in fam:
            mask = [m or b for m, b in zip(mask, central_cover(f, tol).block_mask)]
        acc.observe("cover_join_additive",
                    dist(central_cover(big, tol), CentralProjection.from_mask(shape, mask)),
                    tol.proj)
    return acc
