"""Equivalence of projections under finite chains of symmetry conjugations.

Two projections are equivalent when some finite composition of
conjugations a -> s a s carries one onto the other.  In the block
matrix model the relation is decided by blockwise rank, with explicit
chain witnesses built from reflection factors.  On top of the relation
sit relatedness, invariance (= centrality), central covers as suprema of
conjugated subprojections, the orthogonal decomposition of an arbitrary
pair, generalized comparability, and the relative center property.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    Element,
    ModelShape,
    PreconditionError,
    Projection,
    Symmetry,
    Tolerances,
    active_tol,
    as_projection,
    commutes,
    dist,
    eig_sym,
    opnorm,
    quad,
    unit,
    zero,
)
from .lattice import (
    CentralProjection,
    central_cover,
    interval,
    join,
    meet,
    orthogonal,
    ortho,
)
from .symmetry import (
    ExchangeWitness,
    family_additivity,
    finite_additivity,
    householder_factors,
    orthogonal_chain_to_symmetry,
    orthogonal_exchange_symmetry,
    related_witness,
)


@dataclass(frozen=True)
class SymmetryChain:
    """Finite list of symmetries applied by conjugation, innermost first."""

    syms: tuple[Symmetry, ...]

    def __len__(self) -> int:
        return len(self.syms)


@dataclass(frozen=True)
class EquivalenceWitness:
    """Chain witnessing that conjugation carries p onto q."""

    p: Projection
    q: Projection
    chain: SymmetryChain


@dataclass(frozen=True)
class ComparabilityResult:
    """Central h and symmetry s splitting a pair by sub-equivalence."""

    h: CentralProjection
    s: Symmetry
    e: Projection
    f: Projection

    def residuals(self, tol: Tolerances | None = None) -> dict[str, float]:
        tol = active_tol(tol)
        one = np.eye(self.e.shape.dim)
        eh = Element(self.e.shape, self.e.data @ self.h.data)
        fh = Element(self.e.shape, self.f.data @ self.h.data)
        ec = Element(self.e.shape, self.e.data @ (one - self.h.data))
        fc = Element(self.e.shape, self.f.data @ (one - self.h.data))
        d1 = (fh - quad(self.s, eh)).eigenvalues()
        d2 = (ec - quad(self.s, fc)).eigenvalues()
        return {
            "seh_below_fh": max(0.0, -float(np.min(d1))),
            "sfc_below_ec": max(0.0, -float(np.min(d2))),
        }

    def verify(self, tol: Tolerances | None = None) -> bool:
        t = active_tol(tol)
        return all(r <= t.psd for r in self.residuals(tol).values())


@dataclass(frozen=True)
class Decomposition:
    """Orthogonal split of a pair into an exchanged part and unrelated rest."""

    e1: Projection
    e2: Projection
    f1: Projection
    f2: Projection
    s: Symmetry

    def residuals(self, tol: Tolerances | None = None) -> dict[str, float]:
        e = as_projection(self.e1 + self.e2)
        f = as_projection(self.f1 + self.f2)
        g2 = central_cover(self.e2, tol)
        h2 = central_cover(self.f2, tol)
        return {
            "e_split": dist(e, as_projection(self.e1 + self.e2)),
            "exchange": dist(quad(self.s, self.e1), self.f1),
            "covers_orthogonal": opnorm(g2.data @ h2.data),
        }


def apply_chain(c: SymmetryChain, a: Element) -> Element:
    out = a
    for s in c.syms:
        out = quad(s, out)
    return out


def equivalent_check(w: EquivalenceWitness, tol: Tolerances | None = None) -> bool:
    tol = active_tol(tol)
    if w.p.shape != w.q.shape:
        raise PreconditionError("witness endpoints have different shapes")
    return dist(apply_chain(w.chain, w.p), w.q) <= tol.proj


def related(e: Projection, f: Projection, tol: Tolerances | None = None) -> bool:
    """Whether e and f have equivalent nonzero subprojections.

    Exact in the block model: the pair is related iff some block carries
    both nontrivially, i.e. iff e is not orthogonal to the central cover
    of f.
    """
    tol = active_tol(tol)
    ge = central_cover(e, tol).block_mask
    gf = central_cover(f, tol).block_mask
    return any(a and b for a, b in zip(ge, gf))


def equal_rank_chain(e: Projection, f: Projection, tol: Tolerances | None = None) -> EquivalenceWitness:
    """Decide equivalence in the model and produce a chain witness.

    Within each block, equal rank is necessary and sufficient; the chain
    is assembled from reflection factors of a block-diagonal orthogonal
    matrix carrying an adapted eigenbasis of e onto one of f.  Chain
    length stays below twice the total dimension.
    """
    tol = active_tol(tol)
    if e.shape != f.shape:
        raise PreconditionError("operands have different shapes")
    if e.block_ranks() != f.block_ranks():
        raise PreconditionError(
            f"blockwise ranks differ ({e.block_ranks()} vs {f.block_ranks()}); the pair is not equivalent")
    if dist(e, f) <= tol.proj:
        return EquivalenceWitness(e, f, SymmetryChain(()))
    from .symmetry import exchange_efe_fef
    s = exchange_efe_fef(e, f, tol)
    if dist(quad(s, e), f) <= tol.proj:
        return EquivalenceWitness(e, f, SymmetryChain((s,)))
    qmat = _adapted_frame(f) @ _adapted_frame(e).T
    factors = householder_factors(qmat, e.shape, tol)
    chain = SymmetryChain(tuple(reversed(factors)))
    return EquivalenceWitness(e, f, chain)


def _adapted_frame(p: Projection) -> np.ndarray:
    """Orthogonal matrix whose leading per-block columns span range(p)."""
    n = p.shape.dim
    cols: list[np.ndarray] = []
    for (w, v), s in zip(p.block_eig(), p.shape.slices()):
        order = np.argsort(-w, kind="stable")
        for i in order:
            full = np.zeros(n)
            full[s] = v[:, i]
            cols.append(full)
    return np.column_stack(cols)


def key_subprojection_exchange(w: EquivalenceWitness, tol: Tolerances | None = None) -> ExchangeWitness:
    """Nonzero subprojections of equivalent p, q exchanged by one symmetry.

    Follows the chain-shortening recursion: conjugate the endpoint back
    through the last symmetry, solve the shorter problem, then either a
    Sasaki exchange (non-orthogonal case) or a collapsed two-step chain
    (orthogonal case) produces the single symmetry.
    """
    tol = active_tol(tol)
    if w.p.rank() == 0:
        raise PreconditionError("zero projection has no nonzero subprojections")
    if not equivalent_check(w, tol):
        raise PreconditionError("witness does not validate")
    syms = w.chain.syms
    if len(syms) == 0:
        return ExchangeWitness(unit(w.p.shape), w.p, w.q)
    if len(syms) == 1:
        return ExchangeWitness(syms[0], w.p, w.q)
    last = syms[-1]
    r = as_projection(quad(last, w.q), tol=tol)
    inner = key_subprojection_exchange(
        EquivalenceWitness(w.p, r, SymmetryChain(syms[:-1])), tol)
    k = as_projection(quad(last, inner.f), tol=tol)
    if not orthogonal(inner.e, k, tol):
        witness = related_witness(inner.e, k, tol)
        assert witness is not None
        return witness
    s = orthogonal_chain_to_symmetry(inner.e, k, inner.s, last, tol)
    return ExchangeWitness(s, inner.e, k)


def _matched_rank_one_pairs(e: Projection, f: Projection, tol: Tolerances) -> list[ExchangeWitness]:
    """Maximal greedy family of exchanged rank-one pairs under orthogonal e, f.

    Each step pairs one range vector of e with one of f inside a shared
    block, exchanged by the canonical extension of their cross term; the
    remainders shrink in rank, so the loop ends after at most dim steps,
    leaving unrelated remainders.
    """
    pairs: list[ExchangeWitness] = []
    e_rem, f_rem = e, f
    while related(e_rem, f_rem, tol):
        blk = next(i for i in range(e.shape.nblocks)
                   if opnorm(e_rem.block(i)) > 0.5 and opnorm(f_rem.block(i)) > 0.5)
        a = _block_range_vector(e_rem, blk)
        b = _block_range_vector(f_rem, blk)
        u = as_projection(Element(e.shape, np.outer(a, a)), tol=tol)
        v = as_projection(Element(e.shape, np.outer(b, b)), tol=tol)
        s = orthogonal_exchange_symmetry(u, v, tol)
        pairs.append(ExchangeWitness(s, u, v))
        e_rem = as_projection(e_rem - u, tol=tol)
        f_rem = as_projection(f_rem - v, tol=tol)
    return pairs


def _block_range_vector(p: Projection, blk: int) -> np.ndarray:
    w, v = p.block_eig()[blk]
    s = p.shape.slices()[blk]
    i = int(np.argmax(w))
    full = np.zeros(p.shape.dim)
    full[s] = v[:, i]
    return full


def _orthogonal_pair_split(e: Projection, f: Projection, tol: Tolerances) -> Decomposition:
    """Decomposition of an orthogonal pair via the greedy matched family."""
    pairs = _matched_rank_one_pairs(e, f, tol)
    shape = e.shape
    if pairs:
        e1 = as_projection(sum((w.e for w in pairs), zero(shape)), tol=tol)
        f1 = as_projection(sum((w.f for w in pairs), zero(shape)), tol=tol)
        s = family_additivity(pairs, tol=tol)
    else:
        e1 = as_projection(zero(shape), tol=tol)
        f1 = as_projection(zero(shape), tol=tol)
        s = unit(shape)
    e2 = as_projection(e - e1, tol=tol)
    f2 = as_projection(f - f1, tol=tol)
    return Decomposition(e1, e2, f1, f2, s)


def orthogonal_decomposition(e: Projection, f: Projection, tol: Tolerances | None = None) -> Decomposition:
    """Split e = e1 + e2, f = f1 + f2 with e1, f1 exchanged and covers of
    e2, f2 orthogonal.

    The non-orthogonal overlap is peeled off first through the Sasaki
    exchange; the orthogonal rest is matched greedily and the two
    exchanged parts are merged by finite additivity.
    """
    tol = active_tol(tol)
    if e.shape != f.shape:
        raise PreconditionError("operands have different shapes")
    e12 = meet(e, ortho(f, tol), tol)
    f12 = meet(ortho(e, tol), f, tol)
    e11 = as_projection(e - e12, tol=tol)
    f11 = as_projection(f - f12, tol=tol)
    s1 = related_witness(e, f, tol)
    inner = _orthogonal_pair_split(e12, f12, tol)
    if e11.rank() == 0 and f11.rank() == 0:
        return Decomposition(inner.e1, inner.e2, inner.f1, inner.f2, inner.s)
    w1 = ExchangeWitness(s1.s, e11, f11) if s1 is not None else ExchangeWitness(unit(e.shape), e11, f11)
    w2 = ExchangeWitness(inner.s, inner.e1, inner.f1)
    s = finite_additivity(w1, w2, tol)
    e1 = as_projection(e11 + inner.e1, tol=tol)
    f1 = as_projection(f11 + inner.f1, tol=tol)
    return Decomposition(e1, inner.e2, f1, inner.f2, s)


def generalized_comparability(e: Projection, f: Projection, tol: Tolerances | None = None) -> ComparabilityResult:
    """Central h and a single symmetry s with s(eh)s below fh and
    s(f(1-h))s below e(1-h).

    The overlap parts are exchanged through the Sasaki pair; the
    orthogonal remainders are decomposed, the central cover of the
    unmatched f-part picks h, and one application of finite additivity
    merges everything into a single symmetry.
    """
    tol = active_tol(tol)
    if e.shape != f.shape:
        raise PreconditionError("operands have different shapes")
    shape = e.shape
    e2 = meet(e, ortho(f, tol), tol)
    f2 = meet(ortho(e, tol), f, tol)
    e1 = as_projection(e - e2, tol=tol)
    f1 = as_projection(f - f2, tol=tol)
    rw = related_witness(e, f, tol)
    w1 = ExchangeWitness(rw.s, e1, f1) if rw is not None else ExchangeWitness(unit(shape), e1, f1)

    inner = _orthogonal_pair_split(e2, f2, tol)
    h = central_cover(inner.f2, tol)
    hm = h.data
    comp = np.eye(shape.dim) - hm
    s2 = inner.s
    f3 = as_projection(Element(shape, quad(s2, Element(shape, e2.data @ hm)).data), tol=tol)
    e3 = as_projection(quad(s2, Element(shape, f2.data @ comp)), tol=tol)
    a2 = as_projection(Element(shape, e2.data @ hm + e3.data), tol=tol)
    b2 = as_projection(Element(shape, f3.data + f2.data @ comp), tol=tol)
    w2 = ExchangeWitness(s2, a2, b2)
    s = finite_additivity(w1, w2, tol)
    return ComparabilityResult(h, s, e, f)


def relative_center_witness(p: Projection, d: Projection, tol: Tolerances | None = None) -> CentralProjection:
    """Central c of the whole model with c meet p = d, for d central below p.

    Produced from the comparability split of d against p - d; the
    complement of the returned central piece cuts p exactly at d.
    """
    tol = active_tol(tol)
    m = interval(p, tol)
    if not m.contains(d):
        raise PreconditionError("d is not below p")
    for b in _interval_spanning_set(p):
        if not commutes(d, b, tol):
            raise PreconditionError("d is not central in the compressed model")
    rest = m.ortho(d)
    res = generalized_comparability(d, rest, tol)
    c = CentralProjection.from_mask(p.shape, [not x for x in res.h.block_mask])
    if dist(meet(c, p, tol), d) > active_tol(tol).proj * 10:
        raise PreconditionError("comparability split failed to cut p at d")
    return c


def _interval_spanning_set(p: Projection) -> list[Element]:
    """Compressions of the standard symmetric basis; they span pAp."""
    n = p.shape.dim
    out = []
    for s in p.shape.slices():
        for i in range(s.start, s.stop):
            for j in range(i, s.stop):
                b = np.zeros((n, n))
                b[i, j] = b[j, i] = 1.0
                out.append(quad(p, Element(p.shape, b)))
    return out


def invariant_is_central_suite(seed: int, shape: ModelShape | None = None, trials: int = 30,
                               tol: Tolerances | None = None):
    """Randomized checks that invariance coincides with centrality.

    For central h: conjugates of subprojections of h stay below h, and a
    zero meet with h forces orthogonality to h.  For non-central h a
    counterexample to the meet condition is found by search.
    """
    from .report import Accumulator
    from .rng import XorShift64Star
    from .lattice import center_elements, is_central

    tol = active_tol(tol)
    shape = shape or ModelShape((2, 2))
    rng = XorShift64Star(seed)
    acc = Accumulator(prefix="invariant.")
    for h in center_elements(shape):
        for _ in range(trials):
            s = rng.symmetry(shape)
            p0 = rng.subprojection(h)
            p = as_projection(quad(s, p0), tol=tol)
            back = as_projection(quad(s, p), tol=tol)
            acc.observe("conjugate_into_center_round_trip", dist(back, p0), tol.proj)
            below = float(np.min((h - p).eigenvalues()))
            acc.observe("conjugated_subprojection_stays_below", max(0.0, -below), tol.psd)
            q = rng.projection(shape)
            if meet(q, h, tol).rank() == 0:
                acc.check("zero_meet_forces_orthogonal", orthogonal(q, h, tol))
    found_all = True
    for _ in range(trials):
        h = rng.projection(shape)
        if is_central(h, tol) or h.rank() == 0:
            continue
        found = False
        for _ in range(100):
            q = rng.projection(shape, rank=1)
            if meet(q, h, tol).rank() == 0 and not orthogonal(q, h, tol):
                found = True
                break
        found_all = found_all and found
    acc.check("noncentral_counterexample_found", found_all)
    return acc


def gamma_as_subequivalence_sup(p: Projection, seed: int = 1, samples: int = 24,
                                tol: Tolerances | None = None):
    """Check the central cover of p is the join of conjugated subprojections.

    Samples symmetries, conjugates the eigen-subprojections of p, and
    verifies every conjugate stays below the cover while their join
    saturates it blockwise.
    """
    from .report import Accumulator
    from .rng import XorShift64Star

    tol = active_tol(tol)
    acc = Accumulator(prefix="cover_sup.")
    shape = p.shape
    gp = central_cover(p, tol)
    subs: list[Projection] = []
    w, v = eig_sym(p)
    for i in range(len(w)):
        if w[i] > 0.5:
            subs.append(as_projection(Element(shape, np.outer(v[:, i], v[:, i])), tol=tol))
    if p.rank() > 0:
        subs.append(p)
    rng = XorShift64Star(seed)
    syms = [rng.symmetry(shape) for _ in range(samples)]
    acc.check("zero_cover_for_zero", (p.rank() == 0) == (gp.rank() == 0))
    current = zero(shape)
    for s in syms:
        for q in subs:
            c = quad(s, q)
            below = float(np.min((gp - c).eigenvalues()))
            acc.observe("conjugate_below_cover", max(0.0, -below), tol.psd)
            current = current + c
    if subs:
        from .core import carrier

        total = central_cover(current, tol)
        joined = join(carrier(current, tol), gp, tol)
        acc.check("join_saturates_cover", total.block_mask == gp.block_mask)
        acc.observe("join_does_not_exceed_cover", dist(joined, gp), tol.proj)
    return acc
