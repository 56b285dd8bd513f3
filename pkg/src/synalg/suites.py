"""Seeded property suites for the whole stack.

Each suite draws from a deterministic xorshift stream, funnels worst-case
residuals into an accumulator, and reports one CHECK line per named
property.  The same machinery backs the command-line `verify` run and the
acceptance tests, which simply raise the trial counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    Element,
    ModelShape,
    NotInvertibleError,
    Projection,
    Symmetry,
    Tolerances,
    absolute,
    active_tol,
    as_projection,
    carrier,
    commutes,
    dist,
    eig_sym,
    inverse,
    jordan,
    leq,
    neg_part,
    opnorm,
    order_unit_norm,
    pos_part,
    quad,
    scalar,
    signum,
    spectral_resolution,
    sqrt_pos,
    symmetrize_sum,
    unit,
    unit_projection,
    zero,
)
from .lattice import (
    center_elements,
    central_cover,
    compatible,
    gamma_props_suite,
    interval,
    is_central,
    join,
    meet,
    orthogonal,
    ortho,
    sasaki,
    centrally_orthogonal,
    co_join,
)
from .equivalence import (
    EquivalenceWitness,
    SymmetryChain,
    apply_chain,
    equal_rank_chain,
    equivalent_check,
    gamma_as_subequivalence_sup,
    generalized_comparability,
    invariant_is_central_suite,
    key_subprojection_exchange,
    orthogonal_decomposition,
    related,
    relative_center_witness,
)
from .oml import (
    boolean_oml,
    compat_preserved_check,
    distributive_triple_check,
    effect_algebra_check,
    interval_center_check,
    interval_sasaki_check,
    is_distributive,
    mo_oml,
    oml_from_projections,
    parallelogram_check,
    relcompl_lift_check,
    sasaki_props_report,
    six_piece_decomposition,
    verify_oml,
)
from .report import Accumulator, ReportLine
from .rng import XorShift64Star
from .symmetry import (
    ExchangeWitness,
    canonical_extension,
    common_complement_from_exchange,
    complement_exchange,
    exchange_efe_fef,
    family_additivity,
    finite_additivity,
    lift_to_full,
    orthogonal_chain_to_symmetry,
    orthogonal_exchange_symmetry,
    parallelogram_exchange,
    perspective_to_chain,
    proj_from_sym,
    related_witness,
    sasaki_exchange,
    strong_perspectivity,
    sym_from_proj,
)

SUITE_NAMES = ("synalg", "lattice", "symmetry", "comparability", "oml")


@dataclass(frozen=True)
class SuiteConfig:
    """Deterministic run description for the verification suites."""

    seed: int = 42
    trials: int = 30
    shape: ModelShape = field(default_factory=lambda: ModelShape((2, 3)))
    tolerances: Tolerances | None = None
    suites: tuple[str, ...] = SUITE_NAMES

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        unknown = [s for s in self.suites if s not in SUITE_NAMES]
        if unknown:
            raise ValueError(f"unknown suites: {unknown}")


# -- instance generators --------------------------------------------------

def frame_projection(shape: ModelShape, frame: np.ndarray, idx) -> Projection:
    acc = np.zeros((shape.dim, shape.dim))
    for i in idx:
        acc += np.outer(frame[:, i], frame[:, i])
    return as_projection(Element(shape, acc))


def random_frame(rng: XorShift64Star, shape: ModelShape) -> np.ndarray:
    _, v = eig_sym(rng.element(shape))
    return v


def split_projection(rng: XorShift64Star, k: Projection) -> tuple[Projection, Projection]:
    """Random orthogonal split k = p + q along eigenvectors of a compression."""
    inside = quad(k, rng.element(k.shape))
    w, v = eig_sym(inside)
    keep = [i for i in range(len(w)) if abs(w[i]) > 1e-8 and rng.uniform() < 0.5]
    p = frame_projection(k.shape, v, keep)
    p = meet(p, k)
    q = as_projection(k - p)
    return p, q


def complement_pair(rng: XorShift64Star, shape: ModelShape) -> tuple[Projection, Projection] | None:
    """Random non-compatible complement pair (meet zero, join one)."""
    n = shape.dim
    r = 1 + rng.randint(max(1, n - 1))
    e = rng.projection(shape, rank=r)
    for _ in range(8):
        s = rng.symmetry(shape)
        f = as_projection(quad(s, ortho(e)))
        if meet(e, f).rank() == 0 and join(e, f).rank() == n:
            return e, f
    return None


def exchanged_complement_pair(rng: XorShift64Star, shape: ModelShape) -> ExchangeWitness | None:
    """Exchanged pair that also happens to be a complement pair."""
    n = shape.dim
    if n % 2 != 0:
        return None
    e = rng.projection(shape, rank=n // 2)
    for _ in range(8):
        s = rng.symmetry(shape)
        f = as_projection(quad(s, e))
        if meet(e, f).rank() == 0 and join(e, f).rank() == n:
            return ExchangeWitness(s, e, f)
    return None


def block_frame_columns(rng: XorShift64Star, shape: ModelShape, blk: int) -> np.ndarray:
    """Random orthonormal columns spanning one block, embedded full-size."""
    w, v = rng.element(shape).block_eig()[blk]
    s = shape.slices()[blk]
    full = np.zeros((shape.dim, len(w)))
    full[s, :] = v
    return full


def orthogonal_pair_with_chain(rng: XorShift64Star, shape: ModelShape):
    """Orthogonal equal-rank pair joined by a genuine two-step chain.

    Routes e through a third subspace m orthogonal to both (all three
    inside one block, keeping ranks matched), so the two chain
    symmetries are nontrivial.
    """
    candidates = [i for i, b in enumerate(shape.blocks) if b >= 3]
    if not candidates:
        return None
    blk = candidates[rng.randint(len(candidates))]
    nb = shape.blocks[blk]
    r = 1 + rng.randint(max(1, nb // 3))
    v = block_frame_columns(rng, shape, blk)

    def pick(idx):
        acc = np.zeros((shape.dim, shape.dim))
        for i in idx:
            acc += np.outer(v[:, i], v[:, i])
        return as_projection(Element(shape, acc))

    e = pick(range(r))
    m = pick(range(r, 2 * r))
    f = pick(range(2 * r, 3 * r))
    s1 = orthogonal_exchange_symmetry(e, m)
    s2 = orthogonal_exchange_symmetry(m, f)
    return e, f, s1, s2


def chunk_exchange_witness(rng: XorShift64Star, shape: ModelShape, chunk: Projection) -> ExchangeWitness:
    """Exchanged pair supported inside a fixed chunk of the space.

    The symmetry acts as 2q - chunk inside the chunk and trivially
    outside, so conjugates of subprojections stay inside the chunk.
    """
    e = meet(rng.subprojection(chunk), chunk)
    q = rng.subprojection(chunk)
    sym = Symmetry(shape, np.eye(shape.dim) + 2.0 * q.data - 2.0 * chunk.data)
    f = as_projection(quad(sym, e))
    return ExchangeWitness(sym, e, f)


def cross_orthogonal_witnesses(rng: XorShift64Star, shape: ModelShape) -> tuple[ExchangeWitness, ExchangeWitness] | None:
    """Two exchanged pairs in orthogonal chunks, as finite additivity wants."""
    n = shape.dim
    if n < 2:
        return None
    v = random_frame(rng, shape)
    r = 1 + rng.randint(max(1, n // 2))
    c1 = frame_projection(shape, v, range(r))
    c2 = frame_projection(shape, v, range(r, n))
    w1 = chunk_exchange_witness(rng, shape, c1)
    w2 = chunk_exchange_witness(rng, shape, c2)
    return w1, w2


def orthogonal_family_witnesses(rng: XorShift64Star, shape: ModelShape, parts: int) -> list[ExchangeWitness]:
    """Matched orthogonal rank-one pairs, paired inside blocks."""
    ws: list[ExchangeWitness] = []
    for blk, nb in enumerate(shape.blocks):
        if len(ws) >= parts:
            break
        v = block_frame_columns(rng, shape, blk)
        for i in range(nb // 2):
            if len(ws) >= parts:
                break
            e = as_projection(Element(shape, np.outer(v[:, 2 * i], v[:, 2 * i])))
            f = as_projection(Element(shape, np.outer(v[:, 2 * i + 1], v[:, 2 * i + 1])))
            ws.append(ExchangeWitness(orthogonal_exchange_symmetry(e, f), e, f))
    return ws


def oracle_join(p: Projection, q: Projection) -> np.ndarray:
    """Projection onto the summed ranges by orthonormalization.

    Independent of the carrier route: stacks the two matrices, extracts
    an orthonormal basis of the column span from a singular value
    decomposition, and squares it back into a projection.
    """
    cols = np.hstack([p.data, q.data])
    u, s, _ = np.linalg.svd(cols)
    r = int(np.sum(s > 1e-9))
    basis = u[:, :r]
    return basis @ basis.T


# -- suites ---------------------------------------------------------------

def run_synalg_suite(acc: Accumulator, rng: XorShift64Star, shape: ModelShape,
                     trials: int, tol: Tolerances | None = None,
                     lambda_samples: int = 6) -> None:
    tol = active_tol(tol)
    one = unit(shape)
    for _ in range(trials):
        a = rng.element(shape)
        b = rng.element(shape)
        acc.observe("synalg.square_positive", max(0.0, -float(np.min(jordan(a, a).eigenvalues()))), tol.psd)
        ap, bp = absolute(a), absolute(b)
        acc.observe("synalg.quad_preserves_positive",
                    max(0.0, -float(np.min(quad(ap, bp).eigenvalues()))), tol.psd)
        p = rng.projection(shape)
        inside = quad(as_projection(ortho(p)), bp)
        supported = quad(p, a)
        acc.observe("synalg.annihilation", opnorm(supported.data @ inside.data),
                    tol.proj * (1 + order_unit_norm(supported)))
        acc.observe("synalg.polar_decomposition",
                    dist(a, Element(shape, signum(a).data @ absolute(a).data)), 1e-8)
        acc.observe("synalg.parts_product_zero", opnorm(pos_part(a).data @ neg_part(a).data), 1e-8)
        acc.observe("synalg.parts_sum_is_abs", dist(pos_part(a) + neg_part(a), absolute(a)), 1e-8)
        acc.observe("synalg.parts_difference_is_a", dist(pos_part(a) - neg_part(a), a), 1e-8)
        acc.observe("synalg.carrier_fixes", dist(Element(shape, a.data @ carrier(a).data), a),
                    tol.proj * (1 + order_unit_norm(a)))
        sr = spectral_resolution(a)
        acc.observe("synalg.spectral_reconstruction", dist(sr.reconstruct(), a), 1e-8)
        lo, hi = sr.lower - 0.5, sr.upper + 0.5
        for i in range(lambda_samples):
            lam = lo + (hi - lo) * (i + 0.5) / lambda_samples
            direct = ortho(carrier(pos_part(a - scalar(shape, lam))))
            acc.observe("synalg.step_function_formula", dist(sr.at(lam), direct), tol.proj)
        pos4 = [rng.positive_element(shape) for _ in range(4)]
        total = pos4[0]
        cj = carrier(pos4[0])
        for x in pos4[1:]:
            total = total + x
            cj = join(cj, carrier(x))
        acc.observe("synalg.carrier_of_sum", dist(carrier(total), cj), tol.proj)
        root = sqrt_pos(ap)
        acc.observe("synalg.sqrt_squares_back", dist(jordan(root, root), ap), 1e-8)
        acc.check("synalg.sqrt_commutant", commutes(root, quad(a, a)))
        shifted = ap + scalar(shape, 0.5)
        acc.observe("synalg.inverse_contract",
                    dist(Element(shape, shifted.data @ inverse(shifted).data), one), 1e-8)
        s = rng.symmetry(shape)
        acc.observe("synalg.symmetry_has_norm_one", abs(order_unit_norm(s) - 1.0), 1e-12)
        acc.observe("synalg.quad_involution", dist(quad(s, quad(s, b)), b), 1e-8)
        x = s @ p
        acc.observe("synalg.symmetrized_transpose_sum",
                    dist(symmetrize_sum(x, x.T), Element(shape, x.data + x.data.T)), 1e-12)
        c, d = jordan(a, a), jordan(a, a) + one  # commuting pair
        acc.observe("synalg.jordan_commuting_is_product",
                    dist(jordan(c, d), Element(shape, c.data @ d.data)), tol.proj * 10)
        w, v = eig_sym(a)
        acc.observe("synalg.eig_reconstruction", opnorm((v * w) @ v.T - a.data),
                    tol.eig * (1 + order_unit_norm(a)))
        acc.observe("synalg.eig_orthonormal", opnorm(v.T @ v - np.eye(shape.dim)), 1e-12)
    small = ModelShape((min(4, shape.blocks[0]),))
    for _ in range(min(trials, 10)):
        a = rng.element(small)
        w, v = eig_sym(a)
        car = carrier(a)
        for bits in range(1 << small.dim):
            qm = np.zeros((small.dim, small.dim))
            for i in range(small.dim):
                if bits >> i & 1:
                    qm += np.outer(v[:, i], v[:, i])
            q = as_projection(Element(small, qm))
            if opnorm(a.data @ q.data - a.data) <= 1e-10 * (1 + order_unit_norm(a)):
                below = float(np.min((q - car).eigenvalues()))
                acc.observe("synalg.carrier_minimality", max(0.0, -below), active_tol(tol).psd)
    singular = Element(ModelShape((2,)), [[1.0, 0.0], [0.0, 0.0]])
    try:
        inverse(singular)
        acc.check("synalg.singular_rejected", False)
    except NotInvertibleError:
        acc.check("synalg.singular_rejected", True)
    a = rng.element(shape)
    b_fixed = jordan(a, a)
    stayed = all(commutes(a * (1.0 - 1.0 / k), b_fixed) for k in (1, 2, 4, 8)) and commutes(a, b_fixed)
    acc.check("synalg.commutant_limit_smoke", stayed)


def run_lattice_suite(acc: Accumulator, rng: XorShift64Star, shape: ModelShape,
                      trials: int, tol: Tolerances | None = None) -> None:
    tol = active_tol(tol)
    one_p = unit_projection(shape)
    for _ in range(trials):
        p = rng.projection(shape)
        q = rng.projection(shape)
        r = rng.projection(shape)
        sub = rng.subprojection(p)
        acc.observe("lattice.orthomodular_law",
                    dist(join(sub, meet(p, ortho(sub))), p), 1e-8)
        acc.observe("lattice.demorgan",
                    dist(ortho(join(p, q)), meet(ortho(p), ortho(q))), 1e-8)
        acc.check("lattice.sasaki_duality",
                  orthogonal(sasaki(p, q), r) == orthogonal(q, sasaki(p, r)))
        acc.observe("lattice.sasaki_idempotent",
                    dist(sasaki(p, sasaki(p, q)), sasaki(p, q)), 1e-8)
        compat = compatible(p, q)
        acc.check("lattice.sasaki_compatibility",
                  compat == (dist(sasaki(p, q), meet(p, q)) <= 1e-8)
                  and compat == leq(sasaki(p, q), q))
        if compat:
            acc.observe("lattice.compatible_product_is_meet",
                        opnorm(p.data @ q.data - meet(p, q).data), 1e-8)
        acc.check("lattice.sasaki_vanishes_iff_orthogonal",
                  orthogonal(p, q) == (sasaki(p, q).rank() == 0))
        acc.observe("lattice.sasaki_lattice_formula",
                    dist(sasaki(p, q), meet(p, join(ortho(p), q))), tol.proj)
        if orthogonal(p, ortho(p)):
            acc.check("lattice.complement_compatible", compatible(p, ortho(p)))
        sub2 = rng.subprojection(q)
        if orthogonal(sub, sub2):
            acc.observe("lattice.orthogonal_join_is_sum",
                        dist(join(sub, sub2), as_projection(sub + sub2)), 1e-8)
        m = interval(p)
        qq = meet(rng.projection(shape), p)
        rr = meet(rng.projection(shape), p)
        acc.observe("lattice.interval_ortho", dist(m.ortho(qq), as_projection(p - qq)), 1e-8)
        acc.observe("lattice.interval_sasaki_restricts",
                    dist(m.sasaki(qq, rr), sasaki(qq, rr)), tol.proj * 10)
        acc.observe("lattice.interval_relative_complement_rule",
                    dist(m.sasaki(qq, m.ortho(rr)), sasaki(qq, ortho(rr))), tol.proj * 10)
    if shape.dim <= 4:
        for _ in range(trials):
            p = rng.projection(shape)
            q = rng.projection(shape)
            acc.observe("lattice.join_matches_orthonormalization_oracle",
                        opnorm(join(p, q).data - oracle_join(p, q)), 1e-8)
    cents = center_elements(shape)
    for c1 in cents:
        for c2 in cents:
            mask_join = tuple(a or b for a, b in zip(c1.block_mask, c2.block_mask))
            mask_meet = tuple(a and b for a, b in zip(c1.block_mask, c2.block_mask))
            acc.check("lattice.center_sup_closed",
                      tuple(central_cover(join(c1, c2)).block_mask) == mask_join)
            acc.check("lattice.center_inf_closed",
                      tuple(central_cover(meet(c1, c2)).block_mask) == mask_meet)
            acc.check("lattice.center_members_central", is_central(join(c1, c2)))
    boolean_shape = ModelShape(tuple(1 for _ in range(min(4, shape.dim))))
    bools = center_elements(boolean_shape)
    ops_match_masks = True
    for a in bools:
        for b in bools:
            want_meet = tuple(x and y for x, y in zip(a.block_mask, b.block_mask))
            want_join = tuple(x or y for x, y in zip(a.block_mask, b.block_mask))
            ops_match_masks = ops_match_masks and (
                central_cover(meet(a, b)).block_mask == want_meet
                and central_cover(join(a, b)).block_mask == want_join)
    masks = [c.block_mask for c in bools]
    masks_distribute = all(
        tuple(x and (y or z) for x, y, z in zip(a, b, c))
        == tuple((x and y) or (x and z) for x, y, z in zip(a, b, c))
        for a in masks for b in masks for c in masks)
    acc.check("lattice.commutative_model_distributive", ops_match_masks and masks_distribute)
    acc.extend(gamma_props_suite(rng.next_u64(), shape, trials=max(10, trials // 2), tol=tol))
    for _ in range(max(4, trials // 4)):
        fam = []
        for i in range(shape.nblocks):
            mask = [j == i for j in range(shape.nblocks)]
            block_p = rng.subprojection(
                as_projection(Element(shape, _mask_matrix(shape, mask))))
            fam.append(block_p)
        witness = centrally_orthogonal(fam, tol)
        acc.check("lattice.blockwise_family_centrally_orthogonal", witness is not None)
        if witness is not None:
            total = co_join(fam, shape, tol)
            summed = fam[0]
            for f in fam[1:]:
                summed = as_projection(summed + f)
            acc.observe("lattice.co_join_is_sum", dist(total, summed), 1e-8)
        if shape.nblocks == 1:
            continue
        a = rng.projection(shape)
        b = rng.projection(shape)
        if not orthogonal(a, b) and central_cover(a).block_mask == central_cover(b).block_mask:
            acc.check("lattice.colliding_covers_rejected",
                      centrally_orthogonal([a, b], tol) is None)
    acc.check("lattice.unit_join_identity", dist(join(one_p, rng.projection(shape)), one_p) <= 1e-8)


def _mask_matrix(shape: ModelShape, mask) -> np.ndarray:
    out = np.zeros((shape.dim, shape.dim))
    for on, s in zip(mask, shape.slices()):
        if on:
            out[s, s] = np.eye(s.stop - s.start)
    return out


def run_symmetry_suite(acc: Accumulator, rng: XorShift64Star, shape: ModelShape,
                       trials: int, tol: Tolerances | None = None) -> None:
    tol = active_tol(tol)
    one = unit(shape)
    for _ in range(trials):
        a = rng.element(shape)
        b = rng.element(shape)
        s = rng.symmetry(shape)
        acc.observe("symmetry.conjugation_jordan_automorphism",
                    dist(quad(s, jordan(a, b)), jordan(quad(s, a), quad(s, b))), 1e-8)
        acc.observe("symmetry.conjugation_involutive", dist(quad(s, quad(s, a)), a), 1e-8)
        low, high = a, a + absolute(b)
        acc.check("symmetry.conjugation_order_preserving", leq(quad(s, low), quad(s, high)))
        acc.observe("symmetry.carrier_equivariance",
                    dist(carrier(quad(s, a)), quad(s, carrier(a))), 1e-8)
        c1, c2 = jordan(a, a), pos_part(a)
        acc.check("symmetry.commutation_transfer",
                  commutes(c1, c2) and commutes(quad(s, c1), quad(s, c2)))
        e = rng.projection(shape)
        f = rng.projection(shape)
        diff_abs = absolute(e - f)
        acc.observe("symmetry.difference_abs_commutes_e",
                    opnorm(e.data @ diff_abs.data - diff_abs.data @ e.data), 1e-8)
        acc.observe("symmetry.difference_abs_commutes_f",
                    opnorm(f.data @ diff_abs.data - diff_abs.data @ f.data), 1e-8)
        built = exchange_efe_fef(e, f, tol)
        acc.observe("symmetry.efe_to_fef",
                    dist(quad(built, quad(e, f)), quad(f, e)), 1e-8)
        acc.observe("symmetry.built_symmetry_involution",
                    opnorm(built.data @ built.data - np.eye(shape.dim)), 1e-8)
        acc.observe("symmetry.built_symmetry_norm_one", abs(order_unit_norm(built) - 1.0), 1e-8)
        w = sasaki_exchange(e, f, tol)
        acc.observe("symmetry.sasaki_pair_exchanged", w.residual(), 1e-8)
        pw = parallelogram_exchange(e, f, tol)
        acc.observe("symmetry.parallelogram_exchanged", pw.residual(), 1e-8)
        if not orthogonal(e, f, tol):
            rw = related_witness(e, f, tol)
            acc.check("symmetry.related_parts_nonzero", rw is not None and rw.e.rank() > 0 and rw.f.rank() > 0)
            acc.observe("symmetry.related_parts_exchanged", rw.residual(), 1e-8)
        else:
            acc.check("symmetry.orthogonal_gives_none", related_witness(e, f, tol) is None)
        p0 = rng.projection(shape)
        t_part = rng.subprojection(e) - rng.subprojection(ortho(e, tol))
        ext = canonical_extension(t_part, tol)
        acc.observe("symmetry.canonical_extension_involution",
                    opnorm(ext.data @ ext.data - np.eye(shape.dim)), 1e-8)
        acc.observe("symmetry.partial_sign_square_is_support",
                    dist(Element(shape, signum(a).data @ signum(a).data), carrier(a)), 1e-8)
        acc.observe("symmetry.proj_sym_bijection",
                    dist(proj_from_sym(sym_from_proj(p0, tol), tol), p0), 1e-10)
        sex = rng.symmetry(shape)
        fex = as_projection(quad(sex, e), tol=tol)
        spw = strong_perspectivity(ExchangeWitness(sex, e, fex), tol)
        res = spw.residuals(tol)
        acc.observe("symmetry.strong_perspectivity", max(res.values()), 1e-8)
        lifted = lift_to_full(spw, tol)
        s1, s2 = perspective_to_chain(lifted, tol)
        acc.observe("symmetry.perspective_chain", dist(quad(s2, quad(s1, e)), fex), 1e-8)
    for _ in range(trials):
        pair = complement_pair(rng, shape)
        if pair is not None:
            e, f = pair
            s = complement_exchange(e, f, tol)
            acc.observe("symmetry.complement_exchange", dist(quad(s, e), ortho(f)), 1e-8)
        witness = exchanged_complement_pair(rng, shape)
        if witness is not None:
            cc = common_complement_from_exchange(witness, tol)
            acc.observe("symmetry.half_one_plus_s_complements",
                        max(cc.residuals(tol).values()), 1e-8)
        inst = orthogonal_pair_with_chain(rng, shape)
        if inst is not None:
            e, f, s1, s2 = inst
            s = orthogonal_chain_to_symmetry(e, f, s1, s2, tol)
            acc.observe("symmetry.orthogonal_chain_collapsed", dist(quad(s, e), f), 1e-8)
        duo = cross_orthogonal_witnesses(rng, shape)
        if duo is not None:
            w1, w2 = duo
            s = finite_additivity(w1, w2, tol)
            total_e = as_projection(w1.e + w2.e, tol=tol)
            total_f = as_projection(w1.f + w2.f, tol=tol)
            acc.observe("symmetry.finite_additivity", dist(quad(s, total_e), total_f), 1e-8)
        fam = orthogonal_family_witnesses(rng, shape, parts=3)
        if fam:
            s = family_additivity(fam, tol=tol)
            esum = as_projection(sum((w.e for w in fam), zero(shape)), tol=tol)
            fsum = as_projection(sum((w.f for w in fam), zero(shape)), tol=tol)
            acc.observe("symmetry.family_additivity", dist(quad(s, esum), fsum), 1e-8)
    empty = family_additivity([], shape=shape, tol=tol)
    acc.observe("symmetry.empty_family_is_minus_one", dist(empty, -1.0 * one), 1e-12)


def run_comparability_suite(acc: Accumulator, rng: XorShift64Star, shape: ModelShape,
                            trials: int, tol: Tolerances | None = None) -> None:
    tol = active_tol(tol)
    for _ in range(trials):
        p = rng.projection(shape)
        chain = SymmetryChain(tuple(rng.symmetry(shape) for _ in range(1 + rng.randint(3))))
        q = as_projection(apply_chain(chain, p), tol=tol)
        w = EquivalenceWitness(p, q, chain)
        acc.check("comparability.chain_preserves_rank", p.block_ranks() == q.block_ranks())
        acc.check("comparability.witness_validates", equivalent_check(w, tol))
        acc.check("comparability.zero_only_to_zero", (q.rank() == 0) == (p.rank() == 0))
        if p.rank() > 0:
            ew = key_subprojection_exchange(w, tol)
            acc.check("comparability.key_parts_nonzero", ew.e.rank() > 0 and ew.f.rank() > 0)
            acc.observe("comparability.key_parts_exchanged", ew.residual(), 1e-8)
            acc.check("comparability.key_parts_below",
                      leq(ew.e, p, tol) and leq(ew.f, q, tol))
        fam = orthogonal_family_witnesses(rng, shape, parts=2)
        if fam:
            esum = as_projection(sum((x.e for x in fam), zero(shape)), tol=tol)
            chain1 = SymmetryChain((rng.symmetry(shape),))
            big = as_projection(apply_chain(chain1, esum), tol=tol)
            parts = [as_projection(apply_chain(chain1, x.e), tol=tol) for x in fam]
            acc.check("comparability.complete_divisibility_parts_orthogonal",
                      all(orthogonal(parts[i], parts[j], tol)
                          for i in range(len(parts)) for j in range(i + 1, len(parts))))
            summed = parts[0]
            for x in parts[1:]:
                summed = as_projection(summed + x, tol=tol)
            acc.observe("comparability.complete_divisibility_join", dist(big, summed), 1e-8)
        e = rng.projection(shape)
        f = rng.projection(shape)
        if not orthogonal(e, f, tol):
            acc.check("comparability.nonorthogonal_related", related(e, f, tol))
            rw = related_witness(e, f, tol)
            acc.check("comparability.sk4_witness", rw is not None and rw.e.rank() > 0)
        for c in center_elements(shape):
            acc.check("comparability.central_related_iff_not_orthogonal",
                      related(e, c, tol) == (not orthogonal(e, c, tol)))
        d = orthogonal_decomposition(e, f, tol)
        r = d.residuals(tol)
        acc.observe("comparability.decomposition_exchange", r["exchange"], 1e-8)
        acc.observe("comparability.decomposition_covers_orthogonal", r["covers_orthogonal"], 1e-8)
        acc.observe("comparability.decomposition_recombines",
                    dist(as_projection(d.e1 + d.e2, tol=tol), e)
                    + dist(as_projection(d.f1 + d.f2, tol=tol), f), 1e-8)
        gc = generalized_comparability(e, f, tol)
        res = gc.residuals(tol)
        acc.observe("comparability.split_eh_under_fh", res["seh_below_fh"], tol.psd)
        acc.observe("comparability.split_fc_under_ec", res["sfc_below_ec"], tol.psd)
        acc.check("comparability.split_h_central", is_central(gc.h, tol))
        acc.observe("comparability.split_symmetry_involution",
                    opnorm(gc.s.data @ gc.s.data - np.eye(shape.dim)), 1e-8)
        if shape.nblocks == 1:
            acc.check("comparability.irreducible_dichotomy",
                      gc.h.block_mask in ((True,), (False,)))
        pr = rng.projection(shape)
        cc = center_elements(shape)[rng.randint(len(center_elements(shape)))]
        dd = meet(pr, cc, tol)
        try:
            witness_c = relative_center_witness(pr, dd, tol)
            acc.observe("comparability.relative_center_cut",
                        dist(meet(witness_c, pr, tol), dd), 1e-8)
        except Exception:
            acc.check("comparability.relative_center_cut_ok", False)
        q2 = rng.projection(shape)
        if pr.block_ranks() == q2.block_ranks():
            wch = equal_rank_chain(pr, q2, tol)
            acc.check("comparability.equal_rank_chain_valid", equivalent_check(wch, tol))
            acc.check("comparability.chain_length_bound", len(wch.chain) <= 2 * shape.dim)
    acc.extend(invariant_is_central_suite(rng.next_u64(), shape, trials=max(6, trials // 3), tol=tol))
    cover_shape = ModelShape((2, 2))
    cover_rng = XorShift64Star(rng.next_u64())
    for _ in range(max(4, trials // 4)):
        p = cover_rng.projection(cover_shape)
        acc.extend(gamma_as_subequivalence_sup(p, seed=cover_rng.next_u64(), tol=tol))
    sk3e_rng = XorShift64Star(rng.next_u64())
    for _ in range(max(4, trials // 4)):
        run_six_piece_equivalence(acc, sk3e_rng, tol)


def run_six_piece_equivalence(acc: Accumulator, rng: XorShift64Star, tol: Tolerances | None = None) -> None:
    """End-to-end check of the six-piece split feeding chain equivalence.

    Generates two orthogonal splittings of the same projection in a 4x4
    factor, computes the six pieces with matrix lattice operations,
    exchanges the two Sasaki-derived corner pieces inside the interval,
    transfers the common complement, lifts it and drives the chain
    construction; the resulting chains must carry p1 join q1 onto e and
    p2 join q2 onto f.
    """
    tol = active_tol(tol)
    shape = ModelShape((4,))
    k = rng.projection(shape, rank=3)
    p, q = split_projection(rng, k)
    e, f = split_projection(rng, k)

    def corner(x, y):
        return meet(x, ortho(meet(x, y), tol), tol)

    for first, second, target in ((p, q, e), (q, p, f)):
        x1 = corner(first, as_projection(k - target, tol=tol))
        t1 = corner(target, as_projection(k - first, tol=tol))
        a = Element(shape, first.data + target.data - k.data)
        s_int = canonical_extension(signum(a, tol), tol)
        w = ExchangeWitness(s_int, x1, t1)
        acc.observe("comparability.sixpiece_corner_exchange", w.residual(), 1e-7)
        spw = strong_perspectivity(w, tol)
        v1 = spw.common_complement
        other = meet(second, target, tol)
        left = join(x1, other, tol)
        top = join(left, target, tol)
        res = {
            "join_left": dist(join(left, v1, tol), top),
            "join_target": dist(join(target, v1, tol), top),
            "meet_left": opnorm(meet(left, v1, tol).data),
            "meet_target": opnorm(meet(target, v1, tol).data),
        }
        acc.observe("comparability.sixpiece_complement_transfers", max(res.values()), 1e-7)
        from .symmetry import PerspectivityWitness

        full = join(v1, ortho(top, tol), tol)
        pwit = PerspectivityWitness(left, target, full, ambient=None)
        if pwit.verify(tol):
            s1, s2 = perspective_to_chain(pwit, tol)
            chain = SymmetryChain((s1, s2))
            acc.check("comparability.sixpiece_equivalence",
                      equivalent_check(EquivalenceWitness(left, target, chain), tol))
        else:
            acc.check("comparability.sixpiece_equivalence", False)


def run_oml_suite(acc: Accumulator, rng: XorShift64Star, trials: int,
                  tol: Tolerances | None = None) -> None:
    tol = active_tol(tol)
    for n in (2, 3, 4):
        b = boolean_oml(n)
        acc.check(f"oml.boolean{1 << n}_verifies", verify_oml(b).passed)
        acc.check(f"oml.boolean{1 << n}_distributive", is_distributive(b))
    from .oml import oml_compatible

    mo2 = mo_oml(2)
    acc.check("oml.mo2_verifies", verify_oml(mo2).passed)
    acc.check("oml.mo2_not_distributive", not is_distributive(mo2))
    acc.check("oml.mo2_atoms_incompatible",
              not oml_compatible(mo2, mo2.index("a1"), mo2.index("a2")))
    for l, label in ((boolean_oml(3), "boolean8"), (mo2, "mo2"), (mo_oml(3), "mo3")):
        acc.check(f"oml.{label}_sasaki_props", sasaki_props_report(l).passed)
        acc.check(f"oml.{label}_lift", relcompl_lift_check(l).passed)
        acc.check(f"oml.{label}_parallelogram", parallelogram_check(l).passed)
        acc.check(f"oml.{label}_effect_algebra", effect_algebra_check(l).passed)
        acc.check(f"oml.{label}_compat_preserved", compat_preserved_check(l).passed)
        acc.check(f"oml.{label}_triple_distributivity", distributive_triple_check(l).passed)
        acc.check(f"oml.{label}_interval_center", interval_center_check(l).passed)
        for pidx in range(len(l)):
            acc.check(f"oml.{label}_interval_sasaki", interval_sasaki_check(l, pidx).passed)
    for l, label in ((boolean_oml(4), "boolean16"), (mo_oml(7), "mo7")):
        acc.check(f"oml.{label}_verifies", verify_oml(l).passed)
        count = 0
        ok = True
        m = len(l)
        for p in range(m):
            for q in range(m):
                if not l.perp(p, q):
                    continue
                top = l.join(p, q)
                for e in range(m):
                    if not l.le(e, top):
                        continue
                    for f in range(m):
                        if l.le(f, top) and l.perp(e, f) and l.join(e, f) == top:
                            rep = six_piece_decomposition(l, p, q, e, f)
                            ok = ok and rep.checks.passed
                            count += 1
        acc.check(f"oml.{label}_six_piece_exhaustive", ok and count > 0)
    shape = ModelShape((2,))
    e = Projection(shape, [[1.0, 0.0], [0.0, 0.0]])
    fproj = Projection(shape, [[0.5, 0.5], [0.5, 0.5]])
    l, pool = oml_from_projections([e, fproj], tol=tol)
    acc.check("oml.projection_closure_verifies", verify_oml(l).passed)
    acc.check("oml.incompatible_pair_not_distributive", not is_distributive(l))
    l2, _ = oml_from_projections([e], tol=tol)
    acc.check("oml.commuting_closure_boolean", is_distributive(l2))
    shape3 = ModelShape((3,))
    for _ in range(max(2, trials // 10)):
        k = rng.projection(shape3, rank=2)
        p, q = split_projection(rng, k)
        e2, f2 = split_projection(rng, k)
        try:
            l3, pool3 = oml_from_projections([p, q, e2, f2], cap=64, tol=tol)
        except Exception:
            continue
        idx = {i: next(j for j in range(len(pool3)) if dist(pool3[j], x) <= 1e-7)
               for i, x in enumerate((p, q, e2, f2))}
        if l3.join(idx[0], idx[1]) != l3.join(idx[2], idx[3]):
            continue
        rep = six_piece_decomposition(l3, idx[0], idx[1], idx[2], idx[3])
        acc.check("oml.matrix_six_piece_crosscheck", rep.checks.passed)
        pieces_abs = pool3[rep.p1]
        pieces_mat = meet(p, ortho(meet(p, f2, tol), tol), tol)
        acc.observe("oml.matrix_piece_agreement", dist(pieces_abs, pieces_mat), 1e-7)


# -- entry point ------------------------------------------------------------

def run_suites(cfg: SuiteConfig) -> list[ReportLine]:
    """Run the selected suites deterministically and return CHECK lines."""
    tol = cfg.tolerances
    acc = Accumulator()
    for idx, name in enumerate(SUITE_NAMES):
        if name not in cfg.suites:
            continue
        rng = XorShift64Star((cfg.seed << 8) + idx)
        if name == "synalg":
            run_synalg_suite(acc, rng, cfg.shape, cfg.trials, tol)
        elif name == "lattice":
            run_lattice_suite(acc, rng, cfg.shape, cfg.trials, tol)
        elif name == "symmetry":
            run_symmetry_suite(acc, rng, cfg.shape, cfg.trials, tol)
        elif name == "comparability":
            run_comparability_suite(acc, rng, cfg.shape, cfg.trials, tol)
        elif name == "oml":
            run_oml_suite(acc, rng, cfg.trials, tol)
    return acc.lines()
