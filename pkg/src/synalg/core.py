"""Block-diagonal real symmetric matrix model and its spectral calculus.

The model realizes an ordered algebra of observables as the symmetric
members of a block-diagonal real matrix algebra.  A shape (n1, ..., nk)
fixes the block structure; k > 1 yields a nontrivial center, k = 1 an
irreducible factor.  Symmetric block-diagonal matrices (`Element`) carry
the order induced by positive semidefiniteness; arbitrary block-diagonal
matrices (`EnvelopingElement`) host non-symmetric intermediates that
appear inside witness constructions.

All values are immutable after construction and all operations are pure,
so concurrent evaluation over independent inputs is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class SynalgError(Exception):
    """Base class for errors raised by this package."""


class ShapeMismatchError(SynalgError):
    """Operands live over different block structures."""


class NotInvertibleError(SynalgError):
    """Inversion requested for an element with spectrum touching zero."""


class PreconditionError(SynalgError):
    """A construction was called outside its stated hypotheses."""


class DriftError(SynalgError):
    """A chained construction produced a value outside its invariant."""


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used across the package.

    `rank` and `cluster` are relative to the spectral norm of the input;
    the others are absolute.  `zero` is the absolute floor under which
    spectra count as zero, so that support computations do not mistake
    accumulated rounding noise of a vanished element for genuine rank;
    elements are assumed to live at order-one scale (desk scale, n <= 16).
    Defaults sit two orders of magnitude above double-precision
    eigensolver error.
    """

    sym: float = 1e-10
    proj: float = 1e-8
    rank: float = 1e-10
    psd: float = 1e-9
    comm: float = 1e-9
    inv: float = 1e-10
    cluster: float = 1e-9
    eig: float = 1e-8
    zero: float = 1e-13


DEFAULT_TOL = Tolerances()


def active_tol(tol: Tolerances | None = None) -> Tolerances:
    return DEFAULT_TOL if tol is None else tol


def set_default_tolerances(tol: Tolerances) -> None:
    global DEFAULT_TOL
    DEFAULT_TOL = tol


@dataclass(frozen=True)
class ModelShape:
    """Ordered block dimensions (n1, ..., nk) of the matrix model."""

    blocks: tuple[int, ...]

    def __post_init__(self) -> None:
        blocks = tuple(int(b) for b in self.blocks)
        if len(blocks) < 1:
            raise ValueError("shape needs at least one block")
        if any(b < 1 for b in blocks):
            raise ValueError("block dimensions must be >= 1")
        object.__setattr__(self, "blocks", blocks)

    @property
    def dim(self) -> int:
        return sum(self.blocks)

    @property
    def nblocks(self) -> int:
        return len(self.blocks)

    def slices(self) -> list[slice]:
        out, start = [], 0
        for b in self.blocks:
            out.append(slice(start, start + b))
            start += b
        return out

    def __str__(self) -> str:
        return ",".join(str(b) for b in self.blocks)


_OFFBLOCK_MASKS: dict[tuple[int, ...], np.ndarray] = {}


def _offblock_mask(shape: ModelShape) -> np.ndarray:
    mask = _OFFBLOCK_MASKS.get(shape.blocks)
    if mask is None:
        mask = np.ones((shape.dim, shape.dim), dtype=bool)
        for s in shape.slices():
            mask[s, s] = False
        mask.flags.writeable = False
        _OFFBLOCK_MASKS[shape.blocks] = mask
    return mask


def _check_block_zeros(shape: ModelShape, data: np.ndarray) -> None:
    if np.any(data[_offblock_mask(shape)] != 0.0):
        raise ValueError("entries outside the diagonal blocks must be exactly zero")


def opnorm(x: np.ndarray) -> float:
    """Spectral norm; the matrix norm used for residuals throughout."""
    if x.size == 0:
        return 0.0
    return float(np.linalg.norm(x, 2))


def _fro(x: np.ndarray) -> float:
    """Frobenius norm; upper bound on the spectral norm, cheap for
    constructor validation."""
    return float(np.sqrt((x * x).sum()))


class EnvelopingElement:
    """Arbitrary square block-diagonal real matrix.

    Products of symmetric elements generally leave the symmetric part of
    the algebra; they live here until a symmetric combination (for
    instance x + x^T) is formed again.
    """

    __slots__ = ("shape", "data", "_beig")

    def __init__(self, shape: ModelShape, data: np.ndarray):
        arr = np.array(data, dtype=float)
        n = shape.dim
        if arr.shape != (n, n):
            raise ValueError(f"expected a {n}x{n} matrix, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix entries must be finite")
        _check_block_zeros(shape, arr)
        arr.flags.writeable = False
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "_beig", None)

    def __setattr__(self, name, value):
        raise AttributeError("elements are immutable")

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other) -> "EnvelopingElement":
        if not isinstance(other, EnvelopingElement):
            raise TypeError(f"cannot combine with {type(other).__name__}")
        if other.shape != self.shape:
            raise ShapeMismatchError(f"shape {other.shape} != {self.shape}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        cls = Element if isinstance(self, Element) and isinstance(other, Element) else EnvelopingElement
        return cls(self.shape, self.data + other.data)

    def __sub__(self, other):
        other = self._coerce(other)
        cls = Element if isinstance(self, Element) and isinstance(other, Element) else EnvelopingElement
        return cls(self.shape, self.data - other.data)

    def __neg__(self):
        cls = Element if isinstance(self, Element) else EnvelopingElement
        return cls(self.shape, -self.data)

    def __mul__(self, lam):
        if not isinstance(lam, (int, float)):
            return NotImplemented
        cls = Element if isinstance(self, Element) else EnvelopingElement
        return cls(self.shape, float(lam) * self.data)

    __rmul__ = __mul__

    def __matmul__(self, other):
        other = self._coerce(other)
        return EnvelopingElement(self.shape, self.data @ other.data)

    @property
    def T(self) -> "EnvelopingElement":
        return EnvelopingElement(self.shape, self.data.T)

    def norm(self) -> float:
        return opnorm(self.data)

    def block(self, i: int) -> np.ndarray:
        s = self.shape.slices()[i]
        return self.data[s, s]

    def __repr__(self) -> str:
        return f"{type(self).__name__}(shape=({self.shape}), n={self.shape.dim})"


class Element(EnvelopingElement):
    """Symmetric block-diagonal matrix; a member of the ordered algebra."""

    __slots__ = ()

    def __init__(self, shape: ModelShape, data: np.ndarray, *, tol: Tolerances | None = None):
        tol = active_tol(tol)
        arr = np.asarray(data, dtype=float)
        gap = float(np.max(np.abs(arr - arr.T))) if arr.size else 0.0
        if gap > tol.sym:
            raise ValueError(f"matrix is not symmetric: asymmetry {gap:.3e} > {tol.sym:.1e}")
        super().__init__(shape, 0.5 * (arr + arr.T))

    # -- spectral data ------------------------------------------------
    def block_eig(self) -> list[tuple[np.ndarray, np.ndarray]]:
        """Per-block eigendecompositions (ascending eigenvalues), cached.

        Working blockwise keeps every derived matrix exactly
        block-diagonal even when eigenvalues repeat across blocks.
        """
        cached = self._beig
        if cached is None:
            try:
                cached = [np.linalg.eigh(self.block(i)) for i in range(self.shape.nblocks)]
            except np.linalg.LinAlgError as exc:
                raise SynalgError(f"eigensolver failed to converge: {exc}") from exc
            object.__setattr__(self, "_beig", cached)
        return cached

    def eigenvalues(self) -> np.ndarray:
        return np.sort(np.concatenate([w for w, _ in self.block_eig()]))

    def __abs__(self) -> "Element":
        return absolute(self)


class Projection(Element):
    """Idempotent symmetric element (p^2 = p to tolerance).

    For a symmetric matrix the idempotence residual already pins every
    eigenvalue to within a comparable distance of {0, 1}, so no separate
    spectral validation is performed.
    """

    __slots__ = ()

    def __init__(self, shape, data, *, tol: Tolerances | None = None):
        tol = active_tol(tol)
        super().__init__(shape, data, tol=tol)
        res = _fro(self.data @ self.data - self.data)
        if res > tol.proj:
            raise DriftError(f"not a projection: |p^2 - p| = {res:.3e}")

    def rank(self) -> int:
        return int(round(float(np.trace(self.data))))

    def block_ranks(self) -> tuple[int, ...]:
        return tuple(int(round(float(np.trace(self.block(i))))) for i in range(self.shape.nblocks))


class Symmetry(Element):
    """Symmetric involution (s^2 = 1 to tolerance)."""

    __slots__ = ()

    def __init__(self, shape, data, *, tol: Tolerances | None = None):
        tol = active_tol(tol)
        super().__init__(shape, data, tol=tol)
        res = _fro(self.data @ self.data - np.eye(shape.dim))
        if res > tol.proj:
            raise DriftError(f"not a symmetry: |s^2 - 1| = {res:.3e}")


# -- constructors ------------------------------------------------------

def zero(shape: ModelShape) -> Element:
    return Element(shape, np.zeros((shape.dim, shape.dim)))


def unit(shape: ModelShape) -> Symmetry:
    return Symmetry(shape, np.eye(shape.dim))


def scalar(shape: ModelShape, lam: float) -> Element:
    return Element(shape, float(lam) * np.eye(shape.dim))


def unit_projection(shape: ModelShape) -> Projection:
    return Projection(shape, np.eye(shape.dim))


def zero_projection(shape: ModelShape) -> Projection:
    return Projection(shape, np.zeros((shape.dim, shape.dim)))


def dist(x: EnvelopingElement, y: EnvelopingElement) -> float:
    """Spectral-norm distance between two same-shaped matrices."""
    if x.shape != y.shape:
        raise ShapeMismatchError(f"shape {x.shape} != {y.shape}")
    return opnorm(x.data - y.data)


# -- algebra operations ------------------------------------------------

def jordan(a: Element, b: Element) -> Element:
    """Symmetrized product (ab + ba) / 2; equals ab when a and b commute."""
    if a.shape != b.shape:
        raise ShapeMismatchError("jordan: operands have different shapes")
    ab = a.data @ b.data
    return Element(a.shape, 0.5 * (ab + ab.T))


def quad(a: Element, b: Element) -> Element:
    """Two-sided compression a b a; linear and order preserving in b."""
    if a.shape != b.shape:
        raise ShapeMismatchError("quad: operands have different shapes")
    return Element(a.shape, a.data @ b.data @ a.data)


def leq(a: Element, b: Element, tol: Tolerances | None = None) -> bool:
    """Order relation: b - a is positive semidefinite up to tol.psd."""
    tol = active_tol(tol)
    d = b - a
    return bool(float(np.min(d.eigenvalues())) >= -tol.psd)


def order_unit_norm(a: Element) -> float:
    """Largest absolute eigenvalue; the order-unit norm of the model."""
    w = a.eigenvalues()
    return float(np.max(np.abs(w))) if w.size else 0.0


def commutes(a: EnvelopingElement, b: EnvelopingElement, tol: Tolerances | None = None) -> bool:
    tol = active_tol(tol)
    if a.shape != b.shape:
        raise ShapeMismatchError("commutes: operands have different shapes")
    res = opnorm(a.data @ b.data - b.data @ a.data)
    return bool(res <= tol.comm * (opnorm(a.data) * opnorm(b.data) + 1.0))


def env_mul(x: EnvelopingElement, y: EnvelopingElement) -> EnvelopingElement:
    if x.shape != y.shape:
        raise ShapeMismatchError("env_mul: operands have different shapes")
    return EnvelopingElement(x.shape, x.data @ y.data)


def symmetrize_sum(x: EnvelopingElement, y: EnvelopingElement, tol: Tolerances | None = None) -> Element:
    """Return x + y as a symmetric element, rejecting non-symmetric sums.

    Sums of mirrored enveloping intermediates (such as x = s2 s1 e and
    y = e s1 s2) land back in the symmetric algebra; anything else is a
    misuse of enveloping values and raises.
    """
    tol = active_tol(tol)
    if x.shape != y.shape:
        raise ShapeMismatchError("symmetrize_sum: operands have different shapes")
    s = x.data + y.data
    gap = float(np.max(np.abs(s - s.T))) if s.size else 0.0
    if gap > tol.sym:
        raise PreconditionError(f"x + y is not symmetric (asymmetry {gap:.3e})")
    return Element(x.shape, s, tol=tol)


# -- spectral calculus --------------------------------------------------

def eig_sym(a: Element) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvector matrix of a.

    Computed blockwise and assembled, so the eigenvector matrix is itself
    block-diagonal even for eigenvalues repeated across blocks.
    """
    n = a.shape.dim
    vecs = np.zeros((n, n))
    vals = np.zeros(n)
    pos = 0
    for (w, v), s in zip(a.block_eig(), a.shape.slices()):
        b = s.stop - s.start
        vals[pos:pos + b] = w
        vecs[s, pos:pos + b] = v
        pos += b
    order = np.argsort(vals, kind="stable")
    return vals[order], vecs[:, order]


def spectral_map(a: Element, fn, cls=Element, tol: Tolerances | None = None):
    """Apply a real function to the spectrum of a, blockwise."""
    out = np.zeros((a.shape.dim, a.shape.dim))
    for (w, v), s in zip(a.block_eig(), a.shape.slices()):
        fw = np.asarray([fn(x) for x in w], dtype=float)
        blk = (v * fw) @ v.T
        out[s, s] = 0.5 * (blk + blk.T)
    return cls(a.shape, out, tol=tol)


def sqrt_pos(a: Element, tol: Tolerances | None = None) -> Element:
    """Square root of a positive element."""
    tol = active_tol(tol)
    if not leq(zero(a.shape), a, tol):
        raise PreconditionError("sqrt_pos: element is not positive")
    return spectral_map(a, lambda x: math.sqrt(max(x, 0.0)), tol=tol)


def absolute(a: Element, tol: Tolerances | None = None) -> Element:
    """|a|, the positive element with |a|^2 = a^2."""
    return spectral_map(a, abs, tol=tol)


def pos_part(a: Element, tol: Tolerances | None = None) -> Element:
    return spectral_map(a, lambda x: max(x, 0.0), tol=tol)


def neg_part(a: Element, tol: Tolerances | None = None) -> Element:
    return spectral_map(a, lambda x: max(-x, 0.0), tol=tol)


def carrier(a: Element, tol: Tolerances | None = None) -> Projection:
    """Support projection of a: smallest projection q with a q = a.

    Spectrally, the sum of eigenprojections for eigenvalues larger than
    tol.rank relative to the spectral norm of a.
    """
    tol = active_tol(tol)
    cut = max(tol.rank * order_unit_norm(a), tol.zero)
    return spectral_map(a, lambda x: 1.0 if abs(x) > cut else 0.0, cls=Projection, tol=tol)


def signum(a: Element, tol: Tolerances | None = None) -> Element:
    """Spectral sign of a; a partial symmetry whose square is carrier(a).

    Together with |a| it gives the polar decomposition a = signum(a)|a|.
    """
    tol = active_tol(tol)
    cut = max(tol.rank * order_unit_norm(a), tol.zero)
    return spectral_map(a, lambda x: math.copysign(1.0, x) if abs(x) > cut else 0.0, tol=tol)


def inverse(a: Element, tol: Tolerances | None = None) -> Element:
    tol = active_tol(tol)
    w = a.eigenvalues()
    if w.size == 0 or float(np.min(np.abs(w))) <= tol.inv:
        raise NotInvertibleError("inverse: spectrum touches zero")
    return spectral_map(a, lambda x: 1.0 / x, tol=tol)


def as_projection(a: Element, snap: bool = True, tol: Tolerances | None = None) -> Projection:
    """Reinterpret a as a projection, optionally snapping eigenvalues at 1/2.

    Snapping is the default in chained constructions; it stops numerical
    drift from accumulating across meets, joins and conjugations.
    """
    tol = active_tol(tol)
    if isinstance(a, Projection) and not snap:
        return a
    if snap:
        return spectral_map(a, lambda x: 1.0 if x >= 0.5 else 0.0, cls=Projection, tol=tol)
    return Projection(a.shape, a.data, tol=tol)


def as_symmetry(a: Element, snap: bool = True, tol: Tolerances | None = None) -> Symmetry:
    """Reinterpret a as a symmetry, optionally snapping eigenvalues to +-1."""
    tol = active_tol(tol)
    if isinstance(a, Symmetry) and not snap:
        return a
    if snap:
        return spectral_map(a, lambda x: 1.0 if x >= 0.0 else -1.0, cls=Symmetry, tol=tol)
    return Symmetry(a.shape, a.data, tol=tol)


class SpectralResolution:
    """Finite jump list (lambda_i, q_i) of the spectral step function.

    The q_i are pairwise orthogonal projections summing to the identity;
    the induced step function at lambda is the sum of all q_i with
    lambda_i <= lambda, which ascends and is right continuous.  The
    element is recovered in norm as sum(lambda_i * q_i).
    """

    def __init__(self, jumps: list[tuple[float, Projection]], lower: float, upper: float):
        self.jumps = tuple((float(l), q) for l, q in jumps)
        self.lower = float(lower)
        self.upper = float(upper)

    def at(self, lam: float) -> Projection:
        """Value of the step function at lam."""
        shape = self.jumps[0][1].shape
        acc = np.zeros((shape.dim, shape.dim))
        for l, q in self.jumps:
            if l <= lam:
                acc = acc + q.data
        return as_projection(Element(shape, acc))

    def reconstruct(self) -> Element:
        shape = self.jumps[0][1].shape
        acc = np.zeros((shape.dim, shape.dim))
        for l, q in self.jumps:
            acc = acc + l * q.data
        return Element(shape, acc)

    def __len__(self) -> int:
        return len(self.jumps)

    def __repr__(self) -> str:
        pts = ", ".join(f"{l:.6g}(rank {q.rank()})" for l, q in self.jumps)
        return f"SpectralResolution([{pts}], lower={self.lower:.6g}, upper={self.upper:.6g})"


def spectral_resolution(a: Element, tol: Tolerances | None = None) -> SpectralResolution:
    """Eigenvalue jump list of a, with nearby eigenvalues clustered.

    Eigenvalues closer than tol.cluster relative to the norm of a are
    merged into a single jump carrying the summed eigenprojection.
    """
    tol = active_tol(tol)
    n = a.shape.dim
    pairs: list[tuple[float, np.ndarray]] = []
    for (w, v), s in zip(a.block_eig(), a.shape.slices()):
        for i in range(len(w)):
            full = np.zeros((n, n))
            vec = v[:, i]
            full[s, s] = np.outer(vec, vec)
            pairs.append((float(w[i]), full))
    pairs.sort(key=lambda t: t[0])
    width = tol.cluster * max(order_unit_norm(a), 1e-300)
    jumps: list[tuple[float, Projection]] = []
    i = 0
    while i < len(pairs):
        j = i
        acc = np.zeros((n, n))
        vals = []
        while j < len(pairs) and pairs[j][0] - pairs[i][0] <= width:
            vals.append(pairs[j][0])
            acc = acc + pairs[j][1]
            j += 1
        q = as_projection(Element(a.shape, acc))
        jumps.append((float(np.mean(vals)), q))
        i = j
    return SpectralResolution(jumps, jumps[0][0], jumps[-1][0])
