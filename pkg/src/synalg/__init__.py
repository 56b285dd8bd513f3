"""Synaptic-algebra toolkit over block-diagonal symmetric matrix models."""

from .core import (
    DriftError,
    Element,
    EnvelopingElement,
    ModelShape,
    NotInvertibleError,
    PreconditionError,
    Projection,
    ShapeMismatchError,
    SpectralResolution,
    Symmetry,
    SynalgError,
    Tolerances,
    absolute,
    as_projection,
    as_symmetry,
    carrier,
    commutes,
    dist,
    eig_sym,
    env_mul,
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
    zero_projection,
)

__version__ = "0.1.0"
