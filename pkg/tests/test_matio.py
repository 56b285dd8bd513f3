"""Matrix file format round trips and parse failures."""

import math

import numpy as np
import pytest

from synalg import Element, ModelShape, Projection, dist
from synalg.matio import ParseError, format_matrix, parse_matrix, read_matrix, write_matrix
from synalg.rng import XorShift64Star


def test_roundtrip_is_exact():
    rng = XorShift64Star(100)
    for shape in (ModelShape((3,)), ModelShape((2, 3))):
        for _ in range(10):
            a = rng.element(shape)
            b = parse_matrix(format_matrix(a))
            assert np.array_equal(a.data, b.data)
            assert a.shape == b.shape


def test_seventeen_digit_values_survive():
    a = Element(ModelShape((2,)), [[math.pi, 1.0 / 3.0], [1.0 / 3.0, -math.e]])
    b = parse_matrix(format_matrix(a))
    assert np.array_equal(a.data, b.data)


def test_file_roundtrip(tmp_path):
    p = Projection(ModelShape((2,)), [[0.5, 0.5], [0.5, 0.5]])
    path = tmp_path / "p.mat"
    write_matrix(path, p)
    q = read_matrix(path, kind="projection")
    assert dist(p, q) == 0.0


def test_kind_validation(tmp_path):
    a = Element(ModelShape((2,)), [[2.0, 0.0], [0.0, 1.0]])
    path = tmp_path / "a.mat"
    write_matrix(path, a)
    read_matrix(path, kind="element")
    with pytest.raises(ParseError):
        read_matrix(path, kind="projection")
    with pytest.raises(ParseError):
        read_matrix(path, kind="symmetry")


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_matrix("1 0\n0 1\n")  # missing header
    with pytest.raises(ParseError):
        parse_matrix("shape 2\n1 0\n")  # wrong row count
    with pytest.raises(ParseError):
        parse_matrix("shape 2\n1 x\n0 1\n")  # bad token
    with pytest.raises(ParseError):
        parse_matrix("shape\n")  # no dims


def test_comments_and_blanks_ignored():
    text = "# a projection\nshape 2\n\n1 0\n0 0\n"
    p = parse_matrix(text, kind="projection")
    assert p.rank() == 1
