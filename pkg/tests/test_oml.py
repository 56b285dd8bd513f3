"""Finite orthomodular lattice engine: files, axioms, theory battery."""

import pytest

from synalg import ModelShape, Projection
from synalg.matio import ParseError
from synalg.oml import (
    ClosureExplosionError,
    boolean_oml,
    common_complements,
    compat_preserved_check,
    distributive_triple_check,
    effect_algebra_check,
    format_oml,
    interval_center_check,
    interval_sasaki_check,
    is_distributive,
    is_modular,
    load_oml,
    mo_oml,
    oml_center,
    oml_compatible,
    oml_compatible_by_search,
    oml_from_projections,
    oml_interval,
    oml_perspectivity,
    oml_sasaki,
    parallelogram_check,
    parse_oml,
    relcompl_lift_check,
    sasaki_props_report,
    six_piece_decomposition,
    verify_oml,
)
from synalg.core import PreconditionError
from synalg.rng import XorShift64Star


def test_boolean_generator():
    for n in (1, 2, 3, 4):
        b = boolean_oml(n)
        assert len(b) == 1 << n
        assert verify_oml(b).passed
        assert is_distributive(b) and is_modular(b)
        assert len(oml_center(b)) == len(b)


def test_mo_generator():
    for n in (1, 2, 3, 7):
        l = mo_oml(n)
        assert len(l) == 2 * n + 2
        assert verify_oml(l).passed
        assert is_modular(l)
        if n >= 2:
            assert not is_distributive(l)
            assert oml_center(l) == [0, 1]


def test_mo2_sasaki_and_perspectivity():
    mo2 = mo_oml(2)
    a, b = mo2.index("a1"), mo2.index("a2")
    assert not oml_compatible(mo2, a, b)
    assert oml_sasaki(mo2, a, b) == a
    rep = oml_perspectivity(mo2, a, b)
    assert rep.perspective is not None
    assert rep.strongly_perspective is not None
    assert oml_sasaki(mo2, a, mo2.bottom) == mo2.bottom
    assert oml_sasaki(mo2, a, a) == a


def test_boolean_sasaki_is_meet():
    b = boolean_oml(3)
    for p in range(len(b)):
        for q in range(len(b)):
            assert oml_sasaki(b, p, q) == b.meet(p, q)
            assert oml_compatible(b, p, q)


def test_compatibility_formula_matches_search():
    for l in (boolean_oml(2), mo_oml(2), mo_oml(3)):
        for p in range(len(l)):
            for q in range(len(l)):
                assert oml_compatible(l, p, q) == oml_compatible_by_search(l, p, q)


def test_theory_battery_on_fixtures():
    for l in (boolean_oml(3), mo_oml(2), mo_oml(3)):
        assert sasaki_props_report(l).passed
        assert relcompl_lift_check(l).passed
        assert parallelogram_check(l).passed
        assert effect_algebra_check(l).passed
        assert compat_preserved_check(l).passed
        assert distributive_triple_check(l).passed
        assert interval_center_check(l).passed
        for p in range(len(l)):
            assert interval_sasaki_check(l, p).passed


def test_interval_is_own_oml():
    mo2 = mo_oml(2)
    sub, members = oml_interval(mo2, mo2.index("a1"))
    assert len(sub) == 2
    assert verify_oml(sub).passed
    full, _ = oml_interval(mo2, mo2.top)
    assert len(full) == len(mo2)
    b3 = boolean_oml(3)
    sub, members = oml_interval(b3, b3.index("ab"))
    assert len(sub) == 4
    assert verify_oml(sub).passed


def test_boolean_perspective_iff_equal():
    b = boolean_oml(3)
    for p in range(len(b)):
        for q in range(len(b)):
            persp = bool(common_complements(b, p, q))
            assert persp == (p == q)


def test_six_piece_identity_and_swap():
    b = boolean_oml(4)
    p, q = b.index("a"), b.index("b")
    k = b.join(p, q)
    rep = six_piece_decomposition(b, p, q, p, q)
    assert rep.checks.passed
    assert rep.p1 == p and rep.q2 == q
    rep = six_piece_decomposition(b, p, q, q, p)
    assert rep.checks.passed
    with pytest.raises(PreconditionError):
        six_piece_decomposition(b, p, q, p, b.index("c"))


def test_six_piece_exhaustive_16_element():
    for l in (boolean_oml(4), mo_oml(7)):
        assert len(l) == 16
        m = len(l)
        count = 0
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
                            assert rep.checks.passed
                            count += 1
        assert count > 100


def test_file_roundtrip(tmp_path):
    for l in (boolean_oml(3), mo_oml(2)):
        text = format_oml(l)
        again = parse_oml(text)
        assert verify_oml(again).passed
        assert len(again) == len(l)
        assert set(again.names) == set(l.names)
    path = tmp_path / "mo2.oml"
    path.write_text(format_oml(mo_oml(2)), encoding="ascii")
    assert verify_oml(load_oml(path)).passed


def test_transitive_reduction_accepted():
    text = (
        "elem 0\nelem a\nelem a'\nelem 1\n"
        "bottom 0\ntop 1\n"
        "leq 0 a\nleq a 1\n"  # 0 <= 1 only via closure
        "ortho 0 1\northo a a'\n"
    )
    l = parse_oml(text)
    assert l.le(l.index("0"), l.index("1"))
    assert verify_oml(l).passed


def test_parse_errors_and_violations():
    with pytest.raises(ParseError):
        parse_oml("elem a\ntop a\n")  # missing bottom
    with pytest.raises(ParseError):
        parse_oml("leq a b\nbottom a\ntop b\n")  # undeclared elements
    with pytest.raises(ParseError):
        parse_oml("elem a\nelem a\nbottom a\ntop a\n")  # duplicate
    # non-involutive orthocomplement is a verification failure, not a parse error
    bad = (
        "elem 0\nelem 1\nelem a\nelem b\nelem c\n"
        "bottom 0\ntop 1\n"
        "ortho a b\northo b c\northo 0 1\n"
    )
    rep = verify_oml(parse_oml(bad))
    assert not rep.passed
    # missing ortho map entries are flagged
    nosym = "elem 0\nelem 1\nbottom 0\ntop 1\n"
    rep = verify_oml(parse_oml(nosym))
    assert not rep.passed


def test_non_orthomodular_detected():
    # hexagon (benzene ring): bounded lattice with an orthocomplement
    # whose orthomodular law fails
    text = (
        "elem 0\nelem a\nelem b\nelem c\nelem d\nelem 1\n"
        "bottom 0\ntop 1\n"
        "leq a b\nleq c d\n"
        "ortho 0 1\northo a d\northo b c\n"
    )
    l = parse_oml(text)
    rep = verify_oml(l)
    assert not rep.passed
    failing = {line.name for line in rep.lines() if not line.passed}
    assert "oml.orthomodular_law" in failing


def test_oml_from_projections():
    sh = ModelShape((2,))
    e = Projection(sh, [[1.0, 0.0], [0.0, 0.0]])
    f = Projection(sh, [[0.5, 0.5], [0.5, 0.5]])
    l, pool = oml_from_projections([e, f])
    assert len(l) == 6  # two incompatible lines close into a lantern
    assert verify_oml(l).passed
    assert not is_distributive(l)
    l2, _ = oml_from_projections([e])
    assert is_distributive(l2) and len(l2) == 4
    rng = XorShift64Star(70)
    sh3 = ModelShape((3,))
    with pytest.raises(ClosureExplosionError):
        oml_from_projections([rng.projection(sh3, rank=1) for _ in range(4)], cap=12)
