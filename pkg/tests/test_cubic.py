import random

import pytest

from skewloci.cubic import (
    PlaneCubic,
    SectionPoint,
    add_points,
    chord_line,
    class_add,
    class_eq,
    class_neg,
    class_of,
    class_zero,
    halvings,
    hyperplane_class,
    is_smooth,
    line_section,
    neg_point,
    polar_contact,
    tangent_line,
    third_point,
    two_torsion,
)
from skewloci.errors import PreconditionError
from skewloci.fields import QQ, PrimeField

# l2^2 l3 - l1^3 + l1 l3^2 in wire order
ANCHOR = [-1, 0, 0, 0, 0, 1, 0, 1, 0, 0]
FLEX = (0, 1, 0)


def _anchor(field):
    return PlaneCubic(field, ANCHOR, base_point=FLEX)


def test_product_of_lines_is_singular():
    F = PrimeField(7)
    C = PlaneCubic(F, [0, 0, 0, 0, 1, 0, 0, 0, 0, 0])  # l1 l2 l3
    rep = is_smooth(C)
    assert not rep.smooth
    # witness is a common zero of all partials: a coordinate vertex
    assert sum(1 for x in rep.witness if x.is_zero()) == 2


def test_anchor_curve_smooth_over_f7():
    assert is_smooth(_anchor(PrimeField(7))).smooth


def test_line_at_infinity_section():
    C = _anchor(PrimeField(7))
    sec = line_section(C, (0, 0, 1))
    assert len(sec) == 1
    assert sec[0].multiplicity == 3
    assert sec[0].point == (C.field.zero, C.field.one, C.field.zero)


def test_tangent_section_has_double_point():
    F = PrimeField(13)
    C = _anchor(F)
    P = next(p for p in C.rational_points() if p != C.base_point)
    sec = line_section(C, tangent_line(C, P))
    at_p = [e for e in sec if e.field == F and e.point == P]
    assert at_p and at_p[0].multiplicity >= 2


def test_random_sections_vanish_on_curve():
    F = PrimeField(101)
    C = _anchor(F)
    rng = random.Random(5)
    for _ in range(12):
        cov = [F.random(rng) for _ in range(3)]
        if all(x.is_zero() for x in cov):
            continue
        sec = line_section(C, cov)
        assert sum(e.multiplicity for e in sec) == 3
        for e in sec:
            CK = C.map(e.embedding)
            assert CK.evaluate(e.point).is_zero()


def test_section_over_q_rational_case():
    C = PlaneCubic(QQ, ANCHOR, base_point=FLEX)
    # l1 = 0 meets the curve where l2^2 l3 = 0
    sec = line_section(C, (1, 0, 0))
    pts = sorted((tuple(x.v for x in e.point), e.multiplicity) for e in sec)
    assert pts == [((0, 0, 1), 2), ((0, 1, 0), 1)]


def test_identity_law():
    F = PrimeField(101)
    C = _anchor(F)
    rng = random.Random(11)
    pts = C.rational_points()
    for _ in range(100):
        P = pts[rng.randrange(len(pts))]
        assert add_points(C, P, C.base_point) == P


def test_associativity():
    F = PrimeField(101)
    C = _anchor(F)
    rng = random.Random(12)
    pts = C.rational_points()
    for _ in range(100):
        P, Q, R = (pts[rng.randrange(len(pts))] for _ in range(3))
        left = add_points(C, add_points(C, P, Q), R)
        right = add_points(C, P, add_points(C, Q, R))
        assert left == right


def test_neg_point_inverts():
    F = PrimeField(13)
    C = _anchor(F)
    for P in C.rational_points():
        assert add_points(C, P, neg_point(C, P)) == C.base_point


def test_line_sections_all_equivalent():
    F = PrimeField(101)
    C = _anchor(F)
    rng = random.Random(4)
    pts = C.rational_points()
    H = hyperplane_class(C)
    for _ in range(10):
        P, Q = pts[rng.randrange(len(pts))], pts[rng.randrange(len(pts))]
        if P == Q:
            continue
        R = third_point(C, P, Q)
        cls = class_of(C, [(P, 1), (Q, 1), (R, 1)])
        assert class_eq(cls, H)


def test_two_torsion_anchor_f13():
    F = PrimeField(13)
    C = _anchor(F)
    rep = two_torsion(C)
    assert rep.full_rational
    # scaled forms of (0:1:0), (0:0:1), (1:0:1), (12:0:1)
    reps = {tuple(x.v for x in c.rep) for c in rep.classes}
    assert reps == {(0, 1, 0), (0, 0, 1), (1, 0, 1), (1, 0, 12)}


def test_two_torsion_contains_trivial_and_closes():
    F = PrimeField(13)
    C = _anchor(F)
    rep = two_torsion(C)
    assert any(class_eq(c, class_zero(C)) for c in rep.classes)
    reps = {tuple(c.rep) for c in rep.classes}
    for a in rep.classes:
        for b in rep.classes:
            assert tuple(class_add(a, b).rep) in reps


def test_halvings_of_zero_are_torsion():
    F = PrimeField(13)
    C = _anchor(F)
    sols = halvings(C, class_zero(C))
    assert set(sols) == {c.rep for c in two_torsion(C).classes}


def test_halvings_planted_and_coset_size():
    F = PrimeField(13)
    C = _anchor(F)
    pts = C.rational_points()
    rng = random.Random(8)
    for _ in range(10):
        P0 = pts[rng.randrange(len(pts))]
        Q = class_of(C, [(P0, 2), (C.base_point, -2)])
        sols = halvings(C, Q)
        assert P0 in sols
        assert len(sols) == 4
    # a class outside the doubling image has no solutions
    empties = 0
    for P in pts:
        Q = class_of(C, [(P, 1), (C.base_point, -1)])
        if not halvings(C, Q):
            empties += 1
    assert empties > 0


def test_polar_contact_at_flex_of_anchor():
    F = PrimeField(13)
    C = _anchor(F)
    pc = polar_contact(C, FLEX)
    two = F(2)
    assert pc.conic == (F.zero, F.zero, F.zero, F.zero, two, F.zero)
    div = sorted(
        (tuple(x.v for x in e.point), e.multiplicity) for e in pc.divisor
    )
    assert ((0, 1, 0), 3) in div
    assert sum(m for _, m in div) == 6
    res = {}
    for e in pc.residual:
        key = tuple(x.v for x in e.point)
        res[key] = res.get(key, 0) + e.multiplicity
    torsion = {tuple(x.v for x in c.rep) for c in two_torsion(C).classes}
    assert res == {t: 1 for t in torsion}


def test_polar_residual_matches_halvings():
    F = PrimeField(13)
    C = _anchor(F)
    pts = C.rational_points()
    rng = random.Random(21)
    H = hyperplane_class(C)
    checked = 0
    for _ in range(20):
        k = pts[rng.randrange(len(pts))]
        pc = polar_contact(C, k)
        if any(e.field != F for e in pc.residual):
            continue
        target = class_add(
            class_add(H, class_neg(class_of(C, [(k, 1)]))),
            class_neg(class_of(C, [(C.base_point, 2)])),
        )
        sols = set(halvings(C, target))
        got = set()
        for e in pc.residual:
            got.add(e.point)
            dbl = class_of(C, [(e.point, 2), (C.base_point, -2)])
            assert class_eq(dbl, target)
        assert got <= sols
        checked += 1
    assert checked >= 5


def test_base_point_transport():
    F = PrimeField(13)
    C = _anchor(F)
    pts = C.rational_points()
    O2 = next(p for p in pts if p != FLEX)
    C2 = C.anchored(O2)
    rng = random.Random(3)
    for _ in range(50):
        P, Q = pts[rng.randrange(len(pts))], pts[rng.randrange(len(pts))]
        R = add_points(C, P, Q)
        R2 = add_points(C2, P, Q)
        moved = class_of(C2, [(R, 1), (FLEX, -1), (O2, 1)])
        assert moved.rep == R2


def test_divisor_degree_bookkeeping():
    F = PrimeField(13)
    C = _anchor(F)
    pts = C.rational_points()
    a = class_of(C, [(pts[1], 1), (pts[2], 1)])
    b = class_of(C, [(pts[3], -1)])
    assert class_add(a, b).degree == 1
    assert class_neg(a).degree == -2


def test_chord_line_through_points():
    F = PrimeField(13)
    C = _anchor(F)
    pts = C.rational_points()
    P, Q = pts[0], pts[4]
    cov = chord_line(P, Q)
    assert sum((c * x for c, x in zip(cov, P)), start=F.zero).is_zero()
    assert sum((c * x for c, x in zip(cov, Q)), start=F.zero).is_zero()


def test_base_point_must_lie_on_curve():
    F = PrimeField(7)
    with pytest.raises(PreconditionError):
        PlaneCubic(F, ANCHOR, base_point=(1, 1, 1))
