import random

import pytest

from skewloci.errors import PreconditionError
from skewloci.fields import QQ, PrimeField
from skewloci.linalg import PAIRS
from skewloci.projective import (
    Subspace,
    is_decomposable,
    join,
    line_from_pluecker,
    line_through,
    meet,
    normalize_projective,
    pluecker_of_line,
    pluecker_relations,
    projective_reps,
    subspace_points,
)


def _random_subspace(field, rng, dim, n=6):
    while True:
        vs = [[field.random(rng) for _ in range(n)] for _ in range(dim)]
        s = Subspace(field, n, vs)
        if s.dim == dim:
            return s


def test_subspace_canonical_representation():
    F = PrimeField(7)
    rng = random.Random(3)
    s = _random_subspace(F, rng, 3)
    # a different generating set of the same space gives identical rows
    mixed = [
        [a + b for a, b in zip(s.rows[0], s.rows[1])],
        [a - b for a, b in zip(s.rows[1], s.rows[2])],
        s.rows[2],
        [a + b for a, b in zip(s.rows[0], s.rows[2])],
    ]
    t = Subspace(F, 6, mixed)
    assert s == t


def test_join_meet_dimension_formula():
    F = PrimeField(11)
    rng = random.Random(14)
    for _ in range(25):
        a = _random_subspace(F, rng, rng.randint(1, 4))
        b = _random_subspace(F, rng, rng.randint(1, 4))
        j = join(a, b)
        m = meet(a, b)
        assert j.dim + m.dim == a.dim + b.dim
        assert a.contains(m) and b.contains(m)
        assert j.contains(a) and j.contains(b)


def test_meet_of_generic_planes_in_p5():
    # two generic projective planes in P^5 meet in a point of k^6 terms: dim 1+...
    # vector dims 3 + 3 = 6 and generic join is everything, so meet is zero
    F = PrimeField(13)
    rng = random.Random(5)
    a = _random_subspace(F, rng, 3)
    b = _random_subspace(F, rng, 3)
    if join(a, b).dim == 6:
        assert meet(a, b).dim == 0


def test_annihilator_double_dual():
    F = PrimeField(7)
    rng = random.Random(8)
    s = _random_subspace(F, rng, 3)
    assert s.annihilator().annihilator() == s
    assert s.annihilator().dim == 3


def test_pluecker_of_line_well_defined():
    F = PrimeField(11)
    rng = random.Random(2)
    for _ in range(10):
        line = _random_subspace(F, rng, 2)
        p = pluecker_of_line(line)
        # recompute from a different basis: scaled rows
        u, v = line.rows
        u2 = [x * F(3) for x in u]
        v2 = [a + b for a, b in zip(v, u)]
        line2 = Subspace(F, 6, [u2, v2])
        q = pluecker_of_line(line2)
        assert normalize_projective(p) == normalize_projective(q)
        assert all(x.is_zero() for x in pluecker_relations(F, p))
        assert is_decomposable(F, p)


def test_line_from_pluecker_roundtrip():
    F = PrimeField(7)
    rng = random.Random(9)
    for _ in range(10):
        line = _random_subspace(F, rng, 2)
        p = pluecker_of_line(line)
        back = line_from_pluecker(F, p)
        assert back == line


def test_non_decomposable_vector_rejected():
    F = PrimeField(7)
    # e01 + e23 wedge coordinates: rank-4 skew matrix
    p = [0] * 15
    p[PAIRS.index((0, 1))] = 1
    p[PAIRS.index((2, 3))] = 1
    assert not is_decomposable(F, p)
    with pytest.raises(PreconditionError):
        line_from_pluecker(F, p)
    rels = pluecker_relations(F, p)
    assert any(not v.is_zero() for v in rels)


def test_line_through_and_containment():
    F = PrimeField(5)
    p = [1, 0, 0, 0, 0, 0]
    q = [0, 1, 0, 0, 0, 0]
    L = line_through(F, p, q)
    assert L.contains_vector([1, 1, 0, 0, 0, 0])
    assert not L.contains_vector([0, 0, 1, 0, 0, 0])
    with pytest.raises(PreconditionError):
        line_through(F, p, [2, 0, 0, 0, 0, 0])


def test_projective_reps_count():
    F = PrimeField(5)
    pts = list(projective_reps(F, 3))
    assert len(pts) == 25 + 5 + 1
    as_tuples = {tuple(x.v for x in p) for p in pts}
    assert len(as_tuples) == 31


def test_subspace_points_cover_plane():
    F = PrimeField(3)
    s = Subspace(F, 6, [[1, 0, 0, 0, 0, 1], [0, 1, 0, 0, 1, 0], [0, 0, 1, 1, 0, 0]])
    pts = list(subspace_points(s))
    assert len(pts) == 9 + 3 + 1
    for p in pts:
        assert s.contains_vector(p)


def test_meet_over_q():
    a = Subspace(QQ, 6, [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0]])
    b = Subspace(QQ, 6, [[0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0]])
    m = meet(a, b)
    assert m.dim == 1
    assert m.contains_vector([0, 0, 1, 0, 0, 0])
