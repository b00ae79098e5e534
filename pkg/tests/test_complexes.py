import random

import pytest

from skewloci.errors import DegenerateInputError, PreconditionError
from skewloci.fields import PrimeField
from skewloci.linalg import PAIRS, mat_mul, random_matrix, rank, transpose
from skewloci.complexes import (
    GENERAL,
    SPECIAL_FIRST,
    SPECIAL_SECOND,
    LinearComplex,
    fiber_meet,
    fiber_meet_report,
    fiber_rank2_count,
    second_type_complex,
    special_fiber,
)
from skewloci.projective import (
    Subspace,
    join,
    line_through,
    meet,
    pluecker_of_line,
)


def _random_line(field, rng):
    while True:
        s = Subspace(field, 6, [[field.random(rng) for _ in range(6)] for _ in range(2)])
        if s.dim == 2:
            return s


def _congruence(field, rng, A):
    while True:
        P = random_matrix(field, rng, 6, 6)
        if rank(field, P) == 6:
            return mat_mul(transpose(P), mat_mul(A, P))


def test_classification_by_rank():
    F = PrimeField(7)
    rng = random.Random(4)
    full = [0] * 15
    full[PAIRS.index((0, 1))] = 1
    full[PAIRS.index((2, 3))] = 1
    full[PAIRS.index((4, 5))] = 1
    first = [0] * 15
    first[PAIRS.index((0, 1))] = 1
    first[PAIRS.index((2, 3))] = 1
    second = [0] * 15
    second[PAIRS.index((0, 1))] = 1
    for coeffs, expected in ((full, GENERAL), (first, SPECIAL_FIRST), (second, SPECIAL_SECOND)):
        base = LinearComplex.from_pairs(F, coeffs)
        assert base.classify() == expected
        moved = LinearComplex(F, _congruence(F, rng, base.matrix))
        assert moved.classify() == expected


def test_zero_form_rejected():
    F = PrimeField(7)
    with pytest.raises(DegenerateInputError):
        LinearComplex.from_pairs(F, [0] * 15).classify()


def test_pairing_equals_pluecker_dot():
    F = PrimeField(11)
    rng = random.Random(7)
    for _ in range(15):
        A = LinearComplex.from_pairs(F, [F.random(rng) for _ in range(15)])
        line = _random_line(F, rng)
        p = pluecker_of_line(line)
        dot = sum((c * x for c, x in zip(A.coeffs(), p)), start=F.zero)
        assert A.pairing(line) == dot


def test_general_complex_pfaffian_nonzero():
    F = PrimeField(13)
    rng = random.Random(19)
    seen = {True: 0, False: 0}
    for _ in range(30):
        coeffs = [F.random(rng) for _ in range(15)]
        A = LinearComplex.from_pairs(F, coeffs)
        if A.is_zero():
            continue
        nz = not A.pf().is_zero()
        assert nz == (A.classify() == GENERAL)
        seen[nz] += 1
    assert seen[True] > 0


def test_second_type_complex_kernel_and_membership():
    F = PrimeField(7)
    rng = random.Random(11)
    for _ in range(8):
        W = Subspace(F, 6, [[F.random(rng) for _ in range(6)] for _ in range(4)])
        if W.dim != 4:
            continue
        A = second_type_complex(F, W)
        assert A.classify() == SPECIAL_SECOND
        assert A.kernel_space() == W
        # a line through a point of W is in the complex
        p = W.rows[0]
        q = [F.random(rng) for _ in range(6)]
        line = Subspace(F, 6, [p, q])
        if line.dim == 2:
            assert A.contains_line(line)
        # a line disjoint from W is not
        l2 = _random_line(F, rng)
        if meet(l2, W).dim == 0:
            assert not A.contains_line(l2)


def test_first_type_singular_line():
    F = PrimeField(7)
    coeffs = [0] * 15
    coeffs[PAIRS.index((0, 1))] = 1
    coeffs[PAIRS.index((2, 3))] = 1
    A = LinearComplex.from_pairs(F, coeffs)
    ker = A.kernel_space()
    assert ker.dim == 2
    assert ker.contains_vector([0, 0, 0, 0, 1, 0])
    assert ker.contains_vector([0, 0, 0, 0, 0, 1])


def test_special_fiber_dimension_six():
    F = PrimeField(11)
    rng = random.Random(23)
    for _ in range(6):
        line = _random_line(F, rng)
        fib = special_fiber(F, line)
        assert fib.dim == 6
        # every member kills the line
        A = LinearComplex.from_pairs(F, fib.rows[0])
        for v in line.rows:
            from skewloci.linalg import mat_vec

            assert all(x.is_zero() for x in mat_vec(A.matrix, v))


def test_fiber_meet_skew_lines_single_complex():
    F = PrimeField(7)
    l1 = line_through(F, [1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0])
    l2 = line_through(F, [0, 0, 1, 0, 0, 0], [0, 0, 0, 1, 0, 0])
    assert meet(l1, l2).dim == 0
    common = fiber_meet(F, l1, l2)
    assert common.dim == 1
    expected = second_type_complex(F, join(l1, l2))
    got = [x.v for x in common.rows[0]]
    want = [x.v for x in expected.coeffs()]
    # same projective point of coefficient space
    from skewloci.projective import normalize_projective

    assert normalize_projective(common.rows[0]) == normalize_projective(expected.coeffs())
    rep = fiber_meet_report(F, l1, l2)
    assert not rep["lines_meet"] and rep["common_dim"] == 1


def test_fiber_meet_meeting_lines_plane_of_rank_two():
    F = PrimeField(5)
    l1 = line_through(F, [1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0])
    l2 = line_through(F, [1, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0])
    assert meet(l1, l2).dim == 1
    common = fiber_meet(F, l1, l2)
    assert common.dim == 3
    # every projective point of the common plane is a rank-2 form
    from skewloci.linalg import skew_from_pairs
    from skewloci.projective import subspace_points

    n = 0
    for coeffs in subspace_points(common):
        assert rank(F, skew_from_pairs(F, coeffs)) == 2
        n += 1
    assert n == 25 + 5 + 1


def test_fiber_meet_report_rejects_equal_lines():
    F = PrimeField(5)
    l1 = line_through(F, [1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0])
    with pytest.raises(DegenerateInputError):
        fiber_meet_report(F, l1, l1)


def test_fiber_rank2_count_is_grassmannian_of_quotient():
    # forms with a fixed line in the kernel and rank 2 biject with lines in
    # the 3-dimensional projective quotient: q^4 + q^3 + 2q^2 + q + 1 of them
    F = PrimeField(7)
    line = line_through(F, [1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0])
    q = 7
    expected = q**4 + q**3 + 2 * q**2 + q + 1
    assert fiber_rank2_count(F, line) == expected
