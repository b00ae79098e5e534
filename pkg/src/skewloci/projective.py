"""Projective subspaces of P^5 and Pluecker coordinates of lines.

A Subspace stores the canonical reduced-echelon basis of a linear subspace of
k^6, so equality of subspaces is equality of stored rows.  Lines (vector
dimension 2) get Pluecker coordinates indexed by the 15 lexicographic index
pairs; the inverse direction recovers a line from a decomposable coordinate
vector through the rank-2 skew matrix it defines.
"""

from __future__ import annotations

from .errors import PreconditionError
from .fields import Field, FieldElement
from .linalg import PAIRS, kernel, mat_vec, rank, rref, transpose


class Subspace:
    """Linear subspace of k^n with a canonical row-reduced basis."""

    __slots__ = ("field", "n", "rows")

    def __init__(self, field: Field, n: int, vectors):
        self.field = field
        self.n = n
        vs = [[field(x) for x in v] for v in vectors]
        for v in vs:
            if len(v) != n:
                raise PreconditionError("vector length does not match the ambient space")
        if vs:
            R, _ = rref(field, vs)
            self.rows = R
        else:
            self.rows = []

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, [])

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_kernel_of(cls, field: Field, matrix) -> "Subspace":
        if not matrix:
            raise PreconditionError("kernel of an empty matrix is ambiguous")
        return cls(field, len(matrix[0]), kernel(field, matrix))

    @property
    def dim(self) -> int:
        """Vector space dimension."""
        return len(self.rows)

    @property
    def proj_dim(self) -> int:
        """Projective dimension; -1 for the empty locus."""
        return len(self.rows) - 1

    def basis(self):
        return [list(r) for r in self.rows]

    def contains_vector(self, v) -> bool:
        vv = [self.field(x) for x in v]
        if not self.rows:
            return all(x.is_zero() for x in vv)
        R, piv = rref(self.field, self.rows + [vv])
        return len(piv) == self.dim

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(v) for v in other.rows)

    def annihilator(self) -> "Subspace":
        """The subspace of covectors vanishing on this subspace."""
        if not self.rows:
            return Subspace.full(self.field, self.n)
        return Subspace(self.field, self.n, kernel(self.field, self.rows))

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.n == other.n
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash(
            (self.field, self.n, tuple(tuple(x.v for x in r) for r in self.rows))
        )

    def __repr__(self):
        return f"Subspace(dim={self.dim} of k^{self.n})"


def join(a: Subspace, b: Subspace) -> Subspace:
    if a.field != b.field or a.n != b.n:
        raise PreconditionError("subspaces live in different ambient spaces")
    return Subspace(a.field, a.n, a.basis() + b.basis())


def meet(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via annihilators: ann(meet) = ann(a) + ann(b)."""
    if a.field != b.field or a.n != b.n:
        raise PreconditionError("subspaces live in different ambient spaces")
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.field, a.n)
    stacked = a.annihilator().basis() + b.annihilator().basis()
    if not stacked:
        return Subspace.full(a.field, a.n)
    return Subspace(a.field, a.n, kernel(a.field, stacked))


def line_through(field: Field, p, q) -> Subspace:
    L = Subspace(field, len(p), [p, q])
    if L.dim != 2:
        raise PreconditionError("points do not span a line")
    return L


def pluecker_of_line(line: Subspace):
    """The 15 Pluecker coordinates of a line in P^5, lex pair order."""
    if line.n != 6 or line.dim != 2:
        raise PreconditionError("expected a line in P^5")
    u, v = line.rows
    return [u[i] * v[j] - u[j] * v[i] for i, j in PAIRS]


def normalize_projective(vec):
    """Scale so the first nonzero entry is 1; rejects the zero vector."""
    first = next((x for x in vec if not x.is_zero()), None)
    if first is None:
        raise PreconditionError("zero vector has no projective normalization")
    inv = first.inverse()
    return [x * inv for x in vec]


def skew_matrix_of_pluecker(field: Field, p15):
    A = [[field.zero for _ in range(6)] for _ in range(6)]
    for (i, j), c in zip(PAIRS, p15):
        x = field(c)
        A[i][j] = x
        A[j][i] = -x
    return A


def is_decomposable(field: Field, p15) -> bool:
    """Whether 15 coordinates lie on the Grassmannian of lines in P^5.

    The criterion is that the associated skew matrix has rank at most 2.
    """
    if all(field(c).is_zero() for c in p15):
        return False
    return rank(field, skew_matrix_of_pluecker(field, p15)) <= 2


def pluecker_relations(field: Field, p15):
    """Values of the quadratic three-term relations, one per 4-subset."""
    idx = {p: k for k, p in enumerate(PAIRS)}
    vals = []
    xs = [field(c) for c in p15]
    n = 6
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                for d in range(c + 1, n):
                    v = (
                        xs[idx[(a, b)]] * xs[idx[(c, d)]]
                        - xs[idx[(a, c)]] * xs[idx[(b, d)]]
                        + xs[idx[(a, d)]] * xs[idx[(b, c)]]
                    )
                    vals.append(v)
    return vals


def line_from_pluecker(field: Field, p15) -> Subspace:
    """The line whose Pluecker vector is proportional to the given one."""
    A = skew_matrix_of_pluecker(field, p15)
    if rank(field, A) != 2:
        raise PreconditionError("coordinates are not those of a line")
    line = Subspace(field, 6, A)
    if line.dim != 2:
        raise PreconditionError("rank-2 matrix produced a degenerate row space")
    return line


def projective_reps(field: Field, d: int):
    """Canonical representatives of P^(d-1) over a finite field.

    Tuples of length d whose first nonzero coordinate is 1, ordered with the
    leading position moving right.
    """
    if field.order is None:
        raise PreconditionError("cannot enumerate projective space over Q")
    for lead in range(d):
        tail = d - lead - 1

        def rec(k):
            if k == 0:
                yield ()
                return
            for x in field.elements():
                for rest in rec(k - 1):
                    yield (x,) + rest

        for rest in rec(tail):
            yield (field.zero,) * lead + (field.one,) + rest


def subspace_points(space: Subspace):
    """All projective points of a subspace over a finite field, as 6-vectors."""
    d = space.dim
    for coeffs in projective_reps(space.field, d):
        v = [space.field.zero] * space.n
        for c, row in zip(coeffs, space.rows):
            if not c.is_zero():
                v = [a + c * b for a, b in zip(v, row)]
        yield v


def map_subspace(emb, space: Subspace) -> Subspace:
    """Extend scalars of a subspace along a field embedding."""
    return Subspace(emb.dst, space.n, [[emb(x) for x in r] for r in space.rows])
