"""Nets of linear line complexes and the degeneracy scroll they cut out.

A net is a plane of skew forms on k^6; its rank-drop locus in P^5 is a
surface fibered in lines over the plane Pfaffian cubic.  This module gives
exact membership and fiber extraction for arbitrary skew morphisms, the
Pfaffian cubic itself, exhaustive point counts over small prime fields,
degree evidence from random 3-space sections, the unisecant planes, the
restricted complex systems along a fiber, and the rank-2 classification of
the net with its singular-locus consequence.
"""

from __future__ import annotations

import itertools
import random

from .complexes import LinearComplex, special_fiber
from .cubic import (
    CONIC_MONOMIALS,
    PlaneCubic,
    _bilinear,
    _conic_matrix,
    _other_indices,
    _pivot,
)
from .errors import (
    DegenerateInputError,
    InconsistencyError,
    PreconditionError,
    UnsupportedFieldError,
)
from .fields import Poly, factor, roots
from .linalg import (
    PAIRS,
    check_skew,
    kernel,
    mat_vec,
    pfaffian,
    rank,
    sub_pfaffians_6,
)
from .polys import MPoly, binary_form_to_poly, common_projective_zero
from .projective import (
    Subspace,
    join,
    line_through,
    meet,
    pluecker_of_line,
    subspace_points,
)

EXHAUSTIVE_PRIME_CAP = 11


def _form_value(field, A, u, v):
    Av = mat_vec(A, v)
    return sum((x * y for x, y in zip(u, Av)), start=field.zero)


class GenericMorphism:
    """A tuple of independent skew matrices defining a morphism to twisted forms."""

    __slots__ = ("field", "n", "m", "matrices")

    def __init__(self, field, matrices):
        mats = []
        for M in matrices:
            rows = [[x if hasattr(x, "field") else field(x) for x in row] for row in M]
            check_skew(field, rows)
            mats.append(rows)
        if not mats:
            raise PreconditionError("a morphism needs at least one matrix")
        size = len(mats[0])
        if any(len(M) != size for M in mats):
            raise PreconditionError("all matrices must share one size")
        self.field = field
        self.n = size - 1
        self.m = len(mats)
        if self.m > self.n:
            raise PreconditionError("the matrix count must not exceed the dimension")
        flat = [
            [M[i][j] for i in range(size) for j in range(i + 1, size)] for M in mats
        ]
        if rank(field, flat) != self.m:
            raise PreconditionError("the skew matrices are linearly dependent")
        self.matrices = mats

    def combination(self, lam):
        coeffs = [x if hasattr(x, "field") else self.field(x) for x in lam]
        if len(coeffs) != self.m:
            raise PreconditionError("combination needs one scalar per matrix")
        size = self.n + 1
        out = [[self.field.zero] * size for _ in range(size)]
        for c, M in zip(coeffs, self.matrices):
            if c.is_zero():
                continue
            for i in range(size):
                for j in range(size):
                    out[i][j] = out[i][j] + c * M[i][j]
        return out

    def __repr__(self):
        return f"GenericMorphism(n={self.n}, m={self.m})"


class Net:
    """Three independent complexes spanning a plane in the dual 14-space."""

    __slots__ = ("field", "generators")

    def __init__(self, field, g1, g2, g3):
        gens = []
        for g in (g1, g2, g3):
            if not isinstance(g, LinearComplex):
                g = LinearComplex(field, g)
            if g.field != field:
                raise PreconditionError("net generators must share the base field")
            gens.append(g)
        flat = [list(g.coeffs()) for g in gens]
        if rank(field, flat) != 3:
            raise PreconditionError("net generators are linearly dependent")
        self.field = field
        self.generators = tuple(gens)

    @classmethod
    def from_pair_vectors(cls, field, triples):
        gens = [LinearComplex.from_pairs(field, t) for t in triples]
        return cls(field, *gens)

    @property
    def matrices(self):
        return [g.matrix for g in self.generators]

    def morphism(self) -> GenericMorphism:
        return GenericMorphism(self.field, self.matrices)

    def combination(self, lam):
        return self.morphism().combination(lam)

    def member(self, lam) -> LinearComplex:
        return LinearComplex(self.field, self.combination(lam))

    def map(self, emb) -> "Net":
        return Net(emb.dst, *(g.map(emb) for g in self.generators))

    def __repr__(self):
        return f"Net(over {self.field.short()})"


def _as_morphism(phi):
    return phi.morphism() if isinstance(phi, Net) else phi


def x_membership(phi, P) -> bool:
    """Whether some combination of the matrices kills the point.

    Equivalent to the stacked column matrix [A_1 P | ... | A_m P] having rank
    at most m - 1.
    """
    phi = _as_morphism(phi)
    field = phi.field
    pt = [x if hasattr(x, "field") else field(x) for x in P]
    if len(pt) != phi.n + 1:
        raise PreconditionError("point length does not match the matrix size")
    if all(x.is_zero() for x in pt):
        raise PreconditionError("zero coordinate vector")
    cols = [mat_vec(A, pt) for A in phi.matrices]
    rows = [[col[i] for col in cols] for i in range(phi.n + 1)]
    return rank(field, rows) <= phi.m - 1


def scroll_fiber(phi, lam) -> Subspace:
    """The projective kernel of the combination at lam."""
    phi = _as_morphism(phi)
    field = phi.field
    M = phi.combination(lam)
    kern = kernel(field, M)
    if not kern:
        if (phi.n + 1) % 2 == 0:
            raise PreconditionError(
                "the combination is nonsingular: the parameter misses the "
                "Pfaffian hypersurface"
            )
        raise InconsistencyError("odd-size skew matrix with trivial kernel")
    return Subspace(field, phi.n + 1, kern)


def _linear_entries(net: Net):
    field = net.field
    size = 6
    zero = MPoly.zero(field, 3)
    entries = [[zero for _ in range(size)] for _ in range(size)]
    for k, M in enumerate(net.matrices):
        for i in range(size):
            for j in range(size):
                if M[i][j].is_zero():
                    continue
                exps = tuple(1 if t == k else 0 for t in range(3))
                entries[i][j] = entries[i][j] + MPoly(field, 3, {exps: M[i][j]})
    return entries


def net_pfaffian_cubic(net: Net, base_point=None) -> PlaneCubic:
    """The ternary cubic equal to the Pfaffian of the net's combinations."""
    field = net.field
    entries = _linear_entries(net)
    zero = MPoly.zero(field, 3)
    one = MPoly.constant(field, 3, field.one)
    P = pfaffian(entries, zero, one)
    if P.is_zero():
        raise DegenerateInputError("the net's Pfaffian vanishes identically")
    return PlaneCubic.from_mpoly(P, base_point=base_point)


def sub_pfaffian_forms(net: Net):
    """The 15 quadratic forms in lam giving the kernel direction of a combination."""
    field = net.field
    entries = _linear_entries(net)
    zero = MPoly.zero(field, 3)
    one = MPoly.constant(field, 3, field.one)
    return sub_pfaffians_6(entries, zero, one)


def _proj_reps_array(q: int, n: int):
    import numpy as np

    blocks = []
    for lead in range(n):
        free = n - lead - 1
        if free == 0:
            block = np.zeros((1, n), dtype=np.int64)
            block[0, lead] = 1
        else:
            grids = np.indices((q,) * free).reshape(free, -1).T
            block = np.zeros((len(grids), n), dtype=np.int64)
            block[:, lead] = 1
            block[:, lead + 1 :] = grids
        blocks.append(block)
    return np.vstack(blocks)


class ScrollCountReport:
    """Exhaustive point counts of the degeneracy locus and its base cubic."""

    __slots__ = (
        "q", "x_count", "c_count", "fibered", "ranks_all_four", "fibers_disjoint",
    )

    def __init__(self, q, x_count, c_count, fibered, ranks_all_four, fibers_disjoint):
        self.q = q
        self.x_count = x_count
        self.c_count = c_count
        self.fibered = fibered
        self.ranks_all_four = ranks_all_four
        self.fibers_disjoint = fibers_disjoint

    def __repr__(self):
        return (
            f"ScrollCountReport(q={self.q}, x={self.x_count}, c={self.c_count}, "
            f"fibered={self.fibered})"
        )


def count_scroll_points(net: Net) -> ScrollCountReport:
    """Scan all points of P^5(F_q) for membership and compare with the cubic.

    fibered is the exact statement x_count = (q+1) * c_count; the two reported
    side conditions (every rational cubic point has rank exactly 4, no two
    fibers share a rational point) are what make it the expected outcome.
    """
    import numpy as np

    field = net.field
    if field.order is None:
        raise UnsupportedFieldError("exhaustive counting needs a finite field")
    if field.degree != 1 or field.char > EXHAUSTIVE_PRIME_CAP:
        raise PreconditionError(
            "field too large for exhaustive mode (prime fields up to q = 11)"
        )
    q = field.char
    mats = [
        np.array([[x.v for x in row] for row in M], dtype=np.int64)
        for M in net.matrices
    ]
    reps = _proj_reps_array(q, 6)
    cols = [(reps @ A.T) % q for A in mats]
    stacked = np.stack(cols, axis=2)
    ok = np.ones(len(reps), dtype=bool)
    for a, b, c in itertools.combinations(range(6), 3):
        Ma, Mb, Mc = stacked[:, a, :], stacked[:, b, :], stacked[:, c, :]
        det = (
            Ma[:, 0] * (Mb[:, 1] * Mc[:, 2] - Mb[:, 2] * Mc[:, 1])
            - Ma[:, 1] * (Mb[:, 0] * Mc[:, 2] - Mb[:, 2] * Mc[:, 0])
            + Ma[:, 2] * (Mb[:, 0] * Mc[:, 1] - Mb[:, 1] * Mc[:, 0])
        )
        ok &= det % q == 0
    x_count = int(ok.sum())
    cubic = net_pfaffian_cubic(net)
    cpts = cubic.rational_points()
    c_count = len(cpts)
    ranks = [rank(field, net.combination(pt)) for pt in cpts]
    ranks_all_four = all(r == 4 for r in ranks)
    fibers = [
        scroll_fiber(net, pt) for pt, r in zip(cpts, ranks) if r == 4
    ]
    fibers_disjoint = all(
        meet(a, b).dim == 0 for a, b in itertools.combinations(fibers, 2)
    )
    fibered = x_count == (q + 1) * c_count
    return ScrollCountReport(q, x_count, c_count, fibered, ranks_all_four, fibers_disjoint)


class ProbeTrial:
    """Counts of fiber incidences with one random 3-space, per field level."""

    __slots__ = ("counts", "best", "non_generic", "note")

    def __init__(self, counts, best, non_generic, note):
        self.counts = counts
        self.best = best
        self.non_generic = non_generic
        self.note = note

    def __repr__(self):
        return f"ProbeTrial(counts={self.counts}, non_generic={self.non_generic})"


class DegreeProbeReport:
    __slots__ = ("trials", "max_generic", "attained_six")

    def __init__(self, trials, max_generic, attained_six):
        self.trials = trials
        self.max_generic = max_generic
        self.attained_six = attained_six

    def __repr__(self):
        return f"DegreeProbeReport(max={self.max_generic}, six={self.attained_six})"


def _conic_rational_point(field, M, Q):
    """A base-field point of a smooth conic, by sweeping pencil lines."""
    for a in field.elements():
        # points (1 : a : t)
        c0 = Q.evaluate([field.one, a, field.zero])
        lin = Q.evaluate([field.one, a, field.one]) - c0
        quad = Q.coeff((0, 0, 2))
        lin = lin - quad
        p = Poly(field, [c0, lin, quad])
        if p.is_zero():
            return [field.one, a, field.zero]
        if p.degree >= 1:
            rr = roots(p, allow_extension=False, seed=0)
            if rr.pairs:
                t = rr.pairs[0][0]
                return [field.one, a, t]
    for a in field.elements():
        if Q.evaluate([field.zero, field.one, a]).is_zero():
            return [field.zero, field.one, a]
    if Q.evaluate([field.zero, field.zero, field.one]).is_zero():
        return [field.zero, field.zero, field.one]
    raise InconsistencyError("a plane conic over a finite field lost all its points")


def _stereographic_sextic(field, cubic: PlaneCubic, M, p):
    """Pull the cubic back through the stereographic map of the conic from p."""
    a, b = _other_indices(_pivot(p))
    pM = [sum((p[i] * M[i][j] for i in range(3)), start=field.zero) for j in range(3)]
    ua, ub = pM[a], pM[b]
    al = MPoly.variable(field, 2, 0)
    be = MPoly.variable(field, 2, 1)
    two = field.one + field.one
    waw = (
        al * al * MPoly.constant(field, 2, M[a][a])
        + al * be * MPoly.constant(field, 2, two * M[a][b])
        + be * be * MPoly.constant(field, 2, M[b][b])
    )
    pMw = al * MPoly.constant(field, 2, ua) + be * MPoly.constant(field, 2, ub)
    X = []
    for i in range(3):
        comp = waw * MPoly.constant(field, 2, p[i])
        if i == a:
            comp = comp - pMw * al * MPoly.constant(field, 2, two)
        elif i == b:
            comp = comp - pMw * be * MPoly.constant(field, 2, two)
        X.append(comp)
    B = cubic.as_mpoly().substitute(X)

    def param_point(alpha, beta):
        w = [field.zero] * 3
        w[a] = alpha
        w[b] = beta
        s1 = _bilinear(M, w, w)
        s2 = _bilinear(M, p, w)
        return [s1 * p[i] - two * s2 * w[i] for i in range(3)]

    return B, param_point


def _count_levels(facs, drop):
    """Distinct projective roots per extension level, from factor degrees."""
    n = {1: 0, 2: 0, 3: 0}
    seen = set()
    rational = []
    for fac, _mult in facs:
        key = tuple(fac.c)
        if key in seen:
            continue
        seen.add(key)
        d = fac.degree
        if d in n:
            n[d] += 1
        if d == 1:
            rational.append(-fac.c[0] / fac.c[1])
    counts = {}
    base = n[1] + (1 if drop > 0 else 0)
    counts[1] = base
    counts[2] = base + 2 * n[2]
    counts[3] = base + 3 * n[3]
    return counts, rational


def probe_section(net: Net, f, g, cubic=None, sforms=None, seed: int = 0) -> ProbeTrial:
    """Count scroll points on the 3-space {f = g = 0} over F_q, F_{q^2}, F_{q^3}.

    The 3-space meets a fiber exactly when the incidence quadric built from
    f wedge g and the kernel-direction forms vanishes, so the count reduces
    to conic-meets-cubic in the net plane; a rational conic point turns the
    intersection into a binary sextic whose factor degrees give the counts
    at every level at once.
    """
    field = net.field
    if cubic is None:
        cubic = net_pfaffian_cubic(net)
    if sforms is None:
        sforms = sub_pfaffian_forms(net)
    q = field.order
    f = [x if hasattr(x, "field") else field(x) for x in f]
    g = [x if hasattr(x, "field") else field(x) for x in g]
    if rank(field, [f, g]) != 2:
        raise PreconditionError("the section needs two independent linear forms")
    wdual = [f[i] * g[j] - f[j] * g[i] for i, j in PAIRS]
    Q = MPoly.zero(field, 3)
    for w, s in zip(wdual, sforms):
        if not w.is_zero():
            Q = Q + s * MPoly.constant(field, 3, w)
    if Q.is_zero():
        return ProbeTrial(None, None, True, "incidence-quadric-vanished")
    conic = tuple(Q.coeff(e) for e in CONIC_MONOMIALS)
    M = _conic_matrix(field, conic)
    if rank(field, M) < 3:
        return ProbeTrial(None, None, True, "degenerate-conic")
    p = _conic_rational_point(field, M, Q)
    B, param_point = _stereographic_sextic(field, cubic, M, p)
    puni, drop = binary_form_to_poly(B, 0, 1)
    if puni.is_zero():
        raise InconsistencyError("the conic pullback of the cubic vanished")
    facs = factor(puni, seed=seed) if puni.degree >= 1 else []
    counts, rational = _count_levels(facs, drop)
    non_generic = False
    note = None
    params = [(field.one, r) for r in rational]
    if drop > 0:
        params.append((field.zero, field.one))
    for alpha, beta in params:
        lam = param_point(alpha, beta)
        kern = kernel(field, net.combination(lam))
        if len(kern) != 2:
            non_generic = True
            note = "rank-2-member"
            continue
        fib = Subspace(field, 6, kern)
        inside = all(
            sum((c * x for c, x in zip(cov, vec)), start=field.zero).is_zero()
            for cov in (f, g)
            for vec in fib.rows
        )
        if inside:
            non_generic = True
            note = "contains-fiber"
            for e in counts:
                counts[e] += q ** e
    best = max(counts.values())
    return ProbeTrial((counts[1], counts[2], counts[3]), best, non_generic, note)


def degree_probe(net: Net, trials: int = 20, seed: int = 0) -> DegreeProbeReport:
    """Count fiber incidences with random 3-spaces over F_q, F_{q^2}, F_{q^3}.

    Each trial intersects the scroll with a random codimension-2 subspace;
    the counts stabilize at the geometric degree on generic trials.  Trials
    whose 3-space contains a whole fiber (or degenerates) are flagged, with
    the line's worth of points folded into the count.
    """
    field = net.field
    if field.order is None:
        raise UnsupportedFieldError("the probe counts points over finite fields")
    cubic = net_pfaffian_cubic(net)
    if not cubic.smoothness(seed=seed).smooth:
        raise PreconditionError("the probe needs a smooth Pfaffian cubic")
    sforms = sub_pfaffian_forms(net)
    rng = random.Random(seed)
    out = []
    for _ in range(trials):
        while True:
            f = [field.random(rng) for _ in range(6)]
            g = [field.random(rng) for _ in range(6)]
            if rank(field, [f, g]) == 2:
                break
        out.append(probe_section(net, f, g, cubic=cubic, sforms=sforms, seed=seed))
    generic = [t.best for t in out if not t.non_generic and t.best is not None]
    max_generic = max(generic) if generic else None
    return DegreeProbeReport(out, max_generic, max_generic == 6)


class DirectrixReport:
    """Unisecant planes of the scroll, with the fibers used to find them."""

    __slots__ = ("planes", "fibers", "infinite_family", "witness")

    def __init__(self, planes, fibers, infinite_family, witness):
        self.planes = planes
        self.fibers = fibers
        self.infinite_family = infinite_family
        self.witness = witness

    def __repr__(self):
        return f"DirectrixReport({len(self.planes)} planes)"


def _fiber_triple(net: Net, cubic: PlaneCubic):
    """Three pairwise-disjoint rational line fibers."""
    field = net.field
    picked = []
    for pt in cubic.rational_points():
        kern = kernel(field, net.combination(pt))
        if len(kern) != 2:
            continue
        fib = Subspace(field, 6, kern)
        if all(meet(fib, other).dim == 0 for other in picked):
            picked.append(fib)
        if len(picked) == 3:
            return picked
    raise DegenerateInputError(
        "needs three pairwise-disjoint rational fibers; the field is too small "
        "or the net too degenerate"
    )


def _isotropic_solutions(field, mats, p1, fib):
    """Points p of the fiber with A_k(p1, p) = 0 for all k; None means all of them."""
    u, v = fib.rows
    Srows = [
        [_form_value(field, A, p1, u), _form_value(field, A, p1, v)] for A in mats
    ]
    kern = kernel(field, Srows)
    if len(kern) == 0:
        return []
    if len(kern) == 2:
        return None
    a, b = kern[0]
    return [[a * x + b * y for x, y in zip(u, v)]]


def _plane_is_isotropic(field, mats, basis):
    for x, y in itertools.combinations(basis, 2):
        for A in mats:
            if not _form_value(field, A, x, y).is_zero():
                return False
    return True


def _verify_plane_lines(net: Net, plane: Subspace, rng, samples=20):
    """Sampled lines inside the plane must belong to every generator."""
    field = net.field
    done = 0
    while done < samples:
        u = [field.zero] * 6
        v = [field.zero] * 6
        for row in plane.rows:
            cu = field.random(rng)
            cv = field.random(rng)
            u = [x + cu * y for x, y in zip(u, row)]
            v = [x + cv * y for x, y in zip(v, row)]
        if all(x.is_zero() for x in u) or all(x.is_zero() for x in v):
            continue
        if rank(field, [u, v]) != 2:
            continue
        line = line_through(field, u, v)
        if not all(g.contains_line(line) for g in net.generators):
            return False
        done += 1
    return True


def directrix_planes(net: Net, seed: int = 0) -> DirectrixReport:
    """All planes whose lines belong to every complex of the net.

    Candidates are generated from one point on each of three disjoint fibers,
    with the bilinear isotropy system solved fiber by fiber; every plane is
    re-verified on 20 sampled lines.  A solution pencil (instead of a point)
    on some fiber raises the infinite-family flag with its witness.
    """
    field = net.field
    if field.order is None:
        raise UnsupportedFieldError("the plane search enumerates a finite field")
    cubic = net_pfaffian_cubic(net)
    f1, f2, f3 = _fiber_triple(net, cubic)
    mats = net.matrices
    rng = random.Random(seed)
    planes = []
    infinite = False
    witness = None

    def consider(p1, p2, p3):
        nonlocal infinite, witness
        for A in mats:
            if not _form_value(field, A, p2, p3).is_zero():
                return
        W = Subspace(field, 6, [p1, p2, p3])
        if W.dim == 3:
            if not _plane_is_isotropic(field, mats, W.rows):
                return
            if W not in planes:
                if not _verify_plane_lines(net, W, rng):
                    raise InconsistencyError(
                        "candidate plane failed the sampled-line verification"
                    )
                planes.append(W)
            return
        # collapsed span: complete the line to isotropic planes through it
        rows = [mat_vec(A, p) for A in mats for p in (p1, p2)]
        N = kernel(field, rows)
        if len(N) < 3:
            return
        NS = Subspace(field, 6, N)
        L = Subspace(field, 6, [p1, p2])
        if L.dim != 2:
            return
        for x in subspace_points(NS):
            X = Subspace(field, 6, [x])
            if meet(L, X).dim != 0:
                continue
            W2 = join(L, X)
            if W2.dim != 3 or not _plane_is_isotropic(field, mats, W2.rows):
                continue
            if W2 not in planes:
                if not _verify_plane_lines(net, W2, rng):
                    raise InconsistencyError(
                        "candidate plane failed the sampled-line verification"
                    )
                planes.append(W2)

    for p1 in subspace_points(f1):
        sol2 = _isotropic_solutions(field, mats, p1, f2)
        sol3 = _isotropic_solutions(field, mats, p1, f3)
        if sol2 is None or sol3 is None:
            infinite = True
            witness = (tuple(p1), f2 if sol2 is None else f3)
            sol2 = list(subspace_points(f2)) if sol2 is None else sol2
            sol3 = list(subspace_points(f3)) if sol3 is None else sol3
        for p2 in sol2:
            for p3 in sol3:
                consider(p1, p2, p3)
    if len(planes) > 6:
        infinite = True
    return DirectrixReport(planes, [f1, f2, f3], infinite, witness)


class RestrictedFiberReport:
    """The fiber complexes containing all lines of the given planes."""

    __slots__ = ("dim", "basis", "lines_sampled", "any_member_contains_all")

    def __init__(self, dim, basis, lines_sampled, any_member_contains_all):
        self.dim = dim
        self.basis = basis
        self.lines_sampled = lines_sampled
        self.any_member_contains_all = any_member_contains_all

    def __repr__(self):
        return f"RestrictedFiberReport(dim={self.dim})"


def _fiber_parameter(net: Net, k: Subspace):
    """The net parameter whose kernel is the given line, or None."""
    field = net.field
    if k.n != 6 or k.dim != 2:
        raise PreconditionError("expected a line in P^5")
    rows = []
    for vec in k.rows:
        cols = [mat_vec(A, vec) for A in net.matrices]
        for i in range(6):
            rows.append([col[i] for col in cols])
    lam = kernel(field, rows)
    if len(lam) != 1:
        return None
    kern = kernel(field, net.combination(lam[0]))
    if len(kern) != 2 or Subspace(field, 6, kern) != k:
        return None
    return lam[0]


def restricted_fiber_dim(
    net: Net, k: Subspace, planes, samples: int = 50, seed: int = 0
) -> RestrictedFiberReport:
    """Dimension of the special-fiber complexes whose lines cover the planes.

    Also samples other scroll lines and reports whether a single member of
    the restricted system contains all of them.
    """
    field = net.field
    lam = _fiber_parameter(net, k)
    if lam is None:
        raise PreconditionError("the line is not a fiber of the net's scroll")
    fiber15 = special_fiber(field, k)
    conds = []
    for plane in planes:
        if plane.dim != 3:
            raise PreconditionError("directrix input must be a plane")
        for x, y in itertools.combinations(plane.rows, 2):
            conds.append([x[i] * y[j] - x[j] * y[i] for i, j in PAIRS])
    basis = fiber15.rows
    if conds:
        M = [
            [sum((c[t] * b[t] for t in range(15)), start=field.zero) for b in basis]
            for c in conds
        ]
        sols = kernel(field, M)
    else:
        sols = [[field.one if i == j else field.zero for j in range(len(basis))]
                for i in range(len(basis))]
    restricted = [
        [sum((c[i] * basis[i][t] for i in range(len(basis))), start=field.zero)
         for t in range(15)]
        for c in sols
    ]
    dim = len(restricted) - 1
    cubic = net_pfaffian_cubic(net)
    sampled = []
    for pt in cubic.rational_points():
        if len(sampled) >= samples:
            break
        kern = kernel(field, net.combination(pt))
        if len(kern) != 2:
            continue
        fib = Subspace(field, 6, kern)
        if fib == k:
            continue
        sampled.append(pluecker_of_line(fib))
    contains_all = False
    if restricted and sampled:
        P = [
            [sum((p[t] * r[t] for t in range(15)), start=field.zero) for r in restricted]
            for p in sampled
        ]
        contains_all = len(kernel(field, P)) > 0
    return RestrictedFiberReport(dim, restricted, len(sampled), contains_all)


class NetTypeReport:
    """Whether the net's plane meets the rank-2 locus, with a witness."""

    __slots__ = (
        "kind", "witness_kind", "witness", "generator_index", "field",
        "embedding", "caveat",
    )

    def __init__(self, kind, witness_kind=None, witness=None, generator_index=None,
                 field=None, embedding=None, caveat=None):
        self.kind = kind
        self.witness_kind = witness_kind
        self.witness = witness
        self.generator_index = generator_index
        self.field = field
        self.embedding = embedding
        self.caveat = caveat

    def __repr__(self):
        return f"NetTypeReport({self.kind})"


def net_type(net: Net, seed: int = 0) -> NetTypeReport:
    """Classify the net by the rank of its worst member.

    general means no point of the net plane drops to rank 2; the decision is
    exact, by eliminating the cubic together with all 15 kernel quadrics.
    """
    field = net.field
    for idx, g in enumerate(net.generators):
        if g.rank() <= 2:
            lam = tuple(
                field.one if t == idx else field.zero for t in range(3)
            )
            return NetTypeReport(
                "contains-second-type", witness_kind="generator", witness=lam,
                generator_index=idx, field=field,
            )
    forms = [f for f in sub_pfaffian_forms(net) if not f.is_zero()]
    try:
        cubic_form = net_pfaffian_cubic(net).as_mpoly()
        forms = [cubic_form] + forms
    except DegenerateInputError:
        pass
    if not forms:
        raise InconsistencyError("independent net with no rank conditions")
    search = common_projective_zero(field, forms, seed=seed, want_witness=True)
    if search.found:
        return NetTypeReport(
            "contains-second-type", witness_kind="elimination",
            witness=search.point, field=search.point_field,
            embedding=search.embedding, caveat=search.caveat,
        )
    return NetTypeReport("general", field=field)


class Type2LocusReport:
    """Pointwise verification that the singular 3-space joins the locus."""

    __slots__ = (
        "three_space", "checked", "all_member", "off_checked", "off_failures",
    )

    def __init__(self, three_space, checked, all_member, off_checked, off_failures):
        self.three_space = three_space
        self.checked = checked
        self.all_member = all_member
        self.off_checked = off_checked
        self.off_failures = off_failures

    def __repr__(self):
        return f"Type2LocusReport(all_member={self.all_member})"


def type2_singular_locus_check(
    net: Net, witness: LinearComplex, off_samples: int = 50, seed: int = 0
) -> Type2LocusReport:
    """Check that the witness's singular 3-space lies inside the locus.

    Every rational point of the 3-space must pass x_membership (exhaustively
    for q <= 11, by 200 samples otherwise), while random points off the
    3-space and off the rational fibers are expected to fail it.
    """
    field = net.field
    if field.order is None:
        raise UnsupportedFieldError("the locus check enumerates a finite field")
    if witness.rank() > 2 or witness.is_zero():
        raise PreconditionError("the witness is not a second-type complex")
    span = [list(g.coeffs()) for g in net.generators]
    if rank(field, span + [list(witness.coeffs())]) != 3:
        raise PreconditionError("the witness does not belong to the net")
    three = witness.kernel_space()
    if three.proj_dim != 3:
        raise InconsistencyError("rank-2 complex with singular space not a 3-space")
    rng = random.Random(seed)
    morph = net.morphism()
    if field.char <= EXHAUSTIVE_PRIME_CAP and field.degree == 1:
        pts = list(subspace_points(three))
    else:
        pts = []
        for _ in range(200):
            vec = [field.zero] * 6
            for row in three.rows:
                c = field.random(rng)
                vec = [x + c * y for x, y in zip(vec, row)]
            if any(not x.is_zero() for x in vec):
                pts.append(vec)
    all_member = all(x_membership(morph, pt) for pt in pts)
    cubic = net_pfaffian_cubic(net)
    fibers = []
    for pt in cubic.rational_points():
        kern = kernel(field, net.combination(pt))
        if len(kern) == 2:
            fibers.append(Subspace(field, 6, kern))
        if len(fibers) >= 60:
            break
    off_failures = 0
    off_checked = 0
    while off_checked < off_samples:
        vec = [field.random(rng) for _ in range(6)]
        if all(x.is_zero() for x in vec):
            continue
        if three.contains_vector(vec):
            continue
        pt_space = Subspace(field, 6, [vec])
        if any(meet(f, pt_space).dim == 1 for f in fibers):
            continue
        off_checked += 1
        if not x_membership(morph, vec):
            off_failures += 1
    return Type2LocusReport(three, len(pts), all_member, off_checked, off_failures)
