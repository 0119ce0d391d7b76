"""Projective plane geometry over an exact field.

Points, lines and conics are stored in canonical projective scale (first
nonzero coordinate equal to one) so equality and hashing are structural.
Conics carry their six coefficients in the fixed monomial order
x^2, y^2, z^2, xy, xz, yz; in odd characteristic the symmetric matrix with
halved mixed entries is available for tangents, polars and smoothness.

Conic-conic intersection multiplicities are computed by pulling one conic
back along a degree-1 parametrization of the other, which reduces everything
to the multiplicity structure of a binary quartic and stays exact in every
characteristic other than two.
"""

import random

from .errors import DegenerateInputError, FieldMismatchError, NeedsHintError, NotOnConicError
from .fields import FieldElement, RationalField, QuadRationalField
from .poly import Polynomial, binary_form_roots, squarefree_decomposition


def _canon_coords(field, coords):
    coords = [field(c) for c in coords]
    pivot = next((c for c in coords if not c.is_zero()), None)
    if pivot is None:
        raise ValueError("all coordinates are zero")
    inv = pivot.inv()
    return tuple(c * inv for c in coords)


class ProjPoint:
    """A point of P^2 in canonical homogeneous coordinates."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        if len(coords) != 3:
            raise ValueError("a projective point needs three coordinates")
        self.field = field
        self.coords = _canon_coords(field, coords)

    def lift(self, new_field):
        return ProjPoint(new_field, [new_field(c) for c in self.coords])

    def sort_key(self):
        return tuple(c.sort_key() for c in self.coords)

    def __eq__(self, other):
        return (isinstance(other, ProjPoint) and self.field == other.field
                and self.coords == other.coords)

    def __hash__(self):
        return hash((self.field, self.coords))

    def __repr__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"


class ProjLine:
    """The line l0*x + l1*y + l2*z = 0, canonicalized like a point."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        if len(coeffs) != 3:
            raise ValueError("a projective line needs three coefficients")
        self.field = field
        self.coeffs = _canon_coords(field, coeffs)

    def contains(self, p):
        return sum((c * x for c, x in zip(self.coeffs, p.coords)),
                   start=self.field.zero).is_zero()

    def lift(self, new_field):
        return ProjLine(new_field, [new_field(c) for c in self.coeffs])

    def span(self):
        """Two distinct points spanning the line."""
        field = self.field
        pts = []
        for k in range(3):
            e = [field.zero] * 3
            e[k] = field.one
            v = _cross(self.coeffs, e)
            if any(not c.is_zero() for c in v):
                p = ProjPoint(field, v)
                if p not in pts:
                    pts.append(p)
            if len(pts) == 2:
                return pts[0], pts[1]
        raise DegenerateInputError("line has no two distinct points")  # unreachable

    def __eq__(self, other):
        return (isinstance(other, ProjLine) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, "line", self.coeffs))

    def __repr__(self):
        return "{" + ":".join(str(c) for c in self.coeffs) + "}"


def _cross(u, v):
    return [u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0]]


class Conic:
    """A plane conic given by six coefficients of
    a00 x^2 + a11 y^2 + a22 z^2 + a01 xy + a02 xz + a12 yz."""

    __slots__ = ("field", "coeffs", "_matrix")

    def __init__(self, field, coeffs):
        if len(coeffs) != 6:
            raise ValueError("a conic needs six coefficients")
        self.field = field
        self.coeffs = self._canon6(field, coeffs)
        self._matrix = None

    @staticmethod
    def _canon6(field, coeffs):
        coeffs = [field(c) for c in coeffs]
        pivot = next((c for c in coeffs if not c.is_zero()), None)
        if pivot is None:
            raise ValueError("zero quadratic form is not a conic")
        inv = pivot.inv()
        return tuple(c * inv for c in coeffs)

    def evaluate(self, coords):
        a00, a11, a22, a01, a02, a12 = self.coeffs
        x, y, z = coords
        return (a00 * x * x + a11 * y * y + a22 * z * z
                + a01 * x * y + a02 * x * z + a12 * y * z)

    def contains(self, p):
        return self.evaluate(p.coords).is_zero()

    def gradient(self, coords):
        """Formal gradient of the six-coefficient form; valid in any char."""
        a00, a11, a22, a01, a02, a12 = self.coeffs
        x, y, z = coords
        return [2 * a00 * x + a01 * y + a02 * z,
                2 * a11 * y + a01 * x + a12 * z,
                2 * a22 * z + a02 * x + a12 * y]

    def matrix(self):
        """Symmetric matrix A with F(v) = v^T A v; odd characteristic only."""
        if self._matrix is not None:
            return self._matrix
        if self.field.char == 2:
            raise ValueError("no symmetric matrix in characteristic two")
        a00, a11, a22, a01, a02, a12 = self.coeffs
        two_inv = self.field(2).inv()
        h01, h02, h12 = a01 * two_inv, a02 * two_inv, a12 * two_inv
        self._matrix = [[a00, h01, h02], [h01, a11, h12], [h02, h12, a22]]
        return self._matrix

    def is_smooth(self):
        if self.field.char == 2:
            raise ValueError("use char2 tools for characteristic two")
        return not _det3(self.matrix()).is_zero()

    def bilinear(self, u, v):
        """2 u^T A v without halving: F(u+v) - F(u) - F(v)."""
        s = [a + b for a, b in zip(u, v)]
        return self.evaluate(s) - self.evaluate(u) - self.evaluate(v)

    def lift(self, new_field):
        return Conic(new_field, [new_field(c) for c in self.coeffs])

    def transform_by_matrix(self, n):
        """The conic with form F(N v); i.e. pull back along v -> N v."""
        field = self.field
        # rows of N as linear forms; expand sum a_rs (row_r . v)(row_s . v)
        out = {m: field.zero for m in
               ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))}
        pairs = [((0, 0), self.coeffs[0]), ((1, 1), self.coeffs[1]),
                 ((2, 2), self.coeffs[2]), ((0, 1), self.coeffs[3]),
                 ((0, 2), self.coeffs[4]), ((1, 2), self.coeffs[5])]
        for (r, s), a in pairs:
            if a.is_zero():
                continue
            for c1 in range(3):
                if n[r][c1].is_zero():
                    continue
                for c2 in range(3):
                    if n[s][c2].is_zero():
                        continue
                    key = (c1, c2) if c1 <= c2 else (c2, c1)
                    out[key] = out[key] + a * n[r][c1] * n[s][c2]
        return Conic(field, [out[(0, 0)], out[(1, 1)], out[(2, 2)],
                             out[(0, 1)], out[(0, 2)], out[(1, 2)]])

    def __eq__(self, other):
        return (isinstance(other, Conic) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, "conic", self.coeffs))

    def __repr__(self):
        return "Conic(" + ", ".join(str(c) for c in self.coeffs) + ")"


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(3)),
                 start=a[0][0].field.zero) for j in range(3)] for i in range(3)]


def _matvec(a, v):
    return [sum((a[i][k] * v[k] for k in range(3)), start=a[0][0].field.zero)
            for i in range(3)]


def _adjugate(m):
    return [[m[1][1] * m[2][2] - m[1][2] * m[2][1],
             m[0][2] * m[2][1] - m[0][1] * m[2][2],
             m[0][1] * m[1][2] - m[0][2] * m[1][1]],
            [m[1][2] * m[2][0] - m[1][0] * m[2][2],
             m[0][0] * m[2][2] - m[0][2] * m[2][0],
             m[0][2] * m[1][0] - m[0][0] * m[1][2]],
            [m[1][0] * m[2][1] - m[1][1] * m[2][0],
             m[0][1] * m[2][0] - m[0][0] * m[2][1],
             m[0][0] * m[1][1] - m[0][1] * m[1][0]]]


class ProjTransform:
    """An invertible change of coordinates, acting on points as column vectors.

    Lines transport by the inverse transpose, conics by substituting the
    inverse map into the quadratic form; incidence is preserved by
    construction.
    """

    __slots__ = ("field", "matrix", "_inverse")

    def __init__(self, field, matrix):
        matrix = [[field(c) for c in row] for row in matrix]
        if _det3(matrix).is_zero():
            raise DegenerateInputError("transform matrix is singular")
        self.field = field
        self.matrix = matrix
        self._inverse = None

    @classmethod
    def identity(cls, field):
        z, o = field.zero, field.one
        return cls(field, [[o, z, z], [z, o, z], [z, z, o]])

    def inverse_matrix(self):
        if self._inverse is None:
            self._inverse = _adjugate(self.matrix)
        return self._inverse

    def inverse(self):
        return ProjTransform(self.field, self.inverse_matrix())

    def compose(self, other):
        """self after other."""
        return ProjTransform(self.field, _matmul(self.matrix, other.matrix))

    def is_identity(self):
        m = self.matrix
        d = m[0][0]
        if d.is_zero():
            return False
        for i in range(3):
            for j in range(3):
                want = d if i == j else self.field.zero
                if m[i][j] != want:
                    return False
        return True

    def __call__(self, obj):
        return apply_transform(self, obj)

    def __repr__(self):
        rows = "; ".join(",".join(str(c) for c in row) for row in self.matrix)
        return f"ProjTransform[{rows}]"


def apply_transform(m, obj):
    """Transport a point, line or conic through the coordinate change."""
    if isinstance(obj, ProjPoint):
        return ProjPoint(m.field, _matvec(m.matrix, list(obj.coords)))
    if isinstance(obj, ProjLine):
        inv = m.inverse_matrix()
        inv_t = [[inv[j][i] for j in range(3)] for i in range(3)]
        return ProjLine(m.field, _matvec(inv_t, list(obj.coeffs)))
    if isinstance(obj, Conic):
        return obj.transform_by_matrix(m.inverse_matrix())
    raise TypeError(f"cannot transform {obj!r}")


def line_through(p, q):
    if p == q:
        raise DegenerateInputError("no unique line through a repeated point")
    return ProjLine(p.field, _cross(list(p.coords), list(q.coords)))


def tangent_at(conic, p):
    """Tangent line of a smooth conic at one of its points (char != 2)."""
    if not conic.contains(p):
        raise NotOnConicError(f"{p!r} is not on the conic")
    grad = conic.gradient(p.coords)
    return ProjLine(conic.field, grad)


def polar(conic, q):
    """Polar line of q; equals the tangent when q is on the conic."""
    if conic.field.char == 2:
        raise ValueError("polars are undefined in characteristic two")
    a = conic.matrix()
    return ProjLine(conic.field, _matvec(a, list(q.coords)))


def intersect_line_conic(conic, line):
    """Intersection points with multiplicities summing to 2; points may lie
    in a quadratic extension (reported in their own field, not lifted)."""
    p0, p1 = line.span()
    alpha = conic.evaluate(p0.coords)
    gamma = conic.evaluate(p1.coords)
    beta = conic.bilinear(p0.coords, p1.coords)
    roots = binary_form_roots(conic.field, [gamma, beta, alpha], 2)
    out = []
    for t, mult in roots.entries:
        # parameter t = s/w for the point s*p0 + w*p1
        coords = [t * a + b for a, b in zip(p0.coords, p1.coords)]
        out.append((ProjPoint(t.field, coords), mult))
    if roots.at_infinity:
        out.append((p0, roots.at_infinity))
    return out


def other_intersection(conic, line, known):
    """The second point of line /\\ conic given one of them, via Vieta; stays
    in the same field, and equals `known` for a tangent line."""
    if not conic.contains(known) or not line.contains(known):
        raise DegenerateInputError("known point must lie on both the line and the conic")
    s0, s1 = line.span()
    other = s1 if s0 == known else s0
    if other == known:
        # span() returned known itself; regenerate a second point
        other = ProjPoint(known.field,
                          [a + b for a, b in zip(s0.coords, s1.coords)])
        if other == known:
            raise DegenerateInputError("could not span the line")
    gamma = conic.evaluate(other.coords)
    beta = conic.bilinear(known.coords, other.coords)
    if beta.is_zero():
        return known
    coords = [-gamma * a + beta * b for a, b in zip(known.coords, other.coords)]
    return ProjPoint(known.field, coords)


def find_point(conic, seed=0, hint=None):
    """A deterministic point of the conic over its own field."""
    field = conic.field
    if hint is not None:
        if not conic.contains(hint):
            raise NotOnConicError("hint does not lie on the conic")
        return hint
    one, zero = field.one, field.zero
    for coords in ([zero, zero, one], [zero, one, zero], [one, zero, zero],
                   [one, one, one], [one, one, zero], [one, zero, one],
                   [zero, one, one]):
        if conic.evaluate(coords).is_zero():
            return ProjPoint(field, coords)
    if field.size is not None:
        rng = random.Random(seed)
        elems = list(field.elements())
        while True:
            y, z = rng.choice(elems), rng.choice(elems)
            if y.is_zero() and z.is_zero():
                continue
            p = _solve_on_line(conic, y, z)
            if p is not None:
                return p
    # characteristic 0: bounded search over small rationals
    from fractions import Fraction
    candidates = [field(Fraction(n, d)) for d in (1, 2, 3, 4)
                  for n in range(-12, 13)]
    for y in candidates:
        p = _solve_on_line(conic, y, field.one)
        if p is not None:
            return p
    raise NeedsHintError("no small rational point found; pass a hint")


def _solve_on_line(conic, y, z):
    """A conic point of the form [x : y : z] with the given y, z, if the
    resulting quadratic in x has an in-field root."""
    field = conic.field
    a00, a11, a22, a01, a02, a12 = conic.coeffs
    a = a00
    b = a01 * y + a02 * z
    c = a11 * y * y + a22 * z * z + a12 * y * z
    if a.is_zero():
        if b.is_zero():
            return None
        return ProjPoint(field, [-c / b, y, z])
    disc = b * b - 4 * a * c
    s = disc.sqrt()
    if s is None:
        return None
    return ProjPoint(field, [(-b + s) / (2 * a), y, z])


class P1Point:
    """A point of P^1 as (a : b) with affine value a/b; infinity is (1 : 0)."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        a, b = coords
        a, b = field(a), field(b)
        if a.is_zero() and b.is_zero():
            raise ValueError("both coordinates are zero")
        pivot = (a if not a.is_zero() else b).inv()
        self.field = field
        self.coords = (a * pivot, b * pivot)

    @classmethod
    def infinity(cls, field):
        return cls(field, (field.one, field.zero))

    @classmethod
    def affine(cls, value):
        return cls(value.field, (value, value.field.one))

    def is_infinity(self):
        return self.coords[1].is_zero()

    def value(self):
        if self.is_infinity():
            raise ZeroDivisionError("point at infinity has no affine value")
        return self.coords[0] / self.coords[1]

    def lift(self, new_field):
        return P1Point(new_field, (new_field(self.coords[0]),
                                   new_field(self.coords[1])))

    def sort_key(self):
        return (self.coords[0].sort_key(), self.coords[1].sort_key())

    def __eq__(self, other):
        return (isinstance(other, P1Point) and self.field == other.field
                and self.coords == other.coords)

    def __hash__(self):
        return hash((self.field, "p1", self.coords))

    def __repr__(self):
        return f"({self.coords[0]}:{self.coords[1]})"


class ConicParametrization:
    """Degree-1 parametrization of a smooth conic by the pencil of lines
    through a base point: three binary quadratic forms q_r(a, b), stored as
    affine coefficient triples c[r][j] of u^j with u = a/b."""

    __slots__ = ("conic", "base", "c", "span_idx", "axis")

    def __init__(self, conic, base):
        if not conic.contains(base):
            raise NotOnConicError("base point must lie on the conic")
        field = conic.field
        # cut the pencil with the coordinate line x_k = 0 missing the base
        k = max(i for i in range(3) if not base.coords[i].is_zero())
        i, j = [r for r in range(3) if r != k]
        e_i = [field.one if r == i else field.zero for r in range(3)]
        e_j = [field.one if r == j else field.zero for r in range(3)]
        # F(m(u)) for m(u) = e_i + u e_j, and the linear form grad(base).m(u)
        f0 = conic.evaluate(e_i)
        f1 = conic.bilinear(e_i, e_j)
        f2 = conic.evaluate(e_j)
        grad = conic.gradient(base.coords)
        g0, g1 = grad[i], grad[j]
        c = [[field.zero] * 3 for _ in range(3)]
        for r in range(3):
            # base_r * F(m(u)) - m_r(u) * (grad . m(u))
            c[r][0] = base.coords[r] * f0
            c[r][1] = base.coords[r] * f1
            c[r][2] = base.coords[r] * f2
        c[i][0] = c[i][0] - g0
        c[i][1] = c[i][1] - g1
        c[j][1] = c[j][1] - g0
        c[j][2] = c[j][2] - g1
        self.conic = conic
        self.base = base
        self.c = c
        self.span_idx = (i, j)
        self.axis = k

    def point_at(self, p1):
        """The conic point with parameter p1; exact in any tower extension."""
        a, b = p1.coords
        field = p1.field
        coords = [field(self.c[r][0]) * b * b + field(self.c[r][1]) * a * b
                  + field(self.c[r][2]) * a * a for r in range(3)]
        return ProjPoint(field, coords)

    def param_of(self, point):
        """Inverse map: the parameter of a conic point (possibly in a tower
        extension of the conic's field)."""
        field = point.field
        base = self.base if field == self.conic.field else self.base.lift(field)
        if point == base:
            line = tangent_at(self.conic, self.base)
            if field != self.conic.field:
                line = line.lift(field)
        else:
            line = line_through(base, point)
        axis = [field.one if r == self.axis else field.zero for r in range(3)]
        x = _cross(list(line.coeffs), axis)
        i, j = self.span_idx
        return P1Point(field, (x[j], x[i]))

    def lift(self, new_field):
        return ConicParametrization(self.conic.lift(new_field),
                                    self.base.lift(new_field))

    def forms(self):
        """The three coefficient triples (low-to-high in the affine parameter)."""
        return [list(row) for row in self.c]


def parametrize(conic, base):
    if conic.field.char == 2:
        raise ValueError("parametrization uses polars; characteristic != 2")
    if not conic.is_smooth():
        raise DegenerateInputError("conic is singular")
    return ConicParametrization(conic, base)


def pullback_quartic(conic, par):
    """Coefficients (low-to-high, length 5) of the binary quartic
    F_conic(par(u)) in the affine parameter u."""
    field = conic.field
    rows = par.c
    out = [field.zero] * 5

    def addprod(a, p, q):
        if a.is_zero():
            return
        for d1 in range(3):
            if p[d1].is_zero():
                continue
            for d2 in range(3):
                if q[d2].is_zero():
                    continue
                out[d1 + d2] = out[d1 + d2] + a * p[d1] * q[d2]

    a00, a11, a22, a01, a02, a12 = conic.coeffs
    addprod(a00, rows[0], rows[0])
    addprod(a11, rows[1], rows[1])
    addprod(a22, rows[2], rows[2])
    addprod(a01, rows[0], rows[1])
    addprod(a02, rows[0], rows[2])
    addprod(a12, rows[1], rows[2])
    return out


def _check_pair(c, d):
    if c.field != d.field:
        raise FieldMismatchError("conics over different fields")
    if c == d:
        raise DegenerateInputError("conics must be distinct")
    if not (c.is_smooth() and d.is_smooth()):
        raise DegenerateInputError("both conics must be smooth")


def intersect_conics(c, d, seed=0):
    """All intersection points with multiplicities summing to 4 (Bezout);
    points may live in tower extensions of degree up to 4."""
    _check_pair(c, d)
    par = parametrize(d, find_point(d, seed))
    quartic = pullback_quartic(c, par)
    roots = binary_form_roots(c.field, quartic, 4, max_total_extension_degree=4,
                              seed=seed)
    out = []
    for t, mult in roots.entries:
        pt = par.point_at(P1Point.affine(t))
        out.append((pt, mult))
    if roots.at_infinity:
        out.append((par.point_at(P1Point.infinity(c.field)), roots.at_infinity))
    assert sum(m for _, m in out) == 4
    return out


def _pullback(c, d, seed):
    par = parametrize(d, find_point(d, seed))
    return par, Polynomial(c.field, pullback_quartic(c, par))


def multiplicity_structure(c, d, seed=0):
    """The sorted multiset of intersection multiplicities, computed from the
    squarefree structure of the pullback quartic -- no root finding, so it
    works over Q even when the points are far outside the tower."""
    _check_pair(c, d)
    _, f = _pullback(c, d, seed)
    mults = []
    at_inf = 4 - f.degree
    if at_inf:
        mults.append(at_inf)
    for part, m in squarefree_decomposition(f):
        mults.extend([m] * part.degree)
    return tuple(sorted(mults, reverse=True))


def tangency_points(c, d, seed=0):
    """The intersection points of multiplicity >= 2 (where the conics share
    a tangent line); points may lie in a quadratic extension.

    Only the repeated part of the pullback quartic is solved, so this works
    over Q even when the simple intersection points do not."""
    _check_pair(c, d)
    par, f = _pullback(c, d, seed)
    pts = []
    if 4 - f.degree >= 2:
        pts.append(par.point_at(P1Point.infinity(c.field)))
    for part, m in squarefree_decomposition(f):
        if m < 2:
            continue
        from .poly import roots_in_closure
        for t, _ in roots_in_closure(part, max_total_extension_degree=2).entries:
            pts.append(par.point_at(P1Point.affine(t)))
    return pts


class NormalizedPair:
    """Result of putting a tangent pair into the form
    C: x^2 + t xy + a y^2 - b yz,  D: x^2 - yz, with the transform used."""

    __slots__ = ("t", "a", "b", "delta", "transform")

    def __init__(self, t, a, b, transform):
        self.t = t
        self.a = a
        self.b = b
        self.delta = t * t - 4 * a * (1 - b)
        self.transform = transform

    def conics(self):
        field = self.t.field
        c = normal_form_conic(self.t, self.a, self.b)
        d = Conic(field, [1, 0, 0, 0, 0, -1])
        return c, d

    def __repr__(self):
        return f"NormalizedPair(t={self.t}, a={self.a}, b={self.b}, delta={self.delta})"


def normal_form_conic(t, a, b):
    """x^2 + t xy + a y^2 - b yz over the field of the parameters."""
    field = t.field
    return Conic(field, [field.one, a, field.zero, t, field.zero, -b])


def normalize_tangent_pair(c, d, p):
    """Coordinate change putting the pair tangent at p into normal form."""
    _check_pair(c, d)
    field = c.field
    if not (c.contains(p) and d.contains(p)):
        raise DegenerateInputError("p must be a common point of both conics")
    tc, td = tangent_at(c, p), tangent_at(d, p)
    if tc != td:
        raise DegenerateInputError("conics are not tangent at p")
    # first change: p -> [0:0:1], common tangent -> {y = 0}
    s0, s1 = tc.span()
    e1 = s0 if s0 != p else s1
    e2 = None
    for k in range(3):
        e = [field.one if r == k else field.zero for r in range(3)]
        if not sum((tc.coeffs[i] * e[i] for i in range(3)),
                   start=field.zero).is_zero():
            e2 = e
            break
    cols = [list(e1.coords), e2, list(p.coords)]
    basis = [[cols[j][i] for j in range(3)] for i in range(3)]
    m1 = ProjTransform(field, basis).inverse()
    d1 = apply_transform(m1, d)
    # By the tangent-pair lemma the transformed D reads
    # x^2 + t2 xy + a2 y^2 - b2 yz (z^2 and xz coefficients vanish).
    a00, a11, a22, a01, a02, a12 = d1.coeffs
    assert a22.is_zero() and a02.is_zero() and not a00.is_zero()
    t2, a2, b2 = a01, a11, -a12
    two_inv = field(2).inv()
    z, o = field.zero, field.one
    m2 = ProjTransform(field, [
        [o, t2 * two_inv, z],
        [z, o, z],
        [z, -a2 + t2 * t2 * two_inv * two_inv, b2]])
    m = m2.compose(m1)
    c_new = apply_transform(m, c)
    d_new = apply_transform(m, d)
    assert d_new == Conic(field, [1, 0, 0, 0, 0, -1]), d_new
    a00, a11, a22, a01, a02, a12 = c_new.coeffs
    assert a00 == field.one and a22.is_zero() and a02.is_zero()
    t_, a_, b_ = a01, a11, -a12
    if b_.is_zero():
        raise DegenerateInputError("normalized pair has b = 0; conic is singular")
    return NormalizedPair(t_, a_, b_, m)


def classify_normalized(t, a, b):
    """Intersection type from the tangent-pair normal form parameters."""
    field = t.field
    delta = t * t - 4 * a * (1 - b)
    if b != field.one:
        return (2, 1, 1) if not delta.is_zero() else (2, 2)
    if not t.is_zero():
        return (3, 1)
    if not a.is_zero():
        return (4,)
    raise DegenerateInputError("b = 1, t = 0, a = 0 means the conics coincide")


def classify(c, d, seed=0):
    """Intersection type of a pair of smooth conics.

    The multiset of multiplicities comes from the squarefree structure of
    the pullback quartic; when the pair is tangent the result is
    cross-checked against the normal-form criteria.
    """
    mults = multiplicity_structure(c, d, seed)
    if mults[0] >= 2:
        c_l, d_l, pts, _ = tangency_data(c, d, seed)
        norm = normalize_tangent_pair(c_l, d_l, pts[0])
        assert classify_normalized(norm.t, norm.a, norm.b) == mults
    return mults


def tangency_data(c, d, seed=0):
    """Tangency points together with the (possibly lifted) conics that see
    them: returns (c, d, points, lifted) in the smallest usable field."""
    pts = tangency_points(c, d, seed)
    if not pts:
        return c, d, [], False
    big = max((p.field for p in pts), key=lambda f: 0 if f == c.field else 1)
    if big == c.field:
        return c, d, pts, False
    return (c.lift(big), d.lift(big),
            [p.lift(big) if p.field != big else p for p in pts], True)
