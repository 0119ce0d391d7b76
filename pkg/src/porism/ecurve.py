"""The incidence curve of a conic pair as a biquadratic form on P^1 x P^1.

Pulling the tangency condition "c lies on the tangent of D at d" back along
degree-1 parametrizations of C and D gives a bidegree-(2,2) form H(u, v).
Its zero set E carries the whole Poncelet process: the two other-root
involutions sigma (fixing u) and tau (fixing v) compose to the step map
nu = sigma o tau, the singular points of E are exactly the tangency
parameters, and E splits into two bidegree-(1,1) components precisely when
the discriminant of H in v is a square binary quartic in u.
"""

from math import comb

from .errors import DegenerateInputError, FieldMismatchError, NotOnConicError
from .fields import lift_to_quadratic_extension
from .poly import Polynomial, roots_in_closure, squarefree_decomposition, is_square
from .projective import P1Point, ProjPoint, ConicParametrization, find_point, \
    parametrize, normal_form_conic, Conic

SHAPE_SMOOTH = "smooth"
SHAPE_NODE = "node"
SHAPE_CUSP = "cusp"
SHAPE_SPLIT_TRANSVERSAL = "two components, transversal"
SHAPE_SPLIT_DOUBLE = "two components, double contact"


class BiquadraticForm:
    """A bihomogeneous form sum h[i][j] u^i v^j of bidegree (2,2), stored in
    canonical scale (first nonzero coefficient in row-major order is one).
    Library-built instances remember the two parametrizations whose
    incidence condition they encode."""

    __slots__ = ("field", "h", "outer_par", "inner_par")

    def __init__(self, field, h, outer_par=None, inner_par=None):
        if len(h) != 3 or any(len(row) != 3 for row in h):
            raise ValueError("a biquadratic form needs a 3x3 coefficient array")
        rows = [[field(c) for c in row] for row in h]
        pivot = next((c for row in rows for c in row if not c.is_zero()), None)
        if pivot is None:
            raise ValueError("zero form is not a curve")
        inv = pivot.inv()
        self.field = field
        self.h = tuple(tuple(c * inv for c in row) for row in rows)
        self.outer_par = outer_par
        self.inner_par = inner_par

    def evaluate(self, u, v):
        """Value at a pair of P^1 points (well defined up to the canonical
        scale of the arguments)."""
        field = u.field
        um = _monomials(u)
        vm = _monomials(v)
        total = field.zero
        for i in range(3):
            for j in range(3):
                c = self.h[i][j]
                if not c.is_zero():
                    total = total + field(c) * um[i] * vm[j]
        return total

    def contains(self, u, v):
        return self.evaluate(u, v).is_zero()

    def partials(self, u, v):
        """The four bihomogeneous partial derivatives at ((a:b),(c:d)),
        in the order d/da, d/db, d/dc, d/dd."""
        field = u.field
        a, b = u.coords
        c, d = v.coords
        um = _monomials(u)
        vm = _monomials(v)
        dua = (field.zero, b, a + a)   # d/da of (b^2, ab, a^2)
        dub = (b + b, a, field.zero)
        dvc = (field.zero, d, c + c)
        dvd = (d + d, c, field.zero)
        out = [field.zero] * 4
        for i in range(3):
            for j in range(3):
                hij = field(self.h[i][j])
                if hij.is_zero():
                    continue
                out[0] = out[0] + hij * dua[i] * vm[j]
                out[1] = out[1] + hij * dub[i] * vm[j]
                out[2] = out[2] + hij * um[i] * dvc[j]
                out[3] = out[3] + hij * um[i] * dvd[j]
        return tuple(out)

    def is_singular_at(self, u, v):
        """Whether (u, v) is a singular point of the curve.  In odd
        characteristic the Euler relations make vanishing of all four
        partials imply H = 0, so membership need not be checked first."""
        return all(p.is_zero() for p in self.partials(u, v))

    def fiber_in_v(self, u):
        """Coefficients (q0, q1, q2) of the binary quadratic
        sum_j q_j v^j v'^(2-j) cut out on the fiber over u."""
        um = _monomials(u)
        field = u.field
        return tuple(
            field(self.h[0][j]) * um[0] + field(self.h[1][j]) * um[1]
            + field(self.h[2][j]) * um[2] for j in range(3))

    def fiber_in_u(self, v):
        vm = _monomials(v)
        field = v.field
        return tuple(
            field(self.h[i][0]) * vm[0] + field(self.h[i][1]) * vm[1]
            + field(self.h[i][2]) * vm[2] for i in range(3))

    def disc_v_coeffs(self):
        """The discriminant of H in v as a binary quartic in u: five
        coefficients of u^k u'^(4-k), k = 0..4."""
        A = Polynomial(self.field, [self.h[0][2], self.h[1][2], self.h[2][2]])
        B = Polynomial(self.field, [self.h[0][1], self.h[1][1], self.h[2][1]])
        C = Polynomial(self.field, [self.h[0][0], self.h[1][0], self.h[2][0]])
        four = self.field(4)
        disc = B * B - Polynomial(self.field, [four]) * A * C
        coeffs = list(disc.coeffs) + [self.field.zero] * (5 - len(disc.coeffs))
        return coeffs[:5]

    def lift(self, new_field):
        h = [[new_field(c) for c in row] for row in self.h]
        outer = self.outer_par
        inner = self.inner_par
        return BiquadraticForm(new_field, h, outer, inner)

    def __eq__(self, other):
        return (isinstance(other, BiquadraticForm)
                and self.field == other.field and self.h == other.h)

    def __hash__(self):
        return hash((self.field, self.h))

    def __repr__(self):
        terms = []
        for i in range(3):
            for j in range(3):
                if not self.h[i][j].is_zero():
                    terms.append(f"({self.h[i][j]})u^{i}v^{j}")
        return " + ".join(terms) if terms else "0"


class BilinearFactor:
    """A bidegree-(1,1) form sum m[i][j] u^i v^j, canonically scaled; the
    components of a reducible incidence curve."""

    __slots__ = ("field", "m")

    def __init__(self, field, m):
        rows = [[field(c) for c in row] for row in m]
        pivot = next((c for row in rows for c in row if not c.is_zero()), None)
        if pivot is None:
            raise ValueError("zero form")
        inv = pivot.inv()
        self.field = field
        self.m = tuple(tuple(c * inv for c in row) for row in rows)

    def evaluate(self, u, v):
        field = u.field
        a, b = u.coords
        c, d = v.coords
        um = (b, a)
        vm = (d, c)
        total = field.zero
        for i in range(2):
            for j in range(2):
                total = total + field(self.m[i][j]) * um[i] * vm[j]
        return total

    def contains(self, u, v):
        return self.evaluate(u, v).is_zero()

    def product(self, other):
        """The bidegree-(2,2) form this factor times another."""
        field = self.field
        h = [[field.zero] * 3 for _ in range(3)]
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    for l in range(2):
                        h[i + k][j + l] = h[i + k][j + l] \
                            + self.m[i][j] * other.m[k][l]
        return h

    def __eq__(self, other):
        return (isinstance(other, BilinearFactor)
                and self.field == other.field and self.m == other.m)

    def __hash__(self):
        return hash((self.field, "factor", self.m))

    def __repr__(self):
        terms = [f"({self.m[i][j]})u^{i}v^{j}"
                 for i in range(2) for j in range(2)
                 if not self.m[i][j].is_zero()]
        return " + ".join(terms)


def _monomials(p):
    a, b = p.coords
    return (b * b, a * b, a * a)


def build_E(outer, inner, outer_par=None, inner_par=None, seed=0):
    """The incidence form H(u, v) whose zeros are the pairs (c(u), d(v))
    with c(u) on the tangent of the inner conic at d(v).  Coefficients are
    h[i][j] = B_D(c_i, d_j) where c_i, d_j are the parametrization
    coefficient columns and B_D the bilinear form of the inner conic."""
    if outer.field != inner.field:
        raise FieldMismatchError("conics live over different fields")
    if outer.field.char == 2:
        raise ValueError("the incidence curve needs odd or zero characteristic")
    if outer == inner:
        raise DegenerateInputError("conics must be distinct")
    if outer_par is None:
        outer_par = parametrize(outer, find_point(outer, seed))
    if inner_par is None:
        inner_par = parametrize(inner, find_point(inner, seed + 1))
    h = [[inner.bilinear([outer_par.c[r][i] for r in range(3)],
                         [inner_par.c[s][j] for s in range(3)])
          for j in range(3)] for i in range(3)]
    return BiquadraticForm(outer.field, h, outer_par, inner_par)


def build_E_normalized(t, a, b):
    """The incidence form of the normal-form pair, which comes out as
    b u^2 - 2b uv + (1 + tu + au^2) v^2 on the nose."""
    field = t.field
    if b.is_zero():
        raise DegenerateInputError("b = 0 makes the outer conic singular")
    outer = normal_form_conic(t, a, b)
    inner = Conic(field, [field.one, field.zero, field.zero,
                          field.zero, field.zero, -field.one])
    base = ProjPoint(field, [field.zero, field.zero, field.one])
    H = build_E(outer, inner,
                ConicParametrization(outer, base),
                ConicParametrization(inner, base))
    expected = ((field.zero, field.zero, field.one),
                (field.zero, -(b + b), field(t)),
                (field(b), field.zero, field(a)))
    assert H.h == expected
    return H


def _double_root_of_fiber(field, q):
    """The repeated root of a binary quadratic with vanishing discriminant."""
    C, B, A = q
    if not A.is_zero():
        return P1Point(field, (-B, A + A))
    if not B.is_zero():
        raise DegenerateInputError("fiber quadratic has two distinct roots")
    if C.is_zero():
        raise DegenerateInputError("fiber quadratic vanishes identically")
    return P1Point.infinity(field)


def singular_points(H, seed=0):
    """All singular points of the curve, over the base field or one
    quadratic extension.  Candidates are the multiple roots of the
    v-discriminant quartic; each candidate pair is confirmed against the
    four bihomogeneous partials."""
    field = H.field
    coeffs = H.disc_v_coeffs()
    f = Polynomial(field, coeffs)
    if f.is_zero():
        raise DegenerateInputError("discriminant vanishes identically: "
                                   "the form is not reduced")
    candidates = []
    if 4 - f.degree >= 2:
        candidates.append(P1Point.infinity(field))
    for g, mult in squarefree_decomposition(f.monic()):
        if mult < 2 or g.degree == 0:
            continue
        roots = roots_in_closure(g, max_total_extension_degree=2, seed=seed)
        for r, _ in roots.entries:
            candidates.append(P1Point.affine(r))
    out = []
    for u in candidates:
        Hl = H if u.field == field else H.lift(u.field)
        v = _double_root_of_fiber(u.field, Hl.fiber_in_v(u))
        if Hl.is_singular_at(u, v):
            out.append((u, v))
    out.sort(key=lambda p: (p[0].field.spec_string(),
                            p[0].sort_key(), p[1].sort_key()))
    return out


def _binary_content(field, forms, form_degree):
    """gcd of a family of binary forms of a common degree, as a pair
    (poly gcd, multiplicity of the common root at infinity)."""
    polys = [Polynomial(field, list(c)) for c in forms]
    inf = min(form_degree - p.degree for p in polys if not p.is_zero())
    g = Polynomial(field, [])
    from .poly import gcd as poly_gcd
    for p in polys:
        g = poly_gcd(g, p)
    return g, inf


def is_reducible(H, seed=0):
    """The two bidegree-(1,1) components when the curve splits, else None.

    The curve splits exactly when the v-discriminant is a square binary
    quartic in u.  When the monic part is a square but its leading constant
    is not, the split happens over one declared quadratic extension and the
    factors are returned there.  Returns (factor, factor, lifted flag)."""
    field = H.field
    coeffs = H.disc_v_coeffs()
    f = Polynomial(field, coeffs)
    if f.is_zero():
        raise DegenerateInputError("discriminant vanishes identically")
    inf_mult = 4 - f.degree
    if inf_mult % 2:
        return None
    lc = f.lc
    root = is_square(f.monic())
    if root is None:
        return None
    lifted = False
    sq = lc.sqrt()
    if sq is None:
        new_field, lc_image = lift_to_quadratic_extension(lc)
        H = H.lift(new_field)
        field = new_field
        lifted = True
        sq = lc_image.sqrt()
        root = root.map_field(field)
    g_poly = Polynomial(field, [sq * field(c) for c in root.coeffs])
    # g as a binary quadratic: pad to form degree 2
    g2 = list(g_poly.coeffs) + [field.zero] * (3 - len(g_poly.coeffs))
    A = [field(H.h[i][2]) for i in range(3)]
    B = [field(H.h[i][1]) for i in range(3)]
    if all(c.is_zero() for c in A) or all(field(H.h[i][0]).is_zero() for i in range(3)):
        raise DegenerateInputError("the curve contains a fiber line")
    two = field(2)
    raw = []
    for sign in (field.one, -field.one):
        p_v = [two * c for c in A]                  # coefficient forms of v
        p_w = [b + sign * g for b, g in zip(B, g2)]  # and of v'
        content, inf = _binary_content(field, [p_v, p_w], 2)
        qv, rv = divmod(Polynomial(field, p_v), content)
        qw, rw = divmod(Polynomial(field, p_w), content)
        assert rv.is_zero() and rw.is_zero()
        m = [[field.zero, field.zero], [field.zero, field.zero]]
        for k, c in enumerate(qv.coeffs):
            m[k][1] = c
        for k, c in enumerate(qw.coeffs):
            m[k][0] = c
        raw.append(BilinearFactor(field, m))
    f1, f2 = raw
    check = BiquadraticForm(field, f1.product(f2))
    if check.h != H.h:
        return None
    return f1, f2, lifted


class ECurveShape:
    """Shape report for the incidence curve: one of the five tags together
    with the form, its singular points and (when split) the components."""

    __slots__ = ("tag", "form", "singular", "factors", "lifted_split")

    def __init__(self, tag, form, singular, factors=None, lifted_split=False):
        self.tag = tag
        self.form = form
        self.singular = singular
        self.factors = factors
        self.lifted_split = lifted_split

    def __repr__(self):
        return f"ECurveShape({self.tag!r}, {len(self.singular)} singular)"


def _local_quadratic_disc(H, u, v):
    """Discriminant of the degree-2 part of H translated so the given
    point sits at the origin of an affine chart."""
    field = u.field
    h = [[field(c) for c in row] for row in (H.h if H.field == field
                                             else H.lift(field).h)]

    def shift_rows(h, p):
        if p.is_infinity():
            return [h[2 - i] for i in range(3)]
        alpha = p.value()
        out = [[field.zero] * 3 for _ in range(3)]
        for i in range(3):
            for k in range(i, 3):
                c = field(comb(k, i)) * alpha ** (k - i)
                for j in range(3):
                    out[i][j] = out[i][j] + c * h[k][j]
        return out

    h = shift_rows(h, u)
    h = [list(col) for col in zip(*shift_rows([list(r) for r in zip(*h)], v))]
    assert h[0][0].is_zero() and h[1][0].is_zero() and h[0][1].is_zero(), \
        "translated point is not a singular point"
    q20, q11, q02 = h[2][0], h[1][1], h[0][2]
    if q20.is_zero() and q11.is_zero() and q02.is_zero():
        raise DegenerateInputError("singularity has vanishing quadratic part")
    return q11 * q11 - field(4) * q20 * q02


def shape(outer, inner, seed=0):
    """Classify the incidence curve of a smooth conic pair."""
    H = build_E(outer, inner, seed=seed)
    singular = singular_points(H, seed=seed)
    split = is_reducible(H, seed=seed)
    if split is not None:
        f1, f2, lifted = split
        tag = (SHAPE_SPLIT_TRANSVERSAL if len(singular) == 2
               else SHAPE_SPLIT_DOUBLE)
        if len(singular) not in (1, 2):
            raise DegenerateInputError(
                "split curve with unexpected singular locus")
        return ECurveShape(tag, H, singular, (f1, f2), lifted)
    if not singular:
        return ECurveShape(SHAPE_SMOOTH, H, [])
    if len(singular) != 1:
        raise DegenerateInputError("irreducible biquadratic with more than "
                                   "one singular point")
    u, v = singular[0]
    disc = _local_quadratic_disc(H, u, v)
    tag = SHAPE_NODE if not disc.is_zero() else SHAPE_CUSP
    return ECurveShape(tag, H, singular)


def _other_root(field, q, known):
    """Vieta: the second root of the binary quadratic q0 v'^2 + q1 v v' +
    q2 v^2 given one root, projectively (the root at infinity included)."""
    C, B, A = q
    s, w = known.coords
    if w.is_zero():
        # the known root at infinity forces A = 0
        if not B.is_zero():
            return P1Point(field, (-C, B))
        if C.is_zero():
            raise DegenerateInputError("fiber quadratic vanishes identically")
        return P1Point.infinity(field)
    if A.is_zero() and B.is_zero():
        raise DegenerateInputError("fiber quadratic vanishes identically")
    return P1Point(field, (-(B * w) - A * s, A * w))


def _prepare(H, p):
    u, v = p
    if u.field != v.field:
        raise FieldMismatchError("the two parameters live over different fields")
    if u.field != H.field:
        H = H.lift(u.field)
    return H, u, v


def sigma(H, p, check=True):
    """The involution fixing u: v goes to the other root of the fiber."""
    H, u, v = _prepare(H, p)
    if check and not H.contains(u, v):
        raise NotOnConicError("point does not lie on the incidence curve")
    return (u, _other_root(u.field, H.fiber_in_v(u), v))


def tau(H, p, check=True):
    """The involution fixing v: u goes to the other root of the fiber."""
    H, u, v = _prepare(H, p)
    if check and not H.contains(u, v):
        raise NotOnConicError("point does not lie on the incidence curve")
    return (_other_root(u.field, H.fiber_in_u(v), u), v)


def nu(H, p, check=True):
    """The step map sigma o tau; its fixed points are the singular points."""
    return sigma(H, tau(H, p, check=check), check=False)


def nu_inverse(H, p, check=True):
    return tau(H, sigma(H, p, check=check), check=False)


def state_to_params(H, state):
    """Dictionary from process states (c, d) to curve points (u, v)."""
    if H.outer_par is None or H.inner_par is None:
        raise ValueError("form was not built from parametrizations")
    return (H.outer_par.param_of(state.c), H.inner_par.param_of(state.d))


def params_to_state(H, p, index=1):
    from .process import PonceletState
    if H.outer_par is None or H.inner_par is None:
        raise ValueError("form was not built from parametrizations")
    u, v = p
    return PonceletState(H.outer_par.point_at(u), H.inner_par.point_at(v),
                         index)
