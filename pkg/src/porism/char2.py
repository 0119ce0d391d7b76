"""Quadratic forms in characteristic two: symplectic normalization, the
canonical conic x0*x1 + x2^2, and the strange point.

The polar bilinear form B_q(u, v) = q(u+v) - q(u) - q(v) is alternating in
characteristic two, so it admits a symplectic basis.  Each hyperbolic pair
of B_q contributes a factor x*y to q after splitting one binary quadratic,
and the radical of B_q contributes at most a single square term because
square roots distribute over sums.  An irreducible conic therefore has the
canonical shape x0*x1 + x2^2; all of its tangent lines pass through one
common point, the strange point, which spans the radical of B_q.

Square roots here are total: in F_{2^k} the Frobenius is a bijection and
sqrt(a) = a^(2^(k-1)).
"""

from .errors import DegenerateInputError, NotOnConicError
from .fields import ExtensionField
from .projective import ProjLine, ProjPoint


class QuadraticForm2:
    """A quadratic form sum a_ij x_i x_j (i <= j) in n variables over a
    field of characteristic two, with zero coefficients dropped."""

    __slots__ = ("field", "n", "coeffs")

    def __init__(self, field, n, coeffs):
        if field.char != 2:
            raise ValueError("characteristic two only")
        clean = {}
        for (i, j), v in coeffs.items():
            if not 0 <= i <= j < n:
                raise ValueError(f"bad monomial index ({i}, {j})")
            v = field(v)
            if not v.is_zero():
                clean[(i, j)] = clean.get((i, j), field.zero) + v
                if clean[(i, j)].is_zero():
                    del clean[(i, j)]
        self.field = field
        self.n = n
        self.coeffs = clean

    @classmethod
    def from_conic(cls, conic):
        a00, a11, a22, a01, a02, a12 = conic.coeffs
        return cls(conic.field, 3, {(0, 0): a00, (1, 1): a11, (2, 2): a22,
                                    (0, 1): a01, (0, 2): a02, (1, 2): a12})

    def coefficient(self, i, j):
        if i > j:
            i, j = j, i
        return self.coeffs.get((i, j), self.field.zero)

    def evaluate(self, vec):
        total = self.field.zero
        for (i, j), a in self.coeffs.items():
            total = total + a * vec[i] * vec[j]
        return total

    def polar(self, u, v):
        """B_q(u, v); in characteristic two this is q(u+v) + q(u) + q(v)."""
        w = [a + b for a, b in zip(u, v)]
        return self.evaluate(w) + self.evaluate(u) + self.evaluate(v)

    def bilinear(self):
        field = self.field
        m = [[field.zero] * self.n for _ in range(self.n)]
        for (i, j), a in self.coeffs.items():
            if i != j:
                m[i][j] = a
                m[j][i] = a
        return BilinearForm2(field, m)

    def transform(self, columns):
        """The form q(Pz) for the basis change with the given columns: the
        new diagonal entries are q on the columns, the cross entries the
        polar form of column pairs."""
        coeffs = {}
        for k in range(self.n):
            coeffs[(k, k)] = self.evaluate(columns[k])
            for l in range(k + 1, self.n):
                coeffs[(k, l)] = self.polar(columns[k], columns[l])
        return QuadraticForm2(self.field, self.n, coeffs)

    def map_field(self, new_field):
        return QuadraticForm2(new_field, self.n,
                              {k: new_field(v) for k, v in self.coeffs.items()})

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, QuadraticForm2) and self.field == other.field
                and self.n == other.n and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.n, tuple(sorted(self.coeffs.items(),
                                                      key=lambda kv: kv[0]))))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j) in sorted(self.coeffs):
            a = self.coeffs[(i, j)]
            mono = f"x{i}^2" if i == j else f"x{i}x{j}"
            parts.append(mono if a == self.field.one else f"({a}){mono}")
        return " + ".join(parts)


class BilinearForm2:
    """An alternating bilinear form as an n x n matrix (zero diagonal)."""

    __slots__ = ("field", "n", "m")

    def __init__(self, field, m):
        n = len(m)
        rows = [tuple(field(c) for c in row) for row in m]
        for i in range(n):
            if not rows[i][i].is_zero():
                raise ValueError("alternating form needs a zero diagonal")
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("form is not symmetric")
        self.field = field
        self.n = n
        self.m = tuple(rows)

    def apply(self, u, v):
        total = self.field.zero
        for i in range(self.n):
            ui = u[i]
            if ui.is_zero():
                continue
            for j in range(self.n):
                c = self.m[i][j]
                if not c.is_zero():
                    total = total + ui * c * v[j]
        return total

    def __repr__(self):
        return "BilinearForm2(" + "; ".join(
            ",".join(str(c) for c in row) for row in self.m) + ")"


class CanonicalForm2:
    """Result of symplectic normalization: l hyperbolic coordinate pairs,
    an optional square term, and the basis-change columns realizing
    x0*x1 + ... + x_{2l-2}*x_{2l-1} (+ x_{2l}^2)."""

    __slots__ = ("field", "n", "l", "has_square_term", "columns", "lifted")

    def __init__(self, field, n, l, has_square_term, columns, lifted):
        self.field = field
        self.n = n
        self.l = l
        self.has_square_term = has_square_term
        self.columns = columns
        self.lifted = lifted

    def canonical_form(self):
        coeffs = {}
        for i in range(self.l):
            coeffs[(2 * i, 2 * i + 1)] = self.field.one
        if self.has_square_term:
            coeffs[(2 * self.l, 2 * self.l)] = self.field.one
        return QuadraticForm2(self.field, self.n, coeffs)

    def matrix(self):
        """Basis-change matrix with the new basis vectors as columns."""
        return tuple(tuple(self.columns[k][r] for k in range(self.n))
                     for r in range(self.n))

    def __repr__(self):
        sq = " + square term" if self.has_square_term else ""
        return f"CanonicalForm2(l={self.l}{sq}, lifted={self.lifted})"


def bilinear_from_quadratic(q):
    return q.bilinear()


def solve_artin_schreier(c):
    """A root of z^2 + z = c, adjoining one Artin-Schreier extension when
    the trace obstruction blocks a root in the field.  Returns the root and
    its field."""
    field = c.field
    if field.size is None or field.size > 1 << 20:
        raise ValueError("field too large for the root scan")
    for z in field.elements():
        if z * z + z == c:
            return z, field
    ext = ExtensionField(field, [c, field.one, field.one])
    return ext.gen, ext


def _split_hyperbolic(alpha, beta):
    """Coordinate change turning alpha*x^2 + x*y + beta*y^2 into x'*y'.

    The form factors as L1*L2 with L1*L2 recovered from a root of the
    Artin-Schreier equation s^2 + s = alpha*beta.  Returns the 2x2 matrix
    [[p, q], [r, s]] of the linear factors L1 = p*x + q*y, L2 = r*x + s*y
    and the (possibly extended) field."""
    field = alpha.field
    if alpha.is_zero():
        # q = y * (x + beta*y)
        return ((field.zero, field.one), (field.one, beta)), field
    s1, new_field = solve_artin_schreier(alpha * beta)
    if new_field != field:
        alpha = new_field(alpha)
    s2 = s1 + new_field.one
    return ((alpha, s1), (new_field.one, s2 / alpha)), new_field


def _inv2(m, field):
    (p, q), (r, s) = m
    det = p * s + q * r  # char 2: the adjugate has no signs
    if det.is_zero():
        raise AssertionError("linear factors are dependent")
    di = det.inv()
    return ((s * di, q * di), (r * di, p * di))


def symplectic_normalize(q):
    """Canonical form of a quadratic form in characteristic two.

    Greedy symplectic reduction of the polar form extracts l hyperbolic
    pairs; each pair's binary quadratic is split into two linear factors
    (adjoining at most one quadratic extension per split, recorded in the
    result); the radical of the polar form collapses to a single square
    term since x -> x^2 is additive."""
    field = q.field
    n = q.n
    vectors = [[field.one if r == k else field.zero for r in range(n)]
               for k in range(n)]
    remaining = list(vectors)
    pairs = []
    lifted = False

    def relift(new_field):
        nonlocal field, q, remaining, pairs, lifted
        conv = lambda v: [new_field(c) for c in v]
        q = q.map_field(new_field)
        remaining = [conv(v) for v in remaining]
        pairs = [(conv(u), conv(w)) for u, w in pairs]
        field = new_field
        lifted = True

    while True:
        found = None
        for a in range(len(remaining)):
            for b in range(a + 1, len(remaining)):
                if not q.polar(remaining[a], remaining[b]).is_zero():
                    found = (a, b)
                    break
            if found:
                break
        if not found:
            break
        a, b = found
        u = remaining.pop(b)
        v = remaining.pop(a)
        scale = q.polar(v, u).inv()
        w = [scale * c for c in u]
        # make the rest of the basis polar-orthogonal to the pair (v, w)
        for idx, r in enumerate(remaining):
            cu = q.polar(r, w)
            cw = q.polar(r, v)
            remaining[idx] = [rc + cu * vc + cw * wc
                              for rc, vc, wc in zip(r, v, w)]
        alpha = q.evaluate(v)
        beta = q.evaluate(w)
        factors, new_field = _split_hyperbolic(alpha, beta)
        if new_field != field:
            relift(new_field)
            v = [field(c) for c in v]
            w = [field(c) for c in w]
        inv = _inv2(factors, field)
        u2 = [inv[0][0] * vc + inv[1][0] * wc for vc, wc in zip(v, w)]
        w2 = [inv[0][1] * vc + inv[1][1] * wc for vc, wc in zip(v, w)]
        pairs.append((u2, w2))

    # the radical: the polar form vanishes, so q restricts to a square
    square_vec = None
    rest = []
    for r in remaining:
        val = q.evaluate(r)
        if val.is_zero():
            rest.append(r)
        elif square_vec is None:
            root = field.sqrt(val)
            inv = root.inv()
            square_vec = [inv * c for c in r]
        else:
            root = field.sqrt(val)
            rest.append([rc + root * sc for rc, sc in zip(r, square_vec)])
    columns = []
    for u2, w2 in pairs:
        columns.append(u2)
        columns.append(w2)
    if square_vec is not None:
        columns.append(square_vec)
    columns.extend(rest)
    result = CanonicalForm2(field, n, len(pairs), square_vec is not None,
                            tuple(tuple(c) for c in columns), lifted)
    assert q.transform(result.columns) == result.canonical_form()
    return result


def is_irreducible_conic(conic):
    """Whether a ternary char-2 quadratic form cuts out a smooth conic:
    canonical shape x0*x1 + x2^2, i.e. one hyperbolic pair plus a square."""
    can = symplectic_normalize(QuadraticForm2.from_conic(conic))
    return can.l == 1 and can.has_square_term


def strange_point(conic):
    """The unique point through which every tangent line of an irreducible
    char-2 conic passes: the radical of the polar form, [a12 : a02 : a01]."""
    if not is_irreducible_conic(conic):
        raise DegenerateInputError("reducible conic has no strange point")
    a00, a11, a22, a01, a02, a12 = conic.coeffs
    return ProjPoint(conic.field, [a12, a02, a01])


def tangent_at_char2(conic, p):
    """Tangent line via the formal partial derivatives; always contains the
    strange point, since the gradient pairs every direction against the
    polar form."""
    if not conic.contains(p):
        raise NotOnConicError(f"{p!r} is not on the conic")
    grad = conic.gradient(p.coords)
    if all(g.is_zero() for g in grad):
        raise DegenerateInputError("conic is singular at the point")
    return ProjLine(conic.field, grad)
