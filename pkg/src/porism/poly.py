"""Univariate polynomials over any supported field.

Coefficients are stored low degree first with a nonzero leading coefficient;
the zero polynomial has an empty coefficient tuple.  On top of the ring
arithmetic this module provides monic gcd, squarefree decomposition (with the
inseparable char-p cases handled by p-th-root extraction), full factorization
over finite fields (distinct-degree plus seeded Cantor-Zassenhaus), root
finding in a bounded extension tower, and exact polynomial square roots.
"""

from dataclasses import dataclass

from .errors import ExtensionOverflowError, FieldMismatchError
from .fields import (ExtensionField, FieldElement, PrimeField, QuadRationalField,
                     RationalField, lift_to_quadratic_extension)


class Polynomial:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        coeffs = [field(c) for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def x(cls, field):
        return cls(field, [0, 1])

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def lc(self):
        return self.coeffs[-1]

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, i):
        return self.coeffs[i] if i < len(self.coeffs) else self.field.zero

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial(self.field, [other])
        return (isinstance(other, Polynomial) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.field, [self[i] + other[i] for i in range(n)])

    def __sub__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.field, [self[i] - other[i] for i in range(n)])

    def __neg__(self):
        return Polynomial(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return Polynomial(self.field, [c * other for c in self.coeffs])
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return Polynomial(self.field, [])
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(self.field, out)

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, int):
            return Polynomial(self.field, [other])
        if not isinstance(other, Polynomial):
            raise TypeError(f"cannot combine Polynomial with {other!r}")
        if other.field != self.field:
            raise FieldMismatchError("polynomials over different fields")
        return other

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quot = [self.field.zero] * max(0, len(rem) - len(other.coeffs) + 1)
        inv_lead = other.lc.inv()
        while len(rem) >= len(other.coeffs):
            c = rem[-1] * inv_lead
            shift = len(rem) - len(other.coeffs)
            quot[shift] = c
            for i, oc in enumerate(other.coeffs):
                rem[shift + i] = rem[shift + i] - c * oc
            rem.pop()
            while rem and rem[-1].is_zero():
                rem.pop()
        return Polynomial(self.field, quot), Polynomial(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n):
        result = Polynomial(self.field, [1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, x):
        acc = x.field.zero if isinstance(x, FieldElement) else self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self):
        if self.is_zero() or self.lc == self.field.one:
            return self
        return self * self.lc.inv()

    def derivative(self):
        return Polynomial(self.field, [self.coeffs[i] * i
                                       for i in range(1, len(self.coeffs))])

    def map_field(self, new_field):
        """Embed the coefficients into a larger field of the tower."""
        return Polynomial(new_field, [new_field(c) for c in self.coeffs])

    def __repr__(self):
        if self.is_zero():
            return "Poly[0]"
        terms = ", ".join(str(c) for c in self.coeffs)
        return f"Poly[{terms}]"


def gcd(f, g):
    """Monic greatest common divisor; gcd(0, 0) = 0."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def _pth_root(f):
    """For f with f' = 0 over a finite field of char p, the g with g^p = f."""
    p = f.field.char
    q = f.field.size
    coeffs = [f[i * p] ** (q // p) for i in range(f.degree // p + 1)]
    return Polynomial(f.field, coeffs)


def squarefree_decomposition(f):
    """List of (monic squarefree g_i, multiplicity m_i), distinct m_i, with
    f = lc(f) * prod g_i^{m_i}."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    f = f.monic()
    parts = {}
    _sff(f, 1, parts)
    return [(g, m) for m, g in sorted(parts.items())]


def _sff(f, scale, parts):
    if f.degree == 0:
        return
    df = f.derivative()
    if df.is_zero():
        # inseparable: f = g(x^p)^1 with every exponent divisible by p
        _sff(_pth_root(f), scale * f.field.char, parts)
        return
    c = gcd(f, df)
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        z = w // y
        if z.degree > 0:
            m = i * scale
            parts[m] = parts.get(m, Polynomial(f.field, [1])) * z
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        _sff(_pth_root(c), scale * f.field.char, parts)


def _ddf(f):
    """Distinct-degree factorization of a monic squarefree f over a finite
    field: list of (product-of-irreducibles-of-degree-d, d)."""
    q = f.field.size
    out = []
    x = Polynomial.x(f.field)
    xq = x
    d = 0
    rest = f
    while rest.degree > 2 * d:
        d += 1
        xq = _polypow_mod(xq, q, rest)
        g = gcd(rest, xq - x)
        if g.degree > 0:
            out.append((g, d))
            rest = rest // g
            xq = xq % rest
    if rest.degree > 0:
        out.append((rest, rest.degree))
    return out


def _polypow_mod(base, n, mod):
    result = Polynomial(mod.field, [1])
    base = base % mod
    while n:
        if n & 1:
            result = result * base % mod
        base = base * base % mod
        n >>= 1
    return result


def _random_poly(field, max_degree, rng):
    elems = list(field.elements())
    return Polynomial(field, [rng.choice(elems)
                              for _ in range(rng.randrange(1, max_degree + 1) + 1)])


def _edf(f, d, rng):
    """Cantor-Zassenhaus split of a monic product of irreducibles of degree d."""
    if f.degree == d:
        return [f]
    q = f.field.size
    while True:
        h = _random_poly(f.field, f.degree - 1, rng)
        if h.degree < 1:
            continue
        if f.field.char == 2:
            # trace map over F_2
            k = q.bit_length() - 1
            t = Polynomial(f.field, [])
            term = h % f
            for _ in range(k * d):
                t = t + term
                term = term * term % f
            g = gcd(f, t)
        else:
            t = _polypow_mod(h, (q ** d - 1) // 2, f) - Polynomial(f.field, [1])
            g = gcd(f, t)
        if 0 < g.degree < f.degree:
            return _edf(g, d, rng) + _edf(f // g, d, rng)


def factor(f, seed=0):
    """Full factorization over a finite field: list of (monic irreducible,
    multiplicity), deterministic for a given seed, sorted canonically."""
    import random
    if f.field.size is None:
        raise ValueError("factor() requires a finite field")
    if f.degree < 1:
        return []
    rng = random.Random(seed)
    out = []
    for part, mult in squarefree_decomposition(f):
        for block, d in _ddf(part):
            for irr in _edf(block, d, rng):
                out.append((irr, mult))
    out.sort(key=lambda gm: (gm[0].degree, [c.sort_key() for c in gm[0].coeffs]))
    assert sum(g.degree * m for g, m in out) == f.degree
    return out


@dataclass(frozen=True)
class RootsWithMultiplicity:
    """Roots of a binary form of fixed degree; roots may live in extensions."""
    entries: tuple  # of (FieldElement, multiplicity)
    at_infinity: int
    form_degree: int

    def total(self):
        return sum(m for _, m in self.entries) + self.at_infinity


def _char0_roots(g, field):
    """Roots of a squarefree g over Q or Q(sqrt d), staying within one
    quadratic step above Q.  Returns list of FieldElement."""
    roots = []
    while g.degree > 0:
        if g.degree == 1:
            roots.append(-g[0] / g[1])
            break
        if g.degree == 2:
            a, b, c = g[2], g[1], g[0]
            disc = b * b - 4 * a * c
            s = disc.sqrt()
            if s is None:
                if isinstance(field, RationalField):
                    _, disc_l = lift_to_quadratic_extension(disc)
                    s = disc_l.sqrt()
                    a, b = disc_l.field(a), disc_l.field(b)
                else:
                    raise ExtensionOverflowError(
                        f"roots of {g!r} need more than one quadratic step over Q")
            roots.append((-b + s) / (2 * a))
            roots.append((-b - s) / (2 * a))
            break
        r = _rational_root(g)
        if r is None:
            raise ExtensionOverflowError(
                f"no rational root found for {g!r} of degree {g.degree}")
        roots.append(r)
        g = g // Polynomial(g.field, [-r, 1])
    return roots


def _rational_root(g):
    """One root of g in its own char-0 field, by the rational root theorem
    applied to the Q-coordinates, or None."""
    from fractions import Fraction
    field = g.field
    if isinstance(field, QuadRationalField):
        # search rational candidates only; conjugate-irrational roots of
        # higher-degree factors are out of scope
        comps = [c.value for c in g.coeffs]
        if any(v[1] != 0 for v in comps):
            return None
        fracs = [v[0] for v in comps]
    else:
        fracs = [c.value for c in g.coeffs]
    lcm = 1
    for fr in fracs:
        lcm = lcm * fr.denominator // _igcd(lcm, fr.denominator)
    ints = [int(fr * lcm) for fr in fracs]
    if ints[0] == 0:
        return field.zero
    for a in _divisors(abs(ints[0])):
        for b in _divisors(abs(ints[-1])):
            for sign in (1, -1):
                cand = field(Fraction(sign * a, b))
                if g(cand).is_zero():
                    return cand
    return None


def _igcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def roots_in_closure(f, max_total_extension_degree=4, seed=0):
    """All roots of f with multiplicities, in minimal tower extensions of
    f's field.  Raises ExtensionOverflowError past the degree cap."""
    if f.is_zero():
        raise ValueError("zero polynomial has every root")
    entries = []
    if f.field.size is not None:
        for irr, mult in factor(f, seed):
            if irr.degree == 1:
                entries.append((-irr[0], mult))
                continue
            if irr.degree > max_total_extension_degree:
                raise ExtensionOverflowError(
                    f"irreducible factor {irr!r} exceeds extension cap "
                    f"{max_total_extension_degree}")
            ext = ExtensionField(f.field, [c for c in irr.coeffs], check=False)
            root = ext.gen
            q = f.field.size
            for _ in range(irr.degree):
                entries.append((root, mult))
                root = root ** q
    else:
        for part, mult in squarefree_decomposition(f):
            for r in _char0_roots(part, f.field):
                entries.append((r, mult))
    # roots from different factors may live in different extensions; group by
    # field first so sort keys stay comparable
    entries.sort(key=lambda rm: (rm[0].field.spec_string(), rm[0].sort_key()))
    return RootsWithMultiplicity(tuple(entries), 0, f.degree)


def binary_form_roots(field, coeffs, form_degree, max_total_extension_degree=4,
                      seed=0):
    """Roots of a binary form given by its dehomogenized coefficients
    (low-to-high in the affine variable); the degree drop is reported as
    multiplicity at the point at infinity."""
    f = Polynomial(field, coeffs)
    if f.is_zero():
        raise ValueError("zero form")
    at_inf = form_degree - f.degree
    if f.degree == 0:
        return RootsWithMultiplicity((), at_inf, form_degree)
    inner = roots_in_closure(f, max_total_extension_degree, seed)
    return RootsWithMultiplicity(inner.entries, at_inf, form_degree)


def is_square(f):
    """g with g*g = f exactly, or None.  Characteristic != 2."""
    if f.field.char == 2:
        raise ValueError("odd characteristic only")
    if f.is_zero():
        return Polynomial(f.field, [])
    if f.degree % 2 != 0:
        return None
    s = f.lc.sqrt()
    if s is None:
        return None
    m = f.degree // 2
    g = [f.field.zero] * (m + 1)
    g[m] = s
    # match coefficients from the top; each new one appears linearly via 2*s
    inv2s = (s + s).inv()
    for k in range(1, m + 1):
        acc = f[2 * m - k]
        for i in range(1, k):
            acc = acc - g[m - i] * g[m - k + i]
        g[m - k] = acc * inv2s
    cand = Polynomial(f.field, g)
    if cand * cand == f:
        return cand
    return None
