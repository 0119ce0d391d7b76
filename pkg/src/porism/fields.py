"""Exact field arithmetic.

Supported fields:

* ``PrimeField(p)``        -- F_p for an odd (or 2, for the appendix tools) prime p
* ``ExtensionField(K, m)`` -- K[x]/(m) for a monic irreducible m over K, so
  finite fields F_{p^k} and one-step towers above them
* ``RationalField()``      -- the rationals, with exact Fraction coordinates
* ``QuadRationalField(d)`` -- Q(sqrt d) for a non-square rational d

Elements are immutable and stored in canonical form (residues reduced,
fractions in lowest terms, coefficient tuples padded to full length), so
``==`` and ``hash`` work structurally.  Where a square root has two choices
the canonically smaller one (by ``sort_key``) is returned, which keeps every
run reproducible.
"""

import re
from fractions import Fraction
from itertools import product
from math import isqrt

from .errors import ExtensionOverflowError, FieldMismatchError

# Residue cap for prime fields; desk-scale experiments never get close.
MAX_PRIME = 2**31


def _is_prime(n):
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _fraction_sqrt(q):
    """Exact square root of a Fraction, or None."""
    if q < 0:
        return None
    rn, rd = isqrt(q.numerator), isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


class FieldElement:
    """An immutable element of one of the supported fields."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, *a):
        raise AttributeError("FieldElement is immutable")

    def _pair(self, other):
        if isinstance(other, int):
            return self, self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if self.field is other.field or self.field == other.field:
            return self, other
        if self.field.contains(other.field):
            return self, self.field(other)
        if other.field.contains(self.field):
            return other.field(self), other
        raise FieldMismatchError(
            f"elements of {self.field} and {other.field} cannot be combined")

    def __add__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return p
        a, b = p
        return FieldElement(a.field, a.field._add(a.value, b.value))

    __radd__ = __add__

    def __sub__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return p
        a, b = p
        return FieldElement(a.field, a.field._add(a.value, a.field._neg(b.value)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return p
        a, b = p
        return FieldElement(a.field, a.field._mul(a.value, b.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._pair(other)
        if p is NotImplemented:
            return p
        a, b = p
        return a * b.inv()

    def __rtruediv__(self, other):
        return self.inv().__mul__(other)

    def __neg__(self):
        return FieldElement(self.field, self.field._neg(self.value))

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        base = self.inv() if n < 0 else self
        n = abs(n)
        result = self.field.one
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return FieldElement(self.field, self.field._inv(self.value))

    def is_zero(self):
        return self.value == self.field.zero.value

    def sqrt(self):
        """Canonical square root in this field, or None if there is none."""
        return self.field.sqrt(self)

    def is_square(self):
        return self.sqrt() is not None

    def sort_key(self):
        return self.field._sort_key(self.value)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        try:
            a, b = self._pair(other)
        except FieldMismatchError:
            return False
        return a.value == b.value

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return self.field._render(self.value)

    def __repr__(self):
        return f"{self.field._render(self.value)} in {self.field}"


class Field:
    """Common behaviour of the concrete field classes."""

    char = None
    size = None  # number of elements, None when infinite

    def __call__(self, v):
        if isinstance(v, FieldElement):
            if v.field is self or v.field == self:
                return v
            if self.contains(v.field):
                return FieldElement(self, self._embed(v))
            raise FieldMismatchError(f"cannot coerce {v!r} into {self}")
        if isinstance(v, int):
            return FieldElement(self, self._from_int(v))
        return FieldElement(self, self._canon(v))

    @property
    def zero(self):
        z = self.__dict__.get("_zero")
        if z is None:
            z = self.__dict__["_zero"] = FieldElement(self, self._from_int(0))
        return z

    @property
    def one(self):
        o = self.__dict__.get("_one")
        if o is None:
            o = self.__dict__["_one"] = FieldElement(self, self._from_int(1))
        return o

    def contains(self, other):
        return self == other

    def sqrt(self, elem):
        raise NotImplementedError

    def elements(self):
        """All elements in canonical (sort_key) order; finite fields only."""
        raise NotImplementedError(f"{self} is not finite")

    def __repr__(self):
        return self.spec_string()


class PrimeField(Field):
    """F_p with int residues in [0, p)."""

    def __init__(self, p):
        if not (2 <= p < MAX_PRIME) or not _is_prime(p):
            raise ValueError(f"modulus {p} is not a prime below 2**31")
        self.p = p
        self.char = p
        self.size = p

    def _from_int(self, n):
        return n % self.p

    def _canon(self, v):
        return int(v) % self.p

    def _add(self, a, b):
        return (a + b) % self.p

    def _mul(self, a, b):
        return (a * b) % self.p

    def _neg(self, a):
        return (-a) % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    def _sort_key(self, a):
        return a

    def _render(self, a):
        return str(a)

    def sqrt(self, elem):
        if self.p == 2:
            return elem  # squaring is the identity on F_2
        return _finite_field_sqrt(self, elem)

    def elements(self):
        for v in range(self.p):
            yield FieldElement(self, v)

    def spec_string(self):
        return f"Fp:{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))


class ExtensionField(Field):
    """K[x]/(m) for a monic irreducible modulus m over a supported field K.

    Values are tuples of base-field values, low degree first, padded to the
    extension degree.  ``gen`` is the residue class of x.
    """

    def __init__(self, base, modulus, check=True):
        modulus = tuple(base(c) for c in modulus)
        if len(modulus) < 3 or modulus[-1] != base.one:
            raise ValueError("modulus must be monic of degree >= 2")
        self.base = base
        self.degree = len(modulus) - 1
        self.modulus = modulus
        self.char = base.char
        self.size = None if base.size is None else base.size ** self.degree
        # raw-value reduction row: x^degree = sum _redux[j] * x^j
        self._redux = tuple(base._neg(c.value) for c in modulus[:self.degree])
        if check and not self._is_irreducible():
            raise ValueError("modulus is reducible over the base field")

    def _is_irreducible(self):
        # Brute force: a reducible modulus has a monic factor of degree
        # <= degree/2.  Fine at desk scale; internal constructions skip it.
        if self.base.size is None:
            # Rational base: only quadratic moduli are used; irreducible iff
            # the discriminant has no square root in the base field.
            if self.degree != 2:
                return True
            c, b, _ = self.modulus
            disc = b * b - 4 * c
            return disc.sqrt() is None
        if self.base.size ** (self.degree // 2) > 100000:
            return True
        for deg in range(1, self.degree // 2 + 1):
            for tail in product(list(self.base.elements()), repeat=deg):
                divisor = list(tail) + [self.base.one]
                if not self._poly_rem(self.modulus, divisor):
                    return False
        return True

    @staticmethod
    def _poly_rem(num, den):
        num = list(num)
        while num and num[-1].is_zero():
            num.pop()
        dd = len(den) - 1
        inv_lead = den[-1].inv()
        while len(num) - 1 >= dd:
            q = num[-1] * inv_lead
            shift = len(num) - 1 - dd
            for i, dc in enumerate(den):
                num[shift + i] = num[shift + i] - q * dc
            num.pop()
            while num and num[-1].is_zero():
                num.pop()
        return num

    @property
    def gen(self):
        """The adjoined root of the modulus."""
        vec = [self.base.zero.value] * self.degree
        vec[1] = self.base.one.value
        return FieldElement(self, tuple(vec))

    def _from_int(self, n):
        return self._canon([self.base(n)])

    def _canon(self, coeffs):
        vec = [self.base(c).value for c in coeffs]
        if len(vec) > self.degree:
            raise ValueError("coefficient vector longer than extension degree")
        vec += [self.base.zero.value] * (self.degree - len(vec))
        return tuple(vec)

    def _embed(self, elem):
        if elem.field == self.base:
            return self._canon([elem])
        return self._canon([self.base(elem)])

    def contains(self, other):
        return self == other or self.base.contains(other)

    def _lift(self, vec):
        return [FieldElement(self.base, v) for v in vec]

    def _add(self, a, b):
        return tuple(self.base._add(x, y) for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(self.base._neg(x) for x in a)

    def _mul(self, a, b):
        # schoolbook product on raw base values (canonical, so == is exact)
        k = self.degree
        base = self.base
        badd, bmul = base._add, base._mul
        zero = base.zero.value
        prod = [zero] * (2 * k - 1)
        for i, x in enumerate(a):
            if x == zero:
                continue
            for j, y in enumerate(b):
                prod[i + j] = badd(prod[i + j], bmul(x, y))
        red = self._redux
        for i in range(2 * k - 2, k - 1, -1):
            c = prod[i]
            if c == zero:
                continue
            for j in range(k):
                prod[i - k + j] = badd(prod[i - k + j], bmul(c, red[j]))
        return tuple(prod[:k])

    def _inv(self, a):
        # extended Euclid in K[x] against the modulus
        zero = self.base.zero

        def trim(p):
            while p and p[-1].is_zero():
                p.pop()
            return p

        def submul(p, q, c, shift):
            # p - c * x^shift * q, in place on a copy of p
            out = list(p) + [zero] * max(0, shift + len(q) - len(p))
            for i, qc in enumerate(q):
                out[shift + i] = out[shift + i] - c * qc
            return trim(out)

        r0, s0 = trim(list(self.modulus)), []
        r1, s1 = trim(self._lift(a)), [self.base.one]
        if not r1:
            raise ZeroDivisionError("inverse of zero")
        while len(r1) > 1:
            while len(r0) >= len(r1):
                c = r0[-1] * r1[-1].inv()
                shift = len(r0) - len(r1)
                r0 = submul(r0, r1, c, shift)
                s0 = submul(s0, s1, c, shift)
                if not r0:
                    break
            if not r0:
                raise ZeroDivisionError("element shares a factor with the modulus")
            r0, r1, s0, s1 = r1, r0, s1, s0
        lead = r1[0].inv()
        return self._canon([c * lead for c in s1])

    def _sort_key(self, a):
        return tuple(self.base._sort_key(v) for v in a)

    def _render(self, a):
        return ",".join(self.base._render(v) for v in a)

    def sqrt(self, elem):
        if self.char == 2:
            # Frobenius inverse: squaring is a bijection.
            return elem ** (self.size // 2)
        return _finite_field_sqrt(self, elem)

    def elements(self):
        base_elems = sorted(self.base.elements(), key=lambda e: e.sort_key())
        for vec in product(base_elems, repeat=self.degree):
            # leftmost slowest => lexicographic on low-to-high coefficients
            yield FieldElement(self, tuple(v.value for v in vec))

    def frobenius(self, elem):
        """x -> x^q for q the base field size."""
        return elem ** self.base.size

    def spec_string(self):
        mod = ",".join(self.base._render(c.value) for c in self.modulus)
        if isinstance(self.base, PrimeField):
            return f"Fq:{self.base.p}^{self.degree}:{mod}"
        return f"Ext({self.base.spec_string()})[{mod}]"

    def __eq__(self, other):
        return (isinstance(other, ExtensionField) and other.base == self.base
                and other.modulus == self.modulus)

    def __hash__(self):
        return hash(("Ext", self.base, self.modulus))


class RationalField(Field):
    """Q with Fraction values."""

    char = 0

    def _from_int(self, n):
        return Fraction(n)

    def _canon(self, v):
        return Fraction(v)

    def _add(self, a, b):
        return a + b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _inv(self, a):
        return 1 / a

    def _sort_key(self, a):
        return a

    def _render(self, a):
        return str(a)

    def sqrt(self, elem):
        r = _fraction_sqrt(elem.value)
        return None if r is None else FieldElement(self, r)

    def spec_string(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")


class QuadRationalField(Field):
    """Q(sqrt d) for a non-square rational d; values are (r, s) = r + s*sqrt(d)."""

    char = 0

    def __init__(self, d):
        d = Fraction(d)
        if d == 0 or _fraction_sqrt(d) is not None:
            raise ValueError(f"radicand {d} is a square in Q")
        self.d = d

    @property
    def root(self):
        """sqrt(d) itself."""
        return FieldElement(self, (Fraction(0), Fraction(1)))

    def _from_int(self, n):
        return (Fraction(n), Fraction(0))

    def _canon(self, v):
        if isinstance(v, (Fraction, int)):
            return (Fraction(v), Fraction(0))
        r, s = v
        return (Fraction(r), Fraction(s))

    def _embed(self, elem):
        return (Fraction(elem.value), Fraction(0))

    def contains(self, other):
        return self == other or isinstance(other, RationalField)

    def _add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def _mul(self, a, b):
        return (a[0] * b[0] + self.d * a[1] * b[1], a[0] * b[1] + a[1] * b[0])

    def _neg(self, a):
        return (-a[0], -a[1])

    def _inv(self, a):
        n = a[0] * a[0] - self.d * a[1] * a[1]  # norm; nonzero since d is non-square
        return (a[0] / n, -a[1] / n)

    def _sort_key(self, a):
        return a

    def _render(self, a):
        return f"{a[0]}+{a[1]}*sqrt({self.d})"

    def sqrt(self, elem):
        r, s = elem.value
        roots = []
        if s == 0:
            t = _fraction_sqrt(r)
            if t is not None:
                roots.append((t, Fraction(0)))
            t = _fraction_sqrt(r / self.d)
            if t is not None:
                roots.append((Fraction(0), t))
        else:
            m = _fraction_sqrt(r * r - self.d * s * s)
            if m is not None:
                for sign in (1, -1):
                    x = _fraction_sqrt((r + sign * m) / 2)
                    if x is not None and x != 0:
                        roots.append((x, s / (2 * x)))
        if not roots:
            return None
        cands = [FieldElement(self, v) for v in roots]
        cands += [-c for c in cands]
        best = min(cands, key=lambda c: c.sort_key())
        assert best * best == elem
        return best

    def spec_string(self):
        return f"Qsqrt:{self.d}"

    def __eq__(self, other):
        return isinstance(other, QuadRationalField) and other.d == self.d

    def __hash__(self):
        return hash(("Qsqrt", self.d))


def _finite_field_sqrt(field, elem):
    """Tonelli-Shanks over any odd finite field; returns the canonically
    smaller root or None for a non-residue."""
    if field.char == 2:
        raise ValueError("odd characteristic only")
    if elem.is_zero():
        return field.zero
    q = field.size
    if elem ** ((q - 1) // 2) != field.one:
        return None
    s, t = 0, q - 1
    while t % 2 == 0:
        t //= 2
        s += 1
    if s == 1:
        r = elem ** ((q + 1) // 4)
    else:
        z = None
        for cand in field.elements():
            if cand.is_zero():
                continue
            if cand ** ((q - 1) // 2) != field.one:
                z = cand
                break
        c = z ** t
        r = elem ** ((t + 1) // 2)
        u = elem ** t
        m = s
        while u != field.one:
            i, u2 = 0, u
            while u2 != field.one:
                u2 = u2 * u2
                i += 1
            b = c ** (1 << (m - i - 1))
            r = r * b
            c = b * b
            u = u * c
            m = i
    assert r * r == elem
    return min(r, -r, key=lambda x: x.sort_key())


def lift_to_quadratic_extension(a):
    """One quadratic step up the tower so that sqrt(a) exists.

    Returns (new_field, image of a).  ``a`` must be a non-square in its field.
    Old elements coerce into the new field via ``new_field(elem)``.
    """
    field = a.field
    if field.char == 2:
        raise ValueError("use char2 tools in characteristic two")
    if a.sqrt() is not None:
        raise ValueError("element is already a square; no extension needed")
    if isinstance(field, RationalField):
        new = QuadRationalField(a.value)
        return new, new(a)
    if isinstance(field, QuadRationalField):
        raise ExtensionOverflowError(
            "only one quadratic step above Q is supported")
    new = ExtensionField(field, [-a, field.zero, field.one], check=False)
    return new, new(a)


def binary_field(k):
    """GF(2^k) with a deterministic modulus: the lexicographically smallest
    irreducible monic binary polynomial of degree k (low coefficients first)."""
    base = PrimeField(2)
    if k == 1:
        return base
    if k > 20:
        raise ValueError("binary field degree too large")
    for mask in range(1, 2 ** k, 2):  # constant term 1, else x divides
        coeffs = [(mask >> i) & 1 for i in range(k)] + [1]
        try:
            return ExtensionField(base, coeffs)
        except ValueError:
            continue
    raise AssertionError("no irreducible polynomial found")  # unreachable


def parse_field_spec(s):
    """Parse the CLI field-spec strings: Fp:13, Fq:5^2:3,0,1, F2k:3, Q,
    Qsqrt:2."""
    if s == "Q":
        return RationalField()
    if s.startswith("F2k:"):
        return binary_field(int(s[len("F2k:"):]))
    if s.startswith("Qsqrt:"):
        return QuadRationalField(Fraction(s[len("Qsqrt:"):]))
    if s.startswith("Fp:"):
        return PrimeField(int(s[len("Fp:"):]))
    if s.startswith("Fq:"):
        body = s[len("Fq:"):]
        sizepart, modpart = body.split(":", 1)
        p, k = sizepart.split("^")
        base = PrimeField(int(p))
        coeffs = [int(c) for c in modpart.split(",")]
        if len(coeffs) != int(k) + 1:
            raise ValueError("modulus degree does not match the field size")
        return ExtensionField(base, coeffs)
    raise ValueError(f"unrecognized field spec: {s!r}")


def render_element(elem):
    """Canonical string form of an element, matching what parse_element
    accepts: decimal residues, comma-separated extension coefficients,
    fractions, or r+s*sqrt(d)."""
    return str(elem)


def parse_element(field, value):
    """Read an element from CLI JSON: an int, or the canonical string
    rendering of the field."""
    if isinstance(value, bool):
        raise ValueError("booleans are not field elements")
    if isinstance(value, int):
        return field(value)
    if not isinstance(value, str):
        raise ValueError(f"cannot read a field element from {value!r}")
    text = value.strip()
    if isinstance(field, PrimeField):
        return field(int(text))
    if isinstance(field, RationalField):
        return field(Fraction(text))
    if isinstance(field, QuadRationalField):
        m = re.fullmatch(r"(-?\d+(?:/\d+)?)\+(-?\d+(?:/\d+)?)\*sqrt\((-?\d+(?:/\d+)?)\)",
                         text)
        if m is None:
            return field(Fraction(text))
        if Fraction(m.group(3)) != field.d:
            raise ValueError(f"radicand {m.group(3)} does not match the field")
        return field((Fraction(m.group(1)), Fraction(m.group(2))))
    if isinstance(field, ExtensionField):
        if not isinstance(field.base, PrimeField):
            raise ValueError("element parsing supports single-step extensions only")
        return field(tuple(int(c) for c in text.split(",")))
    raise ValueError(f"element parsing is not supported for {field}")
