"""Exact arithmetic over the real fields Q(2*cos(pi/m)).

Crystallographic Coxeter groups are realized over the rationals; H3, H4 and
the dihedral groups I2(m) for exotic m need the field generated by
theta = 2*cos(pi/m).  A scalar is stored by its coordinates in the power
basis 1, theta, ..., theta^(d-1), arithmetic is reduction mod the minimal
polynomial, and signs are decided exactly by refining a rational isolating
interval around the distinguished real root.  No floating point is used in
any decision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd

from .errors import InvalidInputError

# ---------------------------------------------------------------------------
# dense univariate polynomials, little-endian coefficient lists


def _poly_trim(p):
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p if p else [0]


def _poly_add(p, q):
    n = max(len(p), len(q))
    return _poly_trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
                       for i in range(n)])


def _poly_sub(p, q):
    n = max(len(p), len(q))
    return _poly_trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0)
                       for i in range(n)])


def _poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _poly_trim(out)


def _poly_divmod(p, q):
    """Exact division over the rationals; q need not be monic."""
    p = list(p)
    dq = len(q) - 1
    lead = Fraction(q[-1])
    quot = [Fraction(0)] * max(len(p) - dq, 1)
    while len(p) - 1 >= dq and any(c != 0 for c in p):
        dp = len(p) - 1
        if p[-1] == 0:
            p.pop()
            continue
        coef = Fraction(p[-1]) / lead
        quot[dp - dq] = coef
        for i in range(dq + 1):
            p[dp - dq + i] -= coef * q[i]
        p.pop()
    return _poly_trim(quot), _poly_trim([Fraction(c) for c in p])


def _poly_eval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_deriv(p):
    if len(p) == 1:
        return [Fraction(0)]
    return [Fraction(i * c) for i, c in enumerate(p)][1:]


def _sturm_chain(p):
    chain = [[Fraction(c) for c in p], _poly_deriv(p)]
    while len(chain[-1]) > 1 or chain[-1][0] != 0:
        _, rem = _poly_divmod(chain[-2], chain[-1])
        if len(rem) == 1 and rem[0] == 0:
            break
        chain.append([-c for c in rem])
    return chain


def _sign_changes(chain, x):
    signs = []
    for p in chain:
        v = _poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_root_count(p, lo, hi):
    """Number of distinct real roots of p in the half-open interval (lo, hi]."""
    chain = _sturm_chain(p)
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def _cyclotomic(n):
    """Integer coefficients (little-endian) of the n-th cyclotomic polynomial."""
    poly = [-1] + [0] * (n - 1) + [1]          # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod(poly, _cyclotomic(d))
            assert r == [0], "cyclotomic division must be exact"
            poly = q
    return [int(c) for c in poly]


def two_cos_minpoly(m):
    """Monic minimal polynomial of 2*cos(pi/m) over Q, little-endian.

    Writing zeta for a primitive 2m-th root of unity, 2*cos(pi/m) equals
    zeta + 1/zeta, and the minimal polynomial is read off from the
    palindromic cyclotomic polynomial of order 2m.
    """
    if m < 2:
        raise InvalidInputError(f"Coxeter matrix entry m={m} must be >= 2")
    phi = _cyclotomic(2 * m)
    d = len(phi) - 1
    half = d // 2
    # z^k + z^(-k) expressed in y = z + 1/z via the rescaled Chebyshev family
    p_prev, p_cur = [Fraction(2)], [Fraction(0), Fraction(1)]
    out = [Fraction(phi[half])]
    for k in range(1, half + 1):
        out = _poly_add(out, [Fraction(phi[half + k]) * c for c in p_cur])
        p_prev, p_cur = p_cur, _poly_sub(_poly_mul([Fraction(0), Fraction(1)], p_cur), p_prev)
    return [Fraction(c) for c in out]


class FieldSpec:
    """A real number field Q(theta) with theta = 2*cos(pi/m).

    Immutable except for the isolating interval, which only ever shrinks
    (a cache of refinement work shared by all sign computations).
    """

    def __init__(self, min_poly, isolating_interval, cos_order=None):
        min_poly = tuple(Fraction(c) for c in min_poly)
        if min_poly[-1] != 1:
            raise InvalidInputError("minimal polynomial must be monic")
        self.min_poly = min_poly
        self.degree = len(min_poly) - 1
        self.cos_order = cos_order
        lo, hi = isolating_interval
        self._lo = Fraction(lo)
        self._hi = Fraction(hi)
        if self.degree > 1:
            n = sturm_root_count(list(min_poly), self._lo, self._hi)
            if n != 1:
                raise InvalidInputError(
                    f"isolating interval ({lo}, {hi}] contains {n} roots, not 1")
        # reduction table: theta^k mod min_poly for k = degree .. 2*degree-2
        d = self.degree
        red = []
        cur = [-c for c in min_poly[:-1]]            # theta^d
        red.append(tuple(cur))
        for _ in range(d - 2):
            cur = [Fraction(0)] + cur                # multiply by theta
            if len(cur) > d:
                top = cur[d]
                cur = [cur[i] + top * red[0][i] for i in range(d)]
            else:
                cur = cur + [Fraction(0)] * (d - len(cur))
            red.append(tuple(cur))
        self._reduction = tuple(red)
        self._float_theta = self._approx_theta()

    def _approx_theta(self):
        if self.degree == 1:
            return float(-self.min_poly[0])
        if self.cos_order is not None:
            return 2.0 * math.cos(math.pi / self.cos_order)
        return float((self._lo + self._hi) / 2)

    # -- constructors ------------------------------------------------------

    def zero(self):
        return Scalar(self, (Fraction(0),) * self.degree)

    def one(self):
        return self.rational(1)

    def rational(self, q):
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(q)
        return Scalar(self, tuple(coeffs))

    def theta(self):
        if self.degree == 1:
            return self.rational(-self.min_poly[0])
        coeffs = [Fraction(0)] * self.degree
        coeffs[1] = Fraction(1)
        return Scalar(self, tuple(coeffs))

    def two_cos(self, m):
        """The element 2*cos(pi/m), for any m dividing the generator order."""
        if m == 2:
            return self.zero()
        if m == 3:
            return self.one()
        if self.cos_order is None or self.cos_order % m != 0:
            raise InvalidInputError(f"field does not contain 2*cos(pi/{m})")
        k = self.cos_order // m
        p_prev, p_cur = self.rational(2), self.theta()
        for _ in range(k - 1):
            p_prev, p_cur = p_cur, self.theta() * p_cur - p_prev
        return p_cur

    def from_coeffs(self, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != self.degree:
            raise InvalidInputError("coefficient vector has wrong length")
        return Scalar(self, coeffs)

    # -- arithmetic kernels ------------------------------------------------

    def _mul(self, a, b):
        d = self.degree
        if d == 1:
            return (a[0] * b[0],)
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            ck = prod[k]
            if ck:
                row = self._reduction[k - d]
                for i in range(d):
                    out[i] += ck * row[i]
        return tuple(out)

    def _inv(self, a):
        if all(c == 0 for c in a):
            raise ZeroDivisionError("division by zero scalar")
        if self.degree == 1:
            return (1 / a[0],)
        # extended Euclid: u*a + v*min_poly = 1 in Q[x]
        r0, r1 = list(self.min_poly), _poly_trim(list(a))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] != 0:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        g = r0
        assert len(g) == 1 and g[0] != 0, "minimal polynomial must be irreducible"
        inv = [c / g[0] for c in s0]
        inv = inv[:self.degree] + [Fraction(0)] * (self.degree - len(inv))
        # reduce once in case extended Euclid returned degree-d junk
        return self._mul(tuple(inv), (Fraction(1),) + (Fraction(0),) * (self.degree - 1))

    # -- sign determination -------------------------------------------------

    def _refine_interval(self):
        lo, hi = self._lo, self._hi
        mid = (lo + hi) / 2
        fmid = _poly_eval(list(self.min_poly), mid)
        assert fmid != 0, "irreducible polynomial of degree >= 2 has no rational root"
        flo = _poly_eval(list(self.min_poly), lo)
        if (flo > 0) != (fmid > 0):
            self._hi = mid
        else:
            self._lo = mid

    def sign(self, coeffs):
        if all(c == 0 for c in coeffs):
            return 0
        if self.degree == 1:
            v = coeffs[0]
            return 1 if v > 0 else -1
        for _ in range(512):
            lo_v, hi_v = _interval_horner(coeffs, self._lo, self._hi)
            if lo_v > 0:
                return 1
            if hi_v < 0:
                return -1
            self._refine_interval()
        raise InvalidInputError("sign refinement failed to certify; bad field data")

    def approx(self, coeffs):
        t = self._float_theta
        acc = 0.0
        for c in reversed(coeffs):
            acc = acc * t + float(c)
        return acc

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.min_poly == other.min_poly

    def __hash__(self):
        return hash(self.min_poly)

    def __repr__(self):
        if self.degree == 1:
            return "FieldSpec(Q)"
        return f"FieldSpec(Q(2cos(pi/{self.cos_order})), degree={self.degree})"


def _interval_horner(coeffs, lo, hi):
    """Range bound for the polynomial with these coefficients on [lo, hi]."""
    alo = ahi = Fraction(0)
    for c in reversed(coeffs):
        cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(cands) + c, max(cands) + c
    return alo, ahi


RATIONALS = FieldSpec((Fraction(0), Fraction(1)), (Fraction(-1), Fraction(1)),
                      cos_order=None)


def field_make(m_values, degree_bound=8):
    """Smallest supported field containing 2*cos(pi/m) for every given m.

    Entries in {2, 3, 4, 6} are rational under the crystallographic root
    normalization, so they contribute nothing.  The remaining orders are
    combined into Q(2*cos(pi/L)) with L their lcm; each requested cosine is
    a Chebyshev polynomial in the generator.
    """
    ms = sorted(set(int(m) for m in m_values))
    for m in ms:
        if m < 2:
            raise InvalidInputError(f"Coxeter matrix entry m={m} must be >= 2")
    exotic = [m for m in ms if m not in (2, 3, 4, 6)]
    if not exotic:
        return RATIONALS
    L = 1
    for m in exotic:
        L = L * m // gcd(L, m)
    poly = two_cos_minpoly(L)
    degree = len(poly) - 1
    if degree > degree_bound:
        raise InvalidInputError(
            f"field for 2*cos(pi/{L}) has degree {degree} > bound {degree_bound}")
    approx = 2.0 * math.cos(math.pi / L)
    lo = Fraction(int(approx * 2 ** 24) - 2, 2 ** 24)
    hi = Fraction(2)
    # tighten the lower bound until Sturm certifies a single root
    while sturm_root_count(list(poly), lo, hi) != 1:
        lo = (lo + Fraction(int(approx * 2 ** 24) + 2, 2 ** 24)) / 2
    return FieldSpec(poly, (lo, hi), cos_order=L)


class Scalar:
    """An element of a FieldSpec, immutable and hashable."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise InvalidInputError("scalars belong to different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field._mul(self.coeffs, self.field._inv(other.coeffs)))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return Scalar(self.field, tuple(-c for c in self.coeffs))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def sign(self):
        return self.field.sign(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.rational(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __lt__(self, other):
        other = self._coerce(other)
        return (self - other).sign() < 0

    def __le__(self, other):
        other = self._coerce(other)
        return (self - other).sign() <= 0

    def __gt__(self, other):
        other = self._coerce(other)
        return (self - other).sign() > 0

    def __ge__(self, other):
        other = self._coerce(other)
        return (self - other).sign() >= 0

    def __float__(self):
        return self.field.approx(self.coeffs)

    def as_fraction(self):
        if any(c != 0 for c in self.coeffs[1:]):
            raise InvalidInputError("scalar is irrational")
        return self.coeffs[0]

    def __repr__(self):
        if self.field.degree == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*t")
            else:
                terms.append(f"{c}*t^{i}")
        return " + ".join(terms) if terms else "0"


def scalar_arith(op, a, b):
    """Dispatch wrapper kept for symmetry with the operator interface."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise InvalidInputError(f"unknown scalar operation {op!r}")


def scalar_sign(a):
    return a.sign()
