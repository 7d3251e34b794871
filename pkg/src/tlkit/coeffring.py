"""Exact coefficient arithmetic: Laurent polynomials in q, the rational
function field Q(q), quantum integers, and root-of-unity specialization.

Values of the field are kept in a canonical reduced form so that equality
of any two derived quantities is a structural comparison, never numeric.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import DenominatorVanishes

INFINITY = math.inf


def _gcd_many(values):
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g


class LaurentPoly:
    """Sparse Laurent polynomial in q with exact coefficients.

    Coefficients are ints or Fractions; zero coefficients are never stored.
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        self.coeffs = {e: c for e, c in coeffs.items() if c != 0}
        self._hash = None

    @classmethod
    def const(cls, c):
        return cls({0: c}) if c else cls()

    @classmethod
    def monomial(cls, exp, c=1):
        return cls({exp: c}) if c else cls()

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.coeffs.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = LaurentPoly.__new__(LaurentPoly)
        res.coeffs = out
        res._hash = None
        return res

    def __neg__(self):
        res = LaurentPoly.__new__(LaurentPoly)
        res.coeffs = {e: -c for e, c in self.coeffs.items()}
        res._hash = None
        return res

    def __sub__(self, other):
        return self + (-other if isinstance(other, LaurentPoly) else LaurentPoly.const(-other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return LaurentPoly()
            res = LaurentPoly.__new__(LaurentPoly)
            res.coeffs = {e: c * other for e, c in self.coeffs.items()}
            res._hash = None
            return res
        a, b = self.coeffs, other.coeffs
        if len(a) > len(b):
            a, b = b, a
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = ea + eb
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        res = LaurentPoly.__new__(LaurentPoly)
        res.coeffs = out
        res._hash = None
        return res

    __rmul__ = __mul__
    __radd__ = __add__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = ONE_POLY
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def valuation(self):
        return min(self.coeffs) if self.coeffs else 0

    def degree(self):
        return max(self.coeffs) if self.coeffs else 0

    def leading(self):
        return self.coeffs[self.degree()] if self.coeffs else 0

    def shift(self, k):
        """Multiply by q**k."""
        if not self.coeffs:
            return self
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def bar(self):
        """The involution q -> q**-1."""
        return LaurentPoly({-e: c for e, c in self.coeffs.items()})

    def divexact(self, other):
        """Exact division; raises ArithmeticError if the division is not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        rem = dict(self.coeffs)
        dv = other.coeffs
        dexp = other.degree()
        dlead = dv[dexp]
        out = {}
        while rem:
            e = max(rem)
            q_exp = e - dexp
            q_coeff = rem[e] / dlead if isinstance(rem[e], Fraction) or isinstance(dlead, Fraction) else Fraction(rem[e], dlead)
            if q_coeff.denominator == 1:
                q_coeff = int(q_coeff)
            out[q_exp] = q_coeff
            for de, dc in dv.items():
                t = de + q_exp
                s = rem.get(t, 0) - dc * q_coeff
                if s:
                    rem[t] = s
                else:
                    rem.pop(t, None)
        return LaurentPoly(out)

    def eval_fraction(self, x):
        """Evaluate at a rational point q = x."""
        return sum((Fraction(c) * Fraction(x) ** e for e, c in self.coeffs.items()), Fraction(0))

    def _int_normal(self):
        """Return (rational content, primitive integer poly with valuation 0,
        positive leading coefficient)."""
        if not self.coeffs:
            return Fraction(0), LaurentPoly()
        den = 1
        for c in self.coeffs.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        ints = {e: int(c * den) for e, c in self.coeffs.items()}
        g = _gcd_many(ints.values())
        v = min(ints)
        lead = ints[max(ints)]
        sign = 1 if lead > 0 else -1
        prim = LaurentPoly({e - v: sign * (c // g) for e, c in ints.items()})
        content = Fraction(sign * g, den)
        return content, prim, v

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                parts.append(f"{c}")
            elif e == 1:
                parts.append(f"{c}*q" if c != 1 else "q")
            else:
                parts.append(f"{c}*q^{e}" if c != 1 else f"q^{e}")
        return " + ".join(parts).replace("+ -", "- ")


ZERO_POLY = LaurentPoly()
ONE_POLY = LaurentPoly.const(1)


def _poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Gcd of the polynomial parts (valuation stripped), primitive with
    positive leading coefficient.  q-power units are quotiented away."""
    if a.is_zero():
        return b._int_normal()[1] if b else ONE_POLY
    if b.is_zero():
        return a._int_normal()[1]
    _, pa, _ = a._int_normal()
    _, pb, _ = b._int_normal()
    # Euclid over Q[q] on valuation-0 integer polys; rescale to primitive
    # at each step to keep coefficients integral.
    while not pb.is_zero():
        # remainder of pa by pb, done over rationals then re-normalized
        rem = pa
        dexp = pb.degree()
        dlead = pb.leading()
        while rem and rem.degree() >= dexp and rem.valuation() >= 0:
            e = rem.degree()
            coef = Fraction(rem.leading(), dlead) if not isinstance(rem.leading(), Fraction) and not isinstance(dlead, Fraction) else Fraction(rem.leading()) / Fraction(dlead)
            rem = rem - pb.shift(e - dexp) * coef
        pa, pb = pb, (rem._int_normal()[1] if rem else ZERO_POLY)
    return pa


class RingElem:
    """Element of the exact rational-function field Q(q).

    Stored as a reduced fraction numerator/denominator of Laurent
    polynomials.  The denominator is primitive with integer coefficients,
    valuation 0 and positive leading coefficient, so equality and hashing
    are structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None, _reduced=False):
        if isinstance(num, (int, Fraction)):
            num = LaurentPoly.const(num)
        if den is None:
            den = ONE_POLY
        elif isinstance(den, (int, Fraction)):
            den = LaurentPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            num, den = self._reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _reduce(num: LaurentPoly, den: LaurentPoly):
        if num.is_zero():
            return ZERO_POLY, ONE_POLY
        if den.coeffs == {0: 1}:
            return num, den
        g = _poly_gcd(num, den)
        if g.coeffs != {0: 1}:
            num = num.divexact(g)
            den = den.divexact(g)
        dc, dprim, dval = den._int_normal()
        # den := dprim; num := num / (dc * q^dval)
        num = num.shift(-dval) * (1 / dc)
        out_num = LaurentPoly({e: (int(c) if isinstance(c, Fraction) and c.denominator == 1 else c) for e, c in num.coeffs.items()})
        return out_num, dprim

    @classmethod
    def from_int(cls, k):
        return cls(LaurentPoly.const(k), ONE_POLY, _reduced=True)

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RingElem(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RingElem(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        if self.den == other.den:
            return RingElem(self.num + other.num, self.den)
        return RingElem(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        r = RingElem.__new__(RingElem)
        r.num = -self.num
        r.den = self.den
        r._hash = None
        return r

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RingElem(other)
        return self + (-other)

    def __rsub__(self, other):
        return RingElem(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RING_ZERO
            return RingElem(self.num * other, self.den)
        if not isinstance(other, RingElem):
            return NotImplemented
        if self.den.coeffs == {0: 1} and other.den.coeffs == {0: 1}:
            r = RingElem.__new__(RingElem)
            r.num = self.num * other.num
            r.den = ONE_POLY
            r._hash = None
            return r
        return RingElem(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RingElem(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero in Q(q)")
        return RingElem(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RingElem(other) / self

    def __pow__(self, k):
        if k < 0:
            return RingElem(1) / self ** (-k)
        out = RING_ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inv(self):
        return RingElem(1) / self

    def eval_fraction(self, x):
        d = self.den.eval_fraction(x)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at q={x}")
        return self.num.eval_fraction(x) / d

    def __repr__(self):
        if self.den.coeffs == {0: 1}:
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


RING_ZERO = RingElem.from_int(0)
RING_ONE = RingElem.from_int(1)


@lru_cache(maxsize=None)
def qint_poly(k: int) -> LaurentPoly:
    """[k] as a Laurent polynomial: q^(k-1) + q^(k-3) + ... + q^(1-k)."""
    if k == 0:
        return ZERO_POLY
    if k < 0:
        return -qint_poly(-k)
    return LaurentPoly({k - 1 - 2 * i: 1 for i in range(k)})


@lru_cache(maxsize=None)
def qfact_poly(k: int) -> LaurentPoly:
    """[k]! as a Laurent polynomial; k >= 0."""
    if k < 0:
        raise ValueError("quantum factorial needs k >= 0")
    if k == 0:
        return ONE_POLY
    return qfact_poly(k - 1) * qint_poly(k)


def qint(k: int) -> RingElem:
    """The quantum integer [k] = (q^k - q^-k)/(q - q^-1)."""
    return RingElem(qint_poly(k), ONE_POLY, _reduced=True)


def qfact(k: int) -> RingElem:
    """The quantum factorial [k]! = [1][2]...[k]."""
    return RingElem(qfact_poly(k), ONE_POLY, _reduced=True)


def fugacity() -> RingElem:
    """The loop weight nu = -q - q^-1 = -[2]."""
    return RingElem(-qint_poly(2), ONE_POLY, _reduced=True)


NU = fugacity()


@lru_cache(maxsize=None)
def _cyclotomic_int_poly(n: int) -> tuple:
    """Coefficient tuple (low to high, degree phi(n)) of the n-th cyclotomic
    polynomial, computed by dividing x^n - 1 by the lower cyclotomics."""
    if n == 1:
        return (-1, 1)
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in range(1, n):
        if n % d == 0:
            phi_d = list(_cyclotomic_int_poly(d))
            # exact synthetic division num //= phi_d
            out = [0] * (len(num) - len(phi_d) + 1)
            rem = list(num)
            dl = phi_d[-1]
            for i in range(len(out) - 1, -1, -1):
                c = rem[i + len(phi_d) - 1] // dl
                out[i] = c
                if c:
                    for j, pc in enumerate(phi_d):
                        rem[i + j] -= c * pc
            num = out
    return tuple(num)


class CyclotomicField:
    """Q(zeta) for zeta = exp(i*pi/p), i.e. a primitive 2p-th root of unity.

    Elements are Fraction vectors modulo the 2p-th cyclotomic polynomial.
    """

    def __init__(self, p: int, pprime: int):
        if p < 1 or pprime < 1 or math.gcd(p, pprime) != 1:
            raise ValueError("need coprime positive integers p, p'")
        self.p = p
        self.pprime = pprime
        self.order = 2 * p
        mod = _cyclotomic_int_poly(self.order)
        self.degree = len(mod) - 1
        self.modulus = mod
        # zeta^k reduced, for 0 <= k < order
        self._zeta_pows = self._power_table()
        self.zero = CycElem(self, (Fraction(0),) * self.degree)
        self.one = CycElem(self, tuple([Fraction(1)] + [Fraction(0)] * (self.degree - 1)))
        self.q = self.zeta_power(pprime)
        self.nu = -(self.q + self.zeta_power(-pprime))

    def _power_table(self):
        table = []
        cur = [Fraction(1)] + [Fraction(0)] * (self.degree - 1)
        for _ in range(self.order):
            table.append(tuple(cur))
            # multiply by zeta
            carry = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if carry:
                for i in range(self.degree):
                    cur[i] -= carry * self.modulus[i]
        return table

    def zeta_power(self, k: int) -> "CycElem":
        return CycElem(self, self._zeta_pows[k % self.order])

    def from_laurent(self, poly: LaurentPoly) -> "CycElem":
        vec = [Fraction(0)] * self.degree
        for e, c in poly.coeffs.items():
            pw = self._zeta_pows[(e * self.pprime) % self.order]
            fc = Fraction(c)
            for i, v in enumerate(pw):
                if v:
                    vec[i] += fc * v
        return CycElem(self, tuple(vec))

    def key(self):
        return (self.p, self.pprime)


class CycElem:
    """Element of a fixed cyclotomic field; supports field arithmetic."""

    __slots__ = ("field", "vec", "_hash")

    def __init__(self, field, vec):
        self.field = field
        self.vec = tuple(vec)
        self._hash = None

    def is_zero(self):
        return all(v == 0 for v in self.vec)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._from_scalar(other)
        if not isinstance(other, CycElem):
            return NotImplemented
        return self.vec == other.vec

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.vec)
        return self._hash

    def _from_scalar(self, c):
        vec = [Fraction(0)] * self.field.degree
        vec[0] = Fraction(c)
        return CycElem(self.field, tuple(vec))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._from_scalar(other)
        return CycElem(self.field, tuple(a + b for a, b in zip(self.vec, other.vec)))

    __radd__ = __add__

    def __neg__(self):
        return CycElem(self.field, tuple(-a for a in self.vec))

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._from_scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return self._from_scalar(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            fc = Fraction(other)
            return CycElem(self.field, tuple(a * fc for a in self.vec))
        deg = self.field.degree
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.vec):
            if a:
                for j, b in enumerate(other.vec):
                    if b:
                        prod[i + j] += a * b
        mod = self.field.modulus
        for i in range(len(prod) - 1, deg - 1, -1):
            c = prod[i]
            if c:
                for j in range(deg + 1):
                    prod[i - deg + j] -= c * mod[j]
        return CycElem(self.field, tuple(prod[:deg]))

    __rmul__ = __mul__

    def inv(self):
        """Inverse via extended Euclid against the cyclotomic modulus."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        mod = [Fraction(c) for c in self.field.modulus]
        a = list(self.vec)
        # extended euclid: find u with a*u = 1 mod modulus
        r0, r1 = mod, a
        s0, s1 = [Fraction(0)], [Fraction(1)]

        def deg(p):
            for i in range(len(p) - 1, -1, -1):
                if p[i]:
                    return i
            return -1

        def sub_scaled(p, q, c, shift):
            out = list(p)
            while len(out) < len(q) + shift:
                out.append(Fraction(0))
            for i, v in enumerate(q):
                if v:
                    out[i + shift] -= c * v
            return out

        while deg(r1) > 0:
            d0, d1 = deg(r0), deg(r1)
            if d0 < d1:
                r0, r1 = r1, r0
                s0, s1 = s1, s0
                continue
            c = r0[d0] / r1[d1]
            r0 = sub_scaled(r0, r1, c, d0 - d1)
            s0 = sub_scaled(s0, s1, c, d0 - d1)
        if deg(r1) < 0:
            # r0 is the gcd; modulus irreducible => r1 constant unless self==0
            raise ZeroDivisionError("not invertible")
        const = r1[0]
        inv_vec = [v / const for v in s1]
        inv_vec += [Fraction(0)] * (self.field.degree - len(inv_vec))
        return CycElem(self.field, tuple(inv_vec[: self.field.degree]))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            fc = Fraction(other)
            return CycElem(self.field, tuple(a / fc for a in self.vec))
        return self * other.inv()

    def __rtruediv__(self, other):
        return self._from_scalar(other) / self

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        out = self.field.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self):
        terms = [f"{v}*z^{i}" for i, v in enumerate(self.vec) if v]
        return " + ".join(terms) if terms else "0"


class QParam:
    """Choice of the deformation parameter q: generic (transcendental) or a
    specific root of unity q = exp(i*pi*p'/p)."""

    __slots__ = ("mode", "field")

    def __init__(self, mode="generic", field=None):
        self.mode = mode
        self.field = field

    @classmethod
    def generic(cls):
        return cls("generic", None)

    @classmethod
    def root_of_unity(cls, p: int, pprime: int = 1):
        return cls("root", CyclotomicField(p, pprime))

    @property
    def is_generic(self):
        return self.mode == "generic"

    def key(self):
        return "generic" if self.is_generic else f"root:{self.field.p}/{self.field.pprime}"

    def pbar(self):
        if self.is_generic:
            return INFINITY
        return INFINITY if self.field.p == 1 else self.field.p

    def one(self):
        return RING_ONE if self.is_generic else self.field.one

    def zero(self):
        return RING_ZERO if self.is_generic else self.field.zero

    def nu(self):
        return NU if self.is_generic else self.field.nu

    def coerce(self, x: RingElem):
        """Map a generic element into this parameter's scalar domain."""
        if self.is_generic:
            return x
        return specialize(x, self)

    def __repr__(self):
        return f"QParam({self.key()})"


GENERIC = QParam.generic()


def pbar(param: QParam):
    """Effective root-of-unity order: [k] = 0 iff pbar(q) divides k."""
    return param.pbar()


def specialize(x: RingElem, param: QParam):
    """Exact value of x at q = exp(i*pi*p'/p); generic mode returns x."""
    if param.is_generic:
        return x
    f = param.field
    den = f.from_laurent(x.den)
    if den.is_zero():
        raise DenominatorVanishes(f"denominator {x.den!r} vanishes at {param.key()}")
    return f.from_laurent(x.num) / den


NU_POLY = -qint_poly(2)


def nu_for(coeff):
    """Loop weight in the scalar domain of the sample coefficient."""
    if isinstance(coeff, CycElem):
        return coeff.field.nu
    if isinstance(coeff, LaurentPoly):
        return NU_POLY
    return NU
