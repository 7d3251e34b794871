"""The Temperley-Lieb algebra TL_n(nu): tangles as exact formal linear
combinations of link diagrams, their multiplication, generators, and the
standard-module action on link states."""

from __future__ import annotations

from .coeffring import NU, RING_ONE, nu_for
from .diagrams import (
    ZERO,
    LinkDiagram,
    LinkPattern,
    act_on_pattern,
    compose_diagrams,
    dagger as dagger_diagram,
    identity_diagram,
    tensor_diagrams,
)
from .errors import IndexOutOfRange, SizeMismatch

_NU_POWS = {}


def _nu_power(nu, k):
    key = (nu, k)
    hit = _NU_POWS.get(key)
    if hit is None:
        hit = nu ** k
        _NU_POWS[key] = hit
    return hit


class Tangle:
    """Element of TL_n(nu): a finite linear combination of n-link diagrams
    with exact coefficients (generic RingElem or cyclotomic)."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {d: c for d, c in (terms or {}).items() if c}

    @classmethod
    def unit(cls, n, one=RING_ONE):
        return cls(n, {identity_diagram(n): one})

    @classmethod
    def from_diagram(cls, d: LinkDiagram, coeff=RING_ONE):
        return cls(d.n, {d: coeff})

    @classmethod
    def zero(cls, n):
        return cls(n, {})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Tangle) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __add__(self, other):
        if self.n != other.n:
            raise SizeMismatch("tangle sizes differ")
        out = dict(self.terms)
        for d, c in other.terms.items():
            s = out.get(d)
            s = c if s is None else s + c
            if s:
                out[d] = s
            else:
                out.pop(d, None)
        t = Tangle.__new__(Tangle)
        t.n = self.n
        t.terms = out
        return t

    def __neg__(self):
        t = Tangle.__new__(Tangle)
        t.n = self.n
        t.terms = {d: -c for d, c in self.terms.items()}
        return t

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return Tangle.zero(self.n)
        t = Tangle.__new__(Tangle)
        t.n = self.n
        t.terms = {d: c * cd for d, cd in self.terms.items()}
        return t

    def __mul__(self, other):
        """Algebra product: concatenation with nu per closed loop."""
        if not isinstance(other, Tangle):
            return NotImplemented
        if self.n != other.n:
            raise SizeMismatch("tangle sizes differ")
        if not self.terms or not other.terms:
            return Tangle.zero(self.n)
        nu = nu_for(next(iter(self.terms.values())))
        out = {}
        for da, ca in self.terms.items():
            for db, cb in other.terms.items():
                d, loops = compose_diagrams(da, db)
                c = ca * cb
                if loops:
                    c = c * _nu_power(nu, loops)
                s = out.get(d)
                s = c if s is None else s + c
                if s:
                    out[d] = s
                else:
                    out.pop(d, None)
        t = Tangle.__new__(Tangle)
        t.n = self.n
        t.terms = out
        return t

    def dagger(self):
        """Reflect every diagram about a vertical axis (anti-automorphism)."""
        t = Tangle.__new__(Tangle)
        t.n = self.n
        t.terms = {dagger_diagram(d): c for d, c in self.terms.items()}
        return t

    def tensor(self, other):
        """Place self above other."""
        out = {}
        for da, ca in self.terms.items():
            for db, cb in other.terms.items():
                out[tensor_diagrams(da, db)] = ca * cb
        return Tangle(self.n + other.n, out)

    def coefficient(self, d: LinkDiagram):
        return self.terms.get(d)

    def map_coefficients(self, f):
        return Tangle(self.n, {d: f(c) for d, c in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return f"Tangle({self.n}, 0)"
        bits = [f"({c!r})*{list(map(list, d.pairs))}" for d, c in sorted(self.terms.items(), key=lambda t: t[0].pairs)]
        return " + ".join(bits)


def generator_U(n: int, i: int, one=RING_ONE) -> Tangle:
    """The TL generator U_i: cup-cap at strands i, i+1, identity elsewhere."""
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"U_{i} does not exist in TL_{n}")
    pairs = [(i, i + 1), (2 * n - i, 2 * n + 1 - i)]
    for k in range(1, n + 1):
        if k not in (i, i + 1):
            pairs.append((k, 2 * n + 1 - k))
    return Tangle(n, {LinkDiagram(n, pairs): one})


def multiply(a: Tangle, b: Tangle) -> Tangle:
    return a * b


def tensor(a: Tangle, b: Tangle) -> Tangle:
    return a.tensor(b)


class LinkState:
    """Element of the standard module L_n^(s): a linear combination of
    (n, s)-link patterns."""

    __slots__ = ("n", "s", "terms")

    def __init__(self, n, s, terms=None):
        self.n = n
        self.s = s
        self.terms = {p: c for p, c in (terms or {}).items() if c}

    @classmethod
    def from_pattern(cls, p: LinkPattern, coeff=RING_ONE):
        return cls(p.n, p.s, {p: coeff})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (isinstance(other, LinkState) and self.n == other.n
                and self.s == other.s and self.terms == other.terms)

    def __hash__(self):
        return hash((self.n, self.s, frozenset(self.terms.items())))

    def __add__(self, other):
        if self.n != other.n or self.s != other.s:
            raise SizeMismatch("link state shapes differ")
        out = dict(self.terms)
        for p, c in other.terms.items():
            s = out.get(p)
            s = c if s is None else s + c
            if s:
                out[p] = s
            else:
                out.pop(p, None)
        return LinkState(self.n, self.s, out)

    def __neg__(self):
        return LinkState(self.n, self.s, {p: -c for p, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return LinkState(self.n, self.s, {})
        return LinkState(self.n, self.s, {p: c * cp for p, cp in self.terms.items()})

    def coefficient(self, p: LinkPattern):
        return self.terms.get(p)

    def __repr__(self):
        return f"LinkState({self.n},{self.s},{len(self.terms)} terms)"


def act(t: Tangle, v: LinkState) -> LinkState:
    """Standard-module action of a tangle on a link state; turn-back paths
    are sent to zero, so the defect count is preserved."""
    if t.n != v.n:
        raise SizeMismatch("tangle and state sizes differ")
    if not t.terms or not v.terms:
        return LinkState(v.n, v.s, {})
    nu = nu_for(next(iter(t.terms.values())))
    out = {}
    for d, cd in t.terms.items():
        for p, cp in v.terms.items():
            res = act_on_pattern(d, p)
            if res is ZERO:
                continue
            q, loops = res
            c = cd * cp
            if loops:
                c = c * _nu_power(nu, loops)
            s = out.get(q)
            s = c if s is None else s + c
            if s:
                out[q] = s
            else:
                out.pop(q, None)
    return LinkState(v.n, v.s, out)
