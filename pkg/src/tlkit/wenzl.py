"""Jones-Wenzl projectors.

Two independent constructions are provided: Wenzl's recursion and the
closed-form coefficients obtained from link enumerations of the fold-open
pattern.  The recursion is run fraction-free: the scaled projector
[n]! * P_n has integer Laurent coefficients throughout, and the single
division by [n]! happens at the end.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass

from .coeffring import (
    GENERIC,
    LaurentPoly,
    QParam,
    RING_ONE,
    RingElem,
    qfact,
    qfact_poly,
    qint,
    qint_poly,
)
from .diagrams import (
    LinkDiagram,
    LinkPattern,
    decode_diagram,
    encode_diagram,
    enumerate_diagrams,
    fold_open,
    identity_diagram,
)
from .errors import ParameterMismatch, RootOfUnityObstruction, TLKitError
from .tl import Tangle, generator_U

_CACHE_LOCK = threading.Lock()
_SCALED_CACHE = {}   # n -> Tangle over LaurentPoly coefficients, [n]! * P_n
_PROJ_CACHE = {}     # n -> Tangle over RingElem, P_n
_COEF_CACHE = {}     # (num poly, n) -> RingElem  num/[n]!

CACHE_FORMAT = "tlkit-projector-cache"
CACHE_VERSION = 1


@dataclass(frozen=True)
class Projector:
    """A Jones-Wenzl projector P_n with its full diagram expansion."""

    n: int
    expansion: Tangle


def _check_size(n: int, param: QParam):
    if n >= param.pbar():
        raise RootOfUnityObstruction(
            f"P_{n} needs n < pbar(q) = {param.pbar()} at {param.key()}")


def _scaled_projector(n: int) -> Tangle:
    """[n]! * P_n in TL_n with integer Laurent-polynomial coefficients."""
    with _CACHE_LOCK:
        hit = _SCALED_CACHE.get(n)
    if hit is not None:
        return hit
    one = LaurentPoly.const(1)
    q = Tangle.unit(1, one)
    with _CACHE_LOCK:
        _SCALED_CACHE.setdefault(1, q)
    for s in range(1, n):
        with _CACHE_LOCK:
            nxt = _SCALED_CACHE.get(s + 1)
        if nxt is not None:
            q = nxt
            continue
        with _CACHE_LOCK:
            q = _SCALED_CACHE[s]
        emb = q.tensor(Tangle.unit(1, one))
        mid = emb * generator_U(s + 1, s, one) * emb
        mid = mid.map_coefficients(lambda c: c.divexact(qfact_poly(s - 1)))
        q = emb.scale(qint_poly(s + 1)) + mid
        with _CACHE_LOCK:
            _SCALED_CACHE.setdefault(s + 1, q)
    return q


def _coef_from_scaled(c: LaurentPoly, n: int) -> RingElem:
    key = (c, n)
    hit = _COEF_CACHE.get(key)
    if hit is None:
        hit = RingElem(c, qfact_poly(n))
        _COEF_CACHE[key] = hit
    return hit


def projector_tangle(n: int, param: QParam = GENERIC) -> Tangle:
    """P_n as a tangle in TL_n; coefficients in the domain of param."""
    if n < 0:
        raise ValueError("projector size must be >= 0")
    _check_size(n, param)
    if n == 0:
        return Tangle.unit(0, param.one())
    with _CACHE_LOCK:
        t = _PROJ_CACHE.get(n)
    if t is None:
        scaled = _scaled_projector(n)
        t = Tangle(n, {d: _coef_from_scaled(c, n) for d, c in scaled.terms.items()})
        with _CACHE_LOCK:
            _PROJ_CACHE.setdefault(n, t)
    if param.is_generic:
        return t
    return t.map_coefficients(param.coerce)


def projector_recursive(n: int, param: QParam = GENERIC) -> Projector:
    """P_n built by the recursion P_{s+1} = P_s + ([s]/[s+1]) P_s U_s P_s."""
    return Projector(n, projector_tangle(n, param))


def projector_embedded(n_total: int, s: int, param: QParam = GENERIC) -> Tangle:
    """P_s acting on the top s of n_total strands (identity elsewhere)."""
    _check_size(s, param)
    if s == n_total:
        return projector_tangle(s, param)
    if s == 0:
        return Tangle.unit(n_total, param.one())
    rest = Tangle.unit(n_total - s, param.one())
    return projector_tangle(s, param).tensor(rest)


def special_diagram(n: int, i: int, j: int, k: int, m: int, mirrored=False) -> LinkDiagram:
    """The n-link diagram with k top strands, i nested cups/caps, j crossing
    strands and m bottom strands (mirrored swaps cups with caps)."""
    if 2 * i + j + k + m != n or min(i, j, k, m) < 0:
        raise ParameterMismatch(f"need 2i+j+k+m = n, got {(i, j, k, m)} for n={n}")
    pairs = []
    for a in range(1, k + 1):                      # top straight strands
        pairs.append((a, 2 * n + 1 - a))
    for a in range(1, i + 1):                      # nested cups on the left
        pairs.append((k + a, k + 2 * i + 1 - a))
    for c in range(1, m + 1):                      # bottom straight strands
        pairs.append((n - m + c, n + m + 1 - c))
    for a in range(1, i + 1):                      # nested caps on the right
        pairs.append((n + m + a, n + m + 2 * i + 1 - a))
    for b in range(1, j + 1):                      # crossing strands
        pairs.append((k + 2 * i + b, 2 * n - k + 1 - b))
    d = LinkDiagram(n, pairs)
    if mirrored:
        from .diagrams import dagger
        d = dagger(d)
    return d


@dataclass(frozen=True)
class Enumeration:
    """An admissible link labeling of a defect-free pattern: the sequence of
    left endpoints together with its nesting-count offsets."""

    theta: tuple
    gamma: tuple


def enumerate_labelings(alpha: LinkPattern):
    """All admissible link enumerations of a (2n, 0)-link pattern, in
    lexicographic order of the left-endpoint sequences.

    A labeling is admissible when no link nests a later-labeled link and the
    right endpoint of the i-th link is at most i + n.
    """
    if alpha.s != 0:
        raise ValueError("labelings are defined for defect-free patterns")
    links = list(alpha.match)
    n = len(links)
    half = alpha.n // 2
    nests = {L: [M for M in links if L[0] < M[0] and M[1] < L[1]] for L in links}
    out = []

    def rec(chosen, remaining):
        idx = len(chosen) + 1
        if not remaining:
            out.append(tuple(chosen))
            return
        for L in remaining:
            if L[1] > idx + half:
                continue
            if any(M in remaining for M in nests[L] if M != L):
                continue
            rec(chosen + [L], [M for M in remaining if M != L])

    rec([], links)
    results = []
    for order in out:
        theta = tuple(a for a, b in order)
        gamma = tuple(2 * sum(1 for j in range(i) if theta[j] < theta[i])
                      for i in range(n))
        results.append(Enumeration(theta, gamma))
    results.sort(key=lambda e: e.theta)
    return results


_CLOSED_NUM_CACHE = {}


def _closed_form_numerator(alpha: LinkPattern) -> LaurentPoly:
    key = alpha.wiring.uid
    hit = _CLOSED_NUM_CACHE.get(key)
    if hit is not None:
        return hit
    total = LaurentPoly()
    for lab in enumerate_labelings(alpha):
        prod = LaurentPoly.const(1)
        for a, g in zip(lab.theta, lab.gamma):
            prod = prod * qint_poly(a - g)
            if prod.is_zero():
                break
        total = total + prod
    _CLOSED_NUM_CACHE[key] = total
    return total


def coefficient_closed_form(T: LinkDiagram, param: QParam = GENERIC):
    """Projector coefficient of the diagram T in P_n via the labeling sum."""
    _check_size(T.n, param)
    num = _closed_form_numerator(fold_open(T))
    return param.coerce(_coef_from_scaled(num, T.n))


def coefficient_special(n: int, i: int, j: int, k: int, m: int,
                        param: QParam = GENERIC):
    """Projector coefficient of special_diagram(n, i, j, k, m):
    [i+k]! [i+m]! [i+j+k+m]! / ([n]! [i]! [k]! [m]!)."""
    if 2 * i + j + k + m != n or min(i, j, k, m) < 0:
        raise ParameterMismatch(f"need 2i+j+k+m = n, got {(i, j, k, m)}")
    _check_size(n, param)
    num = qfact_poly(i + k) * qfact_poly(i + m) * qfact_poly(i + j + k + m)
    den = qfact_poly(n) * qfact_poly(i) * qfact_poly(k) * qfact_poly(m)
    return param.coerce(RingElem(num, den))


@dataclass
class ProjectorReport:
    checks: dict

    @property
    def passed(self):
        return all(self.checks.values())


def verify_projector(p: Projector, param: QParam = GENERIC) -> ProjectorReport:
    """Check P^2 = P, U_i P = P U_i = 0, and absorption P_n P_t = P_n."""
    t = p.expansion
    n = p.n
    one = param.one()
    checks = {}
    checks["unit_coefficient"] = t.coefficient(identity_diagram(n)) == one
    checks["idempotent"] = t * t == t
    for i in range(1, n):
        u = generator_U(n, i, one)
        checks[f"kills_U_{i}_left"] = (u * t).is_zero()
        checks[f"kills_U_{i}_right"] = (t * u).is_zero()
    for s in range(1, n):
        if s < param.pbar():
            emb = projector_embedded(n, s, param)
            checks[f"absorbs_P_{s}"] = (t * emb == t) and (emb * t == t)
    return ProjectorReport(checks)


def save_cache(path, sizes=None, param: QParam = GENERIC):
    """Write cached projector expansions to a versioned cache file."""
    if not param.is_generic:
        raise TLKitError("only generic-mode expansions are persisted")
    with _CACHE_LOCK:
        known = sorted(_PROJ_CACHE) if sizes is None else sorted(sizes)
    lines = [json.dumps({"format": CACHE_FORMAT, "version": CACHE_VERSION})]
    for n in known:
        t = projector_tangle(n)
        terms = []
        for d in sorted(t.terms):
            c = t.terms[d]
            terms.append({
                "pairs": [list(p) for p in d.pairs],
                "num": _poly_payload(c.num),
                "den": _poly_payload(c.den),
            })
        lines.append(json.dumps({"n": n, "mode": param.key(), "terms": terms},
                                separators=(",", ":")))
    text = "\n".join(lines) + "\n"
    with open(path, "w") as fh:
        fh.write(text)
    return len(known)


def load_cache(path):
    """Load a cache file, populating the in-process projector cache.

    Round-trips bit-exactly with save_cache.
    """
    with open(path) as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines:
        raise TLKitError("empty cache file")
    head = json.loads(lines[0])
    if head.get("format") != CACHE_FORMAT or head.get("version") != CACHE_VERSION:
        raise TLKitError(f"unrecognized cache header {head!r}")
    loaded = []
    for ln in lines[1:]:
        rec = json.loads(ln)
        if rec["mode"] != "generic":
            raise TLKitError(f"unsupported cache mode {rec['mode']!r}")
        n = rec["n"]
        terms = {}
        for item in rec["terms"]:
            d = decode_diagram(json.dumps(item["pairs"]))
            terms[d] = RingElem(_poly_from_payload(item["num"]),
                                _poly_from_payload(item["den"]))
        t = Tangle(n, terms)
        with _CACHE_LOCK:
            _PROJ_CACHE[n] = t
        loaded.append(n)
    return loaded


def _poly_payload(p: LaurentPoly):
    return [[e, str(p.coeffs[e])] for e in sorted(p.coeffs)]


def _poly_from_payload(items):
    from fractions import Fraction
    out = {}
    for e, c in items:
        f = Fraction(c)
        out[e] = int(f) if f.denominator == 1 else f
    return LaurentPoly(out)


def clear_caches():
    with _CACHE_LOCK:
        _SCALED_CACHE.clear()
        _PROJ_CACHE.clear()
        _COEF_CACHE.clear()
