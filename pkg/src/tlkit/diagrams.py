"""Canonical combinatorial encodings of planar link diagrams and link
patterns, plus their composition calculus.

Boundary convention used everywhere: a rectangular picture with m nodes on
the left (numbered 1..m top to bottom) and k nodes on the right (numbered
m+1..m+k bottom to top).  The boundary cycle is then 1, 2, ..., m+k and
planarity is exactly the noncrossing condition on that cycle.  Under this
convention a square diagram and its fold-open link pattern share the same
pair list.
"""

from __future__ import annotations

import json
from functools import lru_cache

from .errors import InvalidDefectCount, SizeMismatch

_WIRING_INTERN = {}
_COMPOSE_MEMO = {}


def _is_noncrossing(pairs):
    for i, (a, b) in enumerate(pairs):
        for c, d in pairs[i + 1:]:
            if a < c < b < d or c < a < d < b:
                return False
    return True


class Wiring:
    """A planar pairing between m left and k right boundary nodes.

    Instances are interned: building the same wiring twice returns the same
    object, which makes composition memoization cheap.
    """

    __slots__ = ("m", "k", "pairs", "uid", "partner")

    def __new__(cls, m, k, pairs, _check=True):
        pairs = tuple(sorted(tuple(sorted(p)) for p in pairs))
        key = (m, k, pairs)
        cached = _WIRING_INTERN.get(key)
        if cached is not None:
            return cached
        self = object.__new__(cls)
        n = m + k
        if _check:
            if n % 2:
                raise ValueError("odd total node count")
            seen = set()
            for a, b in pairs:
                if not (1 <= a <= n and 1 <= b <= n) or a == b:
                    raise ValueError(f"bad pair ({a},{b})")
                seen.update((a, b))
            if len(seen) != n or len(pairs) != n // 2:
                raise ValueError("pairs are not a perfect matching")
            if not _is_noncrossing(pairs):
                raise ValueError(f"crossing pairs in {pairs}")
        self.m = m
        self.k = k
        self.pairs = pairs
        partner = [0] * (n + 1)
        for a, b in pairs:
            partner[a] = b
            partner[b] = a
        self.partner = tuple(partner)
        self.uid = len(_WIRING_INTERN)
        _WIRING_INTERN[key] = self
        return self

    def __reduce__(self):
        return (Wiring, (self.m, self.k, self.pairs))

    def __repr__(self):
        return f"Wiring({self.m},{self.k},{list(map(list, self.pairs))})"

    def __lt__(self, other):
        return (self.m, self.k, self.pairs) < (other.m, other.k, other.pairs)

    def is_square(self):
        return self.m == self.k

    def crossing_count(self):
        """Number of strands joining the left side to the right side."""
        return sum(1 for a, b in self.pairs if a <= self.m < b)

    def dagger(self):
        """Reflection about a vertical axis; swaps the two sides."""
        n = self.m + self.k
        return Wiring(self.k, self.m, [(n + 1 - a, n + 1 - b) for a, b in self.pairs], _check=False)

    def flip(self):
        """Reflection about a horizontal axis (top-bottom)."""
        m, k = self.m, self.k

        def mv(x):
            return m + 1 - x if x <= m else m + k + (m + 1) - x
        return Wiring(m, k, [(mv(a), mv(b)) for a, b in self.pairs], _check=False)

    def tensor(self, other):
        """Stack self above other."""
        m1, k1, m2, k2 = self.m, self.k, other.m, other.k
        pairs = []

        def map1(x):
            return x if x <= m1 else x + m2 + k2

        def map2(x):
            return x + m1
        for a, b in self.pairs:
            pairs.append((map1(a), map1(b)))
        for a, b in other.pairs:
            pairs.append((map2(a), map2(b)))
        return Wiring(m1 + m2, k1 + k2, pairs, _check=False)


def compose(a: Wiring, b: Wiring):
    """Glue a's right side to b's left side (a drawn left of b).

    Returns (wiring, loop_count) where loop_count is the number of closed
    internal loops formed by the gluing.
    """
    if a.k != b.m:
        raise SizeMismatch(f"cannot compose {a.k}-ended wiring with {b.m}-start wiring")
    key = (a.uid, b.uid)
    hit = _COMPOSE_MEMO.get(key)
    if hit is not None:
        return hit
    g = a.k
    na, nb = a.m + a.k, b.m + b.k
    # node ids: a's nodes 1..na, b's nodes na+1..na+nb
    partner = [0] * (na + nb + 1)
    for x in range(1, na + 1):
        partner[x] = a.partner[x]
    for x in range(1, nb + 1):
        partner[na + x] = na + b.partner[x]
    glue = [0] * (na + nb + 1)
    for h in range(1, g + 1):
        # a's right node at height h  <->  b's left node at height h
        x = a.m + (g + 1 - h)
        y = na + h
        glue[x] = y
        glue[y] = x
    boundary = list(range(1, a.m + 1)) + [na + b.m + j for j in range(1, b.k + 1)]

    def rename(z):
        return z if z <= a.m else a.m + (z - na - b.m)

    out_pairs = []
    seen = [False] * (na + nb + 1)
    for start in boundary:
        if seen[start]:
            continue
        seen[start] = True
        x = partner[start]
        while glue[x]:
            seen[x] = True
            x = glue[x]
            seen[x] = True
            x = partner[x]
        seen[x] = True
        out_pairs.append((rename(start), rename(x)))
    loops = 0
    for x in range(a.m + 1, na + 1):
        if not seen[x] and glue[x]:
            loops += 1
            y = x
            while not seen[y]:
                seen[y] = True
                y = glue[y]
                seen[y] = True
                y = partner[y]
    result = (Wiring(a.m, b.k, out_pairs, _check=False), loops)
    _COMPOSE_MEMO[key] = result
    return result


@lru_cache(maxsize=None)
def identity_wiring(n: int) -> Wiring:
    return Wiring(n, n, [(i, 2 * n + 1 - i) for i in range(1, n + 1)], _check=False)


def cup_wiring(n: int) -> Wiring:
    """0 -> 2n nested arcs (left vertex of a closed loop bundle)."""
    return Wiring(0, 2 * n, [(i, 2 * n + 1 - i) for i in range(1, n + 1)], _check=False)


def cap_wiring(n: int) -> Wiring:
    """2n -> 0 nested arcs."""
    return Wiring(2 * n, 0, [(i, 2 * n + 1 - i) for i in range(1, n + 1)], _check=False)


class LinkDiagram:
    """Planar n-link diagram: a noncrossing perfect pairing of 2n nodes,
    n on each side."""

    __slots__ = ("wiring",)

    def __init__(self, n, pairing):
        w = pairing if isinstance(pairing, Wiring) else Wiring(n, n, pairing)
        if w.m != n or w.k != n:
            raise SizeMismatch("diagram sides must both have n nodes")
        self.wiring = w

    @property
    def n(self):
        return self.wiring.m

    @property
    def pairs(self):
        return self.wiring.pairs

    def __eq__(self, other):
        return isinstance(other, LinkDiagram) and self.wiring is other.wiring

    def __hash__(self):
        return hash((LinkDiagram, self.wiring.uid))

    def __lt__(self, other):
        return self.wiring < other.wiring

    def __repr__(self):
        return f"LinkDiagram({self.n}, {list(map(list, self.pairs))})"

    def crossing_count(self):
        return self.wiring.crossing_count()

    def is_identity(self):
        return self.wiring is identity_wiring(self.n)


class LinkPattern:
    """(n, s)-link pattern: partial noncrossing pairing of n nodes with s
    unmatched nodes (defects), none trapped under a link."""

    __slots__ = ("wiring",)

    def __init__(self, n, match, defects=None):
        if isinstance(match, Wiring):
            self.wiring = match
            return
        match = tuple(sorted(tuple(sorted(p)) for p in match))
        matched = {x for p in match for x in p}
        free = sorted(set(range(1, n + 1)) - matched)
        if defects is not None and list(defects) != free:
            raise ValueError("defect list inconsistent with matching")
        s = len(free)
        pairs = list(match)
        for t, d in enumerate(free, start=1):
            pairs.append((d, n + (s + 1 - t)))
        self.wiring = Wiring(n, s, pairs)

    @classmethod
    def from_wiring(cls, w: Wiring):
        for a, b in w.pairs:
            if a > w.m:
                raise ValueError("pattern wiring cannot pair two defect ends")
        self = object.__new__(cls)
        self.wiring = w
        return self

    @property
    def n(self):
        return self.wiring.m

    @property
    def s(self):
        return self.wiring.k

    @property
    def match(self):
        return tuple(p for p in self.wiring.pairs if p[1] <= self.n)

    @property
    def defects(self):
        return tuple(sorted(a for a, b in self.wiring.pairs if b > self.n))

    def __eq__(self, other):
        return isinstance(other, LinkPattern) and self.wiring is other.wiring

    def __hash__(self):
        return hash((LinkPattern, self.wiring.uid))

    def __lt__(self, other):
        return self.wiring < other.wiring

    def __repr__(self):
        return f"LinkPattern({self.n}, {list(map(list, self.match))}, defects={list(self.defects)})"


def enumerate_diagrams(n: int):
    """All n-link diagrams in deterministic lexicographic order; the count
    is the n-th Catalan number."""
    if n < 1:
        raise ValueError("need n >= 1")
    return [LinkDiagram(n, pairs) for pairs in _noncrossing_perfect(tuple(range(1, 2 * n + 1)))]


@lru_cache(maxsize=None)
def _noncrossing_perfect(nodes):
    if not nodes:
        return [()]
    out = []
    a = nodes[0]
    for j in range(1, len(nodes), 2):
        b = nodes[j]
        inside = nodes[1:j]
        outside = nodes[j + 1:]
        for p1 in _noncrossing_perfect(inside):
            for p2 in _noncrossing_perfect(outside):
                out.append(tuple(sorted(((a, b),) + p1 + p2)))
    return sorted(out)


def defect_range(n: int):
    """E_n: the possible defect counts of an (n, s)-link pattern."""
    return list(range(n % 2, n + 1, 2))


def enumerate_patterns(n: int, s: int):
    """All (n, s)-link patterns in lexicographic order of their matchings."""
    if s not in defect_range(n) or s < 0:
        raise InvalidDefectCount(f"s={s} is not admissible for n={n}")
    out = []
    for match in sorted(_partial_noncrossing(tuple(range(1, n + 1)), (n - s) // 2)):
        out.append(LinkPattern(n, match))
    return out


@lru_cache(maxsize=None)
def _partial_noncrossing(nodes, links):
    """Partial noncrossing matchings with `links` links and no unmatched node
    under a link (all unmatched nodes 'visible from infinity')."""
    if links == 0:
        return [()]
    if len(nodes) < 2 * links:
        return []
    out = []
    a = nodes[0]
    # node a is either a defect (left unmatched) or opens a link
    for rest in _partial_noncrossing(nodes[1:], links):
        out.append(rest)
    for j in range(1, len(nodes)):
        b = nodes[j]
        inside = nodes[1:j]
        outside = nodes[j + 1:]
        if len(inside) % 2:
            continue
        used_inside = len(inside) // 2
        if used_inside > links - 1:
            continue
        for p1 in _noncrossing_perfect(inside):
            for p2 in _partial_noncrossing(outside, links - 1 - used_inside):
                out.append(tuple(sorted(((a, b),) + p1 + p2)))
    return out


def compose_diagrams(a: LinkDiagram, b: LinkDiagram):
    """Concatenate a to the left of b; returns (diagram, loop_count)."""
    if a.n != b.n:
        raise SizeMismatch(f"compose: {a.n} != {b.n}")
    w, loops = compose(a.wiring, b.wiring)
    return LinkDiagram(a.n, w), loops


class Zero:
    """Marker for a pattern action that produced a turn-back path."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = object.__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Zero"


ZERO = Zero()


def act_on_pattern(d: LinkDiagram, p: LinkPattern):
    """Concatenate the diagram d to the pattern p.

    Returns (pattern, loop_count), or ZERO when a pattern defect connects
    into a turn-back path.
    """
    if d.n != p.n:
        raise SizeMismatch(f"act: {d.n} != {p.n}")
    w, loops = compose(d.wiring, p.wiring)
    for a, b in w.pairs:
        if a > w.m:
            return ZERO
    return LinkPattern.from_wiring(w), loops


def dagger(d: LinkDiagram) -> LinkDiagram:
    return LinkDiagram(d.n, d.wiring.dagger())


def identity_diagram(n: int) -> LinkDiagram:
    return LinkDiagram(n, identity_wiring(n))


def cap_pattern(n: int) -> LinkPattern:
    """The rainbow (2n, 0)-link pattern, image of the identity diagram."""
    return LinkPattern(2 * n, [(i, 2 * n + 1 - i) for i in range(1, n + 1)])


def fold_open(d: LinkDiagram) -> LinkPattern:
    """The (2n, 0)-link pattern with the same pair list as d (a bijection)."""
    return LinkPattern(d.n * 2, d.pairs)


def fold_close(p: LinkPattern) -> LinkDiagram:
    """Inverse of fold_open."""
    if p.s != 0 or p.n % 2:
        raise InvalidDefectCount("only (2n, 0)-patterns fold closed")
    return LinkDiagram(p.n // 2, p.match)


def tensor_diagrams(a: LinkDiagram, b: LinkDiagram) -> LinkDiagram:
    """Place a above b."""
    return LinkDiagram(a.n + b.n, a.wiring.tensor(b.wiring))


def encode_diagram(d: LinkDiagram) -> str:
    return json.dumps([list(p) for p in d.pairs])


def decode_diagram(text: str) -> LinkDiagram:
    pairs = json.loads(text)
    return LinkDiagram(len(pairs), [tuple(p) for p in pairs])


def encode_pattern(p: LinkPattern) -> str:
    return json.dumps({"match": [list(q) for q in p.match], "defects": list(p.defects)})


def decode_pattern(text: str) -> LinkPattern:
    data = json.loads(text)
    n = max([x for q in data["match"] for x in q] + list(data["defects"]) + [0])
    return LinkPattern(n, [tuple(q) for q in data["match"]], data["defects"])
