"""The Bruhat-Tits tree of SL2 over F_q((1/t)) in the closed-ball model.

A vertex is the homothety class of a rank-2 lattice over the valuation ring
at infinity; equivalently a closed ball B_a^{|r|} = a + pi^r*O in K, stored
canonically as the radius exponent r together with the pi-expansion of the
center truncated below r.  The lattice of B_a^{|r|} is spanned by the
columns (a, 1) and (pi^r, 0), and GL2 acts by g.[L] = [g(L)].

Neighbor convention: the parent of a vertex is the next larger ball
(radius exponent r-1); its q children are the maximal sub-balls
(radius exponent r+1).  Valency is q+1.
"""

from __future__ import annotations

from .algebra import (LaurentFragment, Polynomial, RationalFunction,
                      expand_at_infinity, format_fragment,
                      format_rational, parse_fragment)


class TreeError(ValueError):
    pass


class BallVertex:
    """Canonical tree vertex: ball of radius |pi^r| with truncated center."""

    __slots__ = ("field", "r", "center", "_key")

    def __init__(self, field, r, center):
        if center.cutoff != r:
            center = center.truncate(r)
        self.field = field
        self.r = r
        self.center = center
        self._key = (r, center.key())

    @classmethod
    def base(cls, field):
        """The standard vertex B_0^{|0|} (the class of O x O)."""
        return cls(field, 0, LaurentFragment.zero(field, 0))

    @classmethod
    def standard(cls, field, n):
        """v_n = B_0^{|-n|}, the level-n vertex on the standard ray."""
        return cls(field, -n, LaurentFragment.zero(field, -n))

    def key(self):
        return self._key

    def parity(self):
        return self.r & 1

    def center_rational(self):
        return self.center.to_rational()

    def basis(self):
        """Lattice basis with columns (center, 1) and (pi^r, 0)."""
        f = self.field
        return Matrix2(self.center_rational(),
                       RationalFunction.t_power(f, -self.r),
                       RationalFunction.one(f),
                       RationalFunction.zero(f))

    def parent(self):
        return BallVertex(self.field, self.r - 1, self.center)

    def children(self):
        f = self.field
        out = []
        for c in range(f.q):
            extra = LaurentFragment(f, {self.r: c} if c else {}, self.r + 1)
            center = LaurentFragment(
                f, dict(self.center.terms), self.r + 1) + extra
            out.append(BallVertex(f, self.r + 1, center))
        return out

    def neighbors(self):
        """Parent followed by the q children; exactly q+1 vertices."""
        return [self.parent()] + self.children()

    def __eq__(self, other):
        return (isinstance(other, BallVertex)
                and self.field == other.field and self._key == other._key)

    def __hash__(self):
        return hash((self.field.q, self._key))

    def to_text(self):
        return "r=%d;a=%s" % (self.r, format_fragment(self.center))

    @classmethod
    def from_text(cls, text, field):
        t = "".join(text.split())
        if not t.startswith("r="):
            raise TreeError("vertex text must start with 'r=': %r" % text)
        body = t[2:]
        if ";a=" not in body:
            raise TreeError("vertex text missing ';a=': %r" % text)
        rs, afmt = body.split(";a=", 1)
        try:
            r = int(rs)
        except ValueError:
            raise TreeError("bad radius exponent in %r" % text)
        return cls(field, r, parse_fragment(afmt, field, r))

    def __repr__(self):
        return "BallVertex(%s)" % self.to_text()


class Matrix2:
    """2x2 matrix over F_q(t): [[a, b], [c, d]]."""

    __slots__ = ("a", "b", "c", "d", "_key")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d
        self._key = (a.key(), b.key(), c.key(), d.key())

    @classmethod
    def identity(cls, field):
        one = RationalFunction.one(field)
        zero = RationalFunction.zero(field)
        return cls(one, zero, zero, one)

    @classmethod
    def involution(cls, field):
        """I = [[0,1],[1,0]]."""
        one = RationalFunction.one(field)
        zero = RationalFunction.zero(field)
        return cls(zero, one, one, zero)

    @classmethod
    def translation(cls, f):
        """tau_f = [[1,-f],[0,1]]; acts on balls by center shift a -> a-f."""
        if isinstance(f, Polynomial):
            f = RationalFunction(f)
        field = f.field
        one = RationalFunction.one(field)
        zero = RationalFunction.zero(field)
        return cls(one, -f, zero, one)

    @classmethod
    def diagonal(cls, field, alpha, beta):
        zero = RationalFunction.zero(field)
        return cls(RationalFunction.constant(field, alpha), zero,
                   zero, RationalFunction.constant(field, beta))

    @classmethod
    def from_polynomials(cls, a, b, c, d):
        return cls(RationalFunction(a), RationalFunction(b),
                   RationalFunction(c), RationalFunction(d))

    @property
    def field(self):
        return self.a.field

    def det(self):
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other):
        return Matrix2(self.a * other.a + self.b * other.c,
                       self.a * other.b + self.b * other.d,
                       self.c * other.a + self.d * other.c,
                       self.c * other.b + self.d * other.d)

    def inverse(self):
        det = self.det()
        if det.is_zero():
            raise TreeError("singular matrix")
        inv = det.inverse()
        return Matrix2(self.d * inv, -self.b * inv,
                       -self.c * inv, self.a * inv)

    def is_polynomial(self):
        return all(x.is_polynomial() for x in (self.a, self.b, self.c, self.d))

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Matrix2) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "[[%s, %s], [%s, %s]]" % tuple(
            format_rational(x) for x in self.entries())


# a lattice basis is a nonsingular 2x2 matrix whose columns span the lattice
# over the valuation ring; it shares all structure with group elements
LatticeBasis = Matrix2


def canonicalize(m):
    """Canonical ball form of the lattice spanned by the columns of m.

    Column operations over the valuation ring O: put the bottom-row entry of
    minimal valuation first, clear the other bottom entry with an O-multiple,
    rescale by the pivot, then read r = nu(top-right) and truncate the
    top-left ratio below r.  Invariant under right multiplication by
    O-unimodular matrices and under global scaling.
    """
    if m.det().is_zero():
        raise TreeError("singular lattice basis")
    a, b, c, d = m.a, m.b, m.c, m.d
    if c.valuation() > d.valuation():
        a, b = b, a
        c, d = d, c
    # now nu(c) <= nu(d) and c != 0
    f = d / c
    b = b - f * a
    top_left = a / c
    top_right = b / c
    r = top_right.valuation()
    field = m.field
    return BallVertex(field, r, expand_at_infinity(top_left, r))


def act(g, v):
    """Image of a vertex under g in GL2; requires det(g) != 0."""
    if g.det().is_zero():
        raise TreeError("singular matrix cannot act")
    return canonicalize(g @ v.basis())


def distance(v, w):
    """Tree distance via the ball formula (r-m) + (r'-m),
    m = min(r, r', nu(a-a'))."""
    if v.field != w.field:
        raise TreeError("vertices over different fields")
    diff = v.center_rational() - w.center_rational()
    m = min(v.r, w.r, diff.valuation())
    return (v.r - m) + (w.r - m)


def distance_invariant_factors(v, w):
    """Tree distance via invariant factors of the basis-change matrix:
    |nu(det N) - 2*min nu(N_ij)| for N = M^{-1} M'."""
    n = v.basis().inverse() @ w.basis()
    vmin = min(x.valuation() for x in n.entries())
    return abs(n.det().valuation() - 2 * vmin)


def distance_bfs(v, w, max_depth=8):
    """Tree distance by breadth-first search; None beyond max_depth."""
    if v == w:
        return 0
    frontier = {v.key(): v}
    seen = {v.key()}
    for d in range(1, max_depth + 1):
        nxt = {}
        for u in frontier.values():
            for nb in u.neighbors():
                k = nb.key()
                if k in seen:
                    continue
                if nb == w:
                    return d
                seen.add(k)
                nxt[k] = nb
        frontier = nxt
    return None


class RationalEnd:
    """Boundary point of the tree defined over F_q(t): an element of k,
    or the point at infinity."""

    __slots__ = ("value",)

    def __init__(self, value=None):
        self.value = value  # None encodes infinity

    @classmethod
    def infinity(cls, field=None):
        return cls(None)

    @classmethod
    def of(cls, rf):
        return cls(rf)

    def is_infinity(self):
        return self.value is None

    def __eq__(self, other):
        return isinstance(other, RationalEnd) and self.value == other.value

    def __hash__(self):
        return hash(("end", self.value))

    def __repr__(self):
        return "End(inf)" if self.value is None \
            else "End(%s)" % format_rational(self.value)


def moebius_end(g, xi):
    """(a*xi + b) / (c*xi + d) with the usual conventions at infinity."""
    if g.det().is_zero():
        raise TreeError("singular matrix cannot act")
    if xi.is_infinity():
        if g.c.is_zero():
            return RationalEnd.infinity()
        return RationalEnd.of(g.a / g.c)
    x = xi.value
    den = g.c * x + g.d
    if den.is_zero():
        return RationalEnd.infinity()
    return RationalEnd.of((g.a * x + g.b) / den)


__all__ = [
    "TreeError", "BallVertex", "Matrix2", "LatticeBasis", "canonicalize",
    "act", "distance", "distance_invariant_factors", "distance_bfs",
    "RationalEnd", "moebius_end",
]
