"""Exact arithmetic in Q and in towers of at most two quadratic extensions.

An element of a tower of depth ``d`` is stored as a flat tuple of ``2**d``
rationals, its coordinates over the power basis ``{1, a}`` (depth 1) or
``{1, a, b, a*b}`` (depth 2).  Every level of a tower is a monic quadratic
``x**2 + c1*x + c0`` whose coefficients live in the level below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Integral, Rational as _RationalABC

import gmpy2
from gmpy2 import mpq

MAX_DEPTH = 2
GENERATOR_NAMES = ("a", "b")


class TowerMismatch(ValueError):
    pass


class DivisionByZero(ZeroDivisionError):
    pass


class UnsupportedDepth(ValueError):
    pass


class ReducibleInput(ValueError):
    pass


class DepthExceeded(ValueError):
    pass


class DegreeTooHigh(ValueError):
    pass


def to_rational(x) -> mpq:
    """Coerce ints, Fractions, mpq and ``"p/q"`` strings to a reduced mpq."""
    if isinstance(x, str):
        num, _, den = x.strip().partition("/")
        return mpq(int(num), int(den) if den else 1)
    if isinstance(x, (Integral, type(mpq(0)))):
        return mpq(x)
    if isinstance(x, _RationalABC):
        return mpq(x.numerator, x.denominator)
    raise TypeError(f"cannot coerce {x!r} to a rational")


def rational_sqrt(x) -> mpq | None:
    """Nonnegative square root of a rational, or None."""
    x = mpq(x)
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    if gmpy2.is_square(n) and gmpy2.is_square(d):
        return mpq(gmpy2.isqrt(n), gmpy2.isqrt(d))
    return None


# -- flat coordinate arithmetic ------------------------------------------------

def _zero(n):
    return (mpq(0),) * n


def _is_zero(u):
    return not any(u)


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _neg(u):
    return tuple(-a for a in u)


def _scale(u, s):
    return tuple(a * s for a in u)


def _mul(levels, u, v):
    n = len(u)
    if n == 1:
        return (u[0] * v[0],)
    h = n // 2
    a0, a1, b0, b1 = u[:h], u[h:], v[:h], v[h:]
    sub = levels[:-1]
    lo = _mul(sub, a0, b0)
    z1, w1 = _is_zero(a1), _is_zero(b1)
    if z1 and w1:
        return lo + _zero(h)
    if z1:
        return lo + _mul(sub, a0, b1)
    if w1:
        return lo + _mul(sub, a1, b0)
    c0, c1 = levels[-1]
    t11 = _mul(sub, a1, b1)
    mid = _add(_mul(sub, a0, b1), _mul(sub, a1, b0))
    # gen**2 = -c1*gen - c0
    return _sub(lo, _mul(sub, t11, c0)) + _sub(mid, _mul(sub, t11, c1))


def _inv(levels, u):
    n = len(u)
    if n == 1:
        if not u[0]:
            raise DivisionByZero("inverse of zero")
        return (1 / u[0],)
    h = n // 2
    a0, a1 = u[:h], u[h:]
    sub = levels[:-1]
    if _is_zero(a1):
        return _inv(sub, a0) + _zero(h)
    c0, c1 = levels[-1]
    conj0 = _sub(a0, _mul(sub, c1, a1))
    norm = _add(_sub(_mul(sub, a0, a0), _mul(sub, c1, _mul(sub, a0, a1))),
                _mul(sub, c0, _mul(sub, a1, a1)))
    ninv = _inv(sub, norm)
    return _mul(sub, conj0, ninv) + _neg(_mul(sub, a1, ninv))


def _pad(u, n):
    return tuple(u) + _zero(n - len(u))


# -- towers --------------------------------------------------------------------

class FieldTower:
    """Q, Q[a] or Q[a][b] with monic quadratic minimal polynomials.

    ``levels[k] = (c0, c1)`` encodes ``x**2 + c1*x + c0`` where ``c0``, ``c1``
    are flat coordinate tuples over the tower of depth ``k``.
    """

    __slots__ = ("levels", "depth", "degree", "_hash")

    def __init__(self, levels=()):
        levels = tuple(
            (tuple(to_rational(x) for x in c0), tuple(to_rational(x) for x in c1))
            for c0, c1 in levels
        )
        if len(levels) > MAX_DEPTH:
            raise DepthExceeded(f"tower depth {len(levels)} exceeds {MAX_DEPTH}")
        for k, (c0, c1) in enumerate(levels):
            if len(c0) != 2 ** k or len(c1) != 2 ** k:
                raise ValueError(f"level {k} coefficients must have length {2 ** k}")
        self.levels = levels
        self.depth = len(levels)
        self.degree = 2 ** self.depth
        self._hash = hash(levels)
        for k in range(self.depth):
            below = self.truncate(k)
            c0, c1 = (below.element(c) for c in levels[k])
            if is_square(c1 * c1 - 4 * c0) is not None:
                raise ReducibleInput(f"level {k} minimal polynomial is reducible")

    def truncate(self, depth: int) -> FieldTower:
        if depth == self.depth:
            return self
        t = object.__new__(FieldTower)
        t.levels = self.levels[:depth]
        t.depth = depth
        t.degree = 2 ** depth
        t._hash = hash(t.levels)
        return t

    def extends(self, other: FieldTower) -> bool:
        """True when ``other`` is a sub-tower (prefix) of ``self``."""
        return other.depth <= self.depth and self.levels[: other.depth] == other.levels

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self.levels == other.levels

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if not self.depth:
            return "QQ"
        parts = []
        for k, (c0, c1) in enumerate(self.levels):
            below = self.truncate(k)
            g = GENERATOR_NAMES[k]
            parts.append(f"{g}^2 + ({below.element(c1)})*{g} + ({below.element(c0)})")
        return "QQ[" + "][".join(parts) + "]"

    def element(self, coords) -> FieldElement:
        coords = tuple(to_rational(c) for c in coords)
        return FieldElement(self, _pad(coords, self.degree))

    def __call__(self, x) -> FieldElement:
        return self.coerce(x)

    def coerce(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.tower == self:
                return x
            if self.extends(x.tower):
                return FieldElement(self, _pad(x.coords, self.degree))
            if x.tower.extends(self) and not any(x.coords[self.degree:]):
                return FieldElement(self, x.coords[: self.degree])
            raise TowerMismatch(f"{x!r} does not live in {self!r}")
        return FieldElement(self, _pad((to_rational(x),), self.degree))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, _zero(self.degree))

    @property
    def one(self) -> FieldElement:
        return self.coerce(1)

    def gen(self, level: int | None = None) -> FieldElement:
        """Generator adjoined at ``level`` (default: the top one)."""
        if level is None:
            level = self.depth - 1
        if not 0 <= level < self.depth:
            raise ValueError("QQ has no generator" if not self.depth else f"no level {level}")
        coords = [mpq(0)] * self.degree
        coords[2 ** level] = mpq(1)
        return FieldElement(self, tuple(coords))

    def minpoly(self, level: int | None = None) -> UniPoly:
        if level is None:
            level = self.depth - 1
        below = self.truncate(level)
        c0, c1 = self.levels[level]
        return UniPoly([below.element(c0), below.element(c1), below.one])

    def real_embedding(self):
        """Float images of the generators under the fixed real embedding.

        Each generator maps to the root ``(-c1 + sqrt(disc))/2``; returns None
        when some level has a negative discriminant (no real embedding).
        """
        values = []
        for k, (c0, c1) in enumerate(self.levels):
            c0f = _float_eval(c0, values)
            c1f = _float_eval(c1, values)
            disc = c1f * c1f - 4 * c0f
            if disc < 0:
                return None
            values.append((-c1f + math.sqrt(disc)) / 2)
        return values


QQ = FieldTower()


def common_tower(*xs) -> FieldTower:
    """The largest tower among the FieldElements in ``xs`` (others must be sub-towers)."""
    best = QQ
    for x in xs:
        if isinstance(x, FieldElement):
            t = x.tower
            if t.extends(best):
                best = t
            elif not best.extends(t):
                raise TowerMismatch(f"{best!r} and {t!r} are incompatible")
    return best


# -- elements ------------------------------------------------------------------

class FieldElement:
    __slots__ = ("tower", "coords")

    def __init__(self, tower: FieldTower, coords):
        if len(coords) != tower.degree:
            raise ValueError(f"expected {tower.degree} coordinates, got {len(coords)}")
        self.tower = tower
        self.coords = tuple(coords)

    def _pair(self, other):
        if isinstance(other, FieldElement):
            if other.tower == self.tower:
                return self.tower, self.coords, other.coords
            t = common_tower(self, other)
            return t, t.coerce(self).coords, t.coerce(other).coords
        try:
            o = self.tower.coerce(other)
        except TypeError:
            return None
        return self.tower, self.coords, o.coords

    def __add__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, u, v = p
        return FieldElement(t, _add(u, v))

    __radd__ = __add__

    def __sub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, u, v = p
        return FieldElement(t, _sub(u, v))

    def __rsub__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, u, v = p
        return FieldElement(t, _sub(v, u))

    def __mul__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, u, v = p
        return FieldElement(t, _mul(t.levels, u, v))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if not any(self.coords):
            raise DivisionByZero("division by zero in " + repr(self.tower))
        return FieldElement(self.tower, _inv(self.tower.levels, self.coords))

    def __truediv__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, u, v = p
        if not any(v):
            raise DivisionByZero("division by zero in " + repr(t))
        return FieldElement(t, _mul(t.levels, u, _inv(t.levels, v)))

    def __rtruediv__(self, other):
        p = self._pair(other)
        if p is None:
            return NotImplemented
        t, u, v = p
        return FieldElement(t, v) / FieldElement(t, u)

    def __neg__(self):
        return FieldElement(self.tower, _neg(self.coords))

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.tower.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return any(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational(self) -> mpq:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def first_nonzero(self) -> mpq:
        for c in self.coords:
            if c:
                return c
        return mpq(0)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            if other.tower == self.tower:
                return self.coords == other.coords
            try:
                t = common_tower(self, other)
            except TowerMismatch:
                return False
            return t.coerce(self).coords == t.coerce(other).coords
        try:
            o = to_rational(other)
        except TypeError:
            return NotImplemented
        return self.coords[0] == o and not any(self.coords[1:])

    def __hash__(self):
        coords = list(self.coords)
        while len(coords) > 1 and not coords[-1]:
            coords.pop()
        if len(coords) == 1:
            return hash(coords[0])
        return hash(tuple(coords))

    def __float__(self):
        gens = self.tower.real_embedding()
        if gens is None:
            raise ValueError(f"{self.tower!r} has no real embedding")
        return _float_eval(self.coords, gens)

    def __str__(self):
        names = ["1", "a", "b", "a*b"]
        terms = []
        for c, name in zip(self.coords, names):
            if not c:
                continue
            if name == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(name)
            elif c == -1:
                terms.append("-" + name)
            else:
                terms.append(f"{c}*{name}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    def __repr__(self):
        return f"FieldElement({self})" if self.tower.depth else str(self)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]


def _float_eval(coords, gens):
    n = len(coords)
    if n == 1:
        return float(coords[0])
    h = n // 2
    return _float_eval(coords[:h], gens) + _float_eval(coords[h:], gens) * gens[h.bit_length() - 1]


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    if isinstance(a, FieldElement) and isinstance(b, FieldElement) and a.tower != b.tower:
        raise TowerMismatch(f"{a.tower!r} != {b.tower!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# -- polynomials ---------------------------------------------------------------

class UniPoly:
    """Univariate polynomial in the chain parameter, coefficients low degree first."""

    __slots__ = ("tower", "coeffs")

    def __init__(self, coeffs, tower: FieldTower | None = None):
        coeffs = list(coeffs)
        if tower is None:
            tower = common_tower(*coeffs)
        coeffs = [tower.coerce(c) for c in coeffs]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.tower = tower
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, c, tower=None):
        return cls([c], tower)

    @classmethod
    def variable(cls, tower=QQ):
        return cls([tower.zero, tower.one], tower)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def leading(self) -> FieldElement:
        return self.coeffs[-1] if self.coeffs else self.tower.zero

    def coeff(self, k) -> FieldElement:
        return self.coeffs[k] if k < len(self.coeffs) else self.tower.zero

    def lift(self, tower: FieldTower) -> UniPoly:
        return UniPoly(self.coeffs, tower)

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            if other.tower == self.tower:
                return self.tower, self, other
            t = common_tower(self.tower.zero, other.tower.zero)
            return t, self.lift(t), other.lift(t)
        c = other if isinstance(other, FieldElement) else self.tower.coerce(other)
        t = common_tower(self.tower.zero, c)
        return t, self.lift(t), UniPoly([c], t)

    def __add__(self, other):
        t, a, b = self._coerce(other)
        n = max(len(a.coeffs), len(b.coeffs))
        return UniPoly([a.coeff(k) + b.coeff(k) for k in range(n)], t)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.tower)

    def __sub__(self, other):
        t, a, b = self._coerce(other)
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        t, a, b = self._coerce(other)
        if not a.coeffs or not b.coeffs:
            return UniPoly([], t)
        out = [t.zero] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    out[i + j] = out[i + j] + x * y
        return UniPoly(out, t)

    __rmul__ = __mul__

    def divmod(self, other: UniPoly):
        t, a, b = self._coerce(other)
        if not b.coeffs:
            raise DivisionByZero("polynomial division by zero")
        rem = list(a.coeffs)
        q = [t.zero] * max(len(rem) - len(b.coeffs) + 1, 0)
        inv_lead = b.leading.inverse()
        db = b.degree
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k] * inv_lead
            if not c:
                continue
            q[k - db] = c
            for j, y in enumerate(b.coeffs):
                rem[k - db + j] = rem[k - db + j] - c * y
        return UniPoly(q, t), UniPoly(rem, t)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        inv = self.leading.inverse()
        return UniPoly([c * inv for c in self.coeffs], self.tower)

    def scale(self, s) -> UniPoly:
        return UniPoly([c * s for c in self.coeffs]) if self.coeffs else self

    def __call__(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return self.tower.zero if not isinstance(x, FieldElement) else common_tower(self.tower.zero, x).zero
        if isinstance(x, FieldElement) and isinstance(acc, FieldElement):
            return common_tower(acc, x).coerce(acc)
        return acc

    def map_coeffs(self, f) -> UniPoly:
        coeffs = [f(c) for c in self.coeffs]
        return UniPoly(coeffs, coeffs[0].tower if coeffs else self.tower)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            try:
                t, a, b = self._coerce(other)
            except TowerMismatch:
                return False
            return a.coeffs == b.coeffs
        if not self.coeffs:
            return other == 0
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            s = str(c)
            if c.tower.depth and not c.is_rational():
                s = f"({s})"
            if k == 0:
                terms.append(s)
            else:
                mono = "l" if k == 1 else f"l^{k}"
                terms.append(mono if s == "1" else "-" + mono if s == "-1" else f"{s}*{mono}")
        return " + ".join(reversed(terms)).replace("+ -", "- ")

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero when both inputs vanish)."""
    while b.coeffs:
        a, b = b, a % b
    return a.monic()


def rational_content_normalize(p: UniPoly) -> UniPoly:
    """Scale a polynomial with rational coefficients to a primitive integer one
    with positive leading coefficient; polynomials with irrational coefficients
    are made monic instead."""
    if not p.coeffs:
        return p
    if all(c.is_rational() for c in p.coeffs):
        qs = [c.rational() for c in p.coeffs]
        den = 1
        for q in qs:
            den = math.lcm(den, int(q.denominator))
        ints = [int(q * den) for q in qs]
        g = 0
        for n in ints:
            g = math.gcd(g, n)
        if ints[-1] < 0:
            g = -g
        return UniPoly([mpq(n, g) for n in ints], p.tower)
    return p.monic()


# -- square roots, root adjunction, quadratic roots -----------------------------

def _canonical_sign(x: FieldElement) -> FieldElement:
    return -x if x.first_nonzero() < 0 else x


def is_square(x: FieldElement) -> FieldElement | None:
    """A square root of ``x`` in its own field, or None.

    The returned root has positive first nonzero coordinate.  Only towers of
    depth at most one are supported.
    """
    if not isinstance(x, FieldElement):
        x = QQ.coerce(x)
    t = x.tower
    if t.depth > 1:
        raise UnsupportedDepth("square test is only implemented over Q and quadratic fields")
    if t.depth == 0:
        r = rational_sqrt(x.coords[0])
        return None if r is None else t.element((r,))
    a, b = x.coords
    c0, c1 = t.levels[0]
    p, q = -c1[0], -c0[0]                 # gen**2 = p*gen + q
    disc = p * p + 4 * q
    candidates = []
    if not a and not b:
        return t.zero
    if not b:
        u = rational_sqrt(a)
        if u is not None:
            candidates.append((u, mpq(0)))
        v = rational_sqrt(4 * a / disc)
        if v is not None and v:
            candidates.append((-p * v / 2, v))
    else:
        # w = v**2 solves disc*w**2 - (2pb + 4a)*w + b**2 = 0
        B = 2 * p * b + 4 * a
        D = B * B - 4 * disc * b * b
        s = rational_sqrt(D)
        if s is not None:
            for w in ((B + s) / (2 * disc), (B - s) / (2 * disc)):
                v = rational_sqrt(w) if w > 0 else None
                if v:
                    candidates.append(((b - p * w) / (2 * v), v))
    for u, v in candidates:
        r = t.element((u, v))
        if r * r == x:
            return _canonical_sign(r)
    return None


def adjoin_root(tower: FieldTower, p: UniPoly):
    """Extend ``tower`` by a root of the monic irreducible quadratic ``p``."""
    p = p.lift(tower) if p.tower != tower else p
    if p.degree != 2 or p.leading != 1:
        raise ValueError("adjoin_root expects a monic quadratic")
    if tower.depth >= MAX_DEPTH:
        raise DepthExceeded("adjoining would create a tower of degree 8")
    c0, c1 = p.coeffs[0], p.coeffs[1]
    if is_square(c1 * c1 - 4 * c0) is not None:
        raise ReducibleInput(f"{p!r} is reducible over {tower!r}")
    new = FieldTower(tower.levels + ((c0.coords, c1.coords),))
    return new, new.gen()


@dataclass(frozen=True)
class RootsOutcome:
    """``kind`` is one of Constant, OneRoot, TwoInField, TwoInExtension."""

    kind: str
    roots: tuple = ()
    tower: FieldTower | None = None

    @property
    def irreducible(self) -> bool:
        return self.kind == "TwoInExtension"


def _squarefree_part(n: int) -> int:
    sign = -1 if n < 0 else 1
    n = abs(n)
    out, f = 1, 2
    while f * f <= n and f < 10 ** 5:
        while n % (f * f) == 0:
            n //= f * f
        if n % f == 0:
            n //= f
            out *= f
        f += 1
    return sign * out * n


def _rational_radicand(D: FieldElement):
    """A rational d with D/d a square in D's quadratic field, if one exists."""
    t = D.tower
    if D.is_rational():
        cands = [D.rational()]
    else:
        sigma = galois_maps(t)[1]
        tr = (D + sigma(D)).rational()
        nrm = rational_sqrt((D * sigma(D)).rational())
        if nrm is None:
            return None
        c0, c1 = t.levels[0]
        dgen = c1[0] ** 2 - 4 * c0[0]
        cands = [tr + 2 * nrm, tr - 2 * nrm, (tr + 2 * nrm) * dgen, (tr - 2 * nrm) * dgen]
    for d in cands:
        if not d:
            continue
        d = mpq(_squarefree_part(int(d.numerator * d.denominator)))
        if is_square(D / d) is not None:
            return d
    return None


def quad_roots(p: UniPoly) -> RootsOutcome:
    """Roots of a polynomial of degree at most two.

    Irreducible quadratics over Q get the tower generated by a root of their
    monic form.  Over a quadratic field the new level is ``x**2 - d`` with
    ``d`` rational whenever such a radicand exists, so that the resulting
    degree-4 tower keeps coordinate-wise Galois maps.
    """
    if p.degree > 2:
        raise DegreeTooHigh(f"degree {p.degree} > 2")
    t = p.tower
    if t.depth > 1:
        raise UnsupportedDepth("quad_roots needs a base tower of depth <= 1")
    if p.degree <= 0:
        return RootsOutcome("Constant", (), t)
    if p.degree == 1:
        return RootsOutcome("OneRoot", (-p.coeffs[0] / p.coeffs[1],), t)
    c, b, a = p.coeffs
    D = b * b - 4 * a * c
    if not D:
        return RootsOutcome("OneRoot", (-b / (2 * a),), t)
    s = is_square(D)
    if s is not None:
        return RootsOutcome("TwoInField", ((-b + s) / (2 * a), (-b - s) / (2 * a)), t)
    if t.depth == 1:
        d = _rational_radicand(D)
        if d is not None:
            new, g = adjoin_root(t, UniPoly([t.coerce(-d), t.zero, t.one], t))
            s = is_square(D / d)
            r1 = (new.coerce(-b) + new.coerce(s) * g) / new.coerce(2 * a)
            r2 = (new.coerce(-b) - new.coerce(s) * g) / new.coerce(2 * a)
            return RootsOutcome("TwoInExtension", (r1, r2), new)
    new, g = adjoin_root(t, p.monic())
    return RootsOutcome("TwoInExtension", (g, new.coerce(-b / a) - g), new)


# -- Galois maps ---------------------------------------------------------------

class CoordinateMap:
    """Field automorphism sending each tower generator to itself or its conjugate."""

    __slots__ = ("tower", "flips")

    def __init__(self, tower: FieldTower, flips):
        self.tower = tower
        self.flips = tuple(bool(f) for f in flips)

    def _apply(self, coords, depth):
        if depth == 0:
            return coords
        h = len(coords) // 2
        a0 = self._apply(coords[:h], depth - 1)
        a1 = self._apply(coords[h:], depth - 1)
        if self.flips[depth - 1]:
            # a0 + a1*g  ->  a0 + a1*(-c1 - g)
            c1 = self.tower.levels[depth - 1][1]
            a0 = _sub(a0, _mul(self.tower.levels[: depth - 1], c1, a1))
            a1 = _neg(a1)
        return a0 + a1

    def __call__(self, x):
        if isinstance(x, FieldElement):
            x = self.tower.coerce(x)
            return FieldElement(self.tower, self._apply(x.coords, self.tower.depth))
        if isinstance(x, UniPoly):
            return UniPoly([self(c) for c in x.coeffs], self.tower)
        if isinstance(x, (tuple, list)):
            return type(x)(self(c) for c in x)
        return self.tower.coerce(x)

    def is_identity(self) -> bool:
        return not any(self.flips)

    def __eq__(self, other):
        return isinstance(other, CoordinateMap) and (self.tower, self.flips) == (other.tower, other.flips)

    def __hash__(self):
        return hash((self.tower, self.flips))

    def __repr__(self):
        return f"CoordinateMap(flips={self.flips})"


def galois_maps(tower: FieldTower) -> list[CoordinateMap]:
    """The ``2**depth`` coordinate involutions of ``tower``.

    Flipping a lower generator is only a field automorphism when the minimal
    polynomials above it have coefficients it fixes; for depth-two towers
    this means the top minimal polynomial must have rational coefficients.
    """
    if tower.depth == 2:
        c0, c1 = tower.levels[1]
        if any(c0[1:]) or any(c1[1:]):
            raise ValueError("lower generator flip is not an automorphism of this tower")
    out = []
    for mask in range(2 ** tower.depth):
        out.append(CoordinateMap(tower, [(mask >> k) & 1 for k in range(tower.depth)]))
    return out


# -- serialization -------------------------------------------------------------

def tower_to_json(t: FieldTower) -> list:
    out = []
    for k, (c0, c1) in enumerate(t.levels):
        one = [str(mpq(1))] + ["0"] * (2 ** k - 1)
        out.append([[str(c) for c in c0], [str(c) for c in c1], one])
    return out


def tower_from_json(data) -> FieldTower:
    levels = []
    for level in data:
        if len(level) != 3:
            raise ValueError("each tower level must list three coefficient vectors")
        c0, c1, lead = level
        if [to_rational(x) for x in lead] != [1] + [0] * (len(lead) - 1):
            raise ValueError("tower minimal polynomials must be monic")
        levels.append((c0, c1))
    return FieldTower(levels)


def element_from_json(t: FieldTower, data) -> FieldElement:
    if isinstance(data, (int, str)):
        data = [data]
    if len(data) > t.degree:
        raise ValueError(f"element has {len(data)} coordinates, tower degree is {t.degree}")
    return t.element([to_rational(x) for x in data])


Rational = mpq
