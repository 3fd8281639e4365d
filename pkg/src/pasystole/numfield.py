"""Exact arithmetic in ``Q[X]/(m)`` with a chosen real embedding.

Coordinates are stored in the power basis ``1, a, .., a^(d-1)`` as
``Fraction`` tuples.  Signs are decided exactly: a zero test through a gcd
with the minimal polynomial, then bisection of the isolating interval
until interval evaluation excludes zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .polycore import qpoly_divmod, qpoly_gcd

__all__ = [
    "NumberField",
    "FieldElement",
    "DivisionByZero",
    "NotAnEigenvalue",
    "field_arith",
    "sign_of",
    "solve_eigenvector",
    "integer_charpoly",
    "sturm_count",
]


class DivisionByZero(ZeroDivisionError):
    pass


class NotAnEigenvalue(ValueError):
    pass


# polynomials here are descending lists of Fractions

def _trim(p):
    p = list(p)
    while len(p) > 1 and p[0] == 0:
        p.pop(0)
    return p


def _peval(p, x):
    acc = Fraction(0)
    for c in p:
        acc = acc * x + c
    return acc


def _pderiv(p):
    n = len(p) - 1
    return [c * (n - i) for i, c in enumerate(p[:-1])] or [Fraction(0)]


def _sturm_chain(p):
    chain = [[Fraction(c) for c in _trim(p)], _pderiv([Fraction(c) for c in _trim(p)])]
    while chain[-1] != [0] and len(chain[-1]) > 1:
        r = qpoly_divmod(chain[-2], chain[-1])[1]
        if r == [0]:
            break
        chain.append([-c for c in r])
    return chain


def _sign_changes(chain, x):
    signs = []
    for q in chain:
        v = _peval(q, x)
        if v:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``."""
    chain = _sturm_chain(p)
    return _sign_changes(chain, Fraction(lo)) - _sign_changes(chain, Fraction(hi))


def _interval_eval(p, lo, hi):
    """Enclosure of ``p`` over ``[lo, hi]`` by interval Horner."""
    a = b = Fraction(0)
    for c in p:
        prods = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(prods) + c, max(prods) + c
    return a, b


class NumberField:
    """``Q(alpha)`` for the unique root of ``minpoly`` inside ``(lo, hi)``."""

    def __init__(self, minpoly: Sequence[int], lo, hi):
        mp = [Fraction(c) for c in _trim(minpoly)]
        if mp[0] != 1:
            raise ValueError("minimal polynomial must be monic")
        self.minpoly = tuple(int(c) for c in mp)
        self._mp = mp
        self.degree = len(mp) - 1
        lo, hi = Fraction(lo), Fraction(hi)
        if not lo < hi:
            raise ValueError("empty isolating interval")
        if _peval(mp, lo) == 0 or _peval(mp, hi) == 0:
            raise ValueError("isolating interval endpoint is a root")
        if sturm_count(mp, lo, hi) != 1:
            raise ValueError(f"interval ({lo}, {hi}) does not isolate exactly one root")
        if (_peval(mp, lo) > 0) == (_peval(mp, hi) > 0):
            raise ValueError("no sign change across the isolating interval (repeated root?)")
        self.lo, self.hi = lo, hi
        self._interval = [lo, hi]

    def __eq__(self, other):
        return (isinstance(other, NumberField) and self.minpoly == other.minpoly
                and self.lo == other.lo and self.hi == other.hi)

    def __hash__(self):
        return hash((self.minpoly, self.lo, self.hi))

    def __repr__(self):
        return f"NumberField({list(self.minpoly)}, {self.lo}, {self.hi})"

    @classmethod
    def around(cls, minpoly, approx: float, width: float = 1e-6) -> "NumberField":
        """Isolate the root of ``minpoly`` closest to ``approx``."""
        w = Fraction(width)
        x = Fraction(approx).limit_denominator(10 ** 12)
        for _ in range(60):
            lo, hi = x - w, x + w
            try:
                return cls(minpoly, lo, hi)
            except ValueError:
                w /= 2
        raise ValueError(f"could not isolate a root of {minpoly} near {approx}")

    # embedding -------------------------------------------------------------
    def refine(self, steps: int = 1):
        lo, hi = self._interval
        slo = _peval(self._mp, lo) > 0
        for _ in range(steps):
            mid = (lo + hi) / 2
            v = _peval(self._mp, mid)
            if v == 0:
                lo = hi = mid
                break
            if (v > 0) == slo:
                lo = mid
            else:
                hi = mid
        self._interval = [lo, hi]
        return lo, hi

    @property
    def interval(self):
        return tuple(self._interval)

    def approx(self) -> float:
        lo, hi = self.refine(60) if self._interval[1] - self._interval[0] > Fraction(1, 2 ** 60) else self._interval
        return float((lo + hi) / 2)

    # elements --------------------------------------------------------------
    def element(self, coords) -> "FieldElement":
        coords = [Fraction(c) for c in coords]
        if len(coords) > self.degree:
            return self._reduce(coords)
        return FieldElement(self, tuple(coords + [Fraction(0)] * (self.degree - len(coords))))

    def zero(self):
        return self.element([])

    def one(self):
        return self.element([1])

    def gen(self):
        return self.element([0, 1]) if self.degree > 1 else self.element([-self.minpoly[-1]])

    def from_int(self, n):
        return self.element([n])

    def _reduce(self, asc):
        # asc: ascending coefficients of arbitrary length
        asc = list(asc)
        d = self.degree
        m_asc = self._mp[::-1]  # m_asc[d] == 1
        for k in range(len(asc) - 1, d - 1, -1):
            c = asc[k]
            if c:
                for j in range(d):
                    asc[k - d + j] -= c * m_asc[j]
            asc[k] = Fraction(0)
        asc = asc[:d] + [Fraction(0)] * (d - len(asc[:d]))
        return FieldElement(self, tuple(asc))


class FieldElement:
    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple):
        self.field = field
        self.coords = coords

    def _lift(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        return self.field.from_int(other)

    def __add__(self, other):
        other = self._lift(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        other = self._lift(other)
        d = self.field.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        prod[i + j] += a * b
        return self.field._reduce(prod)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        # extended Euclid: track s with s*q = r (mod m)
        r0, r1 = list(self.field._mp), _trim(list(reversed(self.coords)))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1:
            quo, rem = qpoly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _psub(s0, _pmul(quo, s1))
        if r1[0] == 0:
            raise DivisionByZero("element shares a factor with the minimal polynomial")
        inv = [c / r1[0] for c in s1]
        return self.field._reduce(list(reversed(inv)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise DivisionByZero("division by zero")
            return FieldElement(self.field, tuple(a / other for a in self.coords))
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = self.field.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_int(other)
        return isinstance(other, FieldElement) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self):
        return not any(self.coords)

    def sign(self):
        return sign_of(self)

    def __float__(self):
        x = self.field.approx()
        return float(sum(float(c) * x ** i for i, c in enumerate(self.coords)))

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self.coords) + ")"

    def to_strings(self):
        return [str(c) for c in self.coords]


def _pmul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def _psub(p, q):
    n = max(len(p), len(q))
    p = [Fraction(0)] * (n - len(p)) + list(p)
    q = [Fraction(0)] * (n - len(q)) + list(q)
    return _trim([a - b for a, b in zip(p, q)])


def field_arith(op: str, x: FieldElement, y: FieldElement | None = None) -> FieldElement:
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "inv":
        return x.inverse()
    raise ValueError(f"unknown field operation {op!r}")


def sign_of(x: FieldElement) -> int:
    """Exact sign of ``x`` under the field's real embedding."""
    if x.is_zero():
        return 0
    F = x.field
    q = _trim([c for c in reversed(x.coords)])
    if len(q) == 1:
        return 1 if q[0] > 0 else -1
    g = qpoly_gcd(q, F._mp)
    if len(g) > 1 and sturm_count(g, *F.interval) > 0:
        return 0
    while True:
        lo, hi = F.interval
        a, b = _interval_eval(q, lo, hi)
        if a > 0:
            return 1
        if b < 0:
            return -1
        F.refine(4)


# ---------------------------------------------------------------------------
# linear algebra
# ---------------------------------------------------------------------------

def integer_charpoly(M) -> tuple:
    """Characteristic polynomial ``det(XI - M)``, descending integer coefficients.

    Faddeev-LeVerrier; every division is exact for an integer matrix.
    """
    n = len(M)
    A = [[int(v) for v in row] for row in M]
    coeffs = [1]
    Mk = [[0] * n for _ in range(n)]
    c = 1
    for k in range(1, n + 1):
        B = [[Mk[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
        Mk = [[sum(A[i][t] * B[t][j] for t in range(n) if A[i][t]) for j in range(n)]
              for i in range(n)]
        tr = sum(Mk[i][i] for i in range(n))
        assert tr % k == 0
        c = -tr // k
        coeffs.append(c)
    return tuple(coeffs)


def _mat_apply(M, v, F):
    return [sum((v[j] * int(M[i][j]) for j in range(len(v)) if M[i][j]), F.zero())
            for i in range(len(M))]


def solve_eigenvector(M, eigenvalue: FieldElement, normalize: int | None = None) -> list:
    """Exact kernel vector of ``M - eigenvalue*I`` with one coordinate set to 1.

    ``normalize`` picks the coordinate; by default the first nonzero one.
    """
    F = eigenvalue.field
    n = len(M)
    cp = integer_charpoly(M)
    val = F.zero()
    for c in cp:
        val = val * eigenvalue + c
    if not val.is_zero():
        raise NotAnEigenvalue("eigenvalue is not a root of the characteristic polynomial")
    A = [[F.from_int(M[i][j]) - (eigenvalue if i == j else 0) for j in range(n)] for i in range(n)]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, n) if not A[r][col].is_zero()), None)
        if piv is None:
            continue
        A[row], A[piv] = A[piv], A[row]
        inv = A[row][col].inverse()
        A[row] = [x * inv for x in A[row]]
        for r in range(n):
            if r != row and not A[r][col].is_zero():
                f = A[r][col]
                A[r] = [a - f * b for a, b in zip(A[r], A[row])]
        pivots.append(col)
        row += 1
        if row == n:
            break
    free = [c for c in range(n) if c not in pivots]
    if not free:
        raise NotAnEigenvalue("matrix minus eigenvalue is nonsingular")
    f0 = free[0]
    v = [F.zero() for _ in range(n)]
    v[f0] = F.one()
    for r, pc in enumerate(pivots):
        v[pc] = -A[r][f0]
    k = normalize
    if k is None:
        k = next(i for i in range(n) if not v[i].is_zero())
    if v[k].is_zero():
        raise ValueError(f"coordinate {k} of the eigenvector vanishes")
    scale = v[k].inverse()
    v = [x * scale for x in v]
    assert all((a - eigenvalue * b).is_zero() for a, b in zip(_mat_apply(M, v, F), v))
    return v
