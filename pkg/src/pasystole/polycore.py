"""Reciprocal integer polynomials: Newton's identities, Perron roots and
the algebraic side conditions used to accept a dilatation candidate.

Polynomials that are not necessarily reciprocal are passed around as plain
tuples of integers in *descending* order, ``(1, -1, 0, -1)`` meaning
``X^3 - X^2 - 1``.  :class:`ReciprocalPolynomial` is the typed carrier for
characteristic polynomials of symplectic matrices.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath
import numpy as np

__all__ = [
    "ReciprocalPolynomial",
    "RootProfile",
    "NonInteger",
    "NoConvergence",
    "AmbiguousDominance",
    "coeffs_from_traces",
    "traces_from_coeffs",
    "trace_bound",
    "perron_analysis",
    "negate_variable",
    "mahler_measure",
    "has_root_of_unity",
    "symplectically_irreducible",
    "power_base",
    "cyclotomic",
    "trace_polynomial",
    "poly_mul",
    "poly_divmod",
    "poly_eval",
    "format_poly",
]

AMBIGUITY_GAP = 1e-7
_TIE_GAP = 1e-25
_CLUSTER_GAP = 1e-3
_MP_DPS = 80


class NonInteger(ValueError):
    """A trace vector whose Newton inversion has a fractional coefficient."""

    def __init__(self, index, value):
        super().__init__(f"coefficient a_{index} = {value} is not an integer")
        self.index = index
        self.value = value


class NoConvergence(ArithmeticError):
    pass


class AmbiguousDominance(ArithmeticError):
    """Two root moduli agree with the maximum to within the review threshold."""

    def __init__(self, coefficients, gap):
        super().__init__(f"dominance gap {gap:.3g} below {AMBIGUITY_GAP:g} for {coefficients}")
        self.coefficients = tuple(coefficients)
        self.gap = gap


# ---------------------------------------------------------------------------
# integer polynomial helpers (descending coefficient tuples)
# ---------------------------------------------------------------------------

def _strip(c):
    c = list(c)
    while len(c) > 1 and c[0] == 0:
        c.pop(0)
    return tuple(c)


def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return tuple(out)


def poly_divmod(p, q):
    """Divide integer polynomial ``p`` by monic ``q``; exact integer result."""
    q = _strip(q)
    if q[0] not in (1, -1):
        raise ValueError("divisor must be monic up to sign")
    p = list(_strip(p))
    if len(p) < len(q):
        return (0,), tuple(p)
    quot = []
    for i in range(len(p) - len(q) + 1):
        c = p[i] * q[0]  # q[0] is its own inverse
        quot.append(c)
        if c:
            for j in range(len(q)):
                p[i + j] -= c * q[j]
    rem = _strip(p[len(p) - len(q) + 1:] or [0])
    return tuple(quot), rem


def poly_eval(p, x):
    acc = 0
    for c in p:
        acc = acc * x + c
    return acc


def format_poly(coefficients, var="X"):
    """Human readable form, e.g. ``X^6 - X^4 - X^3 - X^2 + 1``."""
    c = _strip(coefficients)
    n = len(c) - 1
    terms = []
    for i, a in enumerate(c):
        if a == 0:
            continue
        e = n - i
        mag = abs(a)
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{mag}{mono}"
        sign = "-" if a < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# the reciprocal carrier
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class ReciprocalPolynomial:
    """Monic palindromic integer polynomial of even degree ``2g``.

    Only ``a_1 .. a_g`` are stored; ``a_0 = 1`` and ``a_{2g-k} = a_k``.
    """

    degree: int
    coeffs: tuple

    def __post_init__(self):
        if self.degree < 2 or self.degree % 2:
            raise ValueError(f"degree must be even and >= 2, got {self.degree}")
        if len(self.coeffs) != self.degree // 2:
            raise ValueError("coeffs must hold a_1..a_g")
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))

    @classmethod
    def from_coefficients(cls, coefficients: Sequence[int]) -> "ReciprocalPolynomial":
        c = tuple(int(a) for a in coefficients)
        n = len(c) - 1
        if n < 2 or n % 2:
            raise ValueError(f"need an even degree >= 2, got degree {n}")
        if c[0] != 1:
            raise ValueError("polynomial must be monic")
        if c != c[::-1]:
            raise ValueError(f"{format_poly(c)} is not reciprocal")
        return cls(n, c[1:n // 2 + 1])

    @property
    def genus(self) -> int:
        return self.degree // 2

    @property
    def coefficients(self) -> tuple:
        """Full descending coefficient vector ``(1, a_1, ..., a_{2g-1}, 1)``."""
        g = self.degree // 2
        front = (1,) + self.coeffs
        return front + tuple(reversed(front[:g]))

    def __call__(self, x):
        return poly_eval(self.coefficients, x)

    def __str__(self):
        return format_poly(self.coefficients)


def _coeffs(poly) -> tuple:
    if isinstance(poly, ReciprocalPolynomial):
        return poly.coefficients
    return _strip(tuple(int(a) for a in poly))


# ---------------------------------------------------------------------------
# Newton's identities
# ---------------------------------------------------------------------------

def coeffs_from_traces(traces: Sequence[int], degree: int | None = None) -> ReciprocalPolynomial:
    """Invert Newton's identities for ``a_1..a_g`` and fill by reciprocity.

    Raises :class:`NonInteger` at the first fractional coefficient.
    """
    traces = [int(p) for p in traces]
    g = len(traces)
    if degree is None:
        degree = 2 * g
    if degree != 2 * g:
        raise ValueError(f"degree {degree} needs {degree // 2} traces, got {g}")
    a = [1]
    for k in range(1, g + 1):
        s = traces[k - 1] + sum(a[m] * traces[k - m - 1] for m in range(1, k))
        q, r = divmod(-s, k)
        if r:
            raise NonInteger(k, -s / k)
        a.append(q)
    return ReciprocalPolynomial(degree, tuple(a[1:]))


def traces_from_coeffs(poly, count: int) -> list:
    """Power sums ``p_1..p_count`` of the roots (``Tr(M^k)`` for a companion M)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    c = _coeffs(poly)
    if c[0] != 1:
        raise ValueError("polynomial must be monic")
    n = len(c) - 1
    p = []
    for k in range(1, count + 1):
        s = 0
        for m in range(1, min(k - 1, n) + 1):
            s += c[m] * p[k - m - 1]
        if k <= n:
            s += k * c[k]
        p.append(-s)
    return p


def trace_bound(degree: int, r: float, k: int) -> int:
    """``floor(degree/2 * (r^k + r^-k))``; bounds ``|Tr(M^k)|`` for reciprocal M."""
    if r <= 1:
        raise ValueError("bound must exceed 1")
    return math.floor(degree / 2 * (r ** k + r ** -k) + 1e-12)


# ---------------------------------------------------------------------------
# roots
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootProfile:
    dominant_value: float
    dominant_is_real: bool
    strictly_dominant: bool
    simple: bool
    modulus_gap: float
    outside_unit_circle: bool

    @property
    def modulus(self) -> float:
        return abs(self.dominant_value)

    @property
    def sign(self) -> int:
        return 1 if self.dominant_value > 0 else -1

    @property
    def allowable(self) -> bool:
        return (self.dominant_is_real and self.strictly_dominant and self.simple
                and self.outside_unit_circle)


def _polish(c, z, steps=3):
    dc = np.polyder(np.asarray(c, dtype=complex))
    best, best_res = z, abs(np.polyval(c, z))
    for _ in range(steps):
        d = np.polyval(dc, z)
        if d == 0:
            break
        z = z - np.polyval(c, z) / d
        res = abs(np.polyval(c, z))
        if res < best_res:
            best, best_res = z, res
    return best


def numeric_roots(poly) -> np.ndarray:
    c = _coeffs(poly)
    fc = np.array(c, dtype=float)
    roots = np.roots(fc)
    return np.array([_polish(fc, z) for z in roots])


def _newton_dominant(c, sign, seed, tol, max_iter):
    # With every root inside |z| <= rho, P and its derivatives are positive
    # beyond rho (Gauss-Lucas), so Newton from the right decreases monotonically.
    f = [a * sign ** (len(c) - 1 - i) for i, a in enumerate(c)]
    df = [a * (len(f) - 1 - i) for i, a in enumerate(f[:-1])]
    x = float(seed)
    for _ in range(max_iter):
        fx = poly_eval(f, x)
        dfx = poly_eval(df, x)
        if dfx <= 0:
            raise NoConvergence(f"non-positive derivative at {x} for {format_poly(c)}")
        step = fx / dfx
        x_new = x - step
        if abs(step) <= tol * max(1.0, abs(x_new)):
            return sign * x_new
        x = x_new
    raise NoConvergence(f"Newton did not settle within {max_iter} steps for {format_poly(c)}")


def _qtrim(p):
    p = list(p)
    while len(p) > 1 and p[0] == 0:
        p.pop(0)
    return p


def qpoly_divmod(p, q):
    """Division over Q, descending coefficient lists of Fractions."""
    p = [Fraction(a) for a in _qtrim(p)]
    q = [Fraction(a) for a in _qtrim(q)]
    if q == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(q):
        return [Fraction(0)], p
    quot = []
    for i in range(len(p) - len(q) + 1):
        c = p[i] / q[0]
        quot.append(c)
        if c:
            for j in range(len(q)):
                p[i + j] -= c * q[j]
    return quot, _qtrim(p[len(p) - len(q) + 1:] or [Fraction(0)])


def qpoly_gcd(p, q):
    """Monic gcd over Q."""
    a, b = [Fraction(x) for x in _qtrim(p)], [Fraction(x) for x in _qtrim(q)]
    while b != [0]:
        a, b = b, qpoly_divmod(a, b)[1]
    return [x / a[0] for x in a]


def _derivative(c):
    n = len(c) - 1
    return [a * (n - i) for i, a in enumerate(c[:-1])] or [0]


def _exact_profile(c, tol):
    # Slow path for clustered spectra: split off repeated and cyclotomic roots
    # exactly, then resolve the rest at high precision.
    g = [int(x) for x in qpoly_gcd(c, _derivative(c))]  # monic factor of a monic integer poly
    sf = tuple(int(x) for x in qpoly_divmod(c, g)[0])
    core = _strip_cyclotomic(sf)
    unit_floor = 1.0 if len(core) < len(sf) else 0.0
    if len(core) == 1:
        return RootProfile(1.0, False, False, len(g) == 1, 0.0, False)
    with mpmath.workdps(_MP_DPS):
        roots = mpmath.polyroots([mpmath.mpf(a) for a in core], maxsteps=400,
                                 extraprec=4 * _MP_DPS)
        roots = sorted(roots, key=lambda z: -abs(z))
        top = roots[0]
        runner = max([abs(z) for z in roots[1:]] + [mpmath.mpf(unit_floor)])
        gap = float(abs(top) - runner)
        simple = len(g) == 1 or abs(mpmath.polyval([mpmath.mpf(x) for x in g], top)) > mpmath.mpf(10) ** (-40)
        real = abs(top.imag) <= mpmath.mpf(10) ** (-40) * max(1, abs(top))
        value = float(top.real) if real else float(abs(top))
    if gap < _TIE_GAP:
        return RootProfile(value, bool(real), False, bool(simple), 0.0, abs(value) > 1 + tol)
    if gap < AMBIGUITY_GAP:
        raise AmbiguousDominance(c, gap)
    return RootProfile(value, bool(real), bool(real), bool(simple), gap, abs(value) > 1 + tol)


def perron_analysis(poly, tol: float = 1e-9, seed: float | None = None,
                    max_iter: int = 200) -> RootProfile:
    """Locate and certify the dominant root of ``poly``.

    The companion spectrum decides which root dominates and by how much.
    Spectra with a near-tie at the top go through an exact squarefree and
    cyclotomic split followed by a high-precision solve.  A dominant real
    root is finally re-derived by Newton iteration from ``seed`` (default:
    the Cauchy bound).
    """
    c = _coeffs(poly)
    if len(c) < 2:
        raise ValueError("constant polynomial has no roots")
    if len(c) == 2:
        v = float(-c[1] / c[0])
        return RootProfile(v, True, True, True, abs(v), abs(v) > 1 + tol)
    roots = numeric_roots(c)
    mods = np.abs(roots)
    order = np.argsort(-mods)
    roots, mods = roots[order], mods[order]
    top = roots[0]
    scale = max(1.0, mods[0])
    fast = mods[0] - mods[1] >= _CLUSTER_GAP * scale and abs(top.imag) < 1e-6 * scale
    if fast:
        prof = RootProfile(float(top.real), True, True, True, float(mods[0] - mods[1]),
                           mods[0] > 1 + tol)
    elif (abs(top.imag) > _CLUSTER_GAP * scale
          and abs(roots[1] - np.conj(top)) < 1e-6 * scale
          and (len(mods) == 2 or mods[1] - mods[2] >= _CLUSTER_GAP * scale)):
        return RootProfile(float(mods[0]), False, False, True, 0.0, mods[0] > 1 + tol)
    else:
        prof = _exact_profile(c, tol)
    if not (prof.dominant_is_real and prof.strictly_dominant and prof.simple):
        return prof
    try:
        value = _refine(c, prof, seed, tol, max_iter)
    except NoConvergence:
        if not fast:
            raise
        # a badly conditioned cluster can masquerade as a lone root
        prof = _exact_profile(c, tol)
        if not (prof.dominant_is_real and prof.strictly_dominant and prof.simple):
            return prof
        value = _refine(c, prof, seed, tol, max_iter)
    return RootProfile(value, True, True, prof.simple, prof.modulus_gap, abs(value) > 1 + tol)


def _refine(c, prof, seed, tol, max_iter):
    sign = 1 if prof.dominant_value > 0 else -1
    scale = max(1.0, abs(prof.dominant_value))
    start = seed if seed is not None and seed > abs(prof.dominant_value) else 1.0 + max(abs(a) for a in c[1:])
    value = _newton_dominant(c, sign, start, tol * 1e-3, max_iter)
    if abs(value - prof.dominant_value) > max(1e-6, 1e3 * tol) * scale:
        raise NoConvergence(f"Newton landed on {value}, spectrum says {prof.dominant_value}")
    return value


def negate_variable(poly):
    """``P(-X)``; already monic because the degree is even."""
    if isinstance(poly, ReciprocalPolynomial):
        return ReciprocalPolynomial(poly.degree, tuple(a if k % 2 == 0 else -a
                                                       for k, a in enumerate(poly.coeffs, 1)))
    c = _coeffs(poly)
    n = len(c) - 1
    out = tuple(a * (-1) ** (n - i) for i, a in enumerate(c))
    return out if out[0] > 0 else tuple(-a for a in out)


# ---------------------------------------------------------------------------
# cyclotomic factors and Mahler measure
# ---------------------------------------------------------------------------

def _totient(k):
    result, n, p = k, k, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


@lru_cache(maxsize=None)
def cyclotomic(k: int) -> tuple:
    """The k-th cyclotomic polynomial, descending integer coefficients."""
    num = (1,) + (0,) * (k - 1) + (-1,)
    for d in range(1, k):
        if k % d == 0:
            num, rem = poly_divmod(num, cyclotomic(d))
            assert rem == (0,)
    return num


def _cyclotomic_orders(degree):
    # phi(k) >= sqrt(k/2), so k <= 2*degree^2 covers every phi(k) <= degree
    return [k for k in range(1, 2 * degree * degree + 3) if _totient(k) <= degree]


def _divides(q, p):
    return poly_divmod(p, q)[1] == (0,)


def has_root_of_unity(poly) -> bool:
    c = _coeffs(poly)
    n = len(c) - 1
    return any(_divides(cyclotomic(k), c) for k in _cyclotomic_orders(n))


def _strip_cyclotomic(c):
    n = len(c) - 1
    for k in _cyclotomic_orders(n):
        phi = cyclotomic(k)
        while len(c) > 1:
            q, r = poly_divmod(c, phi)
            if r != (0,):
                break
            c = q
    return c


def mahler_measure(poly) -> float:
    """Product of the root moduli exceeding one (monic input)."""
    c = _strip_cyclotomic(_coeffs(poly))
    if len(c) == 1:
        return float(abs(c[0]))
    m = 1.0
    for z in numeric_roots(c):
        if abs(z) > 1:
            m *= abs(z)
    return m


# ---------------------------------------------------------------------------
# symplectic irreducibility
# ---------------------------------------------------------------------------

def trace_polynomial(poly) -> tuple:
    """The integer ``T`` with ``P(X) = X^g T(X + 1/X)`` for reciprocal ``P``."""
    c = list(_coeffs(poly))
    n = len(c) - 1
    if n % 2 or c != c[::-1]:
        raise ValueError("trace polynomial needs an even-degree reciprocal input")
    g = n // 2
    # peel off the top power of (X + 1/X) repeatedly
    work = c[:g + 1]  # coefficients of X^g, X^{g-1}, .. , X^0 in P / X^g symmetric part
    out = []
    for j in range(g + 1):
        lead = work[j]
        out.append(lead)
        e = g - j
        # (y)^e contributes binom(e, i) to X^{e-2i}
        for i in range(1, e // 2 + 1):
            work[j + 2 * i] -= lead * math.comb(e, i)
    return tuple(out)


def _integer_factors_from_roots(c, max_degree):
    """Exhaustive search for a nontrivial monic integer divisor of ``c``.

    Candidates are products over conjugation-closed subsets of the numeric
    roots, rounded to integers and confirmed by exact division.
    """
    roots = numeric_roots(c)
    real = [z.real for z in roots if abs(z.imag) < 1e-7]
    upper = [z for z in roots if z.imag >= 1e-7]
    blocks = [((1, -x),) for x in real] + [((1, -2 * z.real, abs(z) ** 2),) for z in upper]
    n_blocks = len(blocks)
    for size in range(1, n_blocks):
        for subset in itertools.combinations(range(n_blocks), size):
            f = np.array([1.0])
            for i in subset:
                f = np.convolve(f, blocks[i][0])
            deg = len(f) - 1
            if deg < 1 or deg > max_degree:
                continue
            cand = tuple(int(round(x)) for x in f)
            if np.max(np.abs(f - np.array(cand))) > 1e-3:
                continue
            if _divides(cand, c):
                yield cand


def power_base(poly):
    """Largest ``k > 1`` with ``P(X) = Q(X^k)``, or ``None``."""
    c = _coeffs(poly)
    n = len(c) - 1
    exps = [n - i for i, a in enumerate(c) if a]
    g = 0
    for e in exps:
        g = math.gcd(g, e)
    return g if g > 1 else None


def symplectically_irreducible(poly) -> bool:
    """True iff ``P`` is not a product of two nontrivial reciprocal polynomials.

    Reciprocal divisors of ``P`` correspond to divisors of its trace
    polynomial ``T``, so this is irreducibility of ``T`` over the integers.
    """
    c = _coeffs(poly)
    if len(c) - 1 == 2:
        return True
    t = trace_polynomial(c)
    g = len(t) - 1
    for _ in _integer_factors_from_roots(t, g // 2):
        return False
    return True


def minimal_integer_factor(poly, root) -> tuple:
    """Smallest-degree monic integer divisor of ``poly`` vanishing at ``root``."""
    c = _coeffs(poly)
    best = c
    for cand in _integer_factors_from_roots(c, len(c) - 2):
        if len(cand) < len(best) and abs(np.polyval(np.array(cand, float), root)) < 1e-6 * max(1, abs(root)) ** len(cand):
            best = cand
    return best


def as_reciprocal(poly) -> ReciprocalPolynomial:
    if isinstance(poly, ReciprocalPolynomial):
        return poly
    return ReciprocalPolynomial.from_coefficients(poly)


def iter_coefficients(polys: Iterable) -> Iterable[tuple]:
    for p in polys:
        yield _coeffs(p)
