"""Interval exchanges, Rauzy-Veech induction and loop certificates.

Conventions.  A permutation is stored as the bottom row of labels, with
the top row always ``1..d`` after relabelling; ``(5,3,9,8,6,2,7,1,4)``
means the bottom interval order is ``I_5 I_3 I_9 ...``.  An induction step
of type 0 is taken when the last top interval is longer than the last
bottom one.  Each step returns the matrix ``M`` with ``old = M @ new`` for
length vectors, and the matrix of a loop is the ordered product
``M_1 M_2 ... M_n``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .lefschetz import Stratum
from .numfield import FieldElement, NumberField, integer_charpoly, sign_of, solve_eigenvector
from .polycore import minimal_integer_factor, poly_divmod

__all__ = [
    "IntervalExchange",
    "RauzyLoop",
    "Polygon",
    "PseudoAnosovCertificate",
    "DegenerateStep",
    "NotClosed",
    "NotPrimitive",
    "SuspensionFails",
    "SelfIntersection",
    "MalformedTable",
    "is_irreducible",
    "perm_step",
    "rauzy_step",
    "build_rauzy_class",
    "loop_matrix",
    "is_primitive",
    "suspension_ok",
    "build_polygon",
    "veech_certificate",
    "verify_translation_pieces",
    "search_loops",
    "MAX_LOOP_LEN",
]

MAX_LOOP_LEN = 22


class DegenerateStep(ArithmeticError):
    pass


class NotClosed(ValueError):
    pass


class NotPrimitive(ValueError):
    pass


class SuspensionFails(ValueError):
    pass


class SelfIntersection(ValueError):
    pass


class MalformedTable(ValueError):
    pass


def _check_perm(perm):
    perm = tuple(int(x) for x in perm)
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{len(perm)}")
    return perm


def is_irreducible(perm) -> bool:
    perm = _check_perm(perm)
    d = len(perm)
    return all(set(perm[:k]) != set(range(1, k + 1)) for k in range(1, d))


def perm_step(perm, typ: int):
    """One induction step on the permutation; returns ``(new_perm, M)``."""
    new_perm, M, _ = _labelled_step(perm, typ)
    return new_perm, M


def _labelled_step(perm, typ):
    perm = _check_perm(perm)
    d = len(perm)
    top, bot = list(range(1, d + 1)), list(perm)
    A = np.eye(d, dtype=np.int64)
    if typ == 0:
        winner, loser = top[-1], bot.pop()
        bot.insert(bot.index(winner) + 1, loser)
    elif typ == 1:
        winner, loser = bot[-1], top.pop()
        top.insert(top.index(winner) + 1, loser)
    else:
        raise ValueError("edge type must be 0 or 1")
    A[winner - 1, loser - 1] += 1
    P = np.zeros((d, d), dtype=np.int64)
    relabel = {}
    for pos, lab in enumerate(top):
        P[lab - 1, pos] = 1
        relabel[lab] = pos + 1
    return tuple(relabel[x] for x in bot), A @ P, top


@dataclass(frozen=True)
class IntervalExchange:
    perm: tuple
    lengths: tuple

    def __post_init__(self):
        perm = _check_perm(self.perm)
        object.__setattr__(self, "perm", perm)
        if len(self.lengths) != len(perm):
            raise ValueError("one length per interval")
        if not is_irreducible(perm):
            raise ValueError(f"{perm} is reducible")

    @property
    def d(self):
        return len(self.perm)


def _sign(x):
    return sign_of(x) if isinstance(x, FieldElement) else (x > 0) - (x < 0)


def rauzy_step(iet: IntervalExchange):
    """``(new_iet, type, M)`` with ``old_lengths = M @ new_lengths``."""
    lam = list(iet.lengths)
    top_last, bot_last = iet.d, iet.perm[-1]
    diff = _sign(lam[top_last - 1] - lam[bot_last - 1])
    if diff == 0:
        raise DegenerateStep("compared lengths are equal")
    typ = 0 if diff > 0 else 1
    winner, loser = (top_last, bot_last) if typ == 0 else (bot_last, top_last)
    lam[winner - 1] = lam[winner - 1] - lam[loser - 1]
    new_perm, M, top = _labelled_step(iet.perm, typ)
    new_lengths = tuple(lam[lab - 1] for lab in top)
    return IntervalExchange(new_perm, new_lengths), typ, M


def build_rauzy_class(perm) -> dict:
    """Rauzy class as ``{perm: {0: succ0, 1: succ1}}`` (breadth-first closure)."""
    perm = _check_perm(perm)
    if not is_irreducible(perm):
        raise ValueError(f"{perm} is reducible")
    graph = {}
    queue = deque([perm])
    while queue:
        p = queue.popleft()
        if p in graph:
            continue
        graph[p] = {t: perm_step(p, t)[0] for t in (0, 1)}
        for q in graph[p].values():
            if q not in graph:
                queue.append(q)
    return graph


@dataclass(frozen=True)
class RauzyLoop:
    base_perm: tuple
    path: tuple

    def __post_init__(self):
        object.__setattr__(self, "base_perm", _check_perm(self.base_perm))
        object.__setattr__(self, "path", tuple(int(t) for t in self.path))

    def endpoint(self):
        p = self.base_perm
        for t in self.path:
            p = perm_step(p, t)[0]
        return p

    @property
    def closed(self):
        return self.endpoint() == self.base_perm


def loop_matrix(loop: RauzyLoop) -> np.ndarray:
    d = len(loop.base_perm)
    R = np.eye(d, dtype=np.int64)
    p = loop.base_perm
    for t in loop.path:
        p, M = perm_step(p, t)
        R = R @ M
    if p != loop.base_perm:
        raise NotClosed(f"path ends at {p}, not {loop.base_perm}")
    return R


def is_primitive(R) -> bool:
    """Some power is strictly positive (checked at Wielandt's exponent)."""
    B = (np.asarray(R) > 0).astype(np.int64)
    d = B.shape[0]
    k = (d - 1) ** 2 + 1
    P = np.eye(d, dtype=np.int64)
    base = B
    while k:
        if k & 1:
            P = ((P @ base) > 0).astype(np.int64)
        base = ((base @ base) > 0).astype(np.int64)
        k >>= 1
    return bool(P.all())


def suspension_ok(perm, tau) -> bool:
    """Top partial sums of ``tau`` positive, bottom ones negative (exact when possible)."""
    perm = _check_perm(perm)
    d = len(perm)
    s = 0
    for k in range(d - 1):
        s = s + tau[k]
        if _sign(s) <= 0:
            return False
    s = 0
    for k in range(d - 1):
        s = s + tau[perm[k] - 1]
        if _sign(s) >= 0:
            return False
    return True


# ---------------------------------------------------------------------------
# polygons
# ---------------------------------------------------------------------------

@dataclass
class Polygon:
    perm: tuple
    vertices: list          # (x, y) pairs, cyclic boundary order p_1 .. p_2d
    stratum: Stratum | None
    cone_angles: list       # multiples of pi, one per vertex class
    classes: list           # vertex index classes (0-based)


def _vertices(perm, lam, tau, zero):
    d = len(perm)
    verts = [(zero, zero)]
    sx, sy = zero, zero
    for j in range(d):
        sx, sy = sx + lam[j], sy + tau[j]
        verts.append((sx, sy))
    for k in range(1, d):
        bx, by = zero, zero
        for lab in perm[:d - k]:
            bx, by = bx + lam[lab - 1], by + tau[lab - 1]
        verts.append((bx, by))
    return verts


def build_polygon(perm, zeta) -> Polygon:
    """Vertices of the suspension polygon and the stratum it defines.

    ``zeta`` is a sequence of ``(lambda_j, tau_j)`` pairs (field elements or
    floats).  The top broken line gives ``p_1 .. p_{d+1}``; the bottom line,
    walked backwards from the right end, gives the rest.
    """
    perm = _check_perm(perm)
    d = len(perm)
    lam = [z[0] for z in zeta]
    tau = [z[1] for z in zeta]
    if not suspension_ok(perm, tau) or any(_sign(x) <= 0 for x in lam):
        raise SelfIntersection("suspension inequalities fail; broken lines meet")
    zero = lam[0] * 0
    verts = _vertices(perm, lam, tau, zero)
    n = len(verts)
    # vertex identifications: top edge j runs p_j -> p_{j+1}; the bottom edge
    # with the same label runs b_k -> b_{k+1}, where b_0 = p_1, b_d = p_{d+1}
    # and b_m = p_{2d+1-m} otherwise
    def b(m):
        if m == 0:
            return 0
        if m == d:
            return d
        return 2 * d - m
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, lab in enumerate(perm):
        for u, v in ((lab - 1, b(k)), (lab, b(k + 1))):
            parent[find(u)] = find(v)
    fl = [(float(x), float(y)) for x, y in verts]
    angles = []
    for i in range(n):
        ux, uy = fl[i - 1][0] - fl[i][0], fl[i - 1][1] - fl[i][1]
        wx, wy = fl[(i + 1) % n][0] - fl[i][0], fl[(i + 1) % n][1] - fl[i][1]
        # boundary runs clockwise (top line first), interior lies to the right
        ang = math.atan2(ux * wy - uy * wx, ux * wx + uy * wy)
        angles.append(ang % (2 * math.pi))
    if abs(sum(angles) - (n - 2) * math.pi) > 1e-6:
        angles = [2 * math.pi - a for a in angles]
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    classes = sorted(groups.values())
    cone = [round(sum(angles[i] for i in cls) / math.pi) for cls in classes]
    degrees = [c - 2 for c in cone if c != 2]
    stratum = Stratum.of(degrees) if degrees and sum(degrees) % 4 == 0 else None
    return Polygon(perm, verts, stratum, cone, classes)


def verify_translation_pieces(p_vertices, q_vertices, table) -> bool:
    """Each piece is a translation: all ``p_i - q_j`` agree within a row.

    ``table`` rows are lists of ``(q_index, p_index)`` pairs, 1-based.
    """
    for row in table:
        if not row or any(len(pair) != 2 for pair in row):
            raise MalformedTable(f"bad piece row {row!r}")
        vecs = []
        for j, i in row:
            if not (1 <= i <= len(p_vertices) and 1 <= j <= len(q_vertices)):
                raise MalformedTable(f"index out of range in {row!r}")
            px, py = p_vertices[i - 1]
            qx, qy = q_vertices[j - 1]
            vecs.append((px - qx, py - qy))
        if any(v != vecs[0] for v in vecs[1:]):
            return False
    return True


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------

@dataclass
class PseudoAnosovCertificate:
    loop: RauzyLoop
    R: np.ndarray
    charpoly: tuple
    field: NumberField
    dilatation: FieldElement
    lambda_vec: list
    tau_vec: list
    derivative: tuple
    polygon: Polygon

    @property
    def stratum(self):
        return self.polygon.stratum

    def perron_value(self) -> float:
        return float(self.dilatation)

    def to_json(self) -> dict:
        lo, hi = self.field.lo, self.field.hi
        return {
            "base_perm": list(self.loop.base_perm),
            "path": list(self.loop.path),
            "matrix": self.R.tolist(),
            "charpoly": list(self.charpoly),
            "minpoly": list(self.field.minpoly),
            "embedding": [str(lo), str(hi)],
            "dilatation": self.dilatation.to_strings(),
            "dilatation_approx": float(self.dilatation),
            "lambda": [x.to_strings() for x in self.lambda_vec],
            "tau": [x.to_strings() for x in self.tau_vec],
            "stratum": list(self.stratum.degrees) if self.stratum else None,
        }


def veech_certificate(loop: RauzyLoop, field: NumberField | None = None,
                      eigenvalue: FieldElement | None = None) -> PseudoAnosovCertificate:
    """Exact pseudo-Anosov certificate for a closed Rauzy loop.

    By default the field is generated by the Perron root of ``R`` over its
    minimal polynomial; a different field and eigenvalue expression can be
    supplied to obtain coordinates in another basis.
    """
    R = loop_matrix(loop)
    if not is_primitive(R):
        raise NotPrimitive("transition matrix has no strictly positive power")
    d = R.shape[0]
    cp = integer_charpoly(R.tolist())
    perron = float(max(np.linalg.eigvals(R.astype(float)), key=lambda z: z.real).real)
    if field is None:
        minpoly = minimal_integer_factor(cp, perron)
        field = NumberField.around(minpoly, perron)
        eigenvalue = field.gen()
    elif eigenvalue is None:
        eigenvalue = field.gen()
    if abs(float(eigenvalue) - perron) > 1e-8 * perron:
        raise ValueError(f"eigenvalue {float(eigenvalue)} is not the Perron root {perron}")
    lam = solve_eigenvector(R.tolist(), eigenvalue, normalize=d - 1)
    if any(sign_of(x) <= 0 for x in lam):
        raise SuspensionFails("Perron eigenvector is not positive")
    inv = eigenvalue.inverse()
    tau = solve_eigenvector(R.tolist(), inv, normalize=d - 1)
    if not suspension_ok(loop.base_perm, tau):
        tau = [-x for x in tau]
        if not suspension_ok(loop.base_perm, tau):
            raise SuspensionFails("contracting eigenvector violates the suspension inequalities")
    polygon = build_polygon(loop.base_perm, list(zip(lam, tau)))
    return PseudoAnosovCertificate(loop, R, cp, field, eigenvalue, lam, tau, (inv, eigenvalue), polygon)


# ---------------------------------------------------------------------------
# loop search
# ---------------------------------------------------------------------------

def _compose_power(poly, k):
    """Coefficients of ``poly(X^k)``."""
    out = []
    for i, c in enumerate(poly):
        out.append(c)
        if i < len(poly) - 1:
            out += [0] * (k - 1)
    return tuple(out)


def _negate(poly):
    n = len(poly) - 1
    return tuple(c * (-1) ** (n - i) for i, c in enumerate(poly))


def loop_matches(charpoly, target, powers=(1, 2, 3, 4)) -> int | None:
    """Smallest ``k`` with ``target(+-X)`` dividing ``charpoly(X^k)``, else ``None``.

    That is, some eigenvalue of the loop is the ``k``-th power of a root of
    the target (up to sign).
    """
    target = tuple(target)
    for k in powers:
        cpk = _compose_power(tuple(charpoly), k)
        for t in (target, _negate(target)):
            if len(t) <= len(cpk) and poly_divmod(cpk, t)[1] == (0,):
                return k
    return None


def search_loops(graph, target, max_len: int, base=None, cap: int = MAX_LOOP_LEN) -> list:
    """Closed loops at ``base`` of length ``<= max_len`` whose matrix matches ``target``.

    Paths are visited depth first with type 0 before type 1, so the output
    order is deterministic (shorter prefixes first, then lexicographic).
    """
    if max_len > cap:
        raise ValueError(f"max_len {max_len} exceeds the cap {cap}")
    if max_len <= 0:
        return []
    if isinstance(graph, dict):
        base = base or next(iter(graph))
    else:
        base = _check_perm(graph if base is None else base)
        graph = build_rauzy_class(base)
    d = len(base)
    steps = {p: {t: perm_step(p, t) for t in (0, 1)} for p in graph}
    found = []
    stack = [(base, (), np.eye(d, dtype=np.int64))]
    while stack:
        p, path, R = stack.pop()
        if path and p == base:
            if loop_matches(integer_charpoly(R.tolist()), target) is not None:
                found.append(RauzyLoop(base, path))
        if len(path) < max_len:
            for t in (1, 0):
                q, M = steps[p][t]
                stack.append((q, path + (t,), R @ M))
    found.sort(key=lambda lp: (len(lp.path), lp.path))
    return found
