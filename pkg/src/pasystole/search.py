"""Exhaustive search for reciprocal polynomials with small Perron root.

The primary method walks trace vectors ``(p_1, .., p_g)`` inside the box
``|p_k| <= trace_bound(2g, r, k)``, building the coefficients level by
level so that only integral prefixes are ever extended.  The coefficient
box search is kept as an independent oracle for small genus.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .polycore import (
    AmbiguousDominance,
    NoConvergence,
    ReciprocalPolynomial,
    mahler_measure,
    negate_variable,
    perron_analysis,
    trace_bound,
)

__all__ = [
    "RootBound",
    "CandidateSet",
    "Shard",
    "BoundTooLow",
    "OracleScaleExceeded",
    "enumerate_candidates",
    "count_trace_cases",
    "coefficient_enumerate",
    "coefficient_bounds",
    "trace_box",
    "make_shards",
    "run_shard",
    "merge_shards",
]

log = logging.getLogger(__name__)

BOUNDARY_TOL = 1e-9
_ROW_CHUNK = 1 << 20


class BoundTooLow(ValueError):
    pass


class OracleScaleExceeded(ValueError):
    pass


@dataclass(frozen=True)
class RootBound:
    value: float
    defining_poly: tuple | None = None
    strict: bool = True

    def __post_init__(self):
        if not self.value > 1:
            raise BoundTooLow(f"bound must exceed 1, got {self.value}")

    @classmethod
    def from_poly(cls, coefficients) -> "RootBound":
        coefficients = tuple(int(a) for a in coefficients)
        prof = perron_analysis(coefficients)
        if not (prof.dominant_is_real and prof.strictly_dominant):
            raise ValueError("bound polynomial has no dominant real root")
        return cls(abs(prof.dominant_value), coefficients)

    def describe(self) -> dict:
        out = {"value": self.value, "strict": self.strict}
        if self.defining_poly is not None:
            out["defining_poly"] = list(self.defining_poly)
        return out


@dataclass
class CandidateSet:
    genus: int
    bound: RootBound
    candidates: list
    stats: dict = field(default_factory=dict)
    boundary: list = field(default_factory=list)
    review: list = field(default_factory=list)

    def polynomials(self):
        return [p for p, _ in self.candidates]

    def coefficient_set(self):
        return {p.coefficients for p, _ in self.candidates}

    def __len__(self):
        return len(self.candidates)


@dataclass(frozen=True, order=True)
class Shard:
    """Trace vectors with the given ``p_1`` and ``p_2`` in ``[p2_lo, p2_hi]``."""

    p1: int
    p2_lo: int | None = None
    p2_hi: int | None = None

    def key(self) -> str:
        if self.p2_lo is None:
            return f"p1={self.p1}"
        return f"p1={self.p1},p2={self.p2_lo}..{self.p2_hi}"


def trace_box(genus: int, r: float, count: int | None = None) -> list:
    n = 2 * genus
    return [trace_bound(n, r, k) for k in range(1, (count or genus) + 1)]


def count_trace_cases(genus: int, bound: RootBound) -> tuple:
    """(total, fractional, surviving) over the trace box with ``p_1 >= 0``."""
    return enumerate_candidates(genus, bound, analyse=False).stats_tuple


def _box_total(t):
    total = t[0] + 1
    for tk in t[1:]:
        total *= 2 * tk + 1
    return total


def make_shards(genus: int, bound: RootBound, split_p2: bool | None = None) -> list:
    t = trace_box(genus, bound.value)
    if split_p2 is None:
        split_p2 = genus >= 7
    shards = []
    for p1 in range(t[0] + 1):
        if split_p2 and genus >= 2:
            for p2 in range(-t[1], t[1] + 1):
                shards.append(Shard(p1, p2, p2))
        else:
            shards.append(Shard(p1))
    return shards


# ---------------------------------------------------------------------------
# vectorised core
# ---------------------------------------------------------------------------

def _residue_expand(p_cols, a_cols, k, tk):
    """Extend every row by all ``p_k`` in ``[-tk, tk]`` making ``a_k`` integral."""
    rows = p_cols[0].shape[0]
    s = np.zeros(rows, dtype=np.int64)
    for m in range(1, k):
        s += a_cols[m - 1] * p_cols[k - m - 1]
    # need p_k + s divisible by k
    res = (-s) % k
    start = -tk + ((res + tk) % k)
    count = np.where(start <= tk, (tk - start) // k + 1, 0)
    total = int(count.sum())
    idx = np.repeat(np.arange(rows), count)
    offs = np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(count) - count, count)
    pk = start[idx] + k * offs
    ak = -(pk + s[idx]) // k
    return [c[idx] for c in p_cols] + [pk], [c[idx] for c in a_cols] + [ak]


def _forward_filter(p_cols, a_cols, genus, bounds):
    """Drop rows whose later traces ``p_{g+1}..`` exceed the trace bound."""
    n = 2 * genus
    rows = p_cols[0].shape[0]
    coeffs = [None] * n
    for m in range(1, genus + 1):
        coeffs[m - 1] = a_cols[m - 1]
    for m in range(genus + 1, n):
        coeffs[m - 1] = a_cols[n - m - 1]
    coeffs[n - 1] = np.ones(rows, dtype=np.int64)
    traces = list(p_cols)
    keep = np.arange(rows)
    for k in range(genus + 1, len(bounds) + 1):
        s = np.zeros(keep.shape[0], dtype=np.int64)
        for m in range(1, min(k - 1, n) + 1):
            s += coeffs[m - 1] * traces[k - m - 1]
        if k <= n:
            s += k * coeffs[k - 1]
        pk = -s
        ok = np.abs(pk) <= bounds[k - 1]
        if not ok.all():
            keep = keep[ok]
            coeffs = [c[ok] for c in coeffs]
            traces = [t[ok] for t in traces]
            pk = pk[ok]
        traces.append(pk)
    return keep


def _analyse(rows_a, genus, r):
    """Root analysis of half-coefficient rows; returns (accepted, boundary, review)."""
    accepted, boundary, review = [], [], []
    for half in rows_a:
        poly = ReciprocalPolynomial(2 * genus, tuple(int(x) for x in half))
        try:
            prof = perron_analysis(poly, seed=r * (1 + 1e-6))
        except AmbiguousDominance as exc:
            review.append((poly.coefficients, exc.gap))
            continue
        except NoConvergence:
            continue
        if not prof.allowable:
            continue
        if prof.dominant_value < 0:
            poly = negate_variable(poly)
        rho = abs(prof.dominant_value)
        if abs(rho - r) <= BOUNDARY_TOL * r:
            boundary.append((poly.coefficients, rho))
            log.info("boundary hit %s at %.12f", poly, rho)
            continue
        if rho < r:
            accepted.append((poly.coefficients, rho))
    return accepted, boundary, review


def run_shard(genus: int, r: float, shard: Shard, analyse: bool = True,
              forward: int | None = None) -> dict:
    """Process one shard; returns plain data so it crosses process boundaries."""
    t = trace_box(genus, r, forward or 3 * genus)
    p1 = np.array([shard.p1], dtype=np.int64)
    p_cols, a_cols = [p1], [-p1]
    if genus >= 2:
        lo = -t[1] if shard.p2_lo is None else shard.p2_lo
        hi = t[1] if shard.p2_hi is None else shard.p2_hi
        p_cols, a_cols = _residue_expand(p_cols, a_cols, 2, t[1])
        mask = (p_cols[1] >= lo) & (p_cols[1] <= hi)
        p_cols = [c[mask] for c in p_cols]
        a_cols = [c[mask] for c in a_cols]
    for k in range(3, genus + 1):
        p_cols, a_cols = _residue_expand(p_cols, a_cols, k, t[k - 1])
    integral = int(p_cols[0].shape[0])
    out = {"shard": shard.key(), "integral": integral, "accepted": [], "boundary": [],
           "review": [], "prefiltered": 0}
    if not analyse or integral == 0:
        return out
    accepted, boundary, review = [], [], []
    prefiltered = 0
    for lo in range(0, integral, _ROW_CHUNK):
        pc = [c[lo:lo + _ROW_CHUNK] for c in p_cols]
        ac = [c[lo:lo + _ROW_CHUNK] for c in a_cols]
        keep = _forward_filter(pc, ac, genus, t)
        prefiltered += int(keep.shape[0])
        rows = np.stack([c[keep] for c in ac], axis=1) if keep.size else np.zeros((0, genus), np.int64)
        acc, bd, rv = _analyse(rows, genus, r)
        accepted += acc
        boundary += bd
        review += rv
    out.update(accepted=accepted, boundary=boundary, review=review, prefiltered=prefiltered)
    return out


def merge_shards(genus: int, bound: RootBound, results) -> CandidateSet:
    t = trace_box(genus, bound.value)
    total = _box_total(t)
    integral = sum(res["integral"] for res in results)
    seen = {}
    for res in results:
        for coeffs, rho in res["accepted"]:
            seen.setdefault(tuple(coeffs), rho)
    cands = sorted(seen.items(), key=lambda kv: (round(kv[1], 9), kv[0]))
    boundary = sorted({tuple(c): rho for res in results for c, rho in res["boundary"]}.items())
    review = sorted({tuple(c): gap for res in results for c, gap in res["review"]}.items())
    stats = {
        "total": total,
        "fractional": total - integral,
        "surviving": integral,
        "prefiltered": sum(res.get("prefiltered", 0) for res in results),
        "accepted": len(cands),
        "trace_box": t,
    }
    cs = CandidateSet(
        genus, bound,
        [(ReciprocalPolynomial.from_coefficients(c), rho) for c, rho in cands],
        stats, [list(b) for b in boundary], [list(v) for v in review],
    )
    return cs


def _workers():
    try:
        return max(1, int(os.environ.get("PA_SYSTOLE_THREADS", "1")))
    except ValueError:
        return 1


def enumerate_candidates(genus: int, bound: RootBound, shards: list | None = None,
                         workers: int | None = None, analyse: bool = True,
                         on_shard=None, done: dict | None = None) -> CandidateSet:
    """All allowable degree-``2g`` reciprocal polynomials with Perron root below the bound.

    ``on_shard(shard, result)`` is called as each shard finishes; ``done`` maps
    shard keys to previously computed results, which are reused verbatim.
    """
    if not 1 <= genus <= 10:
        raise ValueError(f"genus must be in 1..10, got {genus}")
    if bound.value <= 1:
        raise BoundTooLow(bound.value)
    shards = shards if shards is not None else make_shards(genus, bound)
    done = dict(done or {})
    todo = [s for s in shards if s.key() not in done]
    workers = workers or _workers()
    results = dict(done)
    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futs = [(s, pool.submit(run_shard, genus, bound.value, s, analyse)) for s in todo]
            for s, f in futs:
                results[s.key()] = f.result()
                if on_shard:
                    on_shard(s, results[s.key()])
    else:
        for s in todo:
            results[s.key()] = run_shard(genus, bound.value, s, analyse)
            if on_shard:
                on_shard(s, results[s.key()])
    cs = merge_shards(genus, bound, [results[s.key()] for s in shards])
    cs.stats_tuple = (cs.stats["total"], cs.stats["fractional"], cs.stats["surviving"])
    return cs


# ---------------------------------------------------------------------------
# coefficient-box oracle
# ---------------------------------------------------------------------------

def coefficient_bounds(genus: int, r: float) -> list:
    """``floor`` of the coefficients of ``(X^2 + tX + 1)^g``, ``t = r + 1/r``."""
    t = r + 1 / r
    poly = np.array([1.0])
    for _ in range(genus):
        poly = np.convolve(poly, [1.0, t, 1.0])
    return [math.floor(poly[k] + 1e-9) for k in range(1, genus + 1)]


def _normalized_box(bounds):
    """Yield half-coefficient blocks (numpy arrays) under the sign normalization."""
    g = len(bounds)
    odd = [k for k in range(1, g + 1) if k % 2]
    rest = [np.arange(-b, b + 1) for b in bounds[1:]]

    def grid(ranges):
        mesh = np.meshgrid(*ranges, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1).astype(np.int64)

    for a1 in range(1, bounds[0] + 1):
        tail = grid(rest) if rest else np.zeros((1, 0), np.int64)
        yield np.hstack([np.full((tail.shape[0], 1), a1, np.int64), tail])
    # a1 = 0: the first nonzero among a3, a5, .. is positive, or all vanish
    later_odd = odd[1:]
    for j in range(len(later_odd) + 1):
        ranges = [np.array([0])]
        for m in range(2, g + 1):
            b = bounds[m - 1]
            if m in later_odd[:j]:
                ranges.append(np.array([0]))
            elif j < len(later_odd) and m == later_odd[j]:
                ranges.append(np.arange(1, b + 1))
            elif j == len(later_odd) and m in later_odd:
                ranges.append(np.array([0]))
            else:
                ranges.append(np.arange(-b, b + 1))
        if all(len(x) for x in ranges):
            yield grid(ranges)


def coefficient_enumerate(genus: int, bound: RootBound, bounds: list | None = None):
    """Oracle: enumerate the normalised half-coefficient box directly."""
    if genus > 4:
        raise OracleScaleExceeded(f"coefficient oracle is limited to genus <= 4, got {genus}")
    if bound.value <= 1:
        raise BoundTooLow(bound.value)
    r = bound.value
    bounds = list(bounds) if bounds is not None else coefficient_bounds(genus, r)
    t = trace_box(genus, r, 3 * genus)
    cases = 0
    accepted, boundary, review = [], [], []
    for block in _normalized_box(bounds):
        cases += block.shape[0]
        for lo in range(0, block.shape[0], _ROW_CHUNK):
            chunk = block[lo:lo + _ROW_CHUNK]
            a_cols = [chunk[:, j].copy() for j in range(genus)]
            p_cols = _traces_of(a_cols, genus)
            ok = np.ones(chunk.shape[0], bool)
            for k in range(genus):
                ok &= np.abs(p_cols[k]) <= t[k]
            a_cols = [c[ok] for c in a_cols]
            p_cols = [c[ok] for c in p_cols]
            if not a_cols[0].size:
                continue
            keep = _forward_filter(p_cols, a_cols, genus, t)
            rows = np.stack([c[keep] for c in a_cols], axis=1)
            acc, bd, rv = _analyse(rows, genus, r)
            accepted += acc
            boundary += bd
            review += rv
    seen = {}
    for c, rho in accepted:
        seen.setdefault(c, rho)
    cands = sorted(seen.items(), key=lambda kv: (round(kv[1], 9), kv[0]))
    cs = CandidateSet(genus, bound,
                      [(ReciprocalPolynomial.from_coefficients(c), rho) for c, rho in cands],
                      {"cases": cases, "coefficient_bounds": bounds, "accepted": len(cands)},
                      sorted(boundary), sorted(review))
    return cs, cases


def _traces_of(a_cols, genus):
    p = []
    for k in range(1, genus + 1):
        s = k * a_cols[k - 1]
        for m in range(1, k):
            s = s + a_cols[m - 1] * p[k - m - 1]
        p.append(-s)
    return p


def mahler_check(cs: CandidateSet) -> bool:
    """Every candidate satisfies ``M(P) <= bound^g``."""
    return all(mahler_measure(p) <= cs.bound.value ** cs.genus * (1 + 1e-9) for p, _ in cs.candidates)
