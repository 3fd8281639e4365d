"""Strata, Lefschetz numbers and the periodic-orbit compatibility filter.

A candidate characteristic polynomial survives on a stratum when some
permutation of the singularities (with a rotation of their separatrices)
leaves a deficit in every Lefschetz number ``L(f^n), n <= N`` that can be
made up by regular periodic orbits with nonnegative integer counts.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field

from .polycore import as_reciprocal, perron_analysis, traces_from_coeffs

__all__ = [
    "Stratum",
    "Cycle",
    "OrbitStructure",
    "LefschetzProfile",
    "FeasibilityWitness",
    "Infeasible",
    "enumerate_strata",
    "lefschetz_sequence",
    "singularity_contribution",
    "cycle_contribution",
    "regular_sign",
    "solve_regular_orbits",
    "orbit_structures",
    "stratum_feasible",
    "orienting_double_cover",
    "DEFAULT_HORIZON",
    "EXTENSION_HORIZON",
]

DEFAULT_HORIZON = 15
EXTENSION_HORIZON = 50


@dataclass(frozen=True, order=True)
class Stratum:
    degrees: tuple
    genus: int

    def __post_init__(self):
        degrees = tuple(sorted(int(k) for k in self.degrees))
        object.__setattr__(self, "degrees", degrees)
        if sum(degrees) != 4 * self.genus - 4:
            raise ValueError(f"degrees {degrees} do not sum to 4g-4 = {4 * self.genus - 4}")

    @classmethod
    def of(cls, degrees) -> "Stratum":
        degrees = tuple(degrees)
        total = sum(degrees)
        if total % 4:
            raise ValueError(f"degree sum {total} is not 4g-4 for any genus")
        return cls(degrees, total // 4 + 1)

    @property
    def orientable_type(self) -> bool:
        return all(k >= 2 and k % 2 == 0 for k in self.degrees)

    def __str__(self):
        return "(" + ",".join(map(str, self.degrees)) + ")"


def _even_partitions(total, largest):
    if total == 0:
        yield ()
        return
    for part in range(min(total, largest), 1, -1):
        if part % 2:
            continue
        for rest in _even_partitions(total - part, part):
            yield rest + (part,)


def enumerate_strata(genus: int) -> list:
    """Orientable strata of genus ``g``: partitions of ``4g-4`` into even parts."""
    if genus < 2:
        raise ValueError("genus must be at least 2")
    parts = list(_even_partitions(4 * genus - 4, 4 * genus - 4))
    parts.sort(key=lambda p: (len(p), p))
    return [Stratum(p, genus) for p in parts]


def orienting_double_cover(data) -> tuple:
    """Stratum of the orienting double cover of a singularity data list."""
    out = []
    for k in data:
        if k < -1:
            raise ValueError("singularity degrees are at least -1")
        if k % 2:
            out.append(2 * k + 2)
        else:
            out += [k, k]
    out = [k for k in out if k != 0]
    st = Stratum.of(out)
    return st, st.genus


# ---------------------------------------------------------------------------
# Lefschetz numbers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LefschetzProfile:
    charpoly: object
    sign: int
    numbers: tuple

    @property
    def horizon(self) -> int:
        return len(self.numbers)

    def L(self, n: int) -> int:
        return self.numbers[n - 1]


def lefschetz_sequence(charpoly, N: int = DEFAULT_HORIZON) -> LefschetzProfile:
    poly = as_reciprocal(charpoly)
    prof = perron_analysis(poly)
    sign = 1 if prof.dominant_value > 0 else -1
    traces = traces_from_coeffs(poly, N)
    return LefschetzProfile(poly, sign, tuple(2 - p for p in traces))


@dataclass(frozen=True, order=True)
class Cycle:
    """``length`` singularities of degree ``degree`` permuted cyclically.

    The first return rotates the ``degree + 2`` separatrices at each of them
    by ``rotation`` steps.
    """

    degree: int
    length: int
    rotation: int

    @property
    def prongs(self) -> int:
        return self.degree + 2

    def admissible(self, sign: int) -> bool:
        odd = self.rotation % 2 == 1
        return odd == (sign == -1 and self.length % 2 == 1) and 0 <= self.rotation < self.prongs


@dataclass(frozen=True)
class OrbitStructure:
    cycles: tuple

    def degrees(self) -> tuple:
        out = []
        for cyc in self.cycles:
            out += [cyc.degree] * cyc.length
        return tuple(sorted(out))

    def describe(self) -> list:
        return [{"degree": c.degree, "length": c.length, "rotation": c.rotation} for c in self.cycles]


def cycle_contribution(cycle: Cycle, sign: int, n: int) -> int:
    if n % cycle.length:
        return 0
    m = n // cycle.length
    if sign ** n == 1 and (m * cycle.rotation) % cycle.prongs == 0:
        per = 1 - cycle.prongs
    else:
        per = 1
    return cycle.length * per


def singularity_contribution(structure: OrbitStructure, sign: int, n: int) -> int:
    return sum(cycle_contribution(c, sign, n) for c in structure.cycles)


def regular_sign(sign: int, n: int) -> int:
    """Index of a regular fixed point of ``f^n``."""
    return 1 if sign ** n == -1 else -1


@dataclass(frozen=True)
class FeasibilityWitness:
    structure: OrbitStructure
    regular_orbit_counts: dict
    horizon: int
    deficit: tuple = field(default=())

    def lefschetz(self, sign: int, n: int) -> int:
        reg = sum(p * c for p, c in self.regular_orbit_counts.items() if n % p == 0)
        return singularity_contribution(self.structure, sign, n) + regular_sign(sign, n) * reg


@dataclass(frozen=True)
class Infeasible:
    n: int
    reason: str

    def __bool__(self):
        return False


def solve_regular_orbits(profile: LefschetzProfile, structure: OrbitStructure):
    sign = profile.sign
    counts = {}
    deficit = []
    for n in range(1, profile.horizon + 1):
        d = profile.L(n) - singularity_contribution(structure, sign, n)
        deficit.append(d)
        r = d * regular_sign(sign, n)  # s(n) = +-1, so division is multiplication
        if r < 0:
            return Infeasible(n, "sign")
        rest = r - sum(p * c for p, c in counts.items() if n % p == 0)
        if rest < 0:
            return Infeasible(n, "negativity")
        if rest % n:
            return Infeasible(n, "integrality")
        counts[n] = rest // n
    return FeasibilityWitness(structure, {p: c for p, c in counts.items() if c}, profile.horizon,
                              tuple(deficit))


# ---------------------------------------------------------------------------
# orbit structures
# ---------------------------------------------------------------------------

def _rotation_classes(degree, length, sign):
    """One rotation per divisor class: contributions depend only on gcd(t, prongs)."""
    prongs = degree + 2
    seen = {}
    for t in range(prongs):
        cyc = Cycle(degree, length, t)
        if cyc.admissible(sign):
            seen.setdefault(math.gcd(t, prongs), cyc)
    return [seen[k] for k in sorted(seen, reverse=True)]


def _int_partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _int_partitions(n - part, part):
            yield (part,) + rest


def _fingerprint(cycles, sign, N):
    return tuple(sum(cycle_contribution(c, sign, n) for c in cycles) for n in range(1, N + 1))


def _class_structures(degree, mult, sign, N):
    """Distinct (by contribution sequence) cycle multisets for one degree class."""
    out = {}
    for part in _int_partitions(mult):
        groups = Counter(part)
        per_length = []
        for length, k in sorted(groups.items(), reverse=True):
            opts = _rotation_classes(degree, length, sign)
            per_length.append(list(itertools.combinations_with_replacement(opts, k)))
        for combo in itertools.product(*per_length):
            cycles = tuple(c for grp in combo for c in grp)
            out.setdefault(_fingerprint(cycles, sign, N), cycles)
    return list(out.items())


def orbit_structures(stratum: Stratum, sign: int, N: int = DEFAULT_HORIZON) -> list:
    """Orbit structures on ``stratum`` up to equal contribution sequences."""
    classes = sorted(Counter(stratum.degrees).items())
    per_class = [_class_structures(d, m, sign, N) for d, m in classes]
    out = {}
    for combo in itertools.product(*per_class):
        fp = tuple(sum(x) for x in zip(*[f for f, _ in combo])) if combo else (0,) * N
        cycles = tuple(c for _, cyc in combo for c in cyc)
        out.setdefault(fp, OrbitStructure(cycles))
    return list(out.values())


def stratum_feasible(charpoly, stratum: Stratum, N: int = DEFAULT_HORIZON,
                     profile: LefschetzProfile | None = None) -> list:
    """Every surviving witness (empty list: stratum eliminated for this polynomial)."""
    poly = as_reciprocal(charpoly)
    if stratum.genus != poly.genus:
        raise ValueError(f"stratum genus {stratum.genus} != polynomial genus {poly.genus}")
    profile = profile or lefschetz_sequence(poly, N)
    out = []
    for st in orbit_structures(stratum, profile.sign, N):
        res = solve_regular_orbits(profile, st)
        if res:
            out.append(res)
    return out
