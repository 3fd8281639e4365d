"""Dehn twists acting on first homology.

Basis ``(a_1, b_1, .., a_g, b_g)`` with ``<a_i, b_i> = 1``; the chain curve
``c_i`` has class ``a_i - a_{i+1}``.  A twist of power ``p`` about a curve
of class ``v`` acts by ``x -> x + p <x, v> v``; in a word the leftmost
letter acts first.  These choices reproduce the printed genus-2 matrices.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

import numpy as np

from .numfield import integer_charpoly
from .polycore import (
    ReciprocalPolynomial,
    has_root_of_unity,
    negate_variable,
    power_base,
    symplectically_irreducible,
)

__all__ = [
    "TwistWord",
    "HomologyAction",
    "Verdict",
    "symplectic_form",
    "curve_class",
    "transvection",
    "word_action",
    "word_charpoly",
    "casson_bleiler",
    "search_words",
    "chain_alphabet",
    "MAX_WORD_LEN",
]

MAX_WORD_LEN = 12
WORD_CAP = 5_000_000

_LETTER = re.compile(r"([abcABC])(\d+)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class TwistWord:
    genus: int
    letters: tuple  # (generator, index, power)

    def __post_init__(self):
        letters = tuple((str(g), int(i), int(p)) for g, i, p in self.letters)
        object.__setattr__(self, "letters", letters)
        for g, i, p in letters:
            top = self.genus - 1 if g == "c" else self.genus
            if g not in "abc" or not 1 <= i <= top:
                raise ValueError(f"generator {g}{i} out of range for genus {self.genus}")
            if p == 0:
                raise ValueError("zero power")

    @classmethod
    def parse(cls, text: str, genus: int | None = None) -> "TwistWord":
        """``"a1.a1.b1.c1.A3"``: capitals are inverse twists, ``x^k`` powers."""
        letters = []
        text = text.strip()
        for pos, tok in _tokens(text):
            m = _LETTER.match(tok)
            if not m:
                raise ValueError(f"bad twist letter {tok!r} at position {pos}")
            g, i, p = m.group(1), int(m.group(2)), int(m.group(3) or 1)
            if g.isupper():
                g, p = g.lower(), -p
            letters.append((g, i, p))
        if genus is None:
            genus = max([i + (1 if g == "c" else 0) for g, i, _ in letters] + [1])
        return cls(genus, tuple(letters))

    def inverse(self) -> "TwistWord":
        return TwistWord(self.genus, tuple((g, i, -p) for g, i, p in reversed(self.letters)))

    def expanded(self) -> tuple:
        """Unit-power letters (so ``a1^2`` becomes ``a1, a1``)."""
        out = []
        for g, i, p in self.letters:
            out += [(g, i, 1 if p > 0 else -1)] * abs(p)
        return tuple(out)

    def __str__(self):
        parts = []
        for g, i, p in self.expanded():
            parts.append(f"{g.upper() if p < 0 else g}{i}")
        return ".".join(parts)


def _tokens(text):
    pos = 0
    for tok in text.split("."):
        yield pos, tok.strip()
        pos += len(tok) + 1


def symplectic_form(genus: int) -> np.ndarray:
    n = 2 * genus
    J = np.zeros((n, n), dtype=np.int64)
    for i in range(genus):
        J[2 * i, 2 * i + 1] = 1
        J[2 * i + 1, 2 * i] = -1
    return J


def curve_class(gen: str, index: int, genus: int) -> np.ndarray:
    v = np.zeros(2 * genus, dtype=np.int64)
    if gen == "a":
        v[2 * (index - 1)] = 1
    elif gen == "b":
        v[2 * (index - 1) + 1] = 1
    elif gen == "c":
        v[2 * (index - 1)] = 1
        v[2 * index] = -1
    else:
        raise ValueError(f"unknown generator {gen!r}")
    return v


def transvection(v: np.ndarray, power: int, J: np.ndarray) -> np.ndarray:
    n = len(v)
    return np.eye(n, dtype=np.int64) + power * np.outer(v, J @ v)


@dataclass(frozen=True)
class HomologyAction:
    matrix: np.ndarray
    intersection_form: np.ndarray

    def is_symplectic(self) -> bool:
        M, J = self.matrix, self.intersection_form
        return bool((M.T @ J @ M == J).all())


def word_action(word: TwistWord) -> HomologyAction:
    J = symplectic_form(word.genus)
    M = np.eye(2 * word.genus, dtype=np.int64)
    for g, i, p in word.letters:
        M = transvection(curve_class(g, i, word.genus), p, J) @ M
    return HomologyAction(M, J)


def word_charpoly(word: TwistWord) -> ReciprocalPolynomial:
    cp = integer_charpoly(word_action(word).matrix.tolist())
    return ReciprocalPolynomial.from_coefficients(cp)


@dataclass(frozen=True)
class Verdict:
    status: str
    failed: tuple = ()

    @property
    def candidate(self) -> bool:
        return self.status == "PA-CANDIDATE"


def casson_bleiler(poly) -> Verdict:
    """Sufficient homology criterion for a pseudo-Anosov class."""
    failed = []
    if not symplectically_irreducible(poly):
        failed.append("symplectically reducible")
    if has_root_of_unity(poly):
        failed.append("root of unity")
    k = power_base(poly)
    if k:
        failed.append(f"polynomial in X^{k}")
    return Verdict("INCONCLUSIVE" if failed else "PA-CANDIDATE", tuple(failed))


# ---------------------------------------------------------------------------
# word search
# ---------------------------------------------------------------------------

def chain_alphabet(genus: int) -> list:
    """Generators in chain order ``a1, b1, c1, a2, b2, .., a_g, b_g``."""
    out = []
    for i in range(1, genus + 1):
        out += [("a", i), ("b", i)]
        if i < genus:
            out.append(("c", i))
    return out


def _batch_half_coeffs(mats, genus):
    """Half coefficients ``a_1..a_g`` of the charpolys of a stack of matrices."""
    P = mats.copy()
    traces = [np.trace(P, axis1=1, axis2=2)]
    for _ in range(genus - 1):
        P = P @ mats
        traces.append(np.trace(P, axis1=1, axis2=2))
    a = []
    for k in range(1, genus + 1):
        s = traces[k - 1].copy()
        for m in range(1, k):
            s += a[m - 1] * traces[k - m - 1]
        a.append(-s // k)
    return np.stack(a, axis=1)


def _rotations(seq):
    return [seq[i:] + seq[:i] for i in range(len(seq))]


def _canonical(word_letters):
    """Least cyclic rotation of the unit-letter sequence."""
    return min(_rotations(tuple(word_letters))) if word_letters else ()


def search_words(genus: int, target, max_len: int, mode: str = "exhaustive",
                 exponents=(-2, -1, 0, 1, 2), cap: int = WORD_CAP) -> list:
    """Twist words whose homology charpoly is ``target`` or ``target(-X)``.

    ``exhaustive``: every freely reduced word of length ``<= max_len`` over
    all generators and both signs, reported once per cyclic class.
    ``chain``: one power (from ``exponents``) per generator in chain order,
    words of at most ``max_len`` letters counted with multiplicity.
    """
    if max_len > MAX_WORD_LEN:
        raise ValueError(f"max_len {max_len} exceeds the cap {MAX_WORD_LEN}")
    if max_len <= 0:
        return []
    tgt = ReciprocalPolynomial.from_coefficients(tuple(target) if not isinstance(target, ReciprocalPolynomial)
                                                 else target.coefficients)
    if tgt.genus != genus:
        raise ValueError("target degree does not match 2*genus")
    wanted = {tgt.coeffs, negate_variable(tgt).coeffs}
    J = symplectic_form(genus)
    if mode == "chain":
        return _search_chain(genus, wanted, max_len, exponents, J, cap)
    if mode != "exhaustive":
        raise ValueError(f"unknown search mode {mode!r}")
    alphabet = [(g, i, s) for g, i in chain_alphabet(genus) for s in (1, -1)]
    n_letters = len(alphabet)
    total = sum(n_letters * (n_letters - 1) ** (k - 1) for k in range(1, max_len + 1))
    if total > cap:
        raise ValueError(f"{total} words exceed the search cap {cap}; use mode='chain'")
    T = np.stack([transvection(curve_class(g, i, genus), s, J) for g, i, s in alphabet])
    inverse = np.array([k ^ 1 for k in range(n_letters)])  # sign pairs are adjacent
    words = np.zeros((1, 0), dtype=np.int64)
    mats = np.eye(2 * genus, dtype=np.int64)[None]
    found = set()
    for length in range(1, max_len + 1):
        last = words[:, -1] if length > 1 else None
        rows, letters = [], []
        for k in range(n_letters):
            keep = np.arange(words.shape[0]) if last is None else np.nonzero(last != inverse[k])[0]
            rows.append(keep)
            letters.append(np.full(keep.shape[0], k))
        rows = np.concatenate(rows)
        letters = np.concatenate(letters)
        words = np.hstack([words[rows], letters[:, None]])
        mats = T[letters] @ mats[rows]
        half = _batch_half_coeffs(mats, genus)
        hit = np.zeros(words.shape[0], bool)
        for w in wanted:
            hit |= (half == np.array(w)).all(axis=1)
        for row in words[hit]:
            seq = [alphabet[k] for k in row]
            # cyclically reduced only
            if len(seq) > 1 and seq[0][:2] == seq[-1][:2] and seq[0][2] != seq[-1][2]:
                continue
            found.add(_canonical(seq))
    out = [TwistWord(genus, w) for w in found]
    out.sort(key=lambda w: (len(w.letters), _sort_key(w)))
    return out


def _sort_key(word):
    order = {g: k for k, g in enumerate(chain_alphabet(word.genus))}
    return tuple((order[(g, i)], -p) for g, i, p in word.letters)


def _search_chain(genus, wanted, max_len, exponents, J, cap):
    alphabet = chain_alphabet(genus)
    combos = list(itertools.product(exponents, repeat=len(alphabet)))
    if len(combos) > cap:
        raise ValueError(f"{len(combos)} chain words exceed the search cap {cap}")
    E = np.array(combos, dtype=np.int64)
    E = E[np.abs(E).sum(axis=1) <= max_len]
    E = E[np.abs(E).sum(axis=1) > 0]
    mats = np.broadcast_to(np.eye(2 * genus, dtype=np.int64), (E.shape[0], 2 * genus, 2 * genus)).copy()
    for col, (g, i) in enumerate(alphabet):
        v = curve_class(g, i, genus)
        step = np.outer(v, J @ v)
        T = np.eye(2 * genus, dtype=np.int64)[None] + E[:, col, None, None] * step[None]
        mats = T @ mats
    half = _batch_half_coeffs(mats, genus)
    hit = np.zeros(E.shape[0], bool)
    for w in wanted:
        hit |= (half == np.array(w)).all(axis=1)
    out = []
    for row in E[hit]:
        letters = tuple((g, i, int(p)) for (g, i), p in zip(alphabet, row) if p)
        out.append(TwistWord(genus, letters))
    out.sort(key=lambda w: (sum(abs(p) for _, _, p in w.letters), _sort_key(w)))
    return out
