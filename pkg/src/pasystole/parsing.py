"""Text syntaxes for polynomials, strata, permutations, paths and words."""

from __future__ import annotations

import json
import re

from .lefschetz import Stratum
from .polycore import ReciprocalPolynomial
from .twist import TwistWord

__all__ = [
    "ParseError",
    "parse_polynomial",
    "parse_reciprocal",
    "parse_stratum",
    "parse_permutation",
    "parse_path",
    "parse_word",
    "parse_int_list",
]


class ParseError(ValueError):
    def __init__(self, text, pos, expected):
        self.text, self.pos, self.expected = text, pos, expected
        super().__init__(f"at position {pos} in {text!r}: expected {expected}")


_TERM = re.compile(
    r"\s*([+-])?\s*(\d+)?\s*(\*)?\s*(([xX])\s*(?:(?:\^|\*\*)\s*(\d+))?)?\s*"
)


def parse_polynomial(text: str) -> tuple:
    """Integer polynomial, descending coefficients.

    Accepts ``"x^6 - x^4 - x^3 - x^2 + 1"`` (also ``**`` and ``*``) or a
    coefficient list ``"[1,0,-1,-1,-1,0,1]"``.
    """
    s = text.strip()
    if not s:
        raise ParseError(text, 0, "a polynomial")
    if s.startswith("["):
        try:
            vals = json.loads(s)
        except json.JSONDecodeError as exc:
            raise ParseError(text, exc.pos, "a JSON list of integers") from None
        if not vals or not all(isinstance(v, int) for v in vals):
            raise ParseError(text, 0, "a nonempty list of integers")
        out = list(vals)
        while len(out) > 1 and out[0] == 0:
            out.pop(0)
        return tuple(out)
    terms = {}
    pos = 0
    first = True
    while pos < len(text):
        if not text[pos:].strip():
            break
        m = _TERM.match(text, pos)
        sign, coef, star, mono, _, exp = m.groups()
        if m.end() == pos or (coef is None and mono is None):
            raise ParseError(text, pos, "a term such as '3x^2', 'x' or '5'")
        if sign is None and not first:
            raise ParseError(text, pos, "'+' or '-' between terms")
        if star and mono is None:
            raise ParseError(text, m.end(), "'x' after '*'")
        c = int(coef) if coef is not None else 1
        if sign == "-":
            c = -c
        e = 0 if mono is None else (int(exp) if exp is not None else 1)
        terms[e] = terms.get(e, 0) + c
        pos = m.end()
        first = False
    if not terms:
        raise ParseError(text, 0, "a polynomial")
    deg = max(e for e, c in terms.items() if c) if any(terms.values()) else 0
    return tuple(terms.get(e, 0) for e in range(deg, -1, -1))


def parse_reciprocal(text: str) -> ReciprocalPolynomial:
    coeffs = parse_polynomial(text)
    n = len(coeffs) - 1
    if n < 2 or n % 2:
        raise ParseError(text, len(text), f"an even degree >= 2 (got degree {n})")
    if coeffs[0] != 1 or coeffs[-1] != 1:
        raise ParseError(text, len(text), "a monic polynomial with constant term 1")
    if coeffs != coeffs[::-1]:
        raise ParseError(text, len(text), "a reciprocal (palindromic) coefficient sequence")
    return ReciprocalPolynomial.from_coefficients(coeffs)


def parse_int_list(text: str, what: str = "integers") -> tuple:
    s = text.strip().strip("()[]")
    out = []
    pos = text.find(s) if s else 0
    for tok in s.split(","):
        t = tok.strip()
        if not re.fullmatch(r"-?\d+", t):
            raise ParseError(text, pos, f"comma separated {what}")
        out.append(int(t))
        pos += len(tok) + 1
    return tuple(out)


def parse_stratum(text: str, genus: int | None = None) -> Stratum:
    degrees = parse_int_list(text, "singularity degrees")
    try:
        st = Stratum.of(degrees)
    except ValueError as exc:
        raise ParseError(text, 0, str(exc)) from None
    if genus is not None and st.genus != genus:
        raise ParseError(text, 0, f"a stratum of genus {genus} (degrees summing to {4 * genus - 4})")
    return st


def parse_permutation(text: str) -> tuple:
    perm = parse_int_list(text, "permutation entries")
    if sorted(perm) != list(range(1, len(perm) + 1)):
        raise ParseError(text, 0, f"a permutation of 1..{len(perm)}")
    return perm


def parse_path(text: str) -> tuple:
    path = parse_int_list(text, "edge types")
    if any(t not in (0, 1) for t in path):
        raise ParseError(text, 0, "edge types 0 or 1")
    return path


def parse_word(text: str, genus: int | None = None) -> TwistWord:
    try:
        return TwistWord.parse(text, genus)
    except ValueError as exc:
        raise ParseError(text, 0, str(exc)) from None
