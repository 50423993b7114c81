"""Polynomial matrix families P(eps), exact Gram minors, and asymptotic
nullity types: the half-degree d_S of the dominating term C_S * eps^(2 d_S)
of each principal minor of P(eps)^T P(eps).
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .ratios import FormalLog
from .subsets import members_of, subset_order

# Dense univariate polynomials over the rationals: coefficient tuples with
# index = degree and no trailing zeros; the zero polynomial is ().
Poly = Tuple[Fraction, ...]

P_ZERO: Poly = ()
P_ONE: Poly = (Fraction(1),)


def poly(coeffs: Sequence) -> Poly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def p_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return poly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                 for i in range(n)])


def p_neg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def p_sub(a: Poly, b: Poly) -> Poly:
    return p_add(a, p_neg(b))


def p_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return P_ZERO
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return poly(out)


def p_divexact(a: Poly, b: Poly) -> Poly:
    """Exact polynomial division; raises if the division leaves a remainder
    (it never does inside fraction-free elimination)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    out = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(rem) >= len(b):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) < len(b):
            break
        shift = len(rem) - len(b)
        factor = rem[-1] / lead
        out[shift] = factor
        for i, cb in enumerate(b):
            rem[shift + i] -= factor * cb
        rem.pop()
    if any(c != 0 for c in rem):
        raise ArithmeticError("inexact polynomial division")
    return poly(out)


def p_eval(a: Poly, x: float) -> float:
    total = 0.0
    for c in reversed(a):
        total = total * x + float(c)
    return total


def lowest_term(a: Poly) -> Tuple[int, Fraction]:
    """(degree, coefficient) of the lowest-order nonzero term."""
    for i, c in enumerate(a):
        if c != 0:
            return i, c
    raise ValueError("zero polynomial has no lowest term")


_TERM = re.compile(
    r"^(?P<sign>[+-]?)(?P<coef>\d+(?:/\d+)?)?(?:\*?(?P<var>e)(?:\^(?P<deg>\d+))?)?$")


def parse_poly(text: str) -> Poly:
    """Parse a polynomial in the literal variable `e`, e.g. `1 + 2*e - 3/2*e^2`."""
    s = "".join(text.split())
    if not s:
        raise ValueError("empty polynomial")
    if s in ("0",):
        return P_ZERO
    chunks = re.split(r"(?=[+-])", s)
    coeffs: Dict[int, Fraction] = {}
    for chunk in chunks:
        if not chunk:
            continue
        m = _TERM.match(chunk)
        if not m or (m.group("coef") is None and m.group("var") is None):
            raise ValueError(f"bad polynomial term {chunk!r} in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        deg = 0
        if m.group("var"):
            deg = int(m.group("deg")) if m.group("deg") else 1
        coeffs[deg] = coeffs.get(deg, Fraction(0)) + coef
    top = max(coeffs)
    return poly([coeffs.get(i, Fraction(0)) for i in range(top + 1)])


def format_poly(a: Poly) -> str:
    if not a:
        return "0"
    parts = []
    for deg, c in enumerate(a):
        if c == 0:
            continue
        mag = abs(c)
        if deg == 0:
            body = str(mag)
        else:
            e = "e" if deg == 1 else f"e^{deg}"
            body = e if mag == 1 else f"{mag}*{e}"
        parts.append(("- " if c < 0 else "+ ") + body)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


@dataclass(frozen=True)
class PolyMatrix:
    size: int
    entries: Tuple[Tuple[Poly, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.size or any(
                len(row) != self.size for row in self.entries):
            raise ValueError("polynomial matrix must be square")


def poly_matrix(rows: Sequence[Sequence]) -> PolyMatrix:
    """Build a PolyMatrix from entries that are Polys, numbers, or strings."""
    def convert(x) -> Poly:
        if isinstance(x, tuple):
            return poly(x)
        if isinstance(x, str):
            return parse_poly(x)
        return poly([x])

    entries = tuple(tuple(convert(x) for x in row) for row in rows)
    return PolyMatrix(len(entries), entries)


def parse_poly_matrix(text: str) -> PolyMatrix:
    """One row per line, entries comma-separated polynomials in `e`."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rows.append([parse_poly(tok) for tok in line.split(",")])
        except ValueError as err:
            raise ValueError(f"line {lineno}: {err}")
    if not rows:
        raise ValueError("empty polynomial matrix file")
    width = len(rows[0])
    if any(len(r) != width for r in rows) or len(rows) != width:
        raise ValueError("polynomial matrix must be square")
    return poly_matrix(rows)


def format_poly_matrix(p: PolyMatrix) -> str:
    return "\n".join(", ".join(format_poly(x) for x in row)
                     for row in p.entries)


def gram(p: PolyMatrix) -> PolyMatrix:
    """P^T P with exact polynomial products (real transpose; data rational)."""
    n = p.size
    out = [[P_ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            acc = P_ZERO
            for k in range(n):
                acc = p_add(acc, p_mul(p.entries[k][i], p.entries[k][j]))
            out[i][j] = acc
            out[j][i] = acc
    return PolyMatrix(n, tuple(tuple(row) for row in out))


def poly_det_cofactor(rows: List[List[Poly]]) -> Poly:
    k = len(rows)
    if k == 0:
        return P_ONE
    if k == 1:
        return rows[0][0]
    total = P_ZERO
    sign = 1
    for j in range(k):
        if rows[0][j]:
            minor = [[row[c] for c in range(k) if c != j] for row in rows[1:]]
            term = p_mul(rows[0][j], poly_det_cofactor(minor))
            total = p_add(total, term if sign > 0 else p_neg(term))
        sign = -sign
    return total


def poly_det_bareiss(rows: List[List[Poly]]) -> Poly:
    """Fraction-free determinant over the polynomial ring; all divisions
    by the previous pivot are exact."""
    k = len(rows)
    if k == 0:
        return P_ONE
    m = [list(row) for row in rows]
    prev = P_ONE
    sign = 1
    for c in range(k - 1):
        piv = next((i for i in range(c, k) if m[i][c]), None)
        if piv is None:
            return P_ZERO
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for i in range(c + 1, k):
            for j in range(c + 1, k):
                num = p_sub(p_mul(m[i][j], m[c][c]), p_mul(m[i][c], m[c][j]))
                m[i][j] = p_divexact(num, prev)
            m[i][c] = P_ZERO
        prev = m[c][c]
    det = m[k - 1][k - 1]
    return det if sign > 0 else p_neg(det)


def principal_minor_poly(a: PolyMatrix, s: int) -> Poly:
    """det of the principal submatrix on the subset mask s; the empty minor
    is the constant 1.  Cofactor and fraction-free paths must agree."""
    idx = [i - 1 for i in members_of(s)]
    sub = [[a.entries[i][j] for j in idx] for i in idx]
    det = poly_det_cofactor(sub) if len(idx) <= 5 else poly_det_bareiss(sub)
    if len(idx) <= 5:
        alt = poly_det_bareiss(sub)
        if alt != det:
            raise AssertionError("determinant cross-check failed")
    return det


@dataclass(frozen=True)
class AsnVector:
    """Half-degrees d_S of the dominating minor terms of a Gram family."""
    ground_size: int
    entries: Tuple[int, ...]

    def __getitem__(self, mask: int) -> int:
        return self.entries[mask]


def asn(p: PolyMatrix) -> AsnVector:
    """Asymptotic nullity type of an invertible polynomial matrix: for each
    subset S the minor det (P^T P)[S] has dominating term C_S eps^(2 d_S)
    with C_S > 0; returns the vector of the d_S."""
    n = p.size
    a = gram(p)
    entries = [0] * (1 << n)
    for s in range(1, 1 << n):
        minor = principal_minor_poly(a, s)
        if not minor:
            raise ValueError(
                "a principal Gram minor is identically zero; "
                "P is not invertible as a polynomial matrix")
        deg, coeff = lowest_term(minor)
        if deg % 2 or coeff <= 0:
            raise AssertionError(
                "dominating minor term is not a positive even power")
        entries[s] = deg // 2
    return AsnVector(n, tuple(entries))


def asn_inner_product(v: FormalLog, a: AsnVector) -> Fraction:
    if v.ground_size != a.ground_size:
        raise ValueError("ground size mismatch")
    return sum((x * d for x, d in zip(v.exponents, a.entries)),
               start=Fraction(0))


def eval_poly_matrix(p: PolyMatrix, x: float):
    import numpy as np
    return np.array([[p_eval(entry, x) for entry in row]
                     for row in p.entries], dtype=float)
