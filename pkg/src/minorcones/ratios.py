"""Ratios of products of principal minors and their formal logarithms.

A ratio is stored either as a parsed product/quotient of index sets with
positive rational exponents (RatioSpec), or as its formal logarithm
(FormalLog): one rational net exponent per subset, with the empty-set entry
fixed so that all entries sum to zero.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .exact import primitive
from .subsets import (check_permutation, complement_mask, format_subset,
                      mask_of, members_of, permute_mask, subset_order)


class RatioSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NotPositiveDefiniteError(ValueError):
    def __init__(self, subset: Tuple[int, ...]):
        super().__init__(
            f"matrix is not numerically positive definite on the principal "
            f"submatrix indexed by {set(subset) or '{}'}")
        self.subset = subset


@dataclass(frozen=True)
class RatioSpec:
    """A ratio alpha/beta as lists of (subset mask, positive exponent)."""
    ground_size: int
    numerator: Tuple[Tuple[int, Fraction], ...]
    denominator: Tuple[Tuple[int, Fraction], ...]

    def __post_init__(self):
        full = (1 << self.ground_size) - 1
        for mask, exp in self.numerator + self.denominator:
            if exp <= 0:
                raise ValueError(f"exponent {exp} must be positive")
            if mask & ~full:
                raise ValueError(
                    f"subset {format_subset(mask)} outside 1..{self.ground_size}")


@dataclass(frozen=True)
class FormalLog:
    """Subset-indexed rational exponent vector summing to zero."""
    ground_size: int
    exponents: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.exponents) != 1 << self.ground_size:
            raise ValueError("exponent vector has wrong length")
        if sum(self.exponents) != 0:
            raise ValueError("formal logarithm must sum to zero")

    def __getitem__(self, mask: int) -> Fraction:
        return self.exponents[mask]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.exponents)


def _normalize_empty(n: int, acc: Dict[int, Fraction]) -> FormalLog:
    vec = [Fraction(0)] * (1 << n)
    for mask, v in acc.items():
        if mask != 0:
            vec[mask] = v
    vec[0] = -sum(vec[1:])
    return FormalLog(n, tuple(vec))


def from_entries(n: int, entries: Dict[int, Fraction]) -> FormalLog:
    """Build a FormalLog from nonempty-set entries; the empty-set entry is
    recomputed from the sum-zero convention."""
    return _normalize_empty(n, {m: Fraction(v) for m, v in entries.items()})


def parse_ratio(text: str, n: Optional[int] = None) -> RatioSpec:
    """Parse `PRODUCT / PRODUCT` where a product is a sequence of `{i,j,...}`
    terms, each optionally raised to `^p` or `^p/q`.

    Whitespace is ignored.  An exponent's `/q` part is taken greedily when
    the slash is immediately followed by digits; the remaining slash is the
    numerator/denominator separator.
    """
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def parse_int() -> int:
        nonlocal pos
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise RatioSyntaxError("expected an integer", start)
        return int(text[start:pos])

    def peek_digit_after_slash() -> bool:
        p = pos + 1
        while p < len(text) and text[p].isspace():
            p += 1
        return p < len(text) and text[p].isdigit()

    def parse_product() -> Tuple[Tuple[int, Fraction], ...]:
        nonlocal pos
        terms = []
        while True:
            skip_ws()
            if pos >= len(text) or text[pos] != "{":
                break
            pos += 1
            members = []
            skip_ws()
            if pos < len(text) and text[pos] == "}":
                pos += 1
            else:
                while True:
                    skip_ws()
                    members.append(parse_int())
                    skip_ws()
                    if pos < len(text) and text[pos] == ",":
                        pos += 1
                        continue
                    if pos < len(text) and text[pos] == "}":
                        pos += 1
                        break
                    raise RatioSyntaxError("expected ',' or '}'", pos)
            exponent = Fraction(1)
            skip_ws()
            if pos < len(text) and text[pos] == "^":
                pos += 1
                skip_ws()
                at = pos
                p = parse_int()
                q = 1
                skip_ws()
                if pos < len(text) and text[pos] == "/" and peek_digit_after_slash():
                    pos += 1
                    skip_ws()
                    q = parse_int()
                exponent = Fraction(p, q)
                if exponent <= 0:
                    raise RatioSyntaxError("exponent must be positive", at)
            terms.append((mask_of(members), exponent))
        if not terms:
            raise RatioSyntaxError("expected '{'", pos)
        return tuple(terms)

    numerator = parse_product()
    skip_ws()
    if pos >= len(text) or text[pos] != "/":
        raise RatioSyntaxError("expected '/' between numerator and denominator", pos)
    pos += 1
    denominator = parse_product()
    skip_ws()
    if pos != len(text):
        raise RatioSyntaxError("unexpected trailing input", pos)

    max_index = 0
    for mask, _ in numerator + denominator:
        if mask:
            max_index = max(max_index, members_of(mask)[-1])
    if n is None:
        n = max(max_index, 1)
    elif max_index > n:
        raise ValueError(f"index {max_index} exceeds ground size {n}")
    return RatioSpec(n, numerator, denominator)


def format_ratio(spec: RatioSpec) -> str:
    def fmt_product(terms):
        out = []
        for mask, exp in terms:
            s = format_subset(mask)
            if exp != 1:
                s += f"^{exp.numerator}" + (f"/{exp.denominator}"
                                            if exp.denominator != 1 else "")
            out.append(s)
        return "".join(out)

    return fmt_product(spec.numerator) + " / " + fmt_product(spec.denominator)


def formal_log(spec: RatioSpec) -> FormalLog:
    """Net exponent per subset, with the empty-set entry normalized to make
    the total sum zero (explicit {} factors are folded in first)."""
    acc: Dict[int, Fraction] = {}
    for mask, exp in spec.numerator:
        acc[mask] = acc.get(mask, Fraction(0)) + exp
    for mask, exp in spec.denominator:
        acc[mask] = acc.get(mask, Fraction(0)) - exp
    return _normalize_empty(spec.ground_size, acc)


def log_of(text: str, n: Optional[int] = None) -> FormalLog:
    return formal_log(parse_ratio(text, n))


@lru_cache(maxsize=None)
def homogeneity_vectors(n: int) -> Tuple[Tuple[int, ...], ...]:
    """The all-ones vector and the n index-indicator vectors, mask-indexed."""
    size = 1 << n
    vecs = [tuple([1] * size)]
    for i in range(n):
        vecs.append(tuple(1 if m >> i & 1 else 0 for m in range(size)))
    return tuple(vecs)


def is_homogeneous(v: FormalLog) -> bool:
    return all(sum(a * b for a, b in zip(v.exponents, h)) == 0
               for h in homogeneity_vectors(v.ground_size))


def apply_permutation(v: FormalLog, perm: Sequence[int]) -> FormalLog:
    check_permutation(perm, v.ground_size)
    out = [Fraction(0)] * (1 << v.ground_size)
    for mask, x in enumerate(v.exponents):
        out[permute_mask(mask, perm)] = x
    return FormalLog(v.ground_size, tuple(out))


def apply_complement(v: FormalLog) -> FormalLog:
    n = v.ground_size
    out = [Fraction(0)] * (1 << n)
    for mask, x in enumerate(v.exponents):
        out[complement_mask(mask, n)] = x
    return FormalLog(n, tuple(out))


def koteljanskii_log(s: int, t: int, n: int) -> FormalLog:
    """log of the Hadamard-Fischer pattern (S∪T)(S∩T) / (S)(T)."""
    if s & ~((1 << n) - 1) or t & ~((1 << n) - 1):
        raise ValueError("subset outside ground set")
    if s | t == s or s | t == t:
        return from_entries(n, {})
    acc: Dict[int, Fraction] = {}
    for mask, sign in ((s | t, 1), (s & t, 1), (s, -1), (t, -1)):
        acc[mask] = acc.get(mask, Fraction(0)) + sign
    return _normalize_empty(n, acc)


@lru_cache(maxsize=None)
def _koteljanskii_ray_vectors(n: int) -> frozenset:
    """Primitive vectors of koteljanskii_log(S,T) with |S|=|T|=|S∩T|+1."""
    out = set()
    masks = range(1 << n)
    for s in masks:
        for t in masks:
            if s < t and s.bit_count() == t.bit_count() == (s & t).bit_count() + 1:
                out.add(primitive(koteljanskii_log(s, t, n).exponents))
    return frozenset(out)


def is_koteljanskii_ray(v: FormalLog) -> bool:
    if v.is_zero():
        return False
    return primitive(v.exponents) in _koteljanskii_ray_vectors(v.ground_size)


def delete_index(v: FormalLog, i: int) -> FormalLog:
    """Uniformly delete index i from every subset; indices above i shift down."""
    n = v.ground_size
    if not 1 <= i <= n:
        raise ValueError(f"index {i} out of range 1..{n}")
    bit = 1 << (i - 1)
    low = bit - 1
    out = [Fraction(0)] * (1 << (n - 1))
    for mask, x in enumerate(v.exponents):
        if x == 0:
            continue
        stripped = mask & ~bit
        new_mask = (stripped & low) | ((stripped >> 1) & ~low)
        out[new_mask] += x
    return FormalLog(n - 1, tuple(out))


def logdet_pd(a: np.ndarray) -> float:
    """log det of a numerically PD matrix via Cholesky."""
    try:
        chol = np.linalg.cholesky(a)
    except np.linalg.LinAlgError:
        raise NotPositiveDefiniteError(tuple(range(1, a.shape[0] + 1)))
    return 2.0 * float(np.sum(np.log(np.diag(chol))))


def evaluate_log_ratio(v: FormalLog, a: np.ndarray) -> float:
    """Sum over subsets of v_S * logdet A[S]; equals log(alpha(A)/beta(A))."""
    a = np.asarray(a, dtype=float)
    n = v.ground_size
    if a.shape != (n, n):
        raise ValueError(f"matrix must be {n}x{n}")
    total = 0.0
    for mask in subset_order(n):
        x = v.exponents[mask]
        if mask == 0 or x == 0:
            continue
        idx = [i - 1 for i in members_of(mask)]
        sub = a[np.ix_(idx, idx)]
        try:
            ld = logdet_pd(sub)
        except NotPositiveDefiniteError:
            raise NotPositiveDefiniteError(members_of(mask))
        total += float(x) * ld
    return total
