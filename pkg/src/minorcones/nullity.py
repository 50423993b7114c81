"""Nullity and rank types of rational matrices, the standard matrix
families behind the ST1/ST2 conditions, the 23-type catalogue for n = 4,
partition-generated rank-<=2 types, and matroid duality.

All computations here are exact; floating point never enters.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import gcd
from typing import Dict, Iterator, List, Sequence, Tuple

from .exact import bareiss_rank, reduce_against, rref
from .ratios import homogeneity_vectors
from .subsets import format_subset, mask_of, members_of

RationalMatrix = Tuple[Tuple[Fraction, ...], ...]


def matrix(rows: Sequence[Sequence]) -> RationalMatrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def parse_matrix(text: str) -> RationalMatrix:
    """One row per line; entries whitespace-separated integers or p/q."""
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        entries = []
        for col, token in enumerate(line.split(), start=1):
            try:
                entries.append(Fraction(token))
            except (ValueError, ZeroDivisionError):
                raise ValueError(
                    f"line {lineno}, entry {col}: bad rational {token!r}")
        if width is None:
            width = len(entries)
        elif len(entries) != width:
            raise ValueError(f"line {lineno}: expected {width} entries, "
                             f"got {len(entries)}")
        rows.append(tuple(entries))
    if not rows:
        raise ValueError("empty matrix file")
    return tuple(rows)


def format_matrix(m: RationalMatrix) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in m)


def exact_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank by fraction-free elimination, after clearing row denominators."""
    cleared = []
    for row in rows:
        lcm = 1
        for x in row:
            d = Fraction(x).denominator
            lcm = lcm * d // gcd(lcm, d)
        cleared.append([int(Fraction(x) * lcm) for x in row])
    return bareiss_rank(cleared)


def _validate_rank_function(n: int, r: Sequence[int]) -> None:
    if r[0] != 0:
        raise ValueError("rank of the empty set must be 0")
    for t in range(1 << n):
        for i in range(n):
            if t >> i & 1:
                continue
            ti = t | 1 << i
            step = r[ti] - r[t]
            if step not in (0, 1):
                raise ValueError("rank function violates unit increase")
            for j in range(i + 1, n):
                if t >> j & 1:
                    continue
                tj = t | 1 << j
                if r[ti] + r[tj] < r[ti | tj] + r[t]:
                    raise ValueError("rank function is not submodular")


@dataclass(frozen=True)
class RankType:
    """Mask-indexed subset ranks; always a matroid rank function."""
    ground_size: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        _validate_rank_function(self.ground_size, self.entries)

    def __getitem__(self, mask: int) -> int:
        return self.entries[mask]


@dataclass(frozen=True)
class NullityType:
    """Mask-indexed kernel dimensions of column subsets."""
    ground_size: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        ranks = tuple(m.bit_count() - e for m, e in enumerate(self.entries))
        _validate_rank_function(self.ground_size, ranks)

    def __getitem__(self, mask: int) -> int:
        return self.entries[mask]

    def rank_type(self) -> RankType:
        return RankType(self.ground_size,
                        tuple(m.bit_count() - e
                              for m, e in enumerate(self.entries)))


def rank_type(m: RationalMatrix) -> RankType:
    nrows = len(m)
    n = len(m[0]) if nrows else 0
    entries = []
    for mask in range(1 << n):
        cols = [i - 1 for i in members_of(mask)]
        sub = [[row[c] for c in cols] for row in m]
        entries.append(exact_rank(sub) if cols else 0)
    return RankType(n, tuple(entries))


def nullity_type(m: RationalMatrix) -> NullityType:
    rt = rank_type(m)
    return NullityType(rt.ground_size,
                       tuple(mask.bit_count() - rt[mask]
                             for mask in range(1 << rt.ground_size)))


def superset_matrix(s: int, n: int) -> RationalMatrix:
    """The (n-1) x n matrix M_S, a column permutation of [I|e] + I, whose
    nullity type is the indicator of supersets of S.  Requires |S| >= 3."""
    size = s.bit_count()
    if size < 3:
        raise ValueError("superset matrix requires |S| >= 3")
    s_cols = [i - 1 for i in members_of(s)]
    other_cols = [c for c in range(n) if c not in s_cols]
    rows = []
    for r in range(size - 1):
        row = [Fraction(0)] * n
        row[s_cols[r]] = Fraction(1)
        row[s_cols[-1]] = Fraction(1)
        rows.append(tuple(row))
    for r, c in enumerate(other_cols):
        row = [Fraction(0)] * n
        row[c] = Fraction(1)
        rows.append(tuple(row))
    return tuple(rows)


def subset_matrix(s: int, n: int) -> RationalMatrix:
    """The 1 x n matrix M^S: zero in the columns of S and one elsewhere;
    its rank type is the indicator of non-subsets of S.  Requires |S| <= n-2."""
    if s.bit_count() > n - 2:
        raise ValueError("subset matrix requires |S| <= n-2")
    return (tuple(Fraction(0) if s >> c & 1 else Fraction(1)
                  for c in range(n)),)


def permute_columns(m: RationalMatrix, perm: Sequence[int]) -> RationalMatrix:
    """Column permutation sending column i to column perm[i-1] (1-based)."""
    n = len(m[0])
    out = [[Fraction(0)] * n for _ in m]
    for r, row in enumerate(m):
        for c in range(n):
            out[r][perm[c] - 1] = row[c]
    return tuple(tuple(row) for row in out)


_M6 = matrix([[1, 0, 1, 1], [0, 1, 1, 1]])
_M7 = matrix([[1, 1, 1, 1], [0, 1, 2, 3]])


@lru_cache(maxsize=None)
def catalog_n4() -> Tuple[Tuple[str, NullityType], ...]:
    """The 23 labeled nullity types defining D_4: all distinct types of
    column permutations of the seven standard matrices."""
    families = [
        ("M^{}", subset_matrix(0, 4)),
        ("M^{1}", subset_matrix(mask_of([1]), 4)),
        ("M^{1,2}", subset_matrix(mask_of([1, 2]), 4)),
        ("M_{1,2,3}", superset_matrix(mask_of([1, 2, 3]), 4)),
        ("M_{1,2,3,4}", superset_matrix(mask_of([1, 2, 3, 4]), 4)),
        ("M6", _M6),
        ("M7", _M7),
    ]
    seen: Dict[Tuple[int, ...], str] = {}
    out: List[Tuple[str, NullityType]] = []
    for name, base in families:
        for perm in permutations(range(1, 5)):
            nt = nullity_type(permute_columns(base, perm))
            if nt.entries not in seen:
                label = f"{name}@{''.join(map(str, perm))}"
                seen[nt.entries] = label
                out.append((label, nt))
    if len(out) != 23:
        raise AssertionError(f"n=4 catalogue has {len(out)} types, expected 23")
    return tuple(out)


@dataclass(frozen=True)
class Partition:
    """Parallel classes of nonzero columns plus a loop set of zero columns."""
    ground_size: int
    blocks: Tuple[int, ...]    # disjoint nonempty masks
    loops: int = 0

    def __post_init__(self):
        union = self.loops
        for b in self.blocks:
            if b == 0:
                raise ValueError("blocks must be nonempty")
            if union & b:
                raise ValueError("blocks and loops must be disjoint")
            union |= b
        if union != (1 << self.ground_size) - 1:
            raise ValueError("blocks and loops must cover the ground set")

    def label(self) -> str:
        parts = "|".join(format_subset(b) for b in sorted(self.blocks))
        if self.loops:
            parts += f";loops={format_subset(self.loops)}"
        return parts or "all-loops"


def partition_nullity(p: Partition) -> NullityType:
    """Nullity type of any rank-<=2 matrix whose zero columns are the loops
    and whose nonzero columns are parallel exactly within blocks."""
    n = p.ground_size
    entries = []
    for t in range(1 << n):
        hit = sum(1 for b in p.blocks if b & t)
        entries.append(t.bit_count() - min(2, hit))
    return NullityType(n, tuple(entries))


def realize_partition(p: Partition) -> RationalMatrix:
    """A 2 x n rational matrix realizing a partition type: block k gets the
    point (1, k) and loops get the zero column."""
    n = p.ground_size
    rows = [[Fraction(0)] * n, [Fraction(0)] * n]
    for k, b in enumerate(sorted(p.blocks)):
        for i in members_of(b):
            rows[0][i - 1] = Fraction(1)
            rows[1][i - 1] = Fraction(k)
    return tuple(tuple(row) for row in rows)


def dual_nullity_type(nt: NullityType) -> NullityType:
    """Nullity type of the dual matroid: r*(T) = |T| + r(N\\T) - r(N)."""
    n = nt.ground_size
    full = (1 << n) - 1
    r = nt.rank_type()
    entries = tuple(r[full] - r[full ^ t] for t in range(1 << n))
    return NullityType(n, entries)


@lru_cache(maxsize=None)
def _h_span_rref(n: int):
    return rref(homogeneity_vectors(n))


def h_normal_form(v: Sequence, n: int) -> Tuple[Fraction, ...]:
    """Canonical representative of v modulo span(e, indicator vectors)."""
    red, pivots = _h_span_rref(n)
    return reduce_against(red, pivots, v)


def h_equivalent(v: Sequence, w: Sequence, n: int) -> bool:
    """True iff v - w lies in the span of the homogeneity vectors, i.e. the
    two vectors impose the same constraint on log(H_n)."""
    diff = [Fraction(a) - Fraction(b) for a, b in zip(v, w)]
    return all(x == 0 for x in h_normal_form(diff, n))


def set_partitions(items: Tuple[int, ...]) -> Iterator[Tuple[Tuple[int, ...], ...]]:
    """All partitions of `items` into blocks (each block a tuple)."""
    if not items:
        yield ()
        return
    first, rest = items[0], items[1:]
    for sub in set_partitions(rest):
        for i, block in enumerate(sub):
            yield sub[:i] + ((first,) + block,) + sub[i + 1:]
        yield ((first,),) + sub


def enumerate_partitions(n: int) -> List[Partition]:
    """All partitions-with-loops of {1..n} into parallel classes."""
    out = []
    full = (1 << n) - 1
    for loops in range(1 << n):
        items = tuple(i for i in range(1, n + 1) if not loops >> (i - 1) & 1)
        for blocks in set_partitions(items):
            out.append(Partition(n, tuple(sorted(mask_of(b) for b in blocks)),
                                 loops))
    assert all((p.loops | sum(p.blocks)) == full for p in out)
    return out


@dataclass(frozen=True)
class D5Row:
    label: str
    nullity: NullityType
    partition: Partition
    is_dual: bool
    direct_sum_redundant: bool


@lru_cache(maxsize=None)
def d5_constraint_set() -> Tuple[D5Row, ...]:
    """Nullity types sufficient to define D_5: all rank-<=2 types (every
    partition of 5 columns into parallel classes plus loops) together with
    their matroid duals, deduplicated up to the h-equivalence relation.

    Every matroid on 5 elements has rank <= 2 or corank <= 2, and both the
    rank-<=2 matroids and their duals are rational-realizable, so these rows
    impose exactly the D_5 conditions.  Partitions into exactly two loop-free
    blocks give the nullity type of a direct sum and are flagged redundant.
    """
    out: List[D5Row] = []
    seen: Dict[Tuple[Fraction, ...], str] = {}
    for p in enumerate_partitions(5):
        nt = partition_nullity(p)
        redundant = p.loops == 0 and len(p.blocks) == 2
        for is_dual, row_nt in ((False, nt), (True, dual_nullity_type(nt))):
            key = h_normal_form(row_nt.entries, 5)
            if key in seen:
                continue
            label = ("dual:" if is_dual else "") + p.label()
            seen[key] = label
            out.append(D5Row(label, row_nt, p, is_dual, redundant))
    return tuple(out)
