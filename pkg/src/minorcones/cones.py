"""Polyhedral cone engine for the semigroups H_n, E_n, D_n and cone(K_n).

Constraint systems live in the full subset-indexed space; enumeration works
in exact integer coordinates on the homogeneity subspace (dimension
2^n - n - 1) via the double description method with the algebraic
(rank-based) adjacency test.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import bareiss_rank, dot, kernel_basis, primitive, rank
from .nullity import (catalog_n4, d5_constraint_set, h_normal_form,
                      nullity_type, subset_matrix, superset_matrix)
from .ratios import (FormalLog, from_entries, homogeneity_vectors,
                     is_homogeneous, koteljanskii_log)
from .simplex import nonnegative_combination
from .subsets import (complement_mask, format_subset, ordered_entries,
                      permute_mask, subset_order)


class NonPointedConeError(ValueError):
    def __init__(self, lineality: Tuple[int, ...]):
        super().__init__("cone is not pointed; lineality direction found")
        self.lineality = lineality


@dataclass(frozen=True)
class ConstraintSystem:
    """Equalities (the homogeneity vectors) plus labeled inequality rows,
    each row meaning row . x >= 0 over the subset-indexed space."""
    ground_size: int
    equalities: Tuple[Tuple[int, ...], ...]
    inequalities: Tuple[Tuple[int, ...], ...]
    labels: Tuple[str, ...]


@dataclass(frozen=True)
class Ray:
    """Primitive integer vector spanning an extreme ray."""
    ground_size: int
    vector: Tuple[int, ...]

    def sort_key(self):
        return ordered_entries(self.vector, self.ground_size)


@dataclass(frozen=True)
class MembershipCertificate:
    verdict: bool
    inner_products: Tuple[Tuple[str, Fraction], ...]
    witness: Optional[Tuple[str, Fraction]]


@dataclass(frozen=True)
class KoteljanskiiCertificate:
    verdict: bool
    # Nonnegative coefficients on (S,T) generators when a member.
    combination: Optional[Tuple[Tuple[Tuple[int, int], Fraction], ...]]
    # Separating hyperplane h with h.v < 0 and h.g >= 0 otherwise.
    hyperplane: Optional[Tuple[Fraction, ...]]


def build_E_system(n: int) -> ConstraintSystem:
    """ST1/ST2 as nullity-type rows: nul(M_S) for |S| >= 3 and nul(M^S)
    for |S| <= n-2."""
    if not 2 <= n <= 10:
        raise ValueError("E system supported for 2 <= n <= 10")
    ineqs: List[Tuple[int, ...]] = []
    labels: List[str] = []
    for s in subset_order(n):
        if s.bit_count() >= 3:
            nt = nullity_type(superset_matrix(s, n))
            ineqs.append(nt.entries)
            labels.append(f"nul(M_{format_subset(s)})")
    for s in subset_order(n):
        if s.bit_count() <= n - 2:
            nt = nullity_type(subset_matrix(s, n))
            ineqs.append(nt.entries)
            labels.append(f"nul(M^{format_subset(s)})")
    return ConstraintSystem(n, homogeneity_vectors(n), tuple(ineqs),
                            tuple(labels))


def build_D_system(n: int) -> ConstraintSystem:
    """Nullity-type constraint systems defining D_3, D_4, D_5."""
    if n == 3:
        rows = [("M^{}", subset_matrix(0, 3))]
        rows += [(f"M^{format_subset(1 << i)}", subset_matrix(1 << i, 3))
                 for i in range(3)]
        rows.append(("M_{1,2,3}", superset_matrix(7, 3)))
        labeled = [(label, nullity_type(m).entries) for label, m in rows]
    elif n == 4:
        labeled = [(label, nt.entries) for label, nt in catalog_n4()]
    elif n == 5:
        labeled = [(row.label, row.nullity.entries)
                   for row in d5_constraint_set()]
    else:
        raise ValueError("D system supported only for n in {3, 4, 5}")
    seen = set()
    ineqs, labels = [], []
    for label, entries in labeled:
        key = h_normal_form(entries, n)
        if key in seen:
            continue
        seen.add(key)
        ineqs.append(tuple(entries))
        labels.append(label)
    return ConstraintSystem(n, homogeneity_vectors(n), tuple(ineqs),
                            tuple(labels))


def membership(v: FormalLog, system: ConstraintSystem) -> MembershipCertificate:
    """Exact inner products against every inequality row; member iff all
    are nonnegative.  Requires a homogeneous input."""
    if v.ground_size != system.ground_size:
        raise ValueError("ground size mismatch")
    if not is_homogeneous(v):
        raise ValueError("membership requires a homogeneous formal log")
    products = []
    witness = None
    for label, row in zip(system.labels, system.inequalities):
        value = Fraction(dot(v.exponents, row))
        products.append((label, value))
        if witness is None and value < 0:
            witness = (label, value)
    return MembershipCertificate(witness is None, tuple(products), witness)


@lru_cache(maxsize=None)
def homogeneity_basis(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Primitive integer basis of the homogeneity subspace log(H_n)."""
    return tuple(kernel_basis(homogeneity_vectors(n), 1 << n))


def _reduce_rows(rows: Sequence[Sequence[int]], n: int) -> List[Tuple[int, ...]]:
    basis = homogeneity_basis(n)
    return [tuple(dot(row, b) for b in basis) for row in rows]


def _ambient(coords: Sequence[int], n: int) -> Tuple[int, ...]:
    basis = homogeneity_basis(n)
    size = 1 << n
    vec = [0] * size
    for x, b in zip(coords, basis):
        for i in range(size):
            vec[i] += x * b[i]
    return primitive(vec)


def _double_description(ineqs: List[Tuple[int, ...]], dim: int):
    """Double description over the integers.  Starts from the full space
    (a basis of lines), inserts inequalities one at a time, and maintains
    extremality via the algebraic adjacency test: two rays are adjacent iff
    their common tight rows have rank dim - #lines - 2."""
    lines: List[Tuple[int, ...]] = [
        tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    rays: List[Tuple[int, ...]] = []
    processed: List[Tuple[int, ...]] = []

    for a in ineqs:
        pivot_idx = next((i for i, l in enumerate(lines) if dot(a, l) != 0),
                         None)
        if pivot_idx is not None:
            pivot = lines.pop(pivot_idx)
            if dot(a, pivot) < 0:
                pivot = tuple(-x for x in pivot)
            ap = dot(a, pivot)
            lines = [primitive(tuple(ap * x - dot(a, l) * y
                                     for x, y in zip(l, pivot)))
                     for l in lines]
            rays = [primitive(tuple(ap * x - dot(a, r) * y
                                    for x, y in zip(r, pivot)))
                    for r in rays]
            rays.append(primitive(pivot))
        else:
            values = [dot(a, r) for r in rays]
            if any(val < 0 for val in values):
                tight_sets = [frozenset(i for i, row in enumerate(processed)
                                        if dot(row, r) == 0) for r in rays]
                target = dim - len(lines) - 2
                keep = [r for r, val in zip(rays, values) if val >= 0]
                new: List[Tuple[int, ...]] = []
                seen = set(keep)
                for ip, im in (
                        (i, j) for i in range(len(rays)) for j in range(len(rays))
                        if values[i] > 0 and values[j] < 0):
                    common = tight_sets[ip] & tight_sets[im]
                    if len(common) < target:
                        continue
                    rows_common = [processed[i] for i in common]
                    if bareiss_rank(rows_common) != target:
                        continue
                    w = primitive(tuple(
                        values[ip] * x - values[im] * y
                        for x, y in zip(rays[im], rays[ip])))
                    if w not in seen:
                        seen.add(w)
                        new.append(w)
                rays = keep + new
        processed.append(a)
    return lines, rays


def extreme_rays(system: ConstraintSystem) -> List[Ray]:
    """Complete list of primitive extreme rays of the feasible cone, in
    canonical (subset-size, subset-value) lexicographic order."""
    n = system.ground_size
    dim = len(homogeneity_basis(n))
    reduced = _reduce_rows(system.inequalities, n)
    lines, rays = _double_description(reduced, dim)
    if lines:
        raise NonPointedConeError(_ambient(lines[0], n))
    out = [Ray(n, _ambient(r, n)) for r in rays]
    for ray in out:
        assert all(dot(row, ray.vector) >= 0 for row in system.inequalities)
        assert all(dot(eq, ray.vector) == 0 for eq in system.equalities)
    out.sort(key=Ray.sort_key)
    return out


def brute_force_rays(system: ConstraintSystem) -> List[Ray]:
    """Independent extreme-ray oracle: enumerate all subsets of inequality
    rows whose tight space is one-dimensional.  Exponential; small n only."""
    n = system.ground_size
    dim = len(homogeneity_basis(n))
    reduced = _reduce_rows(system.inequalities, n)
    found = set()
    for size in range(len(reduced) + 1):
        for rows in combinations(reduced, size):
            if rank(rows) != dim - 1:
                continue
            kernel = kernel_basis(rows, dim)
            if len(kernel) != 1:
                continue
            for cand in (kernel[0], tuple(-x for x in kernel[0])):
                if all(dot(row, cand) >= 0 for row in reduced):
                    tight = [row for row in reduced if dot(row, cand) == 0]
                    if rank(tight) == dim - 1:
                        found.add(primitive(cand))
    out = [Ray(n, _ambient(r, n)) for r in found]
    out.sort(key=Ray.sort_key)
    return out


@lru_cache(maxsize=None)
def koteljanskii_generators(n: int) -> Tuple[Tuple[Tuple[int, int], Tuple[Fraction, ...]], ...]:
    """All distinct nonzero Koteljanskii logs, labeled by one (S, T) pair."""
    out = []
    seen = set()
    for s in range(1 << n):
        for t in range(s + 1, 1 << n):
            if s | t == t or s | t == s:
                continue
            vec = koteljanskii_log(s, t, n).exponents
            if vec not in seen:
                seen.add(vec)
                out.append(((s, t), vec))
    return tuple(out)


def koteljanskii_cone_membership(v: FormalLog) -> KoteljanskiiCertificate:
    """Decide v in cone(K_n) by exact rational feasibility: either explicit
    nonnegative generator coefficients, or a separating hyperplane."""
    if not is_homogeneous(v):
        raise ValueError("Koteljanskii cone membership requires homogeneity")
    gens = koteljanskii_generators(v.ground_size)
    columns = [vec for _, vec in gens]
    x, y = nonnegative_combination(columns, v.exponents)
    if x is not None:
        combo = tuple((gens[j][0], coeff) for j, coeff in enumerate(x)
                      if coeff != 0)
        return KoteljanskiiCertificate(True, combo, None)
    h = tuple(-Fraction(val) for val in y)
    assert dot(h, v.exponents) < 0
    assert all(dot(h, col) >= 0 for col in columns)
    return KoteljanskiiCertificate(False, None, h)


@dataclass(frozen=True)
class Orbit:
    """Orbit of rays under all permutations and complementation."""
    representative: Tuple[int, ...]   # lexicographically minimal member
    members: Tuple[Tuple[int, ...], ...]


def _vector_images(vec: Tuple[int, ...], n: int):
    size = 1 << n
    for perm in permutations(range(1, n + 1)):
        for use_comp in (False, True):
            img = [0] * size
            for mask, x in enumerate(vec):
                target = permute_mask(mask, perm)
                if use_comp:
                    target = complement_mask(target, n)
                img[target] = x
            yield tuple(img)


def orbit_decompose(rays: Sequence[Ray]) -> List[Orbit]:
    """Partition rays into orbits under the group generated by index
    permutations and set complementation."""
    if not rays:
        return []
    n = rays[0].ground_size
    remaining = {r.vector for r in rays}
    orbits = []
    for ray in sorted(rays, key=Ray.sort_key):
        if ray.vector not in remaining:
            continue
        images = set(_vector_images(ray.vector, n))
        members = sorted(images & remaining,
                         key=lambda v: ordered_entries(v, n))
        rep = min(images, key=lambda v: ordered_entries(v, n))
        orbits.append(Orbit(rep, tuple(members)))
        remaining -= images
    return orbits


def serialize_vectors(vectors: Sequence[Sequence], n: int) -> str:
    """Line-oriented interchange format: a header with the ground size and
    ordering convention, then one vector per line in (size, mask) order."""
    lines = [f"n={n} order=size-then-mask"]
    for vec in vectors:
        lines.append(" ".join(str(Fraction(x)) for x in ordered_entries(vec, n)))
    return "\n".join(lines) + "\n"


def parse_vectors(text: str) -> Tuple[int, List[Tuple[Fraction, ...]]]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = lines[0].split()
    n = int(header[0].split("=")[1])
    order = subset_order(n)
    out = []
    for ln in lines[1:]:
        vals = [Fraction(tok) for tok in ln.split()]
        if len(vals) != 1 << n:
            raise ValueError("vector length does not match header")
        vec = [Fraction(0)] * (1 << n)
        for pos, mask in enumerate(order):
            vec[mask] = vals[pos]
        out.append(tuple(vec))
    return n, out


def serialize_system(system: ConstraintSystem) -> str:
    return serialize_vectors(system.inequalities, system.ground_size)


def serialize_rays(rays: Sequence[Ray]) -> str:
    if not rays:
        raise ValueError("no rays to serialize")
    return serialize_vectors([r.vector for r in rays], rays[0].ground_size)
