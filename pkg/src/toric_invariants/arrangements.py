"""Coordinate and diagonal subspace arrangements indexed by the non-faces of a complex."""

import logging
from functools import lru_cache
from itertools import permutations
from math import comb
from typing import Optional, Union

from pydantic import BaseModel, Field, model_validator

from toric_invariants.documents import ArrangementDocument
from toric_invariants.exact_linalg import sparse_rank
from toric_invariants.exceptions import InputError
from toric_invariants.simplicial import SimplicialComplex, complex_from_masks
from toric_invariants.tor_algebra import bigraded_betti
from toric_invariants.utils import full_mask, mask_of, members, parallel_map, popcount


class CoordinateArrangement(BaseModel):
    """Union of the subspaces L_I = {z_i = 0 for i in I}, kept as a minimal antichain of generators."""

    m: int = Field(ge=0)
    generators: tuple[tuple[int, ...], ...] = Field(default=())
    name: Optional[str] = None

    @model_validator(mode="after")
    def _minimal_antichain(self) -> "CoordinateArrangement":
        masks = set()
        for generator in self.generators:
            if not generator:
                raise InputError("The empty generator names the whole space; its complement is empty")
            for v in generator:
                if not 1 <= v <= self.m:
                    raise InputError(f"Generator {generator} uses coordinate {v}, outside 1..{self.m}")
            masks.add(mask_of(generator))
        minimal = [a for a in masks if not any(b != a and b & a == b for b in masks)]
        ordered = tuple(members(mask) for mask in sorted(minimal, key=lambda x: (popcount(x), members(x))))
        self.generators = ordered
        return self

    @classmethod
    def from_document(cls, document: ArrangementDocument) -> "CoordinateArrangement":
        return cls(m=document.m, generators=tuple(tuple(g) for g in document.generators), name=document.name)


Source = Union[SimplicialComplex, CoordinateArrangement]


def complex_from_arrangement(arrangement: CoordinateArrangement) -> SimplicialComplex:
    """I is a face iff no generator is contained in I."""
    generators = [mask_of(g) for g in arrangement.generators]
    faces = [mask for mask in range(1 << arrangement.m) if not any(g & mask == g for g in generators)]
    return complex_from_masks(arrangement.m, faces, name=arrangement.name)


def arrangement_from_complex(K: SimplicialComplex) -> CoordinateArrangement:
    """Generators are the minimal non-faces of K."""
    return CoordinateArrangement(m=K.m, generators=tuple(K.missing_faces()), name=K.name)


def _as_complex(source: Source) -> SimplicialComplex:
    if isinstance(source, CoordinateArrangement):
        return complex_from_arrangement(source)
    return source


def coord_complement_betti(source: Source, jobs: int = 1) -> tuple[int, ...]:
    """dim H^p(U(K)) = sum_{2j-i=p} beta^{-i,2j}."""
    return bigraded_betti(_as_complex(source), jobs=jobs).total_degrees()


def real_coord_complement_betti(source: Source, jobs: int = 1) -> tuple[int, ...]:
    """dim H^p(U_R(K)) = sum_{j-i=p} beta^{-i,2j}."""
    return bigraded_betti(_as_complex(source), jobs=jobs).real_degrees()


def disjoint_points_law(m: int, k: int) -> int:
    """dim H^{k+1} of the complement of all codimension-two coordinate subspaces of C^m."""
    return (k - 1) * comb(m, k)


##########################
# Diagonal arrangements
##########################
def _ordered_partitions(K: SimplicialComplex, remaining: int) -> list[tuple[int, ...]]:
    """Ordered tuples of nonempty pairwise disjoint faces whose union is ``remaining``."""
    if remaining == 0:
        return [()]
    out = []
    sub = remaining
    while sub:
        if sub in K.face_masks:
            for rest in _ordered_partitions(K, remaining & ~sub):
                out.append((sub,) + rest)
        sub = (sub - 1) & remaining
    return out


@lru_cache(maxsize=64)
def diagonal_strand_basis(K: SimplicialComplex) -> dict[int, tuple[tuple[int, ...], ...]]:
    """Basis of the multidegree (2, ..., 2) bar-complex strand, grouped by tuple length p."""
    grouped: dict[int, list[tuple[int, ...]]] = {}
    for chain in _ordered_partitions(K, full_mask(K.m)):
        grouped.setdefault(len(chain), []).append(chain)
    return {
        p: tuple(sorted(chains, key=lambda c: tuple(members(x) for x in c)))
        for p, chains in sorted(grouped.items())
    }


def _bar_rank(K: SimplicialComplex, p: int) -> int:
    """Rank of the merge differential from length p to length p - 1."""
    basis = diagonal_strand_basis(K)
    sources, targets = basis.get(p, ()), basis.get(p - 1, ())
    if not sources or not targets:
        return 0
    index = {chain: k for k, chain in enumerate(targets)}
    rows: dict[int, dict[int, int]] = {}
    for col, chain in enumerate(sources):
        for s in range(1, p):
            merged = chain[s - 1] | chain[s]
            if merged not in K.face_masks:
                continue
            row = index[chain[: s - 1] + (merged,) + chain[s + 1:]]
            entry = rows.setdefault(row, {})
            entry[col] = entry.get(col, 0) + (-1) ** s
    return sparse_rank(rows, (len(targets), len(sources)))


def diagonal_complement_betti(K: SimplicialComplex, jobs: int = 1) -> tuple[int, ...]:
    """dim H^i(M(K)) for i = 0..m-1, read off the strand at length p = m - i."""
    if K.m == 0:
        return (1,)
    basis = diagonal_strand_basis(K)
    ranks = dict(zip(range(1, K.m + 2), parallel_map(lambda p: _bar_rank(K, p), list(range(1, K.m + 2)), jobs=jobs)))
    homology = {p: len(basis.get(p, ())) - ranks.get(p, 0) - ranks.get(p + 1, 0) for p in range(1, K.m + 1)}
    logging.debug(f"diagonal strand of {K.describe()}: sizes {[len(basis.get(p, ())) for p in range(1, K.m + 1)]}")
    return tuple(homology[K.m - i] for i in range(K.m))


def diagonal_strand_euler(K: SimplicialComplex) -> int:
    """sum_p (-1)^{m-p} N_p, with N_p counted by a subset recursion instead of the basis."""
    universe = full_mask(K.m)
    counts: dict[int, int] = {0: 1}  # chains of the current length covering each subset
    total = 0
    for p in range(1, K.m + 1):
        following: dict[int, int] = {}
        for covered, ways in counts.items():
            free = universe & ~covered
            sub = free
            while sub:
                if sub in K.face_masks:
                    following[covered | sub] = following.get(covered | sub, 0) + ways
                sub = (sub - 1) & free
        counts = following
        total += (-1) ** (K.m - p) * counts.get(universe, 0)
    return total


def diagonal_region_count(K: SimplicialComplex) -> int:
    """Regions of the real hyperplane arrangement {y_i = y_j : {i, j} not a face}, by brute force.

    A ghost vertex puts the whole space into the arrangement, so the count is 0.
    """
    if K.ghost_vertices:
        return 0
    pairs = [(i, j) for i in range(1, K.m + 1) for j in range(i + 1, K.m + 1) if not K.has_face((i, j))]
    regions = set()
    for order in permutations(range(K.m)):
        regions.add(tuple(order[i - 1] < order[j - 1] for i, j in pairs))
    return len(regions)
