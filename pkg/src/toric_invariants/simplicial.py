"""Finite abstract simplicial complexes on the vertex set {1..m}.

A complex is stored as its facets; the closed face index is derived lazily
and cached. Faces are handled internally as bitmasks (vertex i is bit i-1)
and exposed as ascending tuples. Labels that are not faces ("ghost
vertices") are allowed.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence

from toric_invariants.exact_linalg import sparse_rank
from toric_invariants.exceptions import (
    InputError,
    NonOrientableError,
    NotAFaceError,
    NotPseudomanifoldError,
    VertexRangeError,
)
from toric_invariants.utils import full_mask, mask_of, members, popcount

Face = tuple[int, ...]


def _submasks(mask: int) -> Iterable[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _maximal_masks(masks: Iterable[int]) -> list[int]:
    """Inclusion-maximal elements of a family of bitmasks."""
    kept: list[int] = []
    for mask in sorted(set(masks), key=popcount, reverse=True):
        if not any(mask & other == mask for other in kept):
            kept.append(mask)
    return kept


def _label_order(mask: int) -> tuple[int, tuple[int, ...]]:
    return (popcount(mask), members(mask))


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed family of subsets of {1..m}, stored by its facets."""

    m: int
    facets: tuple[Face, ...]
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.m < 0:
            raise InputError(f"Vertex count must be nonnegative, got {self.m}")
        masks = []
        for facet in self.facets:
            for v in facet:
                if not 1 <= v <= self.m:
                    raise VertexRangeError(
                        f"Vertex {v} in generator {tuple(facet)} is outside 1..{self.m}.\n"
                        "Vertices are labelled 1..m; raise m or relabel the generator."
                    )
            masks.append(mask_of(facet))
        maximal = _maximal_masks(masks) or [0]
        normalized = tuple(sorted((members(mask) for mask in maximal), key=lambda f: (len(f), f)))
        object.__setattr__(self, "facets", normalized)

    # Face index
    @cached_property
    def facet_masks(self) -> tuple[int, ...]:
        return tuple(mask_of(f) for f in self.facets)

    @cached_property
    def face_masks(self) -> frozenset[int]:
        faces: set[int] = set()
        for facet in self.facet_masks:
            if facet in faces:
                continue
            faces.update(_submasks(facet))
        return frozenset(faces)

    @cached_property
    def faces_by_size(self) -> dict[int, tuple[int, ...]]:
        """Face masks grouped by cardinality, each group in lexicographic label order."""
        grouped: dict[int, list[int]] = {}
        for mask in self.face_masks:
            grouped.setdefault(popcount(mask), []).append(mask)
        return {size: tuple(sorted(group, key=members)) for size, group in sorted(grouped.items())}

    def has_mask(self, mask: int) -> bool:
        return mask in self.face_masks

    def has_face(self, face: Iterable[int]) -> bool:
        return mask_of(face) in self.face_masks

    def faces(self, size: int) -> list[Face]:
        """Faces with ``size`` vertices as ascending tuples."""
        return [members(mask) for mask in self.faces_by_size.get(size, ())]

    def verify_closure(self) -> bool:
        """Check that every subset of a face is a face and that the empty set is one."""
        if 0 not in self.face_masks:
            return False
        for mask in self.face_masks:
            for v in members(mask):
                if mask & ~(1 << (v - 1)) not in self.face_masks:
                    return False
        return True

    # Numerical data
    @property
    def n(self) -> int:
        """Largest face cardinality, so the complex has dimension n - 1."""
        return max(len(f) for f in self.facets)

    @property
    def dimension(self) -> int:
        return self.n - 1

    @cached_property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(self.faces_by_size.get(size, ())) for size in range(1, self.n + 1))

    @property
    def vertices(self) -> Face:
        return tuple(v for v in range(1, self.m + 1) if (1 << (v - 1)) in self.face_masks)

    @property
    def ghost_vertices(self) -> Face:
        return tuple(v for v in range(1, self.m + 1) if (1 << (v - 1)) not in self.face_masks)

    @property
    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) == 1

    @property
    def is_full_simplex(self) -> bool:
        return full_mask(self.m) in self.face_masks

    def euler_characteristic(self) -> int:
        """Alternating count f0 - f1 + f2 - ... (the empty face excluded)."""
        return sum((-1) ** i * f for i, f in enumerate(self.f_vector))

    @cached_property
    def missing_face_masks(self) -> tuple[int, ...]:
        """Minimal non-faces, in (size, label) order."""
        missing = []
        for mask in range(1, 1 << self.m):
            if mask in self.face_masks:
                continue
            if all(mask & ~(1 << (v - 1)) in self.face_masks for v in members(mask)):
                missing.append(mask)
        return tuple(sorted(missing, key=_label_order))

    def missing_faces(self) -> list[Face]:
        return [members(mask) for mask in self.missing_face_masks]

    def is_flag(self) -> bool:
        return all(popcount(mask) == 2 for mask in self.missing_face_masks)

    def full_subcomplex(self, vertices: Iterable[int]) -> "SimplicialComplex":
        """K_I: all faces of K contained in I, on the same labels."""
        window = mask_of(vertices)
        inside = [mask for mask in self.face_masks if mask & window == mask]
        return SimplicialComplex(self.m, tuple(members(mask) for mask in _maximal_masks(inside)))

    def describe(self) -> str:
        label = self.name or "complex"
        return f"{label} (m={self.m}, dim={self.dimension}, facets={len(self.facets)})"


def build_complex(m: int, generators: Sequence[Iterable[int]], name: Optional[str] = None) -> SimplicialComplex:
    """Smallest simplicial complex on {1..m} containing every generator."""
    return SimplicialComplex(m, tuple(tuple(sorted(set(g))) for g in generators), name=name)


def complex_from_masks(m: int, masks: Iterable[int], name: Optional[str] = None) -> SimplicialComplex:
    return SimplicialComplex(m, tuple(members(mask) for mask in _maximal_masks(masks)), name=name)


##########################
# Constructions
##########################
def link(K: SimplicialComplex, face: Iterable[int]) -> SimplicialComplex:
    """link_K I = {J : I u J in K, I n J empty}, keeping the labels of K."""
    face_mask = mask_of(face)
    if not K.has_mask(face_mask):
        raise NotAFaceError(f"{members(face_mask)} is not a face of {K.describe()}; links are defined only at faces.")
    return SimplicialComplex(
        K.m,
        tuple(members(f & ~face_mask) for f in K.facet_masks if f & face_mask == face_mask),
        name=f"link({K.name or 'K'}, {members(face_mask)})",
    )


def star(K: SimplicialComplex, vertex: int) -> SimplicialComplex:
    """Closed star of a vertex: the cone over its link with apex the vertex."""
    bit = 1 << (vertex - 1)
    if not K.has_mask(bit):
        raise NotAFaceError(f"Vertex {vertex} is not a face of {K.describe()}.")
    return SimplicialComplex(K.m, tuple(members(f) for f in K.facet_masks if f & bit), name=f"star({vertex})")


def core(K: SimplicialComplex) -> SimplicialComplex:
    """Full subcomplex on the vertices whose stars differ from K."""
    core_vertices = [v for v in K.vertices if star(K, v) != K]
    return K.full_subcomplex(core_vertices)


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """K1 * K2 on m1 + m2 vertices; the labels of K2 are shifted by m1."""
    shift = K1.m
    facets = tuple(f1 + tuple(v + shift for v in f2) for f1 in K1.facets for f2 in K2.facets)
    name = f"{K1.name}*{K2.name}" if K1.name and K2.name else None
    return SimplicialComplex(K1.m + K2.m, facets, name=name)


def cone(K: SimplicialComplex) -> SimplicialComplex:
    """Join with a point; the apex is vertex 1."""
    return join(SimplicialComplex(1, ((1,),), name="point"), K)


def suspension(K: SimplicialComplex) -> SimplicialComplex:
    """Join with two points; the poles are vertices 1 and 2."""
    return join(generator_boundary_simplex(1), K)


def barycentric_subdivision(K: SimplicialComplex) -> SimplicialComplex:
    """Order complex of the nonempty faces of K.

    Vertex labels follow the faces of K sorted by size, then lexicographically.
    """
    nonempty = [mask for size, group in K.faces_by_size.items() if size > 0 for mask in group]
    label = {mask: i + 1 for i, mask in enumerate(nonempty)}
    chains = set()
    for facet in K.facets:
        for order in permutations(facet):
            prefix = 0
            chain = []
            for v in order:
                prefix |= 1 << (v - 1)
                chain.append(label[prefix])
            chains.add(tuple(sorted(chain)))
    if not chains:
        return SimplicialComplex(0, ((),), name=f"bs({K.name or 'K'})")
    return SimplicialComplex(len(nonempty), tuple(chains), name=f"bs({K.name or 'K'})")


def associated_complex(K: SimplicialComplex) -> SimplicialComplex:
    """K^ = {I : [m] minus I is not a face of K}."""
    if K.is_full_simplex:
        raise InputError(
            f"The associated complex of {K.describe()} is undefined: K is the full simplex on its labels."
        )
    everything = full_mask(K.m)
    masks = [mask for mask in range(1 << K.m) if (everything ^ mask) not in K.face_masks]
    return complex_from_masks(K.m, masks, name=f"assoc({K.name or 'K'})")


##########################
# Generators
##########################
def generator_boundary_simplex(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex on n + 1 vertices."""
    if n < 0:
        raise InputError(f"Simplex dimension must be nonnegative, got {n}")
    return SimplicialComplex(n + 1, tuple(combinations(range(1, n + 2), n)), name=f"delta{n}-boundary")


def generator_simplex(n: int) -> SimplicialComplex:
    return SimplicialComplex(n + 1, (tuple(range(1, n + 2)),), name=f"delta{n}")


def generator_polygon(m: int) -> SimplicialComplex:
    """Boundary of the m-gon: the cycle 1-2-...-m-1."""
    if m < 3:
        raise InputError(f"A polygon needs at least 3 vertices, got {m}")
    edges = [(i, i + 1) for i in range(1, m)] + [(1, m)]
    return SimplicialComplex(m, tuple(edges), name=f"polygon{m}")


def gale_evenness(subset: Sequence[int], m: int) -> bool:
    """Whether an n-subset of {1..m} is a facet of the cyclic polytope.

    For every two labels outside the subset, the number of members strictly
    between them must be even.
    """
    chosen = set(subset)
    outside = [v for v in range(1, m + 1) if v not in chosen]
    for a, b in zip(outside, outside[1:]):
        if sum(1 for v in chosen if a < v < b) % 2:
            return False
    return True


def generator_cyclic_sphere(n: int, m: int) -> SimplicialComplex:
    """Boundary complex of the cyclic polytope C^n(m) as an (n-1)-sphere."""
    if n < 2 or m <= n:
        raise InputError(f"Cyclic polytope C^n(m) needs m > n >= 2, got n={n}, m={m}")
    facets = tuple(s for s in combinations(range(1, m + 1), n) if gale_evenness(s, m))
    return SimplicialComplex(m, facets, name=f"cyclic-{n}-{m}")


##########################
# Homology
##########################
def reduced_homology_of_masks(face_masks: Iterable[int]) -> tuple[int, ...]:
    """Reduced rational homology ranks (H_-1, H_0, ...) of a closed family of face masks.

    The augmented chain complex puts the empty face in degree -1, so the
    complex {empty} has H_-1 = 1.
    """
    grouped: dict[int, list[int]] = {}
    for mask in face_masks:
        grouped.setdefault(popcount(mask), []).append(mask)
    if not grouped:
        return ()
    top = max(grouped)
    index = {size: {mask: i for i, mask in enumerate(sorted(group))} for size, group in grouped.items()}
    # boundary_rank[s] is the rank of the map from faces of size s to faces of size s-1
    boundary_rank = {0: 0, top + 1: 0}
    for size in range(1, top + 1):
        sources = index.get(size, {})
        targets = index.get(size - 1, {})
        rows: dict[int, dict[int, int]] = {}
        for mask, col in sources.items():
            for position, v in enumerate(members(mask)):
                row = targets[mask & ~(1 << (v - 1))]
                rows.setdefault(row, {})[col] = -1 if position % 2 else 1
        boundary_rank[size] = sparse_rank(rows, (len(targets), len(sources)))
    return tuple(
        len(index.get(size, {})) - boundary_rank[size] - boundary_rank[size + 1]
        for size in range(0, top + 1)
    )


def reduced_homology(K: SimplicialComplex) -> tuple[int, ...]:
    """Ranks (H~_-1, H~_0, ..., H~_dim K) over the rationals."""
    ranks = reduced_homology_of_masks(K.face_masks)
    logging.debug(f"reduced homology of {K.describe()}: {ranks}")
    return ranks


def reduced_betti(ranks: Sequence[int], degree: int) -> int:
    """Look up H~_degree in a rank sequence that starts at degree -1."""
    position = degree + 1
    if 0 <= position < len(ranks):
        return ranks[position]
    return 0


##########################
# Orientation
##########################
def _permutation_sign(sequence: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(sequence)) for j in range(i + 1, len(sequence)) if sequence[i] > sequence[j])
    return -1 if inversions % 2 else 1


def _ridge_incidence(K: SimplicialComplex) -> dict[int, list[tuple[int, int]]]:
    """Map each codimension-one face to its (facet index, omitted position) pairs."""
    incidence: dict[int, list[tuple[int, int]]] = {}
    for index, facet in enumerate(K.facets):
        facet_mask = mask_of(facet)
        for position, v in enumerate(facet):
            incidence.setdefault(facet_mask & ~(1 << (v - 1)), []).append((index, position))
    return incidence


def orientation_consistent(K: SimplicialComplex, signs: Sequence[int]) -> bool:
    """Whether the induced orientations on every shared ridge are opposite."""
    for pairs in _ridge_incidence(K).values():
        if len(pairs) != 2:
            return False
        (a, ka), (b, kb) = pairs
        if signs[a] * (-1) ** ka + signs[b] * (-1) ** kb != 0:
            return False
    return True


@dataclass(frozen=True)
class OrientedSphereComplex:
    """Pure pseudomanifold with a consistent orientation of its facets.

    ``signs[k]`` orients facet ``base.facets[k]`` relative to its ascending
    vertex order.
    """

    base: SimplicialComplex
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.signs) != len(self.base.facets):
            raise InputError(f"Expected {len(self.base.facets)} orientation signs, got {len(self.signs)}")
        if not orientation_consistent(self.base, self.signs):
            raise NonOrientableError(f"The given facet orientations of {self.base.describe()} are not consistent.")

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def m(self) -> int:
        return self.base.m

    def oriented_facets(self) -> list[Face]:
        """Ordered vertex tuples; negative facets have their first two vertices swapped."""
        out = []
        for facet, sign in zip(self.base.facets, self.signs):
            if sign > 0:
                out.append(facet)
            else:
                out.append((facet[1], facet[0]) + facet[2:])
        return out

    def reversed(self) -> "OrientedSphereComplex":
        return OrientedSphereComplex(self.base, tuple(-s for s in self.signs))

    @classmethod
    def from_oriented_facets(cls, K: SimplicialComplex, ordered: Sequence[Sequence[int]]) -> "OrientedSphereComplex":
        """Build from explicit vertex orders, one per facet of K in any order."""
        by_mask = {mask_of(order): _permutation_sign(order) for order in ordered}
        missing = [f for f in K.facets if mask_of(f) not in by_mask]
        if missing or len(by_mask) != len(K.facets):
            raise InputError(f"Orientation must list every facet of {K.describe()} exactly once; missing {missing}")
        return cls(K, tuple(by_mask[mask_of(f)] for f in K.facets))


def orient_sphere(K: SimplicialComplex) -> OrientedSphereComplex:
    """Propagate an orientation over the facet adjacency graph.

    The first facet gets its ascending vertex order; every neighbour is then
    forced by the opposite-orientation rule on the shared ridge.
    """
    if K.n < 2 or not K.is_pure:
        raise NotPseudomanifoldError(
            f"{K.describe()} is not a pure complex of dimension at least 1; orientations are defined on such pseudomanifolds only."
        )
    incidence = _ridge_incidence(K)
    neighbours: dict[int, list[tuple[int, int, int]]] = {i: [] for i in range(len(K.facets))}
    for ridge, pairs in incidence.items():
        if len(pairs) != 2:
            raise NotPseudomanifoldError(
                f"Ridge {members(ridge)} of {K.describe()} lies in {len(pairs)} facets; a pseudomanifold needs exactly 2."
            )
        (a, ka), (b, kb) = pairs
        neighbours[a].append((b, ka, kb))
        neighbours[b].append((a, kb, ka))

    signs: dict[int, int] = {0: 1}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for b, ka, kb in neighbours[a]:
            forced = -signs[a] * (-1) ** ka * (-1) ** kb
            if b not in signs:
                signs[b] = forced
                queue.append(b)
            elif signs[b] != forced:
                raise NonOrientableError(
                    f"{K.describe()} is not orientable: facets {K.facets[a]} and {K.facets[b]} disagree on their shared ridge."
                )
    if len(signs) != len(K.facets):
        raise NotPseudomanifoldError(f"The facet adjacency graph of {K.describe()} is disconnected.")
    return OrientedSphereComplex(K, tuple(signs[i] for i in range(len(K.facets))))
