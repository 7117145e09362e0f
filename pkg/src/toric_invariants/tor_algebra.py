"""Bigraded Tor of Stanley-Reisner rings through the finite cochain complex A*(K).

A*(K) has basis u_I v_J with J a face and I disjoint from J, in bidegree
(-|I|, 2(|I|+|J|)). Its differential is

    d(u_I v_J) = sum_k (-1)^(k-1) u_{I - i_k} v_{J + i_k}

over the ascending elements i_1 < i_2 < ... of I, where a term is dropped
when J + i_k is not a face. The strand of second degree 2p splits as
q = |I| runs from 0 to p; all ranks are exact over the rationals.

Bidegrees are passed around as pairs (q, p) standing for (-q, 2p).
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb
from typing import Any, Iterable, Optional, Sequence, Union

from sympy.polys.domains import QQ

from toric_invariants.configuration import BettiMethod
from toric_invariants.documents import (
    BigradedBettiTable,
    CMGorensteinVerdict,
    DualityReport,
    GLBTBridge,
    PairingRank,
)
from toric_invariants.exact_linalg import (
    IntegerMatrix,
    columns_to_rows,
    nullspace_basis,
    pivot_columns,
    solve_columns,
    sparse_rank,
)
from toric_invariants.exceptions import (
    ComputationMismatch,
    DimensionError,
    InputError,
    NotACocycleError,
    NotAFaceError,
)
from toric_invariants.face_enumeration import h_vector
from toric_invariants.simplicial import (
    OrientedSphereComplex,
    SimplicialComplex,
    link,
    orient_sphere,
    reduced_betti,
    reduced_homology,
    reduced_homology_of_masks,
)
from toric_invariants.utils import (
    full_mask,
    inversions_between,
    mask_of,
    members,
    parallel_map,
    popcount,
    submasks_of_size,
)

Monomial = tuple[int, int]  # (I mask, J mask)
Bidegree = tuple[int, int]  # (q, p)


def _monomial_key(monomial: Monomial) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return (members(monomial[0]), members(monomial[1]))


def koszul_d(K: SimplicialComplex, I: Iterable[int], J: Iterable[int]) -> dict[Monomial, int]:
    """d(u_I v_J) as a map from (I', J') masks to signs."""
    i_mask, j_mask = mask_of(I), mask_of(J)
    return _differential(K, i_mask, j_mask)


def _differential(K: SimplicialComplex, i_mask: int, j_mask: int) -> dict[Monomial, int]:
    image: dict[Monomial, int] = {}
    for position, v in enumerate(members(i_mask)):
        bit = 1 << (v - 1)
        target_j = j_mask | bit
        if target_j in K.face_masks:
            image[(i_mask & ~bit, target_j)] = -1 if position % 2 else 1
    return image


##########################
# Strands
##########################
@dataclass
class KoszulStrand:
    """The cochain strand A^{-*,2p}(K): bases per q and the differential q -> q-1 as columns."""

    p: int
    bases: dict[int, tuple[Monomial, ...]]
    columns: dict[int, list[dict[int, int]]]
    _index: dict[int, dict[Monomial, int]] = field(default_factory=dict, repr=False)

    def dimension(self, q: int) -> int:
        return len(self.bases.get(q, ()))

    def index(self, q: int) -> dict[Monomial, int]:
        if q not in self._index:
            self._index[q] = {monomial: k for k, monomial in enumerate(self.bases.get(q, ()))}
        return self._index[q]

    def rows(self, q: int) -> dict[int, dict[int, int]]:
        """Sparse rows of d: degree q -> q-1, indexed M[target][source]."""
        return columns_to_rows(self.columns.get(q, []))

    def shape(self, q: int) -> tuple[int, int]:
        return (self.dimension(q - 1), self.dimension(q))

    def rank(self, q: int) -> int:
        if q <= 0 or q > self.p:
            return 0
        return sparse_rank(self.rows(q), self.shape(q))

    def cohomology_ranks(self) -> dict[int, int]:
        ranks = {q: self.rank(q) for q in range(self.p + 2)}
        return {q: self.dimension(q) - ranks[q] - ranks.get(q + 1, 0) for q in range(self.p + 1)}


@lru_cache(maxsize=256)
def koszul_strand(K: SimplicialComplex, p: int, relative: bool = False) -> KoszulStrand:
    """Basis and differential of the strand 2p; ``relative`` keeps only monomials with J nonempty."""
    if not 0 <= p <= K.m:
        raise DimensionError(f"Strand 2p needs 0 <= p <= m = {K.m}, got p = {p}")
    universe = full_mask(K.m)
    bases: dict[int, tuple[Monomial, ...]] = {}
    for q in range(p + 1):
        monomials = []
        for j_mask in K.faces_by_size.get(p - q, ()):
            if relative and j_mask == 0:
                continue
            for i_mask in submasks_of_size(universe & ~j_mask, q):
                monomials.append((i_mask, j_mask))
        bases[q] = tuple(sorted(monomials, key=_monomial_key))
    strand = KoszulStrand(p=p, bases=bases, columns={})
    for q in range(1, p + 1):
        target = strand.index(q - 1)
        strand.columns[q] = [
            {target[monomial]: sign for monomial, sign in _differential(K, i_mask, j_mask).items()}
            for i_mask, j_mask in bases[q]
        ]
    logging.debug(f"strand p={p} of {K.describe()}: dims {[strand.dimension(q) for q in range(p + 1)]}")
    return strand


def koszul_differential(K: SimplicialComplex, p: int) -> dict[int, IntegerMatrix]:
    """Dense boundary matrices d: A^{-q,2p} -> A^{-q+1,2p} for q = 1..p."""
    strand = koszul_strand(K, p)
    matrices = {}
    for q in range(1, p + 1):
        n_rows, n_cols = strand.shape(q)
        dense = [[0] * n_cols for _ in range(n_rows)]
        for col, image in enumerate(strand.columns[q]):
            for row, sign in image.items():
                dense[row][col] = sign
        matrices[q] = IntegerMatrix.from_rows(dense, cols=n_cols)
    return matrices


def cell_counts(K: SimplicialComplex) -> dict[Bidegree, int]:
    """dim A^{-q,2p}(K) = f_{p-q-1} C(m-p+q, q)."""
    f = (1,) + K.f_vector
    counts = {}
    for p in range(K.m + 1):
        for q in range(p + 1):
            size = p - q
            if size < len(f):
                count = f[size] * comb(K.m - size, q)
                if count:
                    counts[(q, p)] = count
    return counts


##########################
# Betti tables
##########################
def bigraded_betti(K: SimplicialComplex, jobs: int = 1) -> BigradedBettiTable:
    """b_{-q,2p} = dim ker d - rank d on each strand of A*(K)."""

    def strand_ranks(p: int) -> dict[Bidegree, int]:
        return {(q, p): r for q, r in koszul_strand(K, p).cohomology_ranks().items() if r}

    ranks: dict[Bidegree, int] = {}
    for part in parallel_map(strand_ranks, list(range(K.m + 1)), jobs=jobs):
        ranks.update(part)
    return BigradedBettiTable.from_ranks(K.m, K.n, ranks)


def relative_betti(K: SimplicialComplex, jobs: int = 1) -> BigradedBettiTable:
    """Bigraded Betti numbers of (Z_K, T^m): the subcomplex of A*(K) with J nonempty."""

    def strand_ranks(p: int) -> dict[Bidegree, int]:
        return {(q, p): r for q, r in koszul_strand(K, p, relative=True).cohomology_ranks().items() if r}

    ranks: dict[Bidegree, int] = {}
    for part in parallel_map(strand_ranks, list(range(K.m + 1)), jobs=jobs):
        ranks.update(part)
    return BigradedBettiTable.from_ranks(K.m, K.n, ranks)


def hochster_betti(K: SimplicialComplex, jobs: int = 1) -> BigradedBettiTable:
    """beta^{-i,2j} = sum over j-subsets I of dim H~_{j-i-1}(K_I)."""
    universe = full_mask(K.m)
    faces = tuple(K.face_masks)

    def subset_ranks(j: int) -> dict[Bidegree, int]:
        out: dict[Bidegree, int] = {}
        for subset in submasks_of_size(universe, j):
            homology = reduced_homology_of_masks(f for f in faces if f & subset == f)
            for position, r in enumerate(homology):
                i = j - position
                if r and i >= 0:
                    out[(i, j)] = out.get((i, j), 0) + r
        return out

    ranks: dict[Bidegree, int] = {}
    for part in parallel_map(subset_ranks, list(range(K.m + 1)), jobs=jobs):
        for key, r in part.items():
            ranks[key] = ranks.get(key, 0) + r
    return BigradedBettiTable.from_ranks(K.m, K.n, ranks)


def betti_table(K: SimplicialComplex, method: BettiMethod = BettiMethod.KOSZUL, jobs: int = 1) -> BigradedBettiTable:
    """Dispatch on the configured method; ``BOTH`` raises ComputationMismatch on any disagreement."""
    if method is BettiMethod.HOCHSTER:
        return hochster_betti(K, jobs=jobs)
    table = bigraded_betti(K, jobs=jobs)
    if method is BettiMethod.BOTH:
        oracle = hochster_betti(K, jobs=jobs)
        differences = table.mismatches(oracle)
        if differences:
            raise ComputationMismatch(
                f"Koszul and Hochster tables of {K.describe()} disagree at (i, j, koszul, hochster): {differences}"
            )
    return table


def total_betti(table: BigradedBettiTable) -> tuple[int, ...]:
    return table.total_degrees()


def real_regraded_betti(K: SimplicialComplex, jobs: int = 1) -> tuple[int, ...]:
    """dim H^p(U_R(K)) = sum_{j-i=p} beta^{-i,2j}."""
    return bigraded_betti(K, jobs=jobs).real_degrees()


##########################
# Cohomology classes
##########################
@dataclass
class CohomologyBasis:
    """A fixed basis of H^{-q,2p}: coboundary pivots first, then cocycle representatives."""

    bidegree: Bidegree
    ambient_dimension: int
    boundaries: list[dict[int, Any]]
    representatives: list[dict[int, Any]]

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    def coordinates(self, cochain: dict[int, Any]) -> list[Any]:
        """Coordinates of a cocycle on the representatives; raises if it is not a cocycle."""
        if not self.representatives:
            return []
        solution = solve_columns(self.boundaries + self.representatives, cochain, self.ambient_dimension)
        if solution is None:
            raise NotACocycleError(f"Cochain of bidegree {self.bidegree} is not a cocycle")
        return solution[len(self.boundaries):]


@lru_cache(maxsize=512)
def cohomology_basis(K: SimplicialComplex, q: int, p: int) -> CohomologyBasis:
    strand = koszul_strand(K, p)
    dimension = strand.dimension(q)
    incoming = strand.columns.get(q + 1, []) if q + 1 <= p else []
    boundary_pivots = pivot_columns(incoming, dimension)
    boundaries = [dict(incoming[k]) for k in boundary_pivots]
    if q >= 1:
        cocycles = nullspace_basis(strand.rows(q), strand.shape(q))
    else:
        cocycles = [{k: QQ(1)} for k in range(dimension)]
    chosen = pivot_columns(boundaries + cocycles, dimension)
    representatives = [cocycles[k - len(boundaries)] for k in chosen if k >= len(boundaries)]
    return CohomologyBasis(bidegree=(q, p), ambient_dimension=dimension, boundaries=boundaries, representatives=representatives)


@dataclass(frozen=True)
class CohomologyClass:
    """A class in H^{-q,2p}(Z_K) held through a cocycle representative."""

    complex: SimplicialComplex
    bidegree: Bidegree
    representative: tuple[tuple[Monomial, Any], ...]

    @classmethod
    def from_terms(cls, K: SimplicialComplex, bidegree: Bidegree, terms: dict[Monomial, Any]) -> "CohomologyClass":
        cleaned = tuple(sorted(((mono, c) for mono, c in terms.items() if c), key=lambda t: _monomial_key(t[0])))
        return cls(complex=K, bidegree=bidegree, representative=cleaned)

    @classmethod
    def zero(cls, K: SimplicialComplex, bidegree: Bidegree) -> "CohomologyClass":
        return cls(complex=K, bidegree=bidegree, representative=())

    @property
    def total_degree(self) -> int:
        q, p = self.bidegree
        return 2 * p - q

    def _in_range(self) -> bool:
        q, p = self.bidegree
        return 0 <= q <= p <= self.complex.m

    def cochain(self) -> dict[int, Any]:
        q, p = self.bidegree
        index = koszul_strand(self.complex, p).index(q)
        return {index[mono]: QQ.convert(c) for mono, c in self.representative}

    def coordinates(self) -> list[Any]:
        if not self._in_range():
            return []
        q, p = self.bidegree
        return cohomology_basis(self.complex, q, p).coordinates(self.cochain())

    def is_zero(self) -> bool:
        return not any(self.coordinates())

    def __mul__(self, other: "CohomologyClass") -> "CohomologyClass":
        return cup_product(self, other)


def unit_class(K: SimplicialComplex) -> CohomologyClass:
    return CohomologyClass.from_terms(K, (0, 0), {(0, 0): 1})


def class_of(K: SimplicialComplex, I: Iterable[int], J: Iterable[int], coefficient: int = 1) -> CohomologyClass:
    """[u_I v_J] for a monomial cocycle."""
    i_mask, j_mask = mask_of(I), mask_of(J)
    if j_mask not in K.face_masks:
        raise NotAFaceError(f"v_J needs J to be a face; {members(j_mask)} is not a face of {K.describe()}")
    if i_mask & j_mask:
        raise InputError(f"u_I v_J needs I and J disjoint, got I={members(i_mask)}, J={members(j_mask)}")
    if _differential(K, i_mask, j_mask):
        raise NotACocycleError(
            f"u_{members(i_mask)} v_{members(j_mask)} is not a cocycle in A*({K.name or 'K'}): "
            f"d = {[(members(a), members(b), s) for (a, b), s in _differential(K, i_mask, j_mask).items()]}"
        )
    q, size = popcount(i_mask), popcount(j_mask)
    return CohomologyClass.from_terms(K, (q, q + size), {(i_mask, j_mask): coefficient})


def _multiply_monomials(K: SimplicialComplex, a: Monomial, b: Monomial) -> Optional[tuple[Monomial, int]]:
    (i1, j1), (i2, j2) = a, b
    if i1 & i2 or j1 & j2:
        return None
    i_union, j_union = i1 | i2, j1 | j2
    if i_union & j_union or j_union not in K.face_masks:
        return None
    sign = -1 if inversions_between(i1, i2) % 2 else 1
    return (i_union, j_union), sign


def cup_product(c1: CohomologyClass, c2: CohomologyClass) -> CohomologyClass:
    """Product of classes; targets outside the table return the zero class."""
    if c1.complex != c2.complex:
        raise InputError("Cup product needs classes over the same complex")
    K = c1.complex
    bidegree = (c1.bidegree[0] + c2.bidegree[0], c1.bidegree[1] + c2.bidegree[1])
    if bidegree[1] > K.m or bidegree[0] > bidegree[1]:
        return CohomologyClass.zero(K, bidegree)
    terms: dict[Monomial, Any] = {}
    for mono_a, coeff_a in c1.representative:
        for mono_b, coeff_b in c2.representative:
            product = _multiply_monomials(K, mono_a, mono_b)
            if product is None:
                continue
            mono, sign = product
            terms[mono] = terms.get(mono, 0) + sign * QQ.convert(coeff_a) * QQ.convert(coeff_b)
    return CohomologyClass.from_terms(K, bidegree, terms)


##########################
# Fundamental class and duality
##########################
def facet_cocycle(oriented: OrientedSphereComplex, facet_index: int) -> CohomologyClass:
    """o(F) s(F) v_F u_{[m]-F}, where s(F) is the sign of the shuffle (F, [m]-F)."""
    K = oriented.base
    facet = mask_of(K.facets[facet_index])
    rest = full_mask(K.m) & ~facet
    shuffle = -1 if inversions_between(facet, rest) % 2 else 1
    sign = oriented.signs[facet_index] * shuffle
    q = popcount(rest)
    return CohomologyClass.from_terms(K, (q, K.m), {(rest, facet): sign})


def fundamental_class(oriented: OrientedSphereComplex, verify: bool = True) -> CohomologyClass:
    """Class of the first facet cocycle in bidegree (-(m-n), 2m); with ``verify`` all facets must agree."""
    first = facet_cocycle(oriented, 0)
    if verify and not fundamental_classes_agree(oriented):
        raise ComputationMismatch(
            f"Facet cocycles of {oriented.base.describe()} do not define a single fundamental class"
        )
    return first


def fundamental_classes_agree(oriented: OrientedSphereComplex) -> bool:
    reference = facet_cocycle(oriented, 0).coordinates()
    if not any(reference):
        return False
    return all(facet_cocycle(oriented, k).coordinates() == reference for k in range(1, len(oriented.base.facets)))


def basis_classes(K: SimplicialComplex, q: int, p: int) -> list[CohomologyClass]:
    """The fixed cohomology basis of H^{-q,2p} as classes."""
    basis = cohomology_basis(K, q, p)
    strand_basis = koszul_strand(K, p).bases[q]
    return [
        CohomologyClass.from_terms(K, (q, p), {strand_basis[k]: c for k, c in rep.items()})
        for rep in basis.representatives
    ]


def _as_fraction(value: Any) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


def pairing_matrix(
    oriented: OrientedSphereComplex, left: Sequence[CohomologyClass], right: Sequence[CohomologyClass]
) -> list[list[Fraction]]:
    """Coefficients of each product left[a] * right[b] on the fundamental class."""
    omega = fundamental_class(oriented, verify=False)
    reference = omega.coordinates()[0]
    rows = []
    for a in left:
        row = []
        for b in right:
            product = cup_product(a, b)
            if product.bidegree != omega.bidegree:
                raise DimensionError(f"Product lands in {product.bidegree}, not the fundamental bidegree {omega.bidegree}")
            coordinates = product.coordinates()
            row.append(_as_fraction(coordinates[0] / reference) if coordinates else Fraction(0))
        rows.append(row)
    return rows


def poincare_duality_check(
    K: Union[SimplicialComplex, OrientedSphereComplex], check_pairing: bool = True, jobs: int = 1
) -> DualityReport:
    """Bigraded symmetry b_{-q,2p} = b_{-(m-n)+q, 2(m-p)} and, for oriented pseudomanifolds, the cup pairing."""
    oriented: Optional[OrientedSphereComplex] = None
    if isinstance(K, OrientedSphereComplex):
        oriented, K = K, K.base
    else:
        try:
            oriented = orient_sphere(K)
        except InputError as e:
            logging.info(f"pairing skipped for {K.describe()}: {e}")
    table = bigraded_betti(K, jobs=jobs)
    codim = K.m - K.n
    ranks = table.as_dict()
    dual = {(codim - q, K.m - p) for (q, p) in ranks}
    asymmetric = sorted(
        (q, p) for (q, p) in set(ranks) | dual
        if ranks.get((q, p), 0) != ranks.get((codim - q, K.m - p), 0)
    )
    report = DualityReport(symmetric=not asymmetric, asymmetric_entries=asymmetric, fundamental_bidegree=(codim, K.m))
    if oriented is None or not check_pairing:
        return report
    report.fundamental_classes_agree = fundamental_classes_agree(oriented)
    if not report.fundamental_classes_agree or asymmetric:
        return report
    for (q, p), dimension in sorted(ranks.items()):
        left = basis_classes(K, q, p)
        right = basis_classes(K, codim - q, K.m - p)
        matrix = pairing_matrix(oriented, left, right)
        entries = {r: {c: QQ(v.numerator, v.denominator) for c, v in enumerate(row) if v} for r, row in enumerate(matrix)}
        rank = sparse_rank(entries, (len(left), len(right)))
        report.pairings.append(PairingRank(bidegree=(q, p), dual_bidegree=(codim - q, K.m - p), dimension=dimension, rank=rank))
    return report


##########################
# Cohen-Macaulay and Gorenstein*
##########################
def cm_gorenstein_classify(K: SimplicialComplex) -> CMGorensteinVerdict:
    """Reisner's link criterion and the sphere-homology link criterion over the rationals."""
    cm_failure: Optional[list[int]] = None
    gorenstein_failure: Optional[list[int]] = None
    for size in sorted(K.faces_by_size):
        for face_mask in K.faces_by_size[size]:
            face = members(face_mask)
            link_complex = link(K, face)
            homology = reduced_homology(link_complex)
            top = link_complex.dimension
            if cm_failure is None and any(reduced_betti(homology, i) for i in range(-1, top)):
                cm_failure = list(face)
            sphere_like = all(reduced_betti(homology, i) == (1 if i == top else 0) for i in range(-1, top + 1))
            if gorenstein_failure is None and not sphere_like:
                gorenstein_failure = list(face)
            if cm_failure is not None and gorenstein_failure is not None:
                break
    return CMGorensteinVerdict(
        cohen_macaulay=cm_failure is None,
        gorenstein_star=gorenstein_failure is None,
        cm_failure=cm_failure,
        gorenstein_failure=gorenstein_failure,
    )


##########################
# Tor against linear forms
##########################
def _face_monomials(K: SimplicialComplex, degree: int) -> list[tuple[int, ...]]:
    """Monomials of the given degree (sorted vertex multisets) supported on faces."""
    return [
        mono for mono in combinations_with_replacement(range(1, K.m + 1), degree)
        if mask_of(mono) in K.face_masks
    ]


def tor_with_forms(K: SimplicialComplex, forms: IntegerMatrix, bound: Optional[int] = None, jobs: int = 1) -> BigradedBettiTable:
    """Cohomology of Lambda[u_1..u_k] (x) k(K) with du_i = sum_j L_ij v_j, strands p <= bound."""
    if forms.cols != K.m:
        raise DimensionError(f"Linear forms need {K.m} columns, got {forms.rows}x{forms.cols}")
    k = forms.rows
    bound = K.m if bound is None else bound
    form_terms = [[(j + 1, forms[i, j]) for j in range(K.m) if forms[i, j]] for i in range(k)]
    universe = full_mask(k)

    def strand_ranks(p: int) -> dict[Bidegree, int]:
        bases: dict[int, list[tuple[int, tuple[int, ...]]]] = {}
        for q in range(min(p, k) + 1):
            bases[q] = [(i_mask, mono) for i_mask in submasks_of_size(universe, q) for mono in _face_monomials(K, p - q)]
        index = {q: {basis: n for n, basis in enumerate(items)} for q, items in bases.items()}
        ranks = {}
        for q in range(1, min(p, k) + 1):
            rows: dict[int, dict[int, int]] = {}
            for col, (i_mask, mono) in enumerate(bases[q]):
                for position, i in enumerate(members(i_mask)):
                    sign = -1 if position % 2 else 1
                    for vertex, coefficient in form_terms[i - 1]:
                        product = tuple(sorted(mono + (vertex,)))
                        target = index[q - 1].get((i_mask & ~(1 << (i - 1)), product))
                        if target is None:
                            continue
                        row = rows.setdefault(target, {})
                        row[col] = row.get(col, 0) + sign * coefficient
            ranks[q] = sparse_rank(rows, (len(bases[q - 1]), len(bases[q])))
        return {
            (q, p): len(bases[q]) - ranks.get(q, 0) - ranks.get(q + 1, 0)
            for q in bases
            if len(bases[q]) - ranks.get(q, 0) - ranks.get(q + 1, 0)
        }

    ranks: dict[Bidegree, int] = {}
    for part in parallel_map(strand_ranks, list(range(bound + 1)), jobs=jobs):
        ranks.update(part)
    return BigradedBettiTable.from_ranks(K.m, K.n, ranks)


##########################
# h-vector inequalities through Betti numbers
##########################
def glbt_betti_bridge(K: SimplicialComplex, table: Optional[BigradedBettiTable] = None) -> GLBTBridge:
    """h_2 - h_1 and h_3 - h_2 from the h-vector and from b_{-1,4}, b_{-2,6}, b_{-1,6}."""
    if K.ghost_vertices:
        raise InputError(f"{K.describe()} has ghost vertices {K.ghost_vertices}; the h-vector relations assume none")
    table = table or bigraded_betti(K)
    h = list(h_vector(K)) + [0, 0, 0, 0]
    codim = K.m - K.n
    b14, b26, b16 = table.rank(1, 2), table.rank(2, 3), table.rank(1, 3)
    return GLBTBridge(
        h_differences=[h[2] - h[1], h[3] - h[2]],
        betti_differences=[comb(codim, 2) - b14, comb(codim + 1, 3) - (codim - 1) * b14 + b26 - b16],
    )
