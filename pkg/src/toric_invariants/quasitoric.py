"""Characteristic pairs, vertex sign data and the combinatorial genera of quasitoric manifolds."""

import logging
from itertools import combinations_with_replacement, product
from math import comb
from typing import Iterable, Optional, Sequence, Union

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from toric_invariants.documents import (
    FreenessVerdict,
    GenusReport,
    GradedPolynomial,
    PairDocument,
    TorusRankBounds,
    VertexGenusData,
)
from toric_invariants.exact_linalg import (
    IntegerMatrix,
    det_integer,
    smith_invariants,
    sparse_rank,
    unimodular_inverse,
)
from toric_invariants.exceptions import (
    CharacteristicMatrixError,
    DimensionError,
    NonGenericVectorError,
    NotDirectSummandError,
    SearchExhaustedError,
)
from toric_invariants.face_enumeration import h_vector
from toric_invariants.simplicial import (
    OrientedSphereComplex,
    SimplicialComplex,
    generator_boundary_simplex,
    orient_sphere,
)
from toric_invariants.utils import mask_of, parallel_map


class CharacteristicPair(BaseModel):
    """An oriented sphere K_P on m vertices with an n x m matrix whose facet minors are +1 or -1."""

    sphere: OrientedSphereComplex = Field(description="Oriented (n-1)-sphere; its vertices are the facets of P")
    lam: IntegerMatrix = Field(description="Characteristic matrix; column i is lambda_i")
    name: Optional[str] = Field(default=None, description="Display name")

    model_config = ConfigDict(arbitrary_types_allowed=True)

    @property
    def n(self) -> int:
        return self.sphere.n

    @property
    def m(self) -> int:
        return self.sphere.m

    def minor(self, facet: Sequence[int]) -> IntegerMatrix:
        """Lambda_(v): the columns of the facet in the given order."""
        return self.lam.select_columns([v - 1 for v in facet])

    def reversed(self) -> "CharacteristicPair":
        """Same matrix with the global orientation reversed."""
        return CharacteristicPair(sphere=self.sphere.reversed(), lam=self.lam, name=self.name)

    def with_column_signs(self, columns: Iterable[int]) -> "CharacteristicPair":
        """Flip lambda_i for the given 1-based columns (a change of omniorientation)."""
        return CharacteristicPair(
            sphere=self.sphere, lam=self.lam.negate_columns([c - 1 for c in columns]), name=self.name
        )


def validate_pair(
    sphere: Union[SimplicialComplex, OrientedSphereComplex], lam: IntegerMatrix, name: Optional[str] = None
) -> CharacteristicPair:
    """Check the shape of the matrix and the unimodularity of every facet minor."""
    oriented = sphere if isinstance(sphere, OrientedSphereComplex) else orient_sphere(sphere)
    n, m = oriented.n, oriented.m
    if lam.shape != (n, m):
        raise DimensionError(
            f"Characteristic matrix must be {n}x{m} for {oriented.base.describe()}, got {lam.rows}x{lam.cols}"
        )
    for facet in oriented.base.facets:
        determinant = det_integer(lam.select_columns([v - 1 for v in facet]))
        if abs(determinant) != 1:
            raise CharacteristicMatrixError(facet, determinant)
    return CharacteristicPair(sphere=oriented, lam=lam, name=name or oriented.base.name)


def pair_from_document(document: PairDocument) -> CharacteristicPair:
    K = document.complex.to_complex()
    if document.orientation:
        oriented = OrientedSphereComplex.from_oriented_facets(K, document.orientation)
    else:
        oriented = orient_sphere(K)
    lam = IntegerMatrix.from_rows(document.lambda_, cols=K.m)
    return validate_pair(oriented, lam, name=document.name or document.complex.name)


def projective_space_pair(n: int) -> CharacteristicPair:
    """CP^n: the boundary of the n-simplex with Lambda = (E | -1)."""
    rows = [[int(i == j) for j in range(n)] + [-1] for i in range(n)]
    return validate_pair(generator_boundary_simplex(n), IntegerMatrix.from_rows(rows), name=f"cp{n}")


##########################
# Vertex data and genera
##########################
def _pairing(vector: Sequence[int], nu: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(vector, nu))


def vertex_genus_data(
    pair: CharacteristicPair, nu: Optional[Sequence[int]] = None, jobs: int = 1
) -> list[VertexGenusData]:
    """sigma(v), the edge matrix M_(v) = (Lambda_(v)^t)^{-1} and, given nu, the index of every vertex."""

    def one_vertex(facet: tuple[int, ...]) -> VertexGenusData:
        minor = pair.minor(facet)
        edges = unimodular_inverse(minor.transpose())
        index = None
        if nu is not None:
            index = sum(1 for k in range(pair.n) if _pairing(edges.column(k), nu) < 0)
        return VertexGenusData(facet=facet, sigma=det_integer(minor), edge_matrix=edges.to_rows(), index=index)

    return parallel_map(one_vertex, pair.sphere.oriented_facets(), jobs=jobs)


def edge_vectors(pair: CharacteristicPair) -> list[tuple[int, ...]]:
    out = []
    for data in vertex_genus_data(pair):
        for k in range(pair.n):
            out.append(tuple(row[k] for row in data.edge_matrix))
    return out


def check_generic(pair: CharacteristicPair, nu: Sequence[int]) -> None:
    if len(nu) != pair.n:
        raise DimensionError(f"nu must have {pair.n} coordinates, got {len(nu)}")
    for vector in edge_vectors(pair):
        if _pairing(vector, nu) == 0:
            raise NonGenericVectorError(
                f"nu = {tuple(nu)} is orthogonal to the edge vector {vector}.\n"
                "Choose nu with nonzero pairing against every edge vector, or omit it to search."
            )


def find_generic_vector(pair: CharacteristicPair, radius: int = 8) -> tuple[int, ...]:
    """First nu, in lexicographic order over boxes of growing radius, pairing nonzero with every edge vector."""
    vectors = edge_vectors(pair)
    for r in range(1, radius + 1):
        for nu in product(range(-r, r + 1), repeat=pair.n):
            if max(abs(x) for x in nu) != r:
                continue
            if all(_pairing(vector, nu) != 0 for vector in vectors):
                logging.debug(f"generic vector {nu} found at radius {r}")
                return nu
    raise SearchExhaustedError(f"No generic vector with coordinates up to {radius}; raise generic_search_radius")


def chi_y_genus(pair: CharacteristicPair, nu: Optional[Sequence[int]] = None) -> GradedPolynomial:
    """sum over vertices of (-y)^{ind(v)} sigma(v)."""
    nu = tuple(nu) if nu is not None else find_generic_vector(pair)
    check_generic(pair, nu)
    coefficients = [0] * (pair.n + 1)
    for data in vertex_genus_data(pair, nu):
        coefficients[data.index] += (-1) ** data.index * data.sigma
    return GradedPolynomial(coefficients=tuple(coefficients), variable="y")


def signature(pair: CharacteristicPair, nu: Optional[Sequence[int]] = None) -> int:
    return chi_y_genus(pair, nu).evaluate(1)


def todd(pair: CharacteristicPair, nu: Optional[Sequence[int]] = None) -> int:
    """Sum of sigma over the vertices of index 0."""
    return chi_y_genus(pair, nu).evaluate(0)


def top_chern(pair: CharacteristicPair) -> int:
    """c_n[M] = sum of sigma(v); no generic vector is involved."""
    return sum(data.sigma for data in vertex_genus_data(pair))


def genus_report(pair: CharacteristicPair, nu: Optional[Sequence[int]] = None, radius: int = 8, jobs: int = 1) -> GenusReport:
    nu = tuple(nu) if nu is not None else find_generic_vector(pair, radius)
    check_generic(pair, nu)
    vertices = vertex_genus_data(pair, nu, jobs=jobs)
    coefficients = [0] * (pair.n + 1)
    for data in vertices:
        coefficients[data.index] += (-1) ** data.index * data.sigma
    chi_y = GradedPolynomial(coefficients=tuple(coefficients), variable="y")
    return GenusReport(
        nu=nu,
        vertices=vertices,
        chi_y=chi_y,
        signature=chi_y.evaluate(1),
        todd=chi_y.evaluate(0),
        top_chern=chi_y.evaluate(-1),
    )


##########################
# Cohomology dimensions
##########################
def quasitoric_betti(K: SimplicialComplex) -> tuple[int, ...]:
    """b_{2i}(M) = h_i(K_P)."""
    return h_vector(K)


def graded_quotient_dims(pair: CharacteristicPair, up_to: Optional[int] = None) -> tuple[int, ...]:
    """dim of the degree-2i part of k[v_1..v_m] / (I_P + (theta_1, ..., theta_n)), i = 0..up_to.

    theta_j = sum_k Lambda_jk v_k. Computed on dense monomial bases per degree.
    """
    K = pair.sphere.base
    m, n = pair.m, pair.n
    top = n if up_to is None else up_to
    theta = [[(k + 1, pair.lam[j, k]) for k in range(m) if pair.lam[j, k]] for j in range(n)]
    dims = []
    for degree in range(top + 1):
        basis = list(combinations_with_replacement(range(1, m + 1), degree))
        index = {mono: k for k, mono in enumerate(basis)}
        rows: dict[int, dict[int, int]] = {}
        generator = 0
        for mono in basis:
            if mask_of(mono) not in K.face_masks:
                rows[generator] = {index[mono]: 1}
                generator += 1
        if degree >= 1:
            for lower in combinations_with_replacement(range(1, m + 1), degree - 1):
                for form in theta:
                    row: dict[int, int] = {}
                    for vertex, coefficient in form:
                        column = index[tuple(sorted(lower + (vertex,)))]
                        row[column] = row.get(column, 0) + coefficient
                    rows[generator] = row
                    generator += 1
        rank = sparse_rank(rows, (generator, len(basis)))
        dims.append(comb(m + degree - 1, degree) - rank)
    return tuple(dims)


##########################
# Subtorus actions
##########################
def subtorus_free(K: Union[SimplicialComplex, CharacteristicPair], S: IntegerMatrix) -> FreenessVerdict:
    """Whether the subtorus spanned by the columns of S (m x r) acts freely on Z_P.

    Free iff, for every facet {i_1..i_n}, deleting those rows leaves a matrix
    whose Smith invariants are r ones.
    """
    if isinstance(K, CharacteristicPair):
        K = K.sphere.base
    m, n, r = K.m, K.n, S.cols
    if S.rows != m:
        raise DimensionError(f"Subtorus matrix needs {m} rows, got {S.rows}")
    if r > m - n:
        return FreenessVerdict(free=False, reason=f"rank {r} exceeds m - n = {m - n}")
    if smith_invariants(S) != (1,) * r:
        raise NotDirectSummandError(
            f"Columns of S do not span a rank-{r} direct summand of Z^{m}: Smith invariants {smith_invariants(S)}"
        )
    for facet in K.facets:
        invariants = smith_invariants(S.delete_rows(v - 1 for v in facet))
        if invariants != (1,) * r:
            return FreenessVerdict(
                free=False, failing_facet=facet, invariants=invariants,
                reason=f"deleting rows {facet} leaves Smith invariants {invariants}",
            )
    return FreenessVerdict(free=True)


def diagonal_subgroup(m: int) -> IntegerMatrix:
    return IntegerMatrix.from_rows([[1] for _ in range(m)], cols=1)


def characteristic_kernel(pair: CharacteristicPair) -> IntegerMatrix:
    """Integer m x (m-n) basis of ker Lambda built from the unimodular minor of the first facet."""
    facet = pair.sphere.base.facets[0]
    inverse = unimodular_inverse(pair.minor(facet))
    position = {v: k for k, v in enumerate(facet)}
    columns = []
    for j in range(1, pair.m + 1):
        if j in position:
            continue
        solved = inverse @ IntegerMatrix.from_columns([pair.lam.column(j - 1)])
        column = [0] * pair.m
        column[j - 1] = 1
        for v, k in position.items():
            column[v - 1] = -solved[k, 0]
        columns.append(column)
    return IntegerMatrix.from_columns(columns, rows=pair.m)


def greedy_colouring(K: SimplicialComplex) -> dict[int, int]:
    """Proper colouring of the 1-skeleton, vertices visited in label order."""
    graph = nx.Graph()
    graph.add_nodes_from(range(1, K.m + 1))
    graph.add_edges_from(tuple(edge) for edge in K.faces(2))
    return nx.greedy_color(graph, strategy=lambda G, _colours: sorted(G))


def chromatic_lower_bound(K: SimplicialComplex) -> tuple[int, int]:
    """(m - greedy colours, greedy colours); the first entry bounds s(P) from below."""
    used = len(set(greedy_colouring(K).values())) if K.m else 0
    return K.m - used, used


def torus_rank_bounds(K: SimplicialComplex) -> TorusRankBounds:
    bound, used = chromatic_lower_bound(K)
    return TorusRankBounds(diagonal_lower=1, colouring_lower=bound, greedy_colours=used, upper=K.m - K.n)


def min_missing_face(K: SimplicialComplex) -> int:
    """Size of the smallest non-face; m + 1 for the full simplex."""
    if K.is_full_simplex:
        return K.m + 1
    return min(len(face) for face in K.missing_faces())
