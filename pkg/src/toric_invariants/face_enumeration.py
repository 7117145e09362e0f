"""Face vectors, Dehn-Sommerville and g-theorem tests, and Euler-characteristic polynomials."""

import logging
from math import comb
from typing import Literal, Optional, Sequence, Union

from toric_invariants.documents import (
    DehnSommervilleDefect,
    GradedPolynomial,
    GTheoremVerdict,
    MVectorVerdict,
    PoincareSeries,
    UpperBoundReport,
)
from toric_invariants.exceptions import ComputationMismatch, DimensionError, InputError
from toric_invariants.simplicial import SimplicialComplex

HSource = Union[SimplicialComplex, Sequence[int]]


def _binom(a: int, b: int) -> int:
    if b == 0:
        return 1
    if b < 0 or a < b:
        return 0
    return comb(a, b)


##########################
# f, h and g vectors
##########################
def f_to_h(f: Sequence[int], n: int) -> tuple[int, ...]:
    """h-vector (h_0..h_n) of a complex of dimension n - 1 with face counts f_0..f_{n-1}.

    h_k = sum_{i=0}^{k} (-1)^{k-i} C(n-i, n-k) f_{i-1}, with f_{-1} = 1.
    """
    if len(f) > n:
        raise DimensionError(f"f-vector of length {len(f)} does not fit dimension {n - 1}")
    padded = [1] + list(f) + [0] * (n - len(f))
    return tuple(
        sum((-1) ** (k - i) * comb(n - i, n - k) * padded[i] for i in range(k + 1))
        for k in range(n + 1)
    )


def h_to_f(h: Sequence[int]) -> tuple[int, ...]:
    """Inverse of ``f_to_h``: f_{j-1} = sum_{i=0}^{j} C(n-i, j-i) h_i for j = 1..n."""
    n = len(h) - 1
    return tuple(sum(comb(n - i, j - i) * h[i] for i in range(j + 1)) for j in range(1, n + 1))


def h_vector(K: SimplicialComplex) -> tuple[int, ...]:
    return f_to_h(K.f_vector, K.n)


def _as_h(source: HSource) -> tuple[int, ...]:
    if isinstance(source, SimplicialComplex):
        return h_vector(source)
    return tuple(int(x) for x in source)


def g_vector(h: Sequence[int]) -> tuple[int, ...]:
    """(g_0, ..., g_{n/2}) with g_0 = h_0 and g_i = h_i - h_{i-1}."""
    n = len(h) - 1
    return tuple(h[0] if i == 0 else h[i] - h[i - 1] for i in range(n // 2 + 1))


##########################
# Dehn-Sommerville
##########################
def dehn_sommerville_defect(source: HSource) -> DehnSommervilleDefect:
    """Defect h_{n-i} - h_i next to the value predicted for manifolds.

    For an orientable (n-1)-manifold the defect equals
    (-1)^i (chi(K) - chi(S^{n-1})) C(n, i); for spheres both vanish.
    """
    h = _as_h(source)
    n = len(h) - 1
    if isinstance(source, SimplicialComplex):
        chi = source.euler_characteristic()
    else:
        chi = sum((-1) ** i * f for i, f in enumerate(h_to_f(h)))
    sphere_chi = 1 + (-1) ** (n - 1)
    return DehnSommervilleDefect(
        defect=[h[n - i] - h[i] for i in range(n + 1)],
        predicted=[(-1) ** i * (chi - sphere_chi) * comb(n, i) for i in range(n + 1)],
        euler_characteristic=chi,
    )


##########################
# Macaulay and the g-theorem
##########################
def binomial_upper(a: int, i: int) -> int:
    """a^<i>: write a = C(a_i, i) + C(a_{i-1}, i-1) + ... greedily, then shift every term up."""
    if i < 1:
        raise InputError(f"binomial_upper needs i >= 1, got {i}")
    if a < 0:
        raise InputError(f"binomial_upper needs a >= 0, got {a}")
    total = 0
    remainder = a
    j = i
    while remainder > 0 and j >= 1:
        x = j
        while comb(x + 1, j) <= remainder:
            x += 1
        remainder -= comb(x, j)
        total += comb(x + 1, j + 1)
        j -= 1
    return total


def is_m_vector(k: Sequence[int]) -> MVectorVerdict:
    """Macaulay's criterion: k_0 = 1 and 0 <= k_{i+1} <= k_i^<i> for i >= 1."""
    if not k or k[0] != 1:
        return MVectorVerdict(is_m_vector=False, failing_index=0)
    for index, value in enumerate(k):
        if value < 0:
            return MVectorVerdict(is_m_vector=False, failing_index=index)
    for i in range(1, len(k) - 1):
        if k[i + 1] > binomial_upper(k[i], i):
            return MVectorVerdict(is_m_vector=False, failing_index=i + 1)
    return MVectorVerdict(is_m_vector=True)


def g_theorem_verdict(source: HSource) -> GTheoremVerdict:
    h = _as_h(source)
    n = len(h) - 1
    g = g_vector(h)
    asymmetric = [i for i in range(n + 1) if h[i] != h[n - i]]
    negative = sorted({i for i, x in enumerate(g) if x < 0} | {i for i, x in enumerate(h) if x < 0})
    macaulay = is_m_vector(g)
    return GTheoremVerdict(
        symmetric=not asymmetric,
        symmetry_failures=asymmetric,
        nonnegative=not negative,
        nonnegativity_failures=negative,
        g_is_m_vector=macaulay.is_m_vector,
        m_vector_failure=macaulay.failing_index,
    )


def ubt_check(h: Sequence[int], m: int, n: int) -> UpperBoundReport:
    """Upper bound h_i <= C(m-n+i-1, i) for 0 <= i <= n/2, with the equality pattern."""
    if len(h) != n + 1:
        raise DimensionError(f"Expected an h-vector of length {n + 1}, got {len(h)}")
    bounds = [_binom(m - n + i - 1, i) for i in range(n // 2 + 1)]
    failing = [i for i, bound in enumerate(bounds) if h[i] > bound]
    equalities = [h[i] == bound for i, bound in enumerate(bounds)]
    equal_through = -1
    for flag in equalities:
        if not flag:
            break
        equal_through += 1
    return UpperBoundReport(holds=not failing, failing_indices=failing, equalities=equalities, equal_through=equal_through)


##########################
# h-vector arithmetic
##########################
def product_h(h1: Sequence[int], h2: Sequence[int]) -> tuple[int, ...]:
    """h(P x Q; t) = h(P; t) h(Q; t)."""
    product = GradedPolynomial(coefficients=tuple(h1)) * GradedPolynomial(coefficients=tuple(h2))
    length = len(h1) + len(h2) - 1
    return tuple(product.coefficient(k) for k in range(length))


def connected_sum_h(h1: Sequence[int], h2: Sequence[int]) -> tuple[int, ...]:
    """h_0 = h_n = 1 and h_i(P # Q) = h_i(P) + h_i(Q) for 0 < i < n."""
    if len(h1) != len(h2):
        raise DimensionError(f"Connected sum needs equal dimensions, got h-vectors of length {len(h1)} and {len(h2)}")
    for h in (h1, h2):
        if h[0] != 1 or h[-1] != 1:
            raise InputError(f"Connected sum needs h_0 = h_n = 1, got {tuple(h)}")
    n = len(h1) - 1
    return tuple(1 if i in (0, n) else h1[i] + h2[i] for i in range(n + 1))


def toric_signature(h: Sequence[int]) -> int:
    """sum_{k=0}^{n} (-1)^k h_k."""
    return sum((-1) ** k * x for k, x in enumerate(h))


def charney_davis_quantity(h: Sequence[int]) -> Optional[int]:
    """(-1)^{n/2} sum (-1)^k h_k for even n; None for odd n."""
    n = len(h) - 1
    if n % 2:
        return None
    return (-1) ** (n // 2) * toric_signature(h)


##########################
# Generating functions
##########################
def face_ring_poincare_series(K: SimplicialComplex) -> PoincareSeries:
    """F(k(K); t) = h(t^2) / (1 - t^2)^n, cross-checked against the face-count expansion."""
    n = K.n
    h = h_vector(K)
    numerator = GradedPolynomial(coefficients=h)
    # sum_{i=-1}^{n-1} f_i t^{2(i+1)} / (1 - t^2)^{i+1}, cleared by (1 - t^2)^n
    expansion = GradedPolynomial(coefficients=())
    for size, count in enumerate((1,) + K.f_vector):
        shift = GradedPolynomial(coefficients=(0,) * size + (count,))
        expansion = expansion + shift * GradedPolynomial.one_minus_power(n - size)
    if expansion != numerator:
        raise ComputationMismatch(
            f"Poincare series of {K.describe()}: h-vector numerator {numerator} differs from face-count expansion {expansion}"
        )
    return PoincareSeries(numerator=numerator, denominator_exponent=n)


def chi_poly_zk(K: SimplicialComplex) -> GradedPolynomial:
    """chi(Z_K; t) = (1 - t^2)^{m-n} h(t^2)."""
    return GradedPolynomial.one_minus_power(K.m - K.n) * GradedPolynomial(coefficients=h_vector(K))


def chi_poly_rel(K: SimplicialComplex) -> GradedPolynomial:
    """chi(Z_K, T^m; t) = chi(Z_K; t) - (1 - t^2)^m."""
    return chi_poly_zk(K) - GradedPolynomial.one_minus_power(K.m)


def chi_poly_wk(K: SimplicialComplex) -> GradedPolynomial:
    """chi(W_K; t) = chi(Z_K; t) + (chi(K) - 1)(1 - t^2)^m."""
    return chi_poly_zk(K) + GradedPolynomial.one_minus_power(K.m) * (K.euler_characteristic() - 1)


def chi_poly_wk_from_cells(K: SimplicialComplex) -> GradedPolynomial:
    """chi(W_K; t) by counting the bigraded cells of W_K directly.

    A cell chooses disjoint I, J, L with |L| >= 1 and I u J u L a face, then
    splits the remaining vertices into P and Q. Its bidegree is
    (|J| - |P|, 2(|I| + |P|)).
    """
    f = (1,) + K.f_vector
    coefficients: dict[int, int] = {}
    for size in range(1, len(f)):
        faces = f[size]
        for i in range(size):
            for j in range(size - i):
                l = size - i - j
                if l < 1:
                    continue
                count = faces * comb(size, i) * comb(j + l, l)
                for p in range(K.m - size + 1):
                    cells = count * comb(K.m - size, p)
                    coefficients[i + p] = coefficients.get(i + p, 0) + (-1) ** ((j - p) % 2) * cells
    top = max(coefficients, default=-1)
    return GradedPolynomial(coefficients=tuple(coefficients.get(k, 0) for k in range(top + 1)))


##########################
# Cubical complexes
##########################
def cubical_counts(K: SimplicialComplex, mode: Literal["cc", "cub"] = "cc") -> tuple[int, ...]:
    """k-face counts of cc(K) (cubes C_{I<J}, J in K) or cub(K) (I nonempty), k = 0..n."""
    f = (1,) + K.f_vector
    counts = []
    for k in range(K.n + 1):
        total = 0
        for size, faces in enumerate(f):
            if mode == "cub" and size == k:
                continue
            total += faces * _binom(size, k) if size >= k else 0
        counts.append(total)
    while counts and counts[-1] == 0:
        counts.pop()
    return tuple(counts)


def cubical_counts_polytope(f: Sequence[int], n: int) -> tuple[int, ...]:
    """f_k(C(P^n)) = sum_{i=0}^{n-k} C(n-i, k) f_{n-i-1}(P^n), with f_{-1} = 1.

    ``f`` lists f_0..f_{n-1} of the polytope in the simple-polytope
    convention, so f_{n-1} is the number of vertices.
    """
    padded = {-1: 1, **{i: int(x) for i, x in enumerate(f)}}
    return tuple(
        sum(comb(n - i, k) * padded.get(n - i - 1, 0) for i in range(n - k + 1))
        for k in range(n + 1)
    )


def neighbourliness(K: SimplicialComplex) -> int:
    """Largest q such that every q-subset of {1..m} is a face."""
    if K.is_full_simplex:
        return K.m
    smallest = min(len(face) for face in K.missing_faces())
    logging.debug(f"{K.describe()} has smallest missing face of size {smallest}")
    return smallest - 1
