"""Reproduction suite: named groups of exact checks over the bundled corpus.

Each group yields ``(key, expected, compute)`` triples; the runner times every
``compute`` call and records a ``CheckResult``.
"""

import logging
from math import comb
from typing import Any, Callable, Iterable, Iterator, Optional, Sequence

from toric_invariants.arrangements import (
    coord_complement_betti,
    diagonal_complement_betti,
    diagonal_region_count,
    diagonal_strand_euler,
)
from toric_invariants.configuration import Configuration
from toric_invariants.corpus import corpus_complexes, corpus_spheres, load_corpus, random_complexes
from toric_invariants.documents import CheckResult, ReproduceReport
from toric_invariants.exact_linalg import IntegerMatrix
from toric_invariants.face_enumeration import (
    chi_poly_rel,
    chi_poly_wk,
    chi_poly_wk_from_cells,
    chi_poly_zk,
    dehn_sommerville_defect,
    g_theorem_verdict,
    h_vector,
    toric_signature,
    ubt_check,
)
from toric_invariants.quasitoric import (
    CharacteristicPair,
    characteristic_kernel,
    chi_y_genus,
    diagonal_subgroup,
    graded_quotient_dims,
    pair_from_document,
    projective_space_pair,
    subtorus_free,
    vertex_genus_data,
)
from toric_invariants.simplicial import (
    build_complex,
    generator_boundary_simplex,
    generator_cyclic_sphere,
    generator_polygon,
    generator_simplex,
    orient_sphere,
    reduced_homology,
)
from toric_invariants.tor_algebra import (
    bigraded_betti,
    class_of,
    cm_gorenstein_classify,
    cup_product,
    hochster_betti,
    poincare_duality_check,
    relative_betti,
    tor_with_forms,
)
from toric_invariants.utils import timed

Check = tuple[str, Any, Callable[[], Any]]


def _pairs() -> dict[str, CharacteristicPair]:
    names = ["cp2-standard", "cp2-alt", "cp1xcp1", "pentagon-pair", "cp3"]
    return {name: pair_from_document(load_corpus(name)) for name in names}


def mgon_total_betti(m: int) -> tuple[int, ...]:
    """Total Betti numbers of Z_K for the m-gon, degrees 0..m+2."""
    out = [0] * (m + 3)
    out[0] = out[m + 2] = 1
    for k in range(3, m):
        out[k] = (m - 2) * comb(m - 2, k - 2) - comb(m - 2, k - 1) - comb(m - 2, k - 3)
    return tuple(out)


##########################
# Check groups
##########################
def oracle_checks(config: Configuration) -> Iterator[Check]:
    jobs = config.max_concurrent_strands
    complexes = {name: K for name, K in corpus_complexes().items() if K.m <= 9}
    for K in random_complexes(config.random_complex_count, config.random_complex_seed, config.random_complex_max_vertices):
        complexes[K.name] = K
    for name, K in complexes.items():
        yield (
            f"koszul-vs-hochster/{name}",
            [],
            lambda K=K: bigraded_betti(K, jobs=jobs).mismatches(hochster_betti(K, jobs=jobs)),
        )


def mgon_checks(config: Configuration) -> Iterator[Check]:
    for m in (5, 6, 7):
        K = generator_polygon(m)
        yield (f"polygon{m}", mgon_total_betti(m), lambda K=K: bigraded_betti(K).total_degrees())


def strand_euler_checks(config: Configuration) -> Iterator[Check]:
    for name, K in corpus_complexes().items():
        yield (
            f"zk/{name}",
            [chi_poly_zk(K).coefficient(p) for p in range(K.m + 1)],
            lambda K=K: [bigraded_betti(K).strand_euler(p) for p in range(K.m + 1)],
        )
        yield (f"zk-at-one/{name}", int(K.is_full_simplex), lambda K=K: chi_poly_zk(K).evaluate(1))
        yield (
            f"relative/{name}",
            [chi_poly_rel(K).coefficient(p) for p in range(K.m + 1)],
            lambda K=K: [relative_betti(K).strand_euler(p) for p in range(K.m + 1)],
        )
        yield (f"wk-cells/{name}", chi_poly_wk(K), lambda K=K: chi_poly_wk_from_cells(K))


def duality_checks(config: Configuration) -> Iterator[Check]:
    for name, K in corpus_spheres().items():
        yield (f"symmetry/{name}", True, lambda K=K: poincare_duality_check(K, check_pairing=False).symmetric)
        yield (f"dehn-sommerville/{name}", True, lambda K=K: dehn_sommerville_defect(K).is_zero)
    if config.check_pairing:
        for m in (4, 5, 6):
            K = generator_polygon(m)
            yield (f"pairing/polygon{m}", True, lambda K=K: poincare_duality_check(K).passes)
        yield ("pentagon-pairing-pattern", True, pentagon_pairing_pattern)


def pentagon_pairing_pattern() -> bool:
    """[v_i u_{i+2}] [v_j u_{j+2} u_{j+3}] is nonzero exactly when the five indices are distinct."""
    K = generator_polygon(5)

    def wrap(x: int) -> int:
        return (x - 1) % 5 + 1

    for i in range(1, 6):
        left = class_of(K, [wrap(i + 2)], [i])
        for j in range(1, 6):
            right = class_of(K, [wrap(j + 2), wrap(j + 3)], [j])
            distinct = len({i, wrap(i + 2), j, wrap(j + 2), wrap(j + 3)}) == 5
            if cup_product(left, right).is_zero() == distinct:
                logging.warning(f"pentagon pairing breaks at i={i}, j={j}")
                return False
    return True


def torus_checks(config: Configuration) -> Iterator[Check]:
    K = corpus_complexes()["torus9"]
    yield ("f-vector", (9, 27, 18), lambda: K.f_vector)
    yield ("h-vector", (1, 6, 12, -1), lambda: h_vector(K))
    yield ("defect", [-2, 6, -6, 2], lambda: dehn_sommerville_defect(K).defect)
    yield ("defect-formula", True, lambda: dehn_sommerville_defect(K).matches_prediction)
    yield ("reduced-homology", (0, 0, 2, 1), lambda: reduced_homology(K))
    yield ("top-betti", 1, lambda: bigraded_betti(K).rank(K.m - K.n, K.m))
    yield ("orientable", 18, lambda: len(orient_sphere(K).oriented_facets()))
    yield ("not-cohen-macaulay", (False, []), lambda: (cm_gorenstein_classify(K).cohen_macaulay, cm_gorenstein_classify(K).cm_failure))


def genus_checks(config: Configuration) -> Iterator[Check]:
    pairs = _pairs()
    standard, alternate = pairs["cp2-standard"], pairs["cp2-alt"]
    nu = (1, 2)
    yield ("cp2-standard/sigma", [1, 1, 1], lambda: [d.sigma for d in vertex_genus_data(standard)])
    yield ("cp2-standard/indices", [0, 1, 2], lambda: sorted(d.index for d in vertex_genus_data(standard, nu)))
    yield ("cp2-standard/genus", (1, 1, 3), lambda: _genus_values(standard, nu))
    yield ("cp2-alt/sigma", [1, -1, -1], lambda: [d.sigma for d in vertex_genus_data(alternate)])
    yield ("cp2-alt/indices", [0, 0, 1], lambda: sorted(d.index for d in vertex_genus_data(alternate, nu)))
    yield ("cp2-alt/genus", (1, 0, -1), lambda: _genus_values(alternate, nu))
    for name in ("cp2-standard", "cp2-alt"):
        pair = pairs[name]
        yield (
            f"{name}/nu-invariance",
            1,
            lambda pair=pair: len({chi_y_genus(pair, v) for v in [(1, 2), (2, -3), (3, 1), (-1, 1)]}),
        )
    for name, pair in pairs.items():
        sigmas = [d.sigma for d in vertex_genus_data(pair)]
        if all(s == 1 for s in sigmas):
            yield (
                f"{name}/toric-signature",
                toric_signature(h_vector(pair.sphere.base)),
                lambda pair=pair: chi_y_genus(pair).evaluate(1),
            )
            yield (f"{name}/top-chern-counts-vertices", len(pair.sphere.base.facets), lambda pair=pair: chi_y_genus(pair).evaluate(-1))


def _genus_values(pair: CharacteristicPair, nu: Sequence[int]) -> tuple[int, int, int]:
    chi_y = chi_y_genus(pair, nu)
    return (chi_y.evaluate(1), chi_y.evaluate(0), chi_y.evaluate(-1))


def g_theorem_checks(config: Configuration) -> Iterator[Check]:
    spheres = {
        "cyclic-4-7": generator_cyclic_sphere(4, 7),
        "cyclic-4-8": generator_cyclic_sphere(4, 8),
        **{f"polygon{m}": generator_polygon(m) for m in range(4, 9)},
        **{f"delta{n}-boundary": generator_boundary_simplex(n) for n in range(1, 7)},
    }
    for name, K in spheres.items():
        yield (f"passes/{name}", True, lambda K=K: g_theorem_verdict(K).passes)
    yield ("torus-fails", (False, False), lambda: _symmetry_and_sign((1, 6, 12, -1)))
    for m in (7, 8):
        K = generator_cyclic_sphere(4, m)
        yield (f"ubt-equality/cyclic-4-{m}", 2, lambda K=K: ubt_check(h_vector(K), K.m, K.n).equal_through)
        corpus = corpus_complexes()[f"cyclic-4-{m}"]
        yield (f"gale-evenness/cyclic-4-{m}", True, lambda K=K, corpus=corpus: K == corpus)


def _symmetry_and_sign(h: Sequence[int]) -> tuple[bool, bool]:
    verdict = g_theorem_verdict(h)
    return (verdict.symmetric, verdict.nonnegative)


def quasitoric_checks(config: Configuration) -> Iterator[Check]:
    pairs = {f"cp{n}": projective_space_pair(n) for n in (2, 3, 4)}
    named = _pairs()
    pairs["cp1xcp1"] = named["cp1xcp1"]
    pairs["pentagon-pair"] = named["pentagon-pair"]
    for name, pair in pairs.items():
        h = h_vector(pair.sphere.base)
        yield (f"quotient/{name}", h, lambda pair=pair: graded_quotient_dims(pair))
        expected = {(0, p): x for p, x in enumerate(h) if x}
        yield (f"forms/{name}", expected, lambda pair=pair: tor_with_forms(pair.sphere.base, pair.lam).as_dict())


def freeness_checks(config: Configuration) -> Iterator[Check]:
    for name, K in corpus_spheres().items():
        yield (f"diagonal/{name}", True, lambda K=K: subtorus_free(K, diagonal_subgroup(K.m)).free)
    for name, pair in _pairs().items():
        yield (f"kernel/{name}", True, lambda pair=pair: subtorus_free(pair, characteristic_kernel(pair)).free)
        K = pair.sphere.base
        too_big = IntegerMatrix.from_columns(
            [[int(i == j) for i in range(K.m)] for j in range(K.m - K.n + 1)], rows=K.m
        )
        yield (f"oversized/{name}", False, lambda K=K, S=too_big: subtorus_free(K, S).free)


def arrangement_checks(config: Configuration) -> Iterator[Check]:
    points = build_complex(3, [[1], [2], [3]], name="three-points")
    yield ("three-points/coord", (1, 0, 0, 3, 2), lambda: coord_complement_betti(points))
    for m in range(3, 8):
        K = build_complex(m, [[v] for v in range(1, m + 1)])
        expected = tuple([1, 0, 0] + [(k - 1) * comb(m, k) for k in range(2, m + 1)])
        yield (f"disjoint-points-law/m{m}", expected, lambda K=K: coord_complement_betti(K))
    for m in (2, 3, 4):
        yield (f"simplex/diag/m{m}", (1,) + (0,) * (m - 1), lambda m=m: diagonal_complement_betti(generator_simplex(m - 1)))
    two = build_complex(2, [[1], [2]], name="two-points")
    yield ("two-points/diag", 2, lambda: diagonal_complement_betti(two)[0])
    yield ("three-points/diag", 6, lambda: diagonal_complement_betti(points)[0])
    for K in (two, points, generator_polygon(4), generator_polygon(5), generator_boundary_simplex(3)):
        yield (f"regions/{K.name}", diagonal_region_count(K), lambda K=K: diagonal_complement_betti(K)[0])
        yield (
            f"strand-euler/{K.name}",
            diagonal_strand_euler(K),
            lambda K=K: sum((-1) ** i * b for i, b in enumerate(diagonal_complement_betti(K))),
        )


CHECK_GROUPS: dict[str, Callable[[Configuration], Iterable[Check]]] = {
    "oracle": oracle_checks,
    "mgon": mgon_checks,
    "strand-euler": strand_euler_checks,
    "duality": duality_checks,
    "torus": torus_checks,
    "genus": genus_checks,
    "g-theorem": g_theorem_checks,
    "quasitoric": quasitoric_checks,
    "freeness": freeness_checks,
    "arrangements": arrangement_checks,
}


def run_reproduction(config: Optional[Configuration] = None, groups: Optional[Sequence[str]] = None) -> ReproduceReport:
    """Run the selected check groups (all by default) and collect keyed results."""
    config = config or Configuration()
    selected = list(groups) if groups else list(CHECK_GROUPS)
    unknown = [g for g in selected if g not in CHECK_GROUPS]
    if unknown:
        raise KeyError(f"Unknown check groups {unknown}; available: {', '.join(CHECK_GROUPS)}")
    report = ReproduceReport()
    for group in selected:
        for key, expected, compute in CHECK_GROUPS[group](config):
            with timed(f"{group}/{key}") as timing:
                actual = compute()
            report.checks.append(
                CheckResult(group=group, key=key, passed=actual == expected, expected=expected, actual=actual, seconds=timing["seconds"])
            )
        logging.info(f"check group {group} finished")
    return report
