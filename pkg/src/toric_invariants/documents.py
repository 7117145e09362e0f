"""Document schemas, result tables and report records."""

import json
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from sympy import Poly, Symbol

from toric_invariants.exceptions import DocumentError
from toric_invariants.simplicial import SimplicialComplex, build_complex

_t = Symbol("t")


###################
# Graded data
###################
class GradedPolynomial(BaseModel):
    """Integer polynomial stored by exponent of its variable.

    With ``variable="t2"`` the k-th coefficient multiplies t^(2k); with
    ``variable="y"`` it multiplies y^k.
    """

    model_config = ConfigDict(frozen=True)

    coefficients: tuple[int, ...] = Field(description="Coefficients by exponent, lowest first, trailing zeros trimmed")
    variable: str = Field(default="t2", description="Either 't2' or 'y'")

    @field_validator("coefficients")
    @classmethod
    def _trim(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        coefficients = [int(c) for c in value]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        return tuple(coefficients)

    @classmethod
    def from_poly(cls, poly: Poly, variable: str = "t2") -> "GradedPolynomial":
        return cls(coefficients=tuple(int(c) for c in reversed(poly.all_coeffs())), variable=variable)

    @classmethod
    def one_minus_power(cls, exponent: int, variable: str = "t2") -> "GradedPolynomial":
        """(1 - x)^exponent."""
        return cls.from_poly(Poly((1 - _t) ** exponent, _t), variable)

    def to_poly(self) -> Poly:
        if not self.coefficients:
            return Poly(0, _t)
        return Poly(list(reversed(self.coefficients)), _t)

    def _check(self, other: "GradedPolynomial") -> None:
        if other.variable != self.variable:
            raise ValueError(f"Cannot combine polynomials in {self.variable} and {other.variable}")

    def __add__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        self._check(other)
        return GradedPolynomial.from_poly(self.to_poly() + other.to_poly(), self.variable)

    def __sub__(self, other: "GradedPolynomial") -> "GradedPolynomial":
        self._check(other)
        return GradedPolynomial.from_poly(self.to_poly() - other.to_poly(), self.variable)

    def __mul__(self, other: Union["GradedPolynomial", int]) -> "GradedPolynomial":
        if isinstance(other, int):
            return GradedPolynomial(coefficients=tuple(other * c for c in self.coefficients), variable=self.variable)
        self._check(other)
        return GradedPolynomial.from_poly(self.to_poly() * other.to_poly(), self.variable)

    def coefficient(self, exponent: int) -> int:
        """Coefficient of x^exponent, where x is t^2 or y."""
        if 0 <= exponent < len(self.coefficients):
            return self.coefficients[exponent]
        return 0

    def evaluate(self, value: int) -> int:
        """Value at x = value, where x is t^2 or y."""
        return sum(c * value**k for k, c in enumerate(self.coefficients))

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if self.variable == "t2":
                power = "" if k == 0 else ("t^2" if k == 1 else f"t^{2 * k}")
            else:
                power = "" if k == 0 else ("y" if k == 1 else f"y^{k}")
            magnitude = abs(c)
            body = f"{magnitude}" if not power else (power if magnitude == 1 else f"{magnitude}{power}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


class BettiEntry(BaseModel):
    """One nonzero entry b_{-i,2j}."""

    model_config = ConfigDict(frozen=True)

    i: int = Field(ge=0, description="Homological degree, the table column is -i")
    j: int = Field(ge=0, description="Half of the internal degree, the table row is 2j")
    rank: int = Field(gt=0, description="Rank over the rationals")


class BigradedBettiTable(BaseModel):
    """Nonzero ranks b_{-i,2j} indexed by (i, j)."""

    model_config = ConfigDict(frozen=True)

    m: int
    n: int
    entries: tuple[BettiEntry, ...] = Field(default=(), description="Nonzero entries sorted by (j, i)")

    @classmethod
    def from_ranks(cls, m: int, n: int, ranks: Mapping[tuple[int, int], int]) -> "BigradedBettiTable":
        entries = tuple(
            BettiEntry(i=i, j=j, rank=r) for (i, j), r in sorted(ranks.items(), key=lambda kv: (kv[0][1], kv[0][0])) if r
        )
        return cls(m=m, n=n, entries=entries)

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {(e.i, e.j): e.rank for e in self.entries}

    def rank(self, i: int, j: int) -> int:
        return self.as_dict().get((i, j), 0)

    @property
    def max_j(self) -> int:
        return max((e.j for e in self.entries), default=0)

    @property
    def max_i(self) -> int:
        return max((e.i for e in self.entries), default=0)

    def strand_euler(self, j: int) -> int:
        """Alternating sum over the row 2j."""
        return sum((-1) ** e.i * e.rank for e in self.entries if e.j == j)

    def total_degrees(self) -> tuple[int, ...]:
        """dim H^k with k = 2j - i, for k = 0 .. top."""
        top = max((2 * e.j - e.i for e in self.entries), default=0)
        out = [0] * (top + 1)
        for e in self.entries:
            out[2 * e.j - e.i] += e.rank
        return tuple(out)

    def real_degrees(self) -> tuple[int, ...]:
        """dim H^p with p = j - i, for p = 0 .. top."""
        top = max((e.j - e.i for e in self.entries), default=0)
        out = [0] * (top + 1)
        for e in self.entries:
            out[e.j - e.i] += e.rank
        return tuple(out)

    def mismatches(self, other: "BigradedBettiTable") -> list[tuple[int, int, int, int]]:
        """Entries (i, j, mine, theirs) where two tables disagree."""
        mine, theirs = self.as_dict(), other.as_dict()
        return [(i, j, mine.get((i, j), 0), theirs.get((i, j), 0)) for (i, j) in sorted(set(mine) | set(theirs)) if mine.get((i, j), 0) != theirs.get((i, j), 0)]

    def grid(self) -> tuple[list[int], list[int], list[list[int]]]:
        """Second-quadrant layout: columns -i (leftmost most negative), rows 2j from the top down."""
        columns = list(range(-self.max_i, 1))
        rows = list(range(2 * self.max_j, -1, -2))
        lookup = self.as_dict()
        cells = [[lookup.get((-c, r // 2), 0) for c in columns] for r in rows]
        return columns, rows, cells


###################
# Report records
###################
class DehnSommervilleDefect(BaseModel):
    defect: list[int] = Field(description="h_{n-i} - h_i for i = 0..n")
    predicted: list[int] = Field(description="(-1)^i (chi(K) - chi(S^{n-1})) C(n, i) for i = 0..n")
    euler_characteristic: Optional[int] = Field(default=None, description="chi(K) when a complex was given")

    @property
    def matches_prediction(self) -> bool:
        return self.defect == self.predicted

    @property
    def is_zero(self) -> bool:
        return not any(self.defect)


class MVectorVerdict(BaseModel):
    is_m_vector: bool
    failing_index: Optional[int] = Field(default=None, description="First index where the Macaulay bound or k_0 = 1 fails")


class GTheoremVerdict(BaseModel):
    """The three conditions of the g-theorem applied to an h-vector."""

    symmetric: bool = Field(description="h_i = h_{n-i} for all i")
    symmetry_failures: list[int] = Field(default_factory=list)
    nonnegative: bool = Field(description="g_i >= 0 up to half dimension and every h_i >= 0")
    nonnegativity_failures: list[int] = Field(default_factory=list)
    g_is_m_vector: bool
    m_vector_failure: Optional[int] = None

    @property
    def passes(self) -> bool:
        return self.symmetric and self.nonnegative and self.g_is_m_vector


class UpperBoundReport(BaseModel):
    holds: bool
    failing_indices: list[int] = Field(default_factory=list)
    equalities: list[bool] = Field(description="h_i == C(m-n+i-1, i) for i = 0..n/2")
    equal_through: int = Field(description="Largest q with equality for every i <= q")


class PoincareSeries(BaseModel):
    numerator: GradedPolynomial
    denominator_exponent: int = Field(description="Power of (1 - t^2) in the denominator")


class CMGorensteinVerdict(BaseModel):
    cohen_macaulay: bool
    gorenstein_star: bool
    cm_failure: Optional[list[int]] = Field(default=None, description="First face whose link breaks Reisner's condition")
    gorenstein_failure: Optional[list[int]] = Field(default=None, description="First face whose link lacks sphere homology, or the core condition")


class PairingRank(BaseModel):
    bidegree: tuple[int, int]
    dual_bidegree: tuple[int, int]
    dimension: int
    rank: int


class DualityReport(BaseModel):
    symmetric: bool
    asymmetric_entries: list[tuple[int, int]] = Field(default_factory=list)
    fundamental_bidegree: tuple[int, int]
    fundamental_classes_agree: Optional[bool] = None
    pairings: list[PairingRank] = Field(default_factory=list)

    @property
    def pairing_nondegenerate(self) -> bool:
        return all(p.rank == p.dimension for p in self.pairings)

    @property
    def passes(self) -> bool:
        return self.symmetric and self.fundamental_classes_agree is not False and self.pairing_nondegenerate


class GLBTBridge(BaseModel):
    h_differences: list[int] = Field(description="(h_2 - h_1, h_3 - h_2)")
    betti_differences: list[int] = Field(description="The same quantities from bigraded Betti numbers")

    @property
    def consistent(self) -> bool:
        return self.h_differences == self.betti_differences


class VertexGenusData(BaseModel):
    facet: tuple[int, ...] = Field(description="Facet of the sphere in orientation order")
    sigma: int
    edge_matrix: list[list[int]] = Field(description="M_(v); column k is the k-th edge vector")
    index: Optional[int] = Field(default=None, description="Number of edge vectors pairing negatively with nu")


class GenusReport(BaseModel):
    nu: tuple[int, ...]
    vertices: list[VertexGenusData]
    chi_y: GradedPolynomial
    signature: int
    todd: int
    top_chern: int


class FreenessVerdict(BaseModel):
    free: bool
    failing_facet: Optional[tuple[int, ...]] = None
    invariants: Optional[tuple[int, ...]] = Field(default=None, description="Smith invariants at the failing facet")
    reason: str = ""


class TorusRankBounds(BaseModel):
    diagonal_lower: int = 1
    colouring_lower: int
    greedy_colours: int
    upper: int


class CheckResult(BaseModel):
    group: str
    key: str
    passed: bool
    expected: Any = None
    actual: Any = None
    seconds: float = 0.0


class ReproduceReport(BaseModel):
    checks: list[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]


###################
# Input documents
###################
def _check_labels(m: int, sets: Iterable[Sequence[int]], what: str) -> None:
    for s in sets:
        for v in s:
            if not 1 <= v <= m:
                raise ValueError(f"{what} {list(s)} uses vertex {v}, outside 1..{m}")


class ComplexDocument(BaseModel):
    """{"m": int, "facets": [[int, ...], ...], "name": str}."""

    m: int = Field(ge=0, description="Vertex count; vertices are labelled 1..m")
    facets: list[list[int]] = Field(description="Generating faces; closure is taken on load")
    name: Optional[str] = Field(default=None, description="Display name")
    note: Optional[str] = Field(default=None, description="Provenance note")

    @model_validator(mode="after")
    def _labels_in_range(self) -> "ComplexDocument":
        _check_labels(self.m, self.facets, "facet")
        return self

    def to_complex(self) -> SimplicialComplex:
        return build_complex(self.m, self.facets, name=self.name)


class PairDocument(BaseModel):
    """{"complex": {...}, "lambda": [[int, ...], ...], "orientation": [[...], ...]}."""

    model_config = ConfigDict(populate_by_name=True)

    complex: ComplexDocument
    lambda_: list[list[int]] = Field(alias="lambda", description="n x m characteristic matrix, column i is lambda_i")
    orientation: Optional[list[list[int]]] = Field(default=None, description="Ordered vertex tuple per facet")
    name: Optional[str] = None
    note: Optional[str] = None


class ArrangementDocument(BaseModel):
    """{"m": int, "generators": [[int, ...], ...]}."""

    m: int = Field(ge=0)
    generators: list[list[int]] = Field(description="Subsets I, each naming the subspace z_i = 0 for i in I")
    name: Optional[str] = None
    note: Optional[str] = None

    @model_validator(mode="after")
    def _labels_in_range(self) -> "ArrangementDocument":
        _check_labels(self.m, self.generators, "generator")
        return self


Document = Union[ComplexDocument, PairDocument, ArrangementDocument]


def parse_document(data: Any, path: Optional[str] = None) -> Document:
    """Pick the schema from the keys present and validate."""
    if not isinstance(data, dict):
        raise DocumentError("Expected a JSON object at the top level", path=path)
    if "lambda" in data:
        schema: type[BaseModel] = PairDocument
    elif "generators" in data:
        schema = ArrangementDocument
    elif "facets" in data:
        schema = ComplexDocument
    else:
        raise DocumentError(
            "Unrecognised document: expected a 'facets' (complex), 'lambda' (pair) or 'generators' (arrangement) key",
            path=path,
        )
    try:
        return schema.model_validate(data)  # type: ignore[return-value]
    except ValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"]) or "<root>"
        raise DocumentError(f"{schema.__name__} field '{location}': {first['msg']}", path=path) from e


def load_document(path: Union[str, Path]) -> Document:
    """Read and validate a JSON document; parse errors keep their line and column."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise DocumentError(f"Cannot read document: {e.strerror}", path=str(path)) from e
    except UnicodeDecodeError as e:
        raise DocumentError(f"Document is not valid UTF-8: {e.reason} at byte {e.start}", path=str(path)) from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(e.msg, path=str(path), line=e.lineno, column=e.colno) from e
    return parse_document(data, path=str(path))
