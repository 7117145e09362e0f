"""Error types raised by the toric invariants toolkit.

Two branches matter to callers: ``InputError`` (bad documents, matrices or
complexes; the CLI exits with code 2) and ``ComputationMismatch`` (two
independent computation paths disagreed; the CLI exits with code 1).
"""

from typing import Optional, Sequence


class ToricInvariantsError(Exception):
    """Base class for every error raised by this package."""


class InputError(ToricInvariantsError):
    """The input violates a precondition of the requested operation."""

    exit_code = 2


class DocumentError(InputError):
    """A JSON document could not be parsed or failed schema validation."""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None, column: Optional[int] = None):
        self.path = path
        self.line = line
        self.column = column
        location = ""
        if path:
            location = f"{path}"
            if line is not None:
                location += f":{line}"
                if column is not None:
                    location += f":{column}"
            location += ": "
        super().__init__(f"{location}{message}")


class VertexRangeError(InputError):
    """A vertex label lies outside 1..m."""


class DimensionError(InputError):
    """Shapes or dimensions of the inputs are incompatible."""


class NotAFaceError(InputError):
    """A subset that was required to be a face of the complex is not one."""


class NotUnimodularError(InputError):
    """A square integer matrix has determinant other than +1 or -1."""


class NotPseudomanifoldError(InputError):
    """The complex is not a pure, strongly connected pseudomanifold."""


class NonOrientableError(InputError):
    """Orientation propagation over the facet graph found a conflict."""


class CharacteristicMatrixError(InputError):
    """A facet minor of the characteristic matrix is not unimodular."""

    def __init__(self, facet: Sequence[int], determinant: int):
        self.facet = tuple(facet)
        self.determinant = determinant
        super().__init__(
            f"Characteristic matrix fails at facet {self.facet}: minor determinant is {determinant}.\n"
            "Every facet of the sphere must select columns with determinant +1 or -1.\n"
            "Check the column order of the matrix against the vertex labels of the complex."
        )


class NonGenericVectorError(InputError):
    """A vector pairs to zero with some edge vector."""


class NotDirectSummandError(InputError):
    """An integer matrix does not span a direct summand of its target lattice."""


class NotACocycleError(InputError):
    """A monomial or combination passed as a cohomology class is not closed."""


class SearchExhaustedError(ToricInvariantsError):
    """A bounded search finished without a result."""


class ComputationMismatch(ToricInvariantsError):
    """Two independent computation paths produced different answers."""

    exit_code = 1
