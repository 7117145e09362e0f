"""Configuration management for the toric invariants toolkit."""

import os
from enum import Enum
from typing import Any, Mapping, Optional

from pydantic import BaseModel, Field


class BettiMethod(Enum):
    """Computation paths for bigraded Betti numbers."""

    KOSZUL = "koszul"
    HOCHSTER = "hochster"
    BOTH = "both"


class ArrangementKind(Enum):
    """Subspace arrangement complements the toolkit can describe."""

    COORD = "coord"
    REAL = "real"
    DIAG = "diag"


class OutputFormat(Enum):
    """Rendering formats for command output."""

    JSON = "json"
    TEXT = "text"


class Configuration(BaseModel):
    """Main configuration class for the toolkit and its CLI."""

    # Computation
    betti_method: BettiMethod = Field(
        default=BettiMethod.KOSZUL,
        metadata={
            "x_cli_config": {
                "type": "select",
                "default": "koszul",
                "description": "Which path computes bigraded Betti numbers. 'both' runs the Koszul strands and Hochster's formula and compares them",
                "options": [
                    {"label": "Koszul complex A*(K)", "value": BettiMethod.KOSZUL.value},
                    {"label": "Hochster's formula", "value": BettiMethod.HOCHSTER.value},
                    {"label": "Both, cross-checked", "value": BettiMethod.BOTH.value},
                ]
            }
        }
    )
    arrangement_kind: ArrangementKind = Field(
        default=ArrangementKind.COORD,
        metadata={
            "x_cli_config": {
                "type": "select",
                "default": "coord",
                "description": "Which complement to report for an arrangement document",
                "options": [
                    {"label": "Complex coordinate arrangement", "value": ArrangementKind.COORD.value},
                    {"label": "Real coordinate arrangement", "value": ArrangementKind.REAL.value},
                    {"label": "Real diagonal arrangement", "value": ArrangementKind.DIAG.value},
                ]
            }
        }
    )
    max_concurrent_strands: int = Field(
        default=1,
        metadata={
            "x_cli_config": {
                "type": "slider",
                "default": 1,
                "min": 1,
                "max": 32,
                "step": 1,
                "description": "Maximum number of strands, vertex subsets or facets processed concurrently."
            }
        }
    )
    generic_search_radius: int = Field(
        default=8,
        metadata={
            "x_cli_config": {
                "type": "number",
                "default": 8,
                "min": 1,
                "max": 64,
                "description": "Largest coordinate radius tried when searching for a generic vector"
            }
        }
    )
    forms_degree_bound: Optional[int] = Field(
        default=None,
        optional=True,
        metadata={
            "x_cli_config": {
                "type": "number",
                "description": "Largest second degree p computed for Tor against linear forms. Defaults to the vertex count m"
            }
        }
    )
    check_pairing: bool = Field(
        default=True,
        metadata={
            "x_cli_config": {
                "type": "boolean",
                "default": True,
                "description": "Whether duality checks also verify the cup-product pairing into the fundamental class"
            }
        }
    )
    # Reproduction suite
    random_complex_count: int = Field(
        default=100,
        metadata={
            "x_cli_config": {
                "type": "number",
                "default": 100,
                "min": 0,
                "max": 10000,
                "description": "Number of pseudo-random complexes in the oracle-equivalence battery"
            }
        }
    )
    random_complex_seed: int = Field(
        default=20240607,
        metadata={
            "x_cli_config": {
                "type": "number",
                "default": 20240607,
                "description": "Seed for the pseudo-random complex generator"
            }
        }
    )
    random_complex_max_vertices: int = Field(
        default=7,
        metadata={
            "x_cli_config": {
                "type": "number",
                "default": 7,
                "min": 2,
                "max": 10,
                "description": "Largest vertex count of a pseudo-random complex"
            }
        }
    )
    # Output
    output_format: OutputFormat = Field(
        default=OutputFormat.TEXT,
        metadata={
            "x_cli_config": {
                "type": "select",
                "default": "text",
                "description": "Render results as canonical JSON or as rich text tables",
                "options": [
                    {"label": "JSON", "value": OutputFormat.JSON.value},
                    {"label": "Text", "value": OutputFormat.TEXT.value},
                ]
            }
        }
    )
    log_level: str = Field(
        default="WARNING",
        metadata={
            "x_cli_config": {
                "type": "text",
                "default": "WARNING",
                "description": "Logging level for the rich log handler"
            }
        }
    )

    @classmethod
    def from_overrides(
        cls, overrides: Optional[Mapping[str, Any]] = None
    ) -> "Configuration":
        """Create a Configuration from explicit overrides and the environment.

        Environment variables named after the upper-cased field take
        precedence over the overrides, matching how deployments pin values.
        """
        configurable = dict(overrides or {})
        field_names = list(cls.model_fields.keys())
        values: dict[str, Any] = {
            field_name: os.environ.get(field_name.upper(), configurable.get(field_name))
            for field_name in field_names
        }
        return cls(**{k: v for k, v in values.items() if v is not None})
