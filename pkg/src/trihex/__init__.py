"""Exact arithmetic in standard and balanced base-m digit systems, and the
Sierpinski-type plane fractals carved out by digitwise sum conditions."""

__version__ = "0.1.0"

from .dimension import (
    DimensionReport,
    box_count_estimate,
    closed_form_dim,
    dim_limit_table,
    lebesgue_measure,
    report_to_json,
)
from .errors import DomainError, ResourceError
from .fractal import (
    DEFAULT_MAX_SQUARES,
    GeneratorLattice,
    GridSquare,
    MembershipAutomaton,
    Prefractal,
    covers_point,
    equivalence_check,
    ifs_prefractal,
    index_bounds,
    iterate,
    lattice,
    lattice_cardinality,
    member,
    prefractal_by_digits,
    prefractal_from_json,
    prefractal_to_json,
    unit_square,
)
from .radix import (
    DigitString,
    DigitSystem,
    ValueInterval,
    add,
    carry_free,
    digits_to_rational,
    expansions,
    format_numeral,
    frac_digit_choices,
    int_to_digits,
    parse_numeral,
)
from .render import RasterSpec, rasterize, write_pbm, write_svg

__all__ = [
    "DEFAULT_MAX_SQUARES",
    "DigitString",
    "DigitSystem",
    "DimensionReport",
    "DomainError",
    "GeneratorLattice",
    "GridSquare",
    "MembershipAutomaton",
    "Prefractal",
    "RasterSpec",
    "ResourceError",
    "ValueInterval",
    "add",
    "box_count_estimate",
    "carry_free",
    "closed_form_dim",
    "covers_point",
    "digits_to_rational",
    "dim_limit_table",
    "equivalence_check",
    "expansions",
    "format_numeral",
    "frac_digit_choices",
    "ifs_prefractal",
    "index_bounds",
    "int_to_digits",
    "iterate",
    "lattice",
    "lattice_cardinality",
    "lebesgue_measure",
    "member",
    "parse_numeral",
    "prefractal_by_digits",
    "prefractal_from_json",
    "prefractal_to_json",
    "rasterize",
    "report_to_json",
    "unit_square",
    "write_pbm",
    "write_svg",
]
