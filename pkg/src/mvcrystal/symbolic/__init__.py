"""Exact computer-algebra kernel over Q: polynomials, Groebner bases, rational functions, matrices."""

from .groebner import (
    GenerationWitness,
    Ideal,
    LocalGenerationResult,
    buchberger,
    clear_memo,
    gb_step_budget,
    groebner,
    ideal_intersection,
    ideal_quotient,
    is_groebner,
    local_generation_test,
    normal_form,
)
from .matrix import LinearSolution, PolyMatrix, linsolve_ratfunc, matrix_from_strings, verify_solution
from .parse import parse_ideal, parse_poly, parse_polys
from .polys import (
    MPoly,
    PolyRing,
    degrevlex_key,
    divmod_poly,
    elimination_key,
    exact_divide,
    grlex_key,
    lex_key,
    order_key,
)
from .ratfunc import DualNumber, RatFunc, poly_gcd

__all__ = [
    "DualNumber", "GenerationWitness", "Ideal", "LinearSolution", "LocalGenerationResult", "MPoly",
    "PolyMatrix", "PolyRing", "RatFunc", "buchberger", "clear_memo", "degrevlex_key", "divmod_poly",
    "elimination_key", "exact_divide", "gb_step_budget", "grlex_key", "groebner", "ideal_intersection",
    "ideal_quotient", "is_groebner", "lex_key", "linsolve_ratfunc", "local_generation_test",
    "matrix_from_strings", "normal_form", "order_key", "parse_ideal", "parse_poly", "parse_polys",
    "poly_gcd", "verify_solution",
]
