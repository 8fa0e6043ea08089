"""Exact bounds and brute-force oracles for connected components of sign
conditions of a polynomial family on a real variety."""

from signbounds.bounds import (
    BoundParams,
    BoundReport,
    DegreeSequence,
    F,
    betti_sum_bound,
    bound_report,
    bpr8_bound,
    bpr_tight_leading,
    chi,
    chi_bound,
    counterexample_degrees_product,
    grassmannian_application_bound,
    main_bound_per_degree,
    main_bound_uniform,
    tightness_lower_bound,
)
from signbounds.exactmath import binomial, prefix_symmetric
from signbounds.polyalg import IsolatedRoot, SparsePolynomial, eval_sign, isolate_roots, merge_roots

__version__ = "0.1.0"
