"""Descendent tropical Gromov-Witten invariants of the projective plane.

The pipeline: exact-rational point arrangements (:mod:`tropgw.geometry`),
scattering diagrams (:mod:`tropgw.scattering`), broken lines and
Landau-Ginzburg potentials (:mod:`tropgw.brokenlines`), the truncated
coefficient ring (:mod:`tropgw.coeffring`), descendent invariants and
generating series (:mod:`tropgw.invariants`), all checked against an
independent classical Gromov-Witten oracle (:mod:`tropgw.oracle`).
"""

from .geometry import (Arrangement, GeneralityError, GenerationError,
                       generality_check, generate_arrangement)
from .coeffring import PreconditionError, RingConfig, Series, o_hat, t_hat
from .scattering import (Diagram, DiagramError, Wall, build_diagram,
                         check_loop_identity, initial_rays, scatter_unmarked)
from .brokenlines import (BrokenLine, broken_line_terms,
                          enumerate_broken_lines, exp_potential_triples,
                          potential_W_k0, potential_W_kmbar)
from .invariants import (DescendentKey, InvariantContext, TropResult,
                         check_tropfun, classical_insertions,
                         compatible_keys, generating_L, invariant_table,
                         t_trop, tropical_invariant)
from .oracle import (classical_invariant, kontsevich_N, wdvv_check,
                     harmonic_identity, binomial_collapse_check, MirrorCaps,
                     mirror_K, big_T, big_J, j_function, j_function_axiom,
                     grading_check, euler_identity_check)

__version__ = "0.1.0"

__all__ = [
    "Arrangement", "GeneralityError", "GenerationError", "generality_check",
    "generate_arrangement", "PreconditionError", "RingConfig", "Series",
    "o_hat", "t_hat", "Diagram", "DiagramError", "Wall", "build_diagram",
    "check_loop_identity", "initial_rays", "scatter_unmarked", "BrokenLine",
    "broken_line_terms", "enumerate_broken_lines", "exp_potential_triples",
    "potential_W_k0", "potential_W_kmbar", "DescendentKey",
    "InvariantContext", "TropResult", "check_tropfun",
    "classical_insertions", "compatible_keys", "generating_L",
    "invariant_table", "t_trop", "tropical_invariant", "classical_invariant",
    "kontsevich_N", "wdvv_check", "harmonic_identity",
    "binomial_collapse_check", "MirrorCaps", "mirror_K", "big_T", "big_J",
    "j_function", "j_function_axiom", "grading_check",
    "euler_identity_check", "__version__",
]
