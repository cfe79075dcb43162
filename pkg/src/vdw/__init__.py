"""Van der Waerden complexes, their discrete Morse matchings, and an integral homology oracle."""

from .complex import (
    BOTTOM,
    ApFacet,
    FaceSet,
    d_set,
    decompose,
    enumerate_faces,
    euler_characteristic,
    facets,
    fiber_key,
    gcdtr,
    is_face,
    step_set,
)
from .gamma import gamma, match_gamma, mobius_via_gamma, squarefree_critical_cell
from .homology import boundary_matrix, reduced_homology, smith_normal_form, wedge_signature
from .morse import (
    MorseMatching,
    build_contractible_matching,
    build_example_matching,
    build_theorem_main_matching,
    critical_cells,
    lcm_toggle_step,
    morse_inequalities_check,
    patchwork,
    verify_matching,
)
from .numtheory import (
    bound_certificate,
    contractible_by_theorem,
    mobius,
    primorial,
    r_of_k,
    radical,
)

__version__ = "0.1.0"
