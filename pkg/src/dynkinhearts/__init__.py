"""Exact computations on Dynkin quivers: hearts, tilting, exchange graphs,
HN strata, stability functions and quantum-dilogarithm DT invariants."""

from .quiver import build_quiver, coxeter_number, euler_form, positive_roots
from .zq import IndecObject, build_zq, hom_derived
from .hearts import (
    Heart,
    backward_tilt,
    forward_tilt,
    heart_leq,
    in_tstructure,
    initial_heart,
    is_standard,
    standardize,
    width,
)
from .exchange import (
    cy_quotient,
    directed_paths,
    distance_diameter,
    enumerate_interval,
    export_graph,
    faces,
    h1_of_complex,
    import_graph,
)
from .stability import (
    StabilityFunction,
    induced_stratum,
    is_semistable,
    is_stable,
    is_totally_stable,
    phase_cmp,
    search_inducing,
    validate_stratum_by_filtration,
    validate_stratum_by_path,
)
from .qdilog import (
    QuantumContext,
    QSeries,
    dt_between,
    dt_invariant,
    dt_path,
    ls_identity_check,
    pentagon_check,
    qexp,
    square_check,
    verify_path_independence,
    wall_crossing_check,
)
from .hall import enumerate_modules, hall_number, aut_count, verify_reineke

__version__ = "0.1.0"
