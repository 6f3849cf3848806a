"""Rotor-routing on strongly connected multidigraphs, with the exact integer
algebra (period vector, arborescence counts, Smith form, Picard group) that
predicts orbit lengths and orbit counts."""

from .algebra import (
    PicardSummary,
    SmithDecomposition,
    arborescence_count,
    det_exact,
    pham_index,
    period_vector,
    picard_summary,
    smith_normal_form,
)
from .divisors import (
    apply_firing,
    canonical_form,
    enumerate_w_reduced,
    equivalent,
    is_w_reduced,
)
from .graph import (
    FIXTURES,
    G1,
    G2,
    G3,
    G4,
    Digraph,
    GraphError,
    generate,
    laplacian,
    parse_digraph,
    rotate,
    serialize_digraph,
)
from .rotor import (
    ChipRotorState,
    OrbitSummary,
    arborescence_to_unicycle,
    classify_by_simulation,
    enumerate_arborescences,
    enumerate_unicycles,
    is_unicycle,
    orbit_partition,
    run_period,
    step,
    unicycle_to_arborescence,
)

__version__ = "0.1.0"
