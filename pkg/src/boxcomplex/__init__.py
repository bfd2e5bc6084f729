"""Box complexes, Lovasz complexes and their Z2-maps for small graphs."""

from .graph_core import Graph, generate, parse_graph6, to_graph6, chromatic_number
from .simplicial import Complex, Label, Shore, VertexMap, Z2Complex
from .complexes import (
    box_complex,
    collapse_sequence,
    doubled_lovasz,
    halved_doubled_lovasz,
    jump_map,
    lovasz_complex,
    lovasz_to_hdl_iso,
    neighborhood_complex,
    phi_map,
    scn2_map,
    ssd_box,
    verify_graph,
)
from .homology import betti_gf2
from .bounds import chromatic_lower_bound, index_interval, klm_check, soundness_sweep

__version__ = "0.1.0"
