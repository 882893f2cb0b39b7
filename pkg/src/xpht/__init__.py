"""Extended persistent homology transform of binary images.

Shapes come in as padded 0/1 pixel grids, leave as per-direction extended
persistence diagrams computed from the oriented boundary curves, and compare
through Wasserstein/bottleneck distances integrated over the direction grid.
"""
from .boundary import (BoundaryCurve, EXTERIOR, INTERIOR, classify_curves,
                       signed_area, trace_curves, traced_boundary)
from .diagram import (CurvePersistence, ExtendedDiagram, ExtParam, FinitePair,
                      Interval, ORD, REL, ess_interval, intervals_allclose,
                      ord_interval, rel_interval)
from .extended import (MINUS, PLUS, classify_critical, curve_ph0, diameter,
                       dual_diagram, height, perp, tie_break_key,
                       xph_from_boundary)
from .image import BinaryImage, ImageFormatError, label_components, load_image
from .mds import classical_mds
from .metric import (eph_cost, ext_param_dist, interval_dist, wasserstein,
                     wasserstein_type, xpht_distance)
from .oracle import (brute_force_wasserstein, compute_xpht_reduction,
                     extended_persistence_reduction, ph0_reduction,
                     theorem_4_7_check, triangulate_region)
from .transform import Xpht, center, compute_xpht, directions

__version__ = "0.1.0"

__all__ = [
    "BinaryImage", "BoundaryCurve", "CurvePersistence", "ExtParam",
    "ExtendedDiagram", "FinitePair", "ImageFormatError", "Interval",
    "EXTERIOR", "INTERIOR", "MINUS", "ORD", "PLUS", "REL", "Xpht",
    "brute_force_wasserstein", "center", "classical_mds", "classify_critical",
    "classify_curves", "compute_xpht", "compute_xpht_reduction", "curve_ph0",
    "diameter", "directions", "dual_diagram", "eph_cost",
    "ess_interval", "ext_param_dist", "extended_persistence_reduction",
    "height", "intervals_allclose", "interval_dist", "label_components",
    "load_image", "ord_interval", "perp", "ph0_reduction", "rel_interval",
    "signed_area", "theorem_4_7_check", "tie_break_key", "trace_curves",
    "traced_boundary", "triangulate_region", "wasserstein", "wasserstein_type",
    "xph_from_boundary", "xpht_distance",
]
