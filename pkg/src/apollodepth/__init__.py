"""Apollonian depth workbench.

Exact and floating-point depth dynamics for tricycles of tangent disks,
the plateau conics of the resulting fractal, the Stern-Brocot corona
structure of their tangency points, and raster chart rendering.
"""

from .exactnum import QuadValue, Rational, exact_sqrt, parse_rational
from .descartes import (
    DEFAULT_CAP,
    DepthResult,
    barycentric,
    completions,
    depth,
    depth_exact,
    depth_float,
    depth_scaled,
    golden_point,
    golden_seed,
    major_curvature,
    reduce_to_moduli,
    reflect,
)
from .conics import (
    ArrangementSpec,
    Conic,
    corona_conic,
    depth2_conic,
    derive_conic,
    interior_point,
    mediant_ellipse,
    parabola_conic,
    parabola_point,
    parabolic_tangency,
    plateau_registry,
    tangency_point,
)
from .sternbrocot import (
    deformed_add,
    diagonal_chain,
    farey_add,
    main_chain,
    parabolic_corona,
    sb_array,
    sb_row_of,
    x_corona,
)
from .charts import (
    ChartSpec,
    Image,
    bitexact_depth,
    area_estimate,
    parabolic_region_area,
    render_chart,
    section_profile,
    write_csv,
    write_ppm,
)
from .dust import apollonian_window_seed, dust_points

__version__ = "0.1.0"
