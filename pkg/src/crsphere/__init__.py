"""Exact sphericality checker for real analytic hypersurfaces in C^2.

The package decides, to a chosen truncation order, whether a Levi
nondegenerate hypersurface given by a complex defining equation
``w = Theta(z, zb, wb)`` is spherical, by testing the vanishing of an
explicit sixth-order polynomial differential expression in the jet of
``Theta`` -- together with the supporting calculus: exact truncated
series arithmetic over Gaussian rationals, real-to-complex conversion,
parameter elimination to a second-order ODE, Tresse invariants, the
jet-transfer formulas, a rigid-case shortcut and duality cross-checks.
"""

from .defining import (
    Biholo,
    ComplexDefining,
    RealGraph,
    detect_rigid,
    levi_delta,
    rigid_part,
    to_complex_defining,
    transform_defining,
    verify_reality,
)
from .errors import (
    ArityError,
    CompositionError,
    CrsError,
    DegenerateError,
    ExprSyntaxError,
    InternalCheckError,
    NonUnitError,
    NotSolvableError,
    RealityError,
)
from .invariants import (
    InvariantPair,
    KoppischReport,
    aj4,
    aj6,
    koppisch_check,
    rigid_invariant,
    sphericality_verdict,
    tresse_invariants,
)
from .parsing import parse_series, render_series
from .rational import GaussRat
from .report import Report, render_report
from .series import TruncSeries
from .solve import implicit_solve
from .transfer import (
    OdeRhs,
    SolutionManifold,
    TransferOps,
    apply_dx,
    apply_dy,
    apply_dyx,
    associated_ode,
    dual_manifold,
    first_jet_transfer,
    second_jet_transfer,
    solve_parameters,
    third_jet_check,
    third_jet_expanded,
    total_deriv_check,
)

__version__ = "0.1.0"
