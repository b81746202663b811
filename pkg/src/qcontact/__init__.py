"""Contact and relative position of an ellipsoid and a quadric from the
characteristic polynomial of their pencil."""
from .classifier import (ContactReport, Discriminants, Position, Region, discriminants,
                         is_transversal_contact, relative_position)
from .ellipsoid import Ellipsoid, ellipsoid_from_quadric
from .errors import (AllZeroError, BadOrderingError, DegenerateError, InvalidMotionError,
                     LeadingZeroError, NoMatchingZoneError, NotAnEllipsoidError, NotAPlaneError,
                     NumericalError, PatternMismatchError, QContactError, SmallnessViolatedError,
                     UnsupportedClassError)
from .invariants import (InvariantSet, QuadricClass, ReducedForm, classify, eigenvalues_sym3,
                         invariant_set, reduced_form)
from .oracle import RootSet, SampleResult, quartic_roots, sample_intersection
from .pencil import QuarticPoly, Sign, char_poly, eval_quartic
from .plane import Plane, plane_contact, side_of_plane
from .quadric import Quadric, RigidMotion, evaluate, quadric_from_coefficients, sphere, transform
from .scene import Scene, SceneReport, Zone, detect_contact, detect_zone
from .smallness import SmallnessCheck, SmallnessVerdict, is_small, is_small_standard
from .tolerances import DEFAULT_TOL, Tolerances

__version__ = "0.1.0"


def clear_caches() -> None:
    """Drop memoized invariants, canonical frames and smallness verdicts."""
    from . import invariants, oracle, scene, smallness

    for fn in (invariants.invariant_set, invariants._canonical, smallness._small_cached,
               scene._scene_smallness, oracle.surface_grid):
        fn.cache_clear()


__all__ = [name for name in dir() if not name.startswith("_")]
