"""Numerical tolerances shared by all modules.

Every zero test in the package is relative; the defaults below are the
documented values and can be overridden per call or, for ``eps_rel``,
through the ``QCONTACT_EPS_REL`` environment variable.
"""
from __future__ import annotations

import os
from dataclasses import asdict, dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    # zero tests on invariants and smallness boundaries
    eps_rel: float = 1e-9
    # relative uncertainty of each pencil coefficient, carried into the
    # discriminant sign bands
    tau_disc: float = 1e-12
    # sign and structural-zero band of pencil coefficients; the same
    # uncertainty model as tau_disc
    tau_coeff: float = 1e-12
    # max |R^T R - I| accepted for rigid motions
    orth: float = 1e-9
    # multiplicity clustering radius for numeric roots (balanced scale)
    root_cluster: float = 1e-5

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not value > 0:
                raise ValueError(f"tolerance {name} must be positive, got {value!r}")

    def scaled(self, factor: float) -> "Tolerances":
        """Scale the discriminant and coefficient bands by ``factor``."""
        return replace(self, tau_disc=self.tau_disc * factor, tau_coeff=self.tau_coeff * factor)

    def as_dict(self) -> dict:
        return asdict(self)


def from_env(base: Tolerances | None = None) -> Tolerances:
    base = base or Tolerances()
    raw = os.environ.get("QCONTACT_EPS_REL")
    if raw is None:
        return base
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"QCONTACT_EPS_REL: not a number: {raw!r}") from None
    return replace(base, eps_rel=value)


DEFAULT_TOL = Tolerances()
