"""
Collapse of a representation along the fiber measure at the base point.

ψ(t) is the cumulative of the base fiber measure, a monotone degree-one map that
collapses the arcs the measure does not charge. The collapsed action ρ' satisfies
ρ'(γ)∘ψ = ψ∘ρ(γ).
"""



from __future__ import annotations

import numpy as np

from ..circle_dynamics import (
    ConjugateCircleLift, PLCircleLift, Representation)
from ..constants import TWO_PI, setting
from ..utils.errors import AtomicMeasureError, NonMonotoneLift
from .field import FiberMeasureField, measure_at



class SemiconjugacyResult:
    """
    Attributes:
    -----------
        psi : PLCircleLift
            ψ, with ψ(0) = 0.
        rep_prime : Representation | None
            ρ', or None when ψ collapses arcs that ρ does not preserve.
        support_deficiency : float
            Total length of the arcs collapsed by ψ.
        equivariance_residual : float
            sup |ψ(ρ(γ)x) - ρ'(γ)(ψ(x))| over generators and sample angles (circle distance).
        advisories : list[str]
    """
    def __init__(self, psi: PLCircleLift, rep_prime: Representation | None, support_deficiency: float,
                 equivariance_residual: float, advisories: list[str]):
        self.psi = psi
        self.rep_prime = rep_prime
        self.support_deficiency = support_deficiency
        self.equivariance_residual = equivariance_residual
        self.advisories = advisories

    def to_record(self) -> dict:
        return {
            "support_deficiency": self.support_deficiency,
            "equivariance_residual": self.equivariance_residual,
            "collapsed_kind": self.rep_prime.kind if self.rep_prime is not None else None,
            "advisories": self.advisories,
        }


def cumulative_map(density: np.ndarray) -> PLCircleLift:
    """The degree-one PL map t -> ∫₀ᵗ μ scaled to total 2π, breakpoints at the bin edges."""
    density = np.asarray(density, dtype=float)
    bins = density.size
    masses = density / density.sum() * TWO_PI
    values = np.concatenate([[0.0], np.cumsum(masses[:-1])])
    return PLCircleLift(np.arange(bins) * (TWO_PI / bins), values, strict=bool(np.all(masses > 0.0)))


def _grid_lift(psi: PLCircleLift, f, bins: int) -> PLCircleLift:
    """ρ'(γ) from ρ'(γ)(ψ(x)) = ψ(ρ(γ)x) on the bin edges, keeping the first of any repeated ψ(x)."""
    x = np.arange(bins) * (TWO_PI / bins)
    y = psi(x)
    keep = np.concatenate([[True], np.diff(y) > 1e-14]) & (y < y[0] + TWO_PI - 1e-14)
    return PLCircleLift(y[keep], psi(f(x[keep])))


def collapse_semiconjugacy(field: FiberMeasureField, rep: Representation, base_point: complex=0.0) -> SemiconjugacyResult:
    """
    Params:
    -------
        field : FiberMeasureField
            Field whose fiber measure at `base_point` defines ψ.
        rep : Representation
            The action ρ.

    Raises:
    -------
        AtomicMeasureError
            When one bin carries more than half of the base measure.
    """
    density = np.maximum(measure_at(field, base_point), 0.0)
    share = density.max() / density.sum()
    if share > 0.5:
        raise AtomicMeasureError(f"a single bin carries {share:.0%} of the base measure")

    bins = density.size
    advisories = []
    psi = cumulative_map(density)
    collapsed = float(np.sum(density <= 0.0) * (TWO_PI / bins))

    rep_prime = None
    if psi.strict:
        psi_inv = psi.inverse()
        lifts = {label: ConjugateCircleLift(psi, lift, psi_inv) for label, lift in rep.lifts.items()}
        rep_prime = Representation(rep.group, lifts, "semiconjugated")
    else:
        try:
            lifts = {label: _grid_lift(psi, lift, bins) for label, lift in rep.lifts.items()}
            rep_prime = Representation(rep.group, lifts, "semiconjugated")
        except NonMonotoneLift:
            advisories.append("collapsed arcs are not invariant; ρ' is not a homeomorphism action")

    residual = 0.0
    if rep_prime is not None:
        x = np.linspace(0.0, TWO_PI, setting("circle", "sample_angles", 256), endpoint=False)
        for label, lift in rep.lifts.items():
            d = psi(lift(x)) - rep_prime.letter(label)(psi(x))
            d = np.mod(d + np.pi, TWO_PI) - np.pi
            residual = max(residual, float(np.max(np.abs(d))))

    return SemiconjugacyResult(psi, rep_prime, collapsed, residual, advisories)
