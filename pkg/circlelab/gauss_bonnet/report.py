"""
This module assembles the Gauss–Bonnet comparison for one field.
It integrates the curvature of the averaged connection, follows the holonomy
along a rising family of horocircles, and sets both against the Euler number.

### Key Features:
- **Closed surfaces**:
    - (1/2π) ∫ K vol is compared with e(ρ) directly.

- **Cusped surfaces**:
    - The truncated integral is compared with e(ρ) within the unmeshed tail.
    - The horocircle holonomies approach -τ(ρ̃(c)), with a gap bounded by
      e^{δ(Y)} - 1 plus the numerical budget.

- **Milnor–Wood sweep**:
    - Seeded random PL representations; each margin |χ| - |e| must be non-negative.
"""



from __future__ import annotations

from typing import Optional

import numpy as np

from ..circle_dynamics import Representation, euler_details, random_pl_representation, translation_number
from ..connection import ConnectionField, build_connection, curvature_summary
from ..constants import setting
from ..harmonic_measure import FiberMeasureField, solve_harmonic_field
from ..hyperbolic_core import HyperbolicMesh, SurfaceGroup, horocircle_family
from ..utils import CheckLog, announce
from ..utils.errors import TranslationNumberNotConverged
from .holonomy import horocircle_holonomy
from .integrate import integrate_curvature



class HolonomyStep:
    """One horocircle of the sequence.

    Attributes:
    -----------
        cusp : int
            Cusp index.
        level : float
            Height Y.
        delta : float
            Displacement of the cusp word along the curve.
        tau_hol : float
            τ of the holonomy.
        target : float
            -τ(ρ̃(c)).
    """
    def __init__(self, cusp: int, level: float, delta: float, tau_hol: float, target: float):
        self.cusp = cusp
        self.level = level
        self.delta = delta
        self.tau_hol = tau_hol
        self.target = target

    @property
    def gap(self) -> float:
        return abs(self.tau_hol - self.target)

    @property
    def bound(self) -> float:
        return float(np.expm1(self.delta))

    def to_record(self) -> dict:
        return {
            "cusp": self.cusp,
            "level": self.level,
            "delta": self.delta,
            "tau_hol": self.tau_hol,
            "target": self.target,
        }


class GaussBonnetReport:
    """
    Attributes:
    -----------
        euler_number : float
            e(ρ).
        integral : float
            (1/2π) Σ K area over the meshed surface.
        tail_bound : float
            Bound on the unmeshed contribution.
        holonomy : list[HolonomyStep]
            Horocircle sequence (empty for closed surfaces).
        milnor_wood_margin : float
            |χ| - |e(ρ)|.
        curvature : dict
            Range of K and the |K| <= 1 check.
        budget : float
            Numerical budget added to every comparison.
    """
    def __init__(self, euler_number: float, integral: float, tail_bound: float, holonomy: list[HolonomyStep],
                 milnor_wood_margin: float, curvature: dict, budget: float):
        self.euler_number = euler_number
        self.integral = integral
        self.tail_bound = tail_bound
        self.holonomy = holonomy
        self.milnor_wood_margin = milnor_wood_margin
        self.curvature = curvature
        self.budget = budget

    @property
    def integral_gap(self) -> float:
        return abs(self.integral - self.euler_number)

    @property
    def integral_passed(self) -> bool:
        return self.integral_gap <= self.tail_bound + self.budget

    @property
    def holonomy_passed(self) -> bool:
        return all(step.gap <= step.bound + self.budget for step in self.holonomy)

    @property
    def gaps_decreasing(self) -> bool:
        """Gaps shrink along the levels of each cusp, up to the numerical budget."""
        for cusp in {step.cusp for step in self.holonomy}:
            gaps = [step.gap for step in self.holonomy if step.cusp == cusp]
            if any(later > earlier + self.budget for earlier, later in zip(gaps, gaps[1:])):
                return False
        return True

    def to_record(self) -> dict:
        return {
            "euler_number": self.euler_number,
            "curvature_integral": self.integral,
            "tail_bound": self.tail_bound,
            "integral_gap": self.integral_gap,
            "milnor_wood_margin": self.milnor_wood_margin,
            "curvature": self.curvature,
            "holonomy": [step.to_record() for step in self.holonomy],
            "passed": self.integral_passed and self.holonomy_passed,
        }


def holonomy_sequence(field: FiberMeasureField, levels=None, samples: int | None=None) -> list[HolonomyStep]:
    """Horocircle holonomies of every cusp at the given levels (those above the mesh cutoff are skipped)."""
    group = field.mesh.group
    levels = setting("gauss_bonnet", "levels", []) if levels is None else levels
    samples = samples or setting("gauss_bonnet", "loop_samples", 256)
    steps = []
    for index, cusp_level in enumerate(field.mesh.cusp_levels):
        usable = [level for level in levels if level <= cusp_level]
        if len(usable) < len(levels):
            announce("gauss_bonnet", f"cusp {index}: {len(levels) - len(usable)} levels above the mesh cutoff skipped")
        target = -translation_number(field.rep.evaluate_word(group.cusps[index].word))
        for horocircle in horocircle_family(group, index, usable):
            steps.append(HolonomyStep(index, horocircle.level, float(horocircle.delta),
                                      horocircle_holonomy(field, horocircle, samples), target))
    return steps


def gauss_bonnet_report(
    field: FiberMeasureField,
    conn: Optional[ConnectionField]=None,
    levels=None,
    log: Optional[CheckLog]=None) -> GaussBonnetReport:
    """
    Compares curvature and holonomy with the Euler number of `field.rep`.

    Params:
    -------
        field : FiberMeasureField
            Field with its representation attached.
        conn : ConnectionField
            Connection of `field`; built when omitted.
        levels : list[float]
            Horocircle heights (cusped surfaces).
        log : CheckLog
            Receives the integral, holonomy, Milnor–Wood and curvature checks.
    """
    conn = conn or build_connection(field)
    group = field.mesh.group
    budget = setting("gauss_bonnet", "numerical_budget", 0.02)
    euler = euler_details(field.rep)
    integral = integrate_curvature(conn)
    steps = [] if group.closed else holonomy_sequence(field, levels)
    margin = abs(group.euler_characteristic) - abs(euler.value)

    report = GaussBonnetReport(euler.value, integral["integral"], integral["tail_bound"], steps, margin,
                               curvature_summary(conn), budget)
    announce("gauss_bonnet", f"e = {euler.value:g}, (1/2π)∫K = {report.integral:.4f}, tail {report.tail_bound:.4f}")

    if log is not None:
        log.add_event("gauss_bonnet", "curvature_integral", report.integral_passed, report.integral_gap,
                      f"tail {report.tail_bound:.3e} + budget {budget:g}")
        if steps:
            worst = max(step.gap - step.bound for step in steps)
            log.add_event("gauss_bonnet", "horocircle_holonomy", report.holonomy_passed, worst,
                          "gap - (e^delta - 1)")
            log.add_event("gauss_bonnet", "gaps_decreasing", report.gaps_decreasing, steps[-1].gap)
        log.add_event("gauss_bonnet", "milnor_wood", margin >= -1e-6, margin)
        log.add_event("gauss_bonnet", "curvature_bound", report.curvature["passed"], report.curvature["max_excess"])
    return report


def _euler_bound(rep: Representation) -> tuple[float, float]:
    """(e, |e| upper bound); an unresolved translation number contributes its last bracket."""
    value, bound, resolved = 0.0, 0.0, True
    for word in rep.group.cusp_words:
        try:
            tau = translation_number(rep.evaluate_word(word))
        except TranslationNumberNotConverged as error:
            resolved = False
            bound += max(abs(error.bracket[0]), abs(error.bracket[1]))
            continue
        value -= tau
        bound += abs(tau)
    return (value if resolved else float("nan")), bound


def milnor_wood_sweep(
    group: SurfaceGroup,
    rng: np.random.Generator,
    count: int=20,
    breakpoints: int | None=None,
    mesh: Optional[HyperbolicMesh]=None,
    bins: int | None=None,
    radius: float | None=None) -> list[dict]:
    """
    Milnor–Wood margins of `count` random PL representations.

    With a `mesh`, each representation is also solved and its curvature range recorded,
    over the cells within Euclidean `radius` of the origin when one is given.
    """
    core = None if mesh is None or radius is None else np.flatnonzero(np.abs(mesh.centers) < radius)
    rows = []
    for index in range(count):
        rep = random_pl_representation(group, rng, breakpoints)
        value, bound = _euler_bound(rep)
        row = {"index": index, "euler_number": value, "margin": abs(group.euler_characteristic) - bound}
        if mesh is not None:
            field = solve_harmonic_field(group, rep, mesh, bins=bins)
            summary = curvature_summary(build_connection(field), cells=core)
            row["max_abs_K"] = 1.0 + summary["max_excess"]
        rows.append(row)
    announce("gauss_bonnet", f"Milnor–Wood sweep: smallest margin {min(row['margin'] for row in rows):.4f}")
    return rows

