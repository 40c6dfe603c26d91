"""
Monte Carlo cross-check of a fiber measure by a mean-value random walk.

Each path jumps to a uniform point of the hyperbolic circle of radius `step`
around its current position and is folded back into the polygon, recording
the folding letters. At the end a circle coordinate is drawn from the field
at the final cell and carried back through ρ of the recorded word. Hyperbolic
harmonic functions have the mean-value property on hyperbolic circles, so the
empirical distribution estimates the fiber measure at the start.
"""



from __future__ import annotations

import numpy as np

from ..constants import TWO_PI, setting
from ..utils import announce
from ..utils.errors import SolverError
from .field import FiberMeasureField
from .rebin import bin_edges



class MonteCarloResult:
    """
    Attributes:
    -----------
        samples : np.ndarray
            Final circle coordinates in [0, 2π).
        resampled : int
            Steps redrawn because they crossed a cusp cutoff.
        seed : int | np.random.SeedSequence
            The seed used.
    """
    def __init__(self, samples: np.ndarray, resampled: int, seed):
        self.samples = samples
        self.resampled = resampled
        self.seed = seed

    def histogram(self, bins: int) -> np.ndarray:
        """Empirical density on `bins` bins (mean one)."""
        counts, _ = np.histogram(self.samples, bins=bin_edges(bins))
        return counts * bins / counts.sum()


def _sample_bins(rng: np.random.Generator, rows: np.ndarray) -> np.ndarray:
    """Draws one angle per row of densities by inverse CDF, uniform within the bin."""
    bins = rows.shape[1]
    cdf = np.cumsum(rows, axis=1)
    u = rng.uniform(0.0, 1.0, rows.shape[0]) * cdf[:, -1]
    index = np.minimum((cdf < u[:, None]).sum(axis=1), bins - 1)
    return (index + rng.uniform(0.0, 1.0, rows.shape[0])) * (TWO_PI / bins)


def mc_fiber_measure(field: FiberMeasureField, z0: complex, step: float | None=None, paths: int | None=None,
                     seed=None, steps: int | None=None) -> MonteCarloResult:
    """
    Params:
    -------
        field : FiberMeasureField
            Field providing the measures at the end points (and the representation).
        z0 : complex
            Start point.
        step : float
            Hyperbolic jump radius, at most 0.1.
        paths : int
            Number of walkers.
        seed : int | np.random.SeedSequence
            Seed; identical seeds give identical samples.
        steps : int
            Jumps per path.
    """
    step = step or setting("montecarlo", "step", 0.1)
    paths = paths or setting("montecarlo", "paths", 100000)
    steps = steps or setting("montecarlo", "steps", 20)
    if step > 0.1 + 1e-12:
        raise SolverError(f"step {step} exceeds 0.1")

    rng = np.random.default_rng(seed)
    mesh, group, rep = field.mesh, field.mesh.group, field.rep
    radius = np.tanh(step / 2.0)

    start, start_word = group.fold(z0)
    z = np.full(paths, start, dtype=complex)
    words = [start_word] * paths
    resampled = 0

    for _ in range(steps):
        pending = np.arange(paths)
        moved = z.copy()
        new_letters = [""] * paths
        for attempt in range(100):
            u = radius * np.exp(1j * rng.uniform(0.0, TWO_PI, pending.size))
            here = z[pending]
            jumped = (u + here) / (1.0 + np.conj(here) * u)
            folded, letters = group.fold_many(jumped)
            ok = mesh.in_region(folded)
            moved[pending[ok]] = folded[ok]
            for idx in np.flatnonzero(ok):
                new_letters[pending[idx]] = letters[idx]
            pending = pending[~ok]
            if pending.size == 0:
                break
            resampled += pending.size
        else:
            raise SolverError(f"{pending.size} paths could not stay below the cusp cutoff")
        z = moved
        words = [w + l for w, l in zip(words, new_letters)]

    cells = mesh.nearest_cells(z)
    x = _sample_bins(rng, field.h[cells])

    # apply ρ of each word right to left, one letter position at a time
    longest = max((len(w) for w in words), default=0)
    padded = np.array([w.rjust(longest) for w in words]) if longest else None
    for position in range(longest - 1, -1, -1):
        column = np.array([w[position] for w in padded])
        for letter in set(column) - {" "}:
            mask = column == letter
            x[mask] = rep.letter(letter)(x[mask])

    if resampled:
        announce("montecarlo", f"{resampled} steps resampled at the cusp cutoff")
    return MonteCarloResult(np.mod(x, TWO_PI), resampled, seed)
