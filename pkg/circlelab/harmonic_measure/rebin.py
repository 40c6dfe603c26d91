"""Mass-conservative pushforward of fiber histograms by circle lifts."""



from __future__ import annotations

import numpy as np

from ..circle_dynamics import CircleLift, Representation
from ..constants import TWO_PI



def bin_edges(bins: int) -> np.ndarray:
    return np.linspace(0.0, TWO_PI, bins + 1)


def bin_centers(bins: int) -> np.ndarray:
    return (np.arange(bins) + 0.5) * (TWO_PI / bins)


def _periodic_cumulative(x: np.ndarray, bins: int) -> np.ndarray:
    """G[i, l]: length of (bin l + 2πZ) ∩ [0, x_i], signed for negative x."""
    width = TWO_PI / bins
    x = np.asarray(x, dtype=float)[:, None]
    turns = np.floor(x / TWO_PI)
    rest = x - TWO_PI * turns
    starts = np.arange(bins)[None, :] * width
    return turns * width + np.clip(rest - starts, 0.0, width)


def rebin_matrix(f: CircleLift, bins: int) -> np.ndarray:
    """
    Matrix R with pushed = R @ density for the pushforward f_*.

    Target bin k receives the part of each source bin lying in f⁻¹(bin k);
    mass inside a source bin is taken as uniform. Columns sum to one, so the
    total mass is preserved exactly.
    """
    cuts = f.inverse()(bin_edges(bins))
    cumulative = _periodic_cumulative(cuts, bins)
    return np.diff(cumulative, axis=0) / (TWO_PI / bins)


def push_histogram(f: CircleLift, density: np.ndarray) -> np.ndarray:
    density = np.asarray(density, dtype=float)
    return density @ rebin_matrix(f, density.shape[-1]).T


class TransferCache:
    """Rebinning matrices of ρ(W) for folding words W, computed once per word."""
    def __init__(self, rep: Representation, bins: int):
        self.rep = rep
        self.bins = bins
        self._matrices: dict[str, np.ndarray] = {}

    def __call__(self, word: str) -> np.ndarray:
        matrix = self._matrices.get(word)
        if matrix is None:
            matrix = rebin_matrix(self.rep.evaluate_word(word), self.bins)
            self._matrices[word] = matrix
        return matrix

    def __len__(self):
        return len(self._matrices)
