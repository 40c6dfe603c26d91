"""
Lifts to the real line of orientation preserving circle homeomorphisms.

A lift F satisfies F(x + 2π) = F(x) + 2π. Four carriers are provided:

- `PLCircleLift`: piecewise linear, stored as breakpoints in [0, 2π) and their images.
- `MoebiusCircleLift`: the exact boundary action of a Möbius element plus 2πk.
- `ConjugateCircleLift`: g∘f∘g⁻¹ for a fixed conjugator g.
- `ReflectedCircleLift`: x -> -f(-x), the conjugate by the orientation reversal.

Compositions within one carrier are exact. Mixed compositions are sampled to a
`PLCircleLift` at the configured resolution plus the known breakpoints of both factors.
"""



from __future__ import annotations

import numpy as np

from ..constants import TWO_PI, setting
from ..hyperbolic_core import MoebiusElement
from ..utils.errors import CircleMapError, NonMonotoneLift



ROUNDOFF = 1e-12
"""Relative size of the negative steps a non-strict lift treats as flat."""


def _normalize(xs: np.ndarray, ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Moves increasing points spanning less than one period into [0, 2π), carrying the values along."""
    shift = np.floor(xs / TWO_PI)
    shift[xs - TWO_PI * shift >= TWO_PI] += 1
    xm = xs - TWO_PI * shift
    ym = ys - TWO_PI * shift
    order = np.argsort(xm, kind="stable")
    return xm[order], ym[order]


def _simplify(bp: np.ndarray, values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Drops duplicated breakpoints and breakpoints where the slope does not change."""
    if bp.size > 1:
        gaps = np.diff(np.append(bp, bp[0] + TWO_PI))
        keep = np.roll(gaps, 1) > 1e-13
        if not keep.any():
            keep[0] = True
        bp, values = bp[keep], values[keep]

    if bp.size > 1:
        slopes = np.diff(np.append(values, values[0] + TWO_PI)) / np.diff(np.append(bp, bp[0] + TWO_PI))
        keep = np.abs(slopes - np.roll(slopes, 1)) > 1e-10 * np.maximum(1.0, np.abs(slopes))
        if not keep.any():
            keep[0] = True
        bp, values = bp[keep], values[keep]
    return bp, values


def _is_plain_identity(f: CircleLift) -> bool:
    return isinstance(f, PLCircleLift) and f.breakpoints.size == 1 and f.values[0] == f.breakpoints[0]


class CircleLift:
    """Base class of circle-homeomorphism lifts.

    Subclasses implement `__call__`, `inverse`, `shift`, `breakpoint_set` and may
    implement `_compose_exact` for compositions that stay in their carrier.
    """
    def __call__(self, x):
        raise NotImplementedError

    def inverse(self) -> CircleLift:
        raise NotImplementedError

    def shift(self, k: int) -> CircleLift:
        """The lift F + 2πk."""
        raise NotImplementedError

    def breakpoint_set(self) -> np.ndarray:
        """Angles in [0, 2π) where the lift is not smooth, or other distinguished points."""
        return np.array([])

    def _compose_exact(self, other: CircleLift) -> CircleLift | None:
        return None

    def compose(self, other: CircleLift) -> CircleLift:
        """The lift of self∘other."""
        if _is_plain_identity(other):
            return self
        if _is_plain_identity(self):
            return other
        exact = self._compose_exact(other)
        if exact is not None:
            return exact
        return sampled_composition(self, other)

    def __matmul__(self, other: CircleLift) -> CircleLift:
        return self.compose(other)

    def power(self, n: int) -> CircleLift:
        if n < 0:
            return self.inverse().power(-n)
        result: CircleLift = PLCircleLift.identity()
        base = self
        while n:
            if n & 1:
                result = base.compose(result)
            n >>= 1
            if n:
                base = base.compose(base)
        return result

    def canonical(self) -> CircleLift:
        """The representative with F(0) in [0, 2π)."""
        k = int(np.floor(float(self(0.0)) / TWO_PI))
        return self.shift(-k) if k else self

    def to_pl(self, resolution: int | None=None) -> PLCircleLift:
        resolution = resolution or setting("circle", "pl_resolution", 4096)
        grid = np.linspace(0.0, TWO_PI, resolution, endpoint=False)
        pts = np.unique(np.concatenate([grid, np.mod(self.breakpoint_set(), TWO_PI)]))
        return PLCircleLift(pts, self(pts))

    def displacement(self, x) -> np.ndarray:
        return self(x) - np.asarray(x, dtype=float)

    def sup_distance(self, other: CircleLift, samples: int=256) -> float:
        x = np.linspace(0.0, TWO_PI, samples, endpoint=False)
        return float(np.max(np.abs(self(x) - other(x))))

    def circle_distance(self, other: CircleLift, samples: int=256) -> float:
        """Sup distance of the induced circle maps (lifts compared modulo 2π)."""
        x = np.linspace(0.0, TWO_PI, samples, endpoint=False)
        d = np.mod(self(x) - other(x) + np.pi, TWO_PI) - np.pi
        return float(np.max(np.abs(d)))

    def to_json(self) -> dict:
        raise NotImplementedError


class PLCircleLift(CircleLift):
    """A piecewise-linear lift.

    Attributes:
    -----------
        breakpoints : np.ndarray
            Sorted angles in [0, 2π).
        values : np.ndarray
            Images of the breakpoints, increasing, with values[-1] < values[0] + 2π.
        strict : bool
            Whether strict monotonicity is required. Non-strict lifts (with flat pieces)
            can be evaluated and composed but not inverted.
    """
    def __init__(self, breakpoints, values, strict: bool=True):
        bp = np.asarray(breakpoints, dtype=float).ravel()
        values = np.asarray(values, dtype=float).ravel()
        if bp.size == 0 or bp.size != values.size:
            raise CircleMapError("breakpoints and values must be non-empty and of equal length")
        if np.any(bp < 0.0) or np.any(bp >= TWO_PI) or np.any(np.diff(bp) <= 0.0):
            raise CircleMapError("breakpoints must be increasing in [0, 2π)")

        bp, values = _simplify(bp, values)
        steps = np.diff(np.append(values, values[0] + TWO_PI))
        if strict and np.any(steps <= 0.0):
            raise NonMonotoneLift(f"lift is not strictly increasing (smallest step {steps.min():.3e})")
        if not strict:
            if np.any(steps < -ROUNDOFF * max(1.0, float(np.abs(values).max()))):
                raise NonMonotoneLift(f"lift is decreasing somewhere (smallest step {steps.min():.3e})")
            # flat pieces: rounding may leave steps of a few ulps below zero
            values = np.minimum(np.maximum.accumulate(values), values[0] + TWO_PI)
        self.breakpoints, self.values = bp, values
        self.strict = strict

    @classmethod
    def identity(cls) -> PLCircleLift:
        return cls([0.0], [0.0])

    @classmethod
    def rotation(cls, angle: float) -> PLCircleLift:
        return cls([0.0], [float(angle)])

    def __repr__(self):
        return f"PLCircleLift({self.breakpoints.size} breakpoints, F(0)={float(self(0.0)):.6f})"

    def _extended(self):
        xs = np.append(self.breakpoints, self.breakpoints[0] + TWO_PI)
        ys = np.append(self.values, self.values[0] + TWO_PI)
        return xs, ys

    def __call__(self, x):
        xs, ys = self._extended()
        x = np.asarray(x, dtype=float)
        n = np.floor((x - xs[0]) / TWO_PI)
        r = x - TWO_PI * n
        return np.interp(r, xs, ys) + TWO_PI * n

    def slopes(self) -> np.ndarray:
        xs, ys = self._extended()
        return np.diff(ys) / np.diff(xs)

    def inverse(self) -> PLCircleLift:
        if not self.strict:
            raise NonMonotoneLift("a non-strict lift has no inverse")
        u, v = _normalize(self.values, self.breakpoints)
        return PLCircleLift(u, v)

    def loosened(self) -> PLCircleLift:
        """The same map allowed to develop flat pieces under composition."""
        return self if not self.strict else PLCircleLift(self.breakpoints, self.values, strict=False)

    def shift(self, k: int) -> PLCircleLift:
        return PLCircleLift(self.breakpoints, self.values + TWO_PI * k, self.strict)

    def breakpoint_set(self) -> np.ndarray:
        return self.breakpoints.copy()

    def _compose_exact(self, other: CircleLift) -> CircleLift | None:
        if not isinstance(other, PLCircleLift):
            return None
        pulled = np.interp(
            np.mod(self.breakpoints - other.values[0], TWO_PI) + other.values[0],
            *other._extended()[::-1])
        pts = np.unique(np.concatenate([other.breakpoints, np.mod(pulled, TWO_PI)]))
        pts = pts[pts < TWO_PI]
        return PLCircleLift(pts, self(other(pts)), self.strict and other.strict)

    def to_json(self) -> dict:
        return {
            "type": "pl",
            "breakpoints": self.breakpoints.tolist(),
            "values": self.values.tolist(),
            "strict": self.strict,
        }


class MoebiusCircleLift(CircleLift):
    """The boundary action of a Möbius element, lifted, plus 2πk.

    Attributes:
    -----------
        element : MoebiusElement
            The isometry; its matrix sign selects the base lift.
        k : int
            Extra deck shift.
    """
    def __init__(self, element: MoebiusElement, k: int=0):
        self.element = element
        self.k = int(k)

    def __repr__(self):
        return f"MoebiusCircleLift({self.element.label!r}, k={self.k})"

    def __call__(self, x):
        return self.element.boundary_lift(x) + TWO_PI * self.k

    def inverse(self) -> MoebiusCircleLift:
        inv = self.element.inverse()
        k = int(round(-float(inv.boundary_lift(self(0.0))) / TWO_PI))
        return MoebiusCircleLift(inv, k)

    def shift(self, k: int) -> MoebiusCircleLift:
        return MoebiusCircleLift(self.element, self.k + k)

    def breakpoint_set(self) -> np.ndarray:
        return self.element.boundary_fixed_angles()

    def _compose_exact(self, other: CircleLift) -> CircleLift | None:
        if not isinstance(other, MoebiusCircleLift):
            return None
        product = self.element @ other.element
        gap = float(self.element.boundary_lift(other.element.boundary_lift(0.0)) - product.boundary_lift(0.0))
        return MoebiusCircleLift(product, self.k + other.k + int(round(gap / TWO_PI)))

    def to_json(self) -> dict:
        return {"type": "moebius", "matrix": self.element.matrix.tolist(), "k": self.k}


class ConjugateCircleLift(CircleLift):
    """The lift g∘f∘g⁻¹.

    Attributes:
    -----------
        conjugator : CircleLift
            g.
        inner : CircleLift
            f.
    """
    def __init__(self, conjugator: CircleLift, inner: CircleLift, conjugator_inverse: CircleLift | None=None):
        self.conjugator = conjugator
        self.inner = inner
        self._conjugator_inverse = conjugator_inverse or conjugator.inverse()

    def __repr__(self):
        return f"ConjugateCircleLift({self.inner!r})"

    def __call__(self, x):
        return self.conjugator(self.inner(self._conjugator_inverse(x)))

    def _wrap(self, inner: CircleLift) -> ConjugateCircleLift:
        return ConjugateCircleLift(self.conjugator, inner, self._conjugator_inverse)

    def inverse(self) -> ConjugateCircleLift:
        return self._wrap(self.inner.inverse())

    def shift(self, k: int) -> ConjugateCircleLift:
        return self._wrap(self.inner.shift(k))

    def breakpoint_set(self) -> np.ndarray:
        inner = np.mod(self.conjugator(self.inner.breakpoint_set()), TWO_PI)
        return np.unique(np.concatenate([self.conjugator.breakpoint_set(), inner]))

    def _compose_exact(self, other: CircleLift) -> CircleLift | None:
        if isinstance(other, ConjugateCircleLift) and other.conjugator is self.conjugator:
            return self._wrap(self.inner.compose(other.inner))
        return None

    def to_json(self) -> dict:
        return {"type": "conjugate", "conjugator": self.conjugator.to_json(), "inner": self.inner.to_json()}


class ReflectedCircleLift(CircleLift):
    """The lift x -> -f(-x).

    Attributes:
    -----------
        inner : CircleLift
            f.
    """
    def __init__(self, inner: CircleLift):
        self.inner = inner

    def __repr__(self):
        return f"ReflectedCircleLift({self.inner!r})"

    def __call__(self, x):
        return -self.inner(-np.asarray(x, dtype=float))

    def inverse(self) -> ReflectedCircleLift:
        return ReflectedCircleLift(self.inner.inverse())

    def shift(self, k: int) -> ReflectedCircleLift:
        return ReflectedCircleLift(self.inner.shift(-k))

    def breakpoint_set(self) -> np.ndarray:
        return np.unique(np.mod(-self.inner.breakpoint_set(), TWO_PI))

    def _compose_exact(self, other: CircleLift) -> CircleLift | None:
        if isinstance(other, ReflectedCircleLift):
            return ReflectedCircleLift(self.inner.compose(other.inner))
        return None

    def to_json(self) -> dict:
        return {"type": "reflected", "inner": self.inner.to_json()}


def sampled_composition(f: CircleLift, g: CircleLift, resolution: int | None=None) -> PLCircleLift:
    """PL approximation of f∘g on a uniform grid plus the breakpoints of both factors."""
    resolution = resolution or setting("circle", "pl_resolution", 4096)
    grid = np.linspace(0.0, TWO_PI, resolution, endpoint=False)
    pulled = np.mod(g.inverse()(f.breakpoint_set()), TWO_PI)
    pts = np.unique(np.concatenate([grid, np.mod(g.breakpoint_set(), TWO_PI), pulled]))
    pts = pts[pts < TWO_PI]
    return PLCircleLift(pts, f(g(pts)))


def lift_from_json(payload: dict) -> CircleLift:
    kind = payload.get("type")
    if kind == "pl":
        return PLCircleLift(payload["breakpoints"], payload["values"], payload.get("strict", True))
    if kind == "moebius":
        return MoebiusCircleLift(MoebiusElement(payload["matrix"]), payload.get("k", 0))
    if kind == "conjugate":
        return ConjugateCircleLift(lift_from_json(payload["conjugator"]), lift_from_json(payload["inner"]))
    if kind == "reflected":
        return ReflectedCircleLift(lift_from_json(payload["inner"]))
    raise CircleMapError(f"unknown lift type {kind!r}")


def random_pl_homeomorphism(rng: np.random.Generator, breakpoints: int) -> PLCircleLift:
    """A random PL lift: uniform breakpoints, Dirichlet gaps for the images, random offset."""
    bp = np.sort(rng.uniform(0.0, TWO_PI, breakpoints))
    gaps = rng.dirichlet(np.ones(breakpoints)) * TWO_PI
    # keep every slope away from zero
    gaps = 0.9 * gaps + 0.1 * TWO_PI / breakpoints
    values = rng.uniform(0.0, TWO_PI) + np.concatenate([[0.0], np.cumsum(gaps[:-1])])
    return PLCircleLift(bp, values).canonical()
