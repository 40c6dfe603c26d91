"""
Isometries of the hyperbolic disk and the basic disk geometry.

### Key Features:
- **PSL(2,R) elements**:
    - `MoebiusElement` stores a real determinant-one matrix (upper half-plane model)
      and acts on the disk through the fixed Cayley conjugation.
    - Products are renormalized to determinant one.
    - The boundary action has an exact continuous lift `boundary_lift`.

- **Disk geometry**:
    - Hyperbolic distance, the Poisson kernel and its cumulative, geodesic points
      and the circles carrying geodesics.

### Dependencies:
- **`numpy`**: For the matrix algebra and vectorized point actions.
"""



from __future__ import annotations

import numpy as np

from ..utils.errors import InvalidGroupSpec



CAYLEY = np.array([[1.0, -1.0j], [1.0, 1.0j]])
CAYLEY_INV = np.array([[0.5, 0.5], [0.5j, -0.5j]])


def sl2inv(m: np.ndarray) -> np.ndarray:
    return np.array([[m[1, 1], -m[0, 1]],
                     [-m[1, 0], m[0, 0]]])


def make_sl2(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    det = np.linalg.det(m)
    if not det > 0:
        raise InvalidGroupSpec(f"matrix {m.tolist()} has non-positive determinant {det}")
    return m / np.sqrt(det)


class MoebiusElement:
    """An orientation preserving isometry of the hyperbolic plane.

    Attributes:
    -----------
        matrix : np.ndarray
            Real 2x2 matrix with determinant one (upper half-plane action).
            `matrix` and `-matrix` are the same isometry; the sign is kept because
            it selects the boundary lift.
        disk_matrix : np.ndarray
            The Cayley conjugate acting on the disk, of the form [[a, b], [conj(b), conj(a)]].
        label : str
            Optional word label.
    """
    def __init__(self, matrix, label: str | None=None):
        self.matrix = make_sl2(matrix)
        self.disk_matrix = CAYLEY @ self.matrix @ CAYLEY_INV
        self.label = label

    @classmethod
    def from_disk(cls, disk_matrix, label: str | None=None) -> MoebiusElement:
        """Builds an element from a disk matrix [[a, b], [conj(b), conj(a)]] of positive determinant."""
        d = np.asarray(disk_matrix, dtype=complex)
        d = d / np.sqrt(np.linalg.det(d))
        m = CAYLEY_INV @ d @ CAYLEY
        if np.max(np.abs(m.imag)) > 1e-9 * max(1.0, np.max(np.abs(m))):
            raise InvalidGroupSpec("disk matrix does not preserve the disk")
        return cls(m.real, label)

    @classmethod
    def identity(cls) -> MoebiusElement:
        return cls(np.eye(2), "")

    def __matmul__(self, other: MoebiusElement) -> MoebiusElement:
        label = None
        if self.label is not None and other.label is not None:
            label = self.label + other.label
        return MoebiusElement(self.matrix @ other.matrix, label)

    def __repr__(self):
        return f"MoebiusElement({self.matrix.tolist()}, label={self.label!r})"

    def inverse(self) -> MoebiusElement:
        label = None if self.label is None else self.label[::-1].swapcase()
        return MoebiusElement(sl2inv(self.matrix), label)

    @property
    def trace(self) -> float:
        return float(self.matrix[0, 0] + self.matrix[1, 1])

    def is_parabolic(self, tol: float=1e-9) -> bool:
        return abs(abs(self.trace) - 2.0) < tol and not self.is_identity(tol)

    def is_elliptic(self, tol: float=1e-9) -> bool:
        return abs(self.trace) < 2.0 - tol

    def is_identity(self, tol: float=1e-9) -> bool:
        """True when the matrix is +I or -I within `tol`."""
        eye = np.eye(2)
        return (np.max(np.abs(self.matrix - eye)) < tol
                or np.max(np.abs(self.matrix + eye)) < tol)

    def apply(self, z):
        """Disk action, vectorized over arrays of points."""
        (a, b), (c, d) = self.disk_matrix
        z = np.asarray(z, dtype=complex)
        return (a * z + b) / (c * z + d)

    def apply_upper(self, w):
        """Upper half-plane action; `np.inf` is mapped to a/c."""
        (a, b), (c, d) = self.matrix
        w = np.asarray(w, dtype=complex)
        return (a * w + b) / (c * w + d)

    def boundary_lift(self, x):
        """
        The continuous lift of the boundary action selected by the matrix sign.

        With disk matrix [[a, b], [conj(b), conj(a)]] and |b| < |a|,
        e^{ix} maps to e^{i(x + 2 arg(a + b e^{-ix}))}, and the argument stays in
        a half-plane, so no unwrapping is needed. Negating the matrix adds 2π.

        Params:
        -------
            x : array_like
                Lifted angles.
        """
        a = self.disk_matrix[0, 0]
        b = self.disk_matrix[0, 1]
        x = np.asarray(x, dtype=float)
        return x + 2.0 * np.angle(a) + 2.0 * np.angle(1.0 + (b / a) * np.exp(-1j * x))

    def boundary_fixed_angles(self) -> np.ndarray:
        """Angles of the boundary fixed points (empty for elliptic elements)."""
        (a, b), (c, d) = self.matrix
        if abs(c) < 1e-14:
            points = [np.inf]
            if abs(a - d) > 1e-14:
                points.append(b / (d - a))
        else:
            disc = (a - d) ** 2 + 4.0 * b * c
            if disc < -1e-14:
                return np.array([])
            root = np.sqrt(max(disc, 0.0))
            points = [((a - d) - root) / (2.0 * c), ((a - d) + root) / (2.0 * c)]
        return np.unique(np.mod(upper_boundary_angle(np.array(points, dtype=float)), 2.0 * np.pi))


def mobius_apply(g: MoebiusElement, z):
    return g.apply(z)


def to_disk(w):
    w = np.asarray(w, dtype=complex)
    return (w - 1j) / (w + 1j)


def to_upper(z):
    z = np.asarray(z, dtype=complex)
    return 1j * (1.0 + z) / (1.0 - z)


def upper_boundary_angle(x):
    """Angle of the disk boundary point corresponding to the real point x (inf allowed)."""
    x = np.asarray(x, dtype=float)
    return np.where(np.isinf(x), 0.0, np.pi + 2.0 * np.arctan(x))


def hyperbolic_distance(z, w):
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    ratio = np.abs(z - w) / np.abs(1.0 - np.conj(w) * z)
    return 2.0 * np.arctanh(np.minimum(ratio, 1.0 - 1e-16))


def conformal_factor(z):
    """Density of the hyperbolic area, 4/(1-|z|^2)^2."""
    return 4.0 / (1.0 - np.abs(np.asarray(z)) ** 2) ** 2


def poisson_kernel(z, t):
    """(1-|z|^2)/|e^{it}-z|^2, broadcasting `z` against `t`."""
    z = np.asarray(z, dtype=complex)
    t = np.asarray(t, dtype=float)
    return (1.0 - np.abs(z) ** 2) / np.abs(np.exp(1j * t) - z) ** 2


def poisson_cumulative(z, t):
    """
    Integral of the Poisson kernel from 0 to t.

    Equal to the boundary lift of the automorphism taking z to 0, anchored at 0.
    """
    z = np.asarray(z, dtype=complex)
    t = np.asarray(t, dtype=float)
    return (t + 2.0 * np.angle(1.0 - z * np.exp(-1j * t))
            - 2.0 * np.angle(1.0 - z))


def disk_translation(p: complex) -> MoebiusElement:
    """The transvection z -> (z + p)/(1 + conj(p) z) taking 0 to p."""
    p = complex(p)
    return MoebiusElement.from_disk([[1.0, p], [np.conj(p), 1.0]])


def disk_rotation(beta: float) -> MoebiusElement:
    half = np.exp(0.5j * beta)
    return MoebiusElement.from_disk([[half, 0.0], [0.0, np.conj(half)]])


def half_turn(p: complex) -> MoebiusElement:
    """Rotation by π about p."""
    f = disk_translation(p)
    flip = MoebiusElement.from_disk([[1.0j, 0.0], [0.0, -1.0j]])
    return f @ flip @ f.inverse()


def geodesic_point(z: complex, w: complex, s: float) -> complex:
    """Point at fraction `s` of the geodesic segment from z to w."""
    f = disk_translation(z)
    u = complex(f.inverse().apply(w))
    if abs(u) == 0.0:
        return complex(z)
    dist = 2.0 * np.arctanh(abs(u))
    u_s = (u / abs(u)) * np.tanh(s * dist / 2.0)
    return complex(f.apply(u_s))


def geodesic_circle(p: complex, q: complex) -> tuple[complex, float]:
    """
    Euclidean circle carrying the geodesic through p and q (disk or ideal points).

    Solves 2 Re(p conj(c)) = |p|^2 + 1 for both points; the radius follows from
    orthogonality to the unit circle, |c|^2 = 1 + r^2.
    """
    lhs = 2.0 * np.array([[p.real, p.imag], [q.real, q.imag]])
    rhs = np.array([abs(p) ** 2 + 1.0, abs(q) ** 2 + 1.0])
    cx, cy = np.linalg.solve(lhs, rhs)
    center = complex(cx, cy)
    return center, float(np.sqrt(abs(center) ** 2 - 1.0))
