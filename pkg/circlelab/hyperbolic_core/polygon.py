"""
Surface groups given by a fundamental polygon with side pairings.

### Key Features:
- **Families**:
    - The once-punctured torus on the ideal quadrilateral with vertices 1, i, -1, -i.
    - The closed genus-2 surface on the regular octagon with angles π/4.
    - Custom groups from generator matrices, polygon vertices and a pairing.

- **Vertex cycles**:
    - Walking around each vertex cycle yields the relator (finite vertices) or the
      cusp word (ideal vertices), plus the elements carrying the base vertex of a
      cycle to the others.

- **Folding**:
    - Any disk point can be folded into the polygon; the folding word W
      satisfies z = W(z').

### Classes:
- **`SurfaceGroup`**:
    Generators, polygon, pairing, words and cusp normalizations of one surface.
- **`VertexCycle`**, **`Cusp`**:
    Results of the vertex-cycle walk.

### Dependencies:
- **`numpy`**: For the polygon tests and vectorized folding.
"""



from __future__ import annotations

import numpy as np

from ..constants import families
from ..utils.errors import (
    CuspWordError, EulerCharacteristicError, FoldingError, InvalidGroupSpec,
    RelatorError, SidePairingError)
from .moebius import (
    MoebiusElement, disk_rotation, geodesic_circle, geodesic_point, half_turn,
    to_disk, to_upper)



def invert_word(word: str) -> str:
    return word[::-1].swapcase()


class VertexCycle:
    """One orbit of polygon vertices under the side pairings.

    Attributes:
    -----------
        vertices : list[int]
            Visited vertex indices, starting at the base vertex.
        partials : list[MoebiusElement]
            partials[n] carries the base vertex to vertices[n].
        walk_word : str
            Word of the element obtained by walking once around the cycle.
        ideal : bool
            Whether the vertices lie on the circle at infinity.
    """
    def __init__(self, vertices: list[int], partials: list[MoebiusElement], walk_word: str, ideal: bool):
        self.vertices = vertices
        self.partials = partials
        self.walk_word = walk_word
        self.ideal = ideal

    @property
    def boundary_word(self) -> str:
        """The loop around the cycle in the orientation induced by the polygon."""
        return invert_word(self.walk_word)


class Cusp:
    """A cusp with its normalization.

    Attributes:
    -----------
        word : str
            Cusp word, a parabolic element fixing the base vertex.
        base_vertex : int
            Polygon vertex fixed by the cusp word.
        normalizer : MoebiusElement
            N with N^-1 c N = (w -> w + sigma) on the upper half-plane.
        sigma : int
            Direction of the normalized translation, +1 or -1.
        level_maps : list[np.ndarray]
            Real matrices N^-1 T_n^-1, one per vertex of the cycle; the imaginary
            part of their action is the horoball level at that vertex.
    """
    def __init__(self, word: str, base_vertex: int, normalizer: MoebiusElement, sigma: int, level_maps: list[np.ndarray]):
        self.word = word
        self.base_vertex = base_vertex
        self.normalizer = normalizer
        self.sigma = sigma
        self.level_maps = level_maps

    def level(self, z) -> np.ndarray:
        """Normalized horoball height of disk points z (largest over the cycle's vertices)."""
        w = to_upper(z)
        levels = []
        for m in self.level_maps:
            (a, b), (c, d) = m
            image = (a * w + b) / (c * w + d)
            levels.append(np.asarray(image).imag)
        return np.max(np.stack(levels), axis=0)


class SurfaceGroup:
    """Represents a Fuchsian surface group with a fundamental polygon.

    Attributes:
    -----------
        spec : dict
            The spec it was built from (re-used for JSON round trips).
        generators : dict[str, MoebiusElement]
            Generators by lowercase label.
        vertices : np.ndarray
            Polygon vertices in the disk, counterclockwise.
        pairing : list[tuple[int, MoebiusElement]]
            pairing[k] = (partner side, element carrying side k onto the partner).
        sides : list[tuple[complex, float]]
            Circle (center, radius) carrying each side.
        cycles : list[VertexCycle]
            Vertex cycles.
        cusp_words : list[str]
        relator_words : list[str]
        cusps : list[Cusp]
        genus : int
    """
    def __init__(self, spec: dict, generators: dict[str, MoebiusElement], vertices, pairing: list[tuple[int, MoebiusElement]]):
        self.spec = spec
        self.generators = generators
        self.vertices = np.asarray(vertices, dtype=complex)
        self.pairing = pairing
        n = len(self.vertices)
        self.sides = [geodesic_circle(self.vertices[k], self.vertices[(k + 1) % n]) for k in range(n)]
        self.cycles = self._vertex_cycles()
        self.cusp_words = [c.boundary_word for c in self.cycles if c.ideal]
        self.relator_words = [c.boundary_word for c in self.cycles if not c.ideal][:1]
        self.cusps = [self._normalize_cusp(c) for c in self.cycles if c.ideal]

        finite_cycles = sum(1 for c in self.cycles if not c.ideal)
        self.euler_characteristic = finite_cycles - n // 2 + 1
        self.genus = (2 - self.euler_characteristic - len(self.cusps)) // 2

    @property
    def name(self) -> str:
        return self.spec.get("family", "custom")

    @property
    def closed(self) -> bool:
        return not self.cusps

    @property
    def labels(self) -> list[str]:
        return sorted(self.generators)

    def element(self, word: str) -> MoebiusElement:
        """Matrix of a word, read as the left-to-right product."""
        result = MoebiusElement.identity()
        for letter in word:
            base = self.generators.get(letter.lower())
            if base is None:
                raise InvalidGroupSpec(f"unknown generator '{letter}'")
            result = result @ (base if letter.islower() else base.inverse())
        result.label = word
        return result

    def beyond(self, z) -> np.ndarray:
        """Boolean array (sides x points): point lies strictly beyond the side."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        return np.stack([np.abs(z - c) ** 2 < r ** 2 - 1e-12 for c, r in self.sides])

    def in_polygon(self, z) -> np.ndarray:
        return ~np.any(self.beyond(z), axis=0)

    def cusp_level(self, z) -> np.ndarray:
        """Largest horoball level over all cusps (0 for closed surfaces)."""
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        if not self.cusps:
            return np.zeros(z.shape)
        return np.max(np.stack([cusp.level(z) for cusp in self.cusps]), axis=0)

    def fold(self, z: complex, max_steps: int=500) -> tuple[complex, str]:
        """
        Folds a point into the polygon.

        Among the sides the point lies beyond, the pairing that brings it closest
        to the origin is applied. The returned word W satisfies z = W(z').
        """
        points, words = self.fold_many(np.array([z]), max_steps)
        return complex(points[0]), words[0]

    def fold_many(self, z, max_steps: int=500) -> tuple[np.ndarray, list[str]]:
        z = np.array(z, dtype=complex, copy=True).ravel()
        letters: list[list[str]] = [[] for _ in range(z.size)]
        inverse_labels = [g.inverse().label for _, g in self.pairing]

        for _ in range(max_steps):
            mask = self.beyond(z)
            active = np.flatnonzero(mask.any(axis=0))
            if active.size == 0:
                return z, ["".join(l) for l in letters]

            images = np.stack([g.apply(z[active]) for _, g in self.pairing])
            radii = np.where(mask[:, active], np.abs(images), np.inf)
            choice = np.argmin(radii, axis=0)
            z[active] = images[choice, np.arange(active.size)]
            for idx, side in zip(active, choice):
                letters[idx].append(inverse_labels[side])

        raise FoldingError(f"folding did not terminate within {max_steps} steps")

    def _vertex_cycles(self) -> list[VertexCycle]:
        n = len(self.vertices)
        seen: set[int] = set()
        cycles = []
        for start in range(n):
            if start in seen:
                continue

            vertex, side = start, start
            total = MoebiusElement.identity()
            visits, partials, letters = [start], [total], []
            for _ in range(4 * n + 4):
                partner, g = self.pairing[side]
                vertex = (partner + 1) % n if vertex == side else partner
                side = (vertex - 1) % n if partner == vertex else vertex
                total = g @ total
                letters.append(g.label)
                if (vertex, side) == (start, start):
                    break
                visits.append(vertex)
                partials.append(total)
            else:
                raise SidePairingError(f"vertex cycle through {start} does not close")

            seen.update(visits)
            ideal = abs(abs(self.vertices[start]) - 1.0) < 1e-9
            cycles.append(VertexCycle(visits, partials, "".join(reversed(letters)), ideal))
        return cycles

    def _normalize_cusp(self, cycle: VertexCycle) -> Cusp:
        word = cycle.boundary_word
        p = self.element(word)
        if not p.is_parabolic(1e-9):
            raise CuspWordError(f"cusp word {word} has trace {p.trace}")

        v = self.vertices[cycle.vertices[0]]
        if abs(v - 1.0) < 1e-12:
            n0 = np.eye(2)
        else:
            x = float(np.real(to_upper(v)))
            n0 = np.array([[x, -1.0], [1.0, 0.0]])

        q = np.linalg.inv(n0) @ p.matrix @ n0
        shift = q[0, 1] / q[0, 0]
        scale = np.sqrt(abs(shift))
        normalizer = MoebiusElement(n0 @ np.diag([scale, 1.0 / scale]))
        sigma = 1 if shift > 0 else -1

        n_inv = np.linalg.inv(normalizer.matrix)
        level_maps = [n_inv @ np.linalg.inv(t.matrix) for t in cycle.partials]
        return Cusp(word, cycle.vertices[0], normalizer, sigma, level_maps)

    def validate(self):
        """Checks relators, cusp words, side pairings and the Euler characteristic."""
        n = len(self.vertices)
        for word in self.relator_words:
            if not self.element(word).is_identity(1e-9):
                raise RelatorError(f"relator {word} is not the identity")
        for word in self.cusp_words:
            if not self.element(word).is_parabolic(1e-9):
                raise CuspWordError(f"cusp word {word} is not parabolic")
        for k, (j, g) in enumerate(self.pairing):
            start, end = g.apply(self.vertices[k]), g.apply(self.vertices[(k + 1) % n])
            error = max(abs(start - self.vertices[(j + 1) % n]), abs(end - self.vertices[j]))
            if error > 1e-8:
                raise SidePairingError(f"side {k} is not carried onto side {j} (error {error:.2e})")
        if self.euler_characteristic >= 0:
            raise EulerCharacteristicError(f"euler characteristic {self.euler_characteristic} is not negative")

    def to_json(self) -> dict:
        return {
            "spec": self.spec,
            "family": self.name,
            "genus": self.genus,
            "euler_characteristic": self.euler_characteristic,
            "generators": {label: g.matrix.tolist() for label, g in sorted(self.generators.items())},
            "vertices": [[float(v.real), float(v.imag)] for v in self.vertices],
            "side_pairings": [[k, j, g.label] for k, (j, g) in enumerate(self.pairing)],
            "cusp_words": self.cusp_words,
            "relator_words": self.relator_words,
        }

    @classmethod
    def from_json(cls, payload: dict) -> SurfaceGroup:
        return build_surface_group(payload["spec"])


def _pairing_from_table(table, generators: dict[str, MoebiusElement], n: int):
    pairing: list = [None] * n
    for k, j, label in table:
        g = generators[label]
        pairing[k] = (j, MoebiusElement(g.matrix, label))
        pairing[j] = (k, MoebiusElement(g.matrix, label).inverse())
    if any(p is None for p in pairing):
        raise InvalidGroupSpec("pairing does not cover every side")
    return pairing


def _punctured_torus(spec: dict) -> SurfaceGroup:
    data = families["punctured-torus"]
    generators = {label: MoebiusElement(m, label) for label, m in data["generators"].items()}
    ideal = [np.inf if v == "inf" else float(v) for v in data["ideal_vertices_uhp"]]
    vertices = [1.0 + 0.0j if np.isinf(x) else complex(to_disk(x)) for x in ideal]
    pairing = _pairing_from_table(data["pairing"], generators, len(vertices))
    return SurfaceGroup(spec, generators, vertices, pairing)


def _regular_polygon_group(spec: dict) -> SurfaceGroup:
    """Closed genus g on the regular 4g-gon with angles 2π/4g; side k is glued to side k+2."""
    data = families["closed-genus-2"]
    n = int(data["sides"])
    half = np.pi / n
    # cosh(circumradius) = cot(π/n) cot(angle/2), with angle 2π/n
    radius = np.tanh(np.arccosh(1.0 / np.tan(half) ** 2) / 2.0)
    vertices = radius * np.exp(1j * (half + 2 * half * np.arange(n)))

    midpoints = [geodesic_point(vertices[k], vertices[(k + 1) % n], 0.5) for k in range(n)]
    quarter = disk_rotation(np.pi / 2)
    generators = {}
    for k, j, label in data["pairing"]:
        g = half_turn(midpoints[j]) @ quarter
        generators[label] = MoebiusElement(g.matrix, label)
    pairing = _pairing_from_table(data["pairing"], generators, n)
    return SurfaceGroup(spec, generators, vertices, pairing)


def _custom(spec: dict) -> SurfaceGroup:
    try:
        generators = {label: MoebiusElement(m, label) for label, m in spec["generators"].items()}
        vertices = [complex(re, im) for re, im in spec["vertices"]]
        pairing = _pairing_from_table(spec["pairing"], generators, len(vertices))
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidGroupSpec(f"malformed custom group spec: {e}") from e
    return SurfaceGroup(spec, generators, vertices, pairing)


BUILDERS = {
    "punctured-torus": _punctured_torus,
    "closed-genus-2": _regular_polygon_group,
    "custom": _custom,
}


def build_surface_group(spec: dict | str) -> SurfaceGroup:
    """
    Builds and validates a surface group.

    Params:
    -------
        spec : dict | str
            A family name, or {"family": name} with custom data for "custom".
    """
    if isinstance(spec, str):
        spec = {"family": spec}
    builder = BUILDERS.get(spec.get("family"))
    if builder is None:
        raise InvalidGroupSpec(f"unknown family {spec.get('family')!r}")

    group = builder(dict(spec))
    group.validate()
    if "genus" in spec and int(spec["genus"]) != group.genus:
        raise InvalidGroupSpec(f"spec genus {spec['genus']} but polygon gives {group.genus}")
    return group
