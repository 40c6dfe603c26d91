"""
Actions of surface groups on the circle, given by lifts of the generators.

### Key Features:
- **Canonical lifts**:
    - Every generator is stored with the lift whose value at 0 lies in [0, 2π);
      inverse letters use the inverse lift, so words evaluate to a homomorphic lift.

- **Kinds**:
    - `fuchsian-boundary` (the boundary action of the group itself), `rotation`,
      `trivial`, `pl-custom` (seeded random PL actions of free groups),
      `conjugated-fuchsian` and `reversed`.

- **Checks**:
    - For closed surfaces the relator must act as the identity on the circle.

### Dependencies:
- **`numpy`**: For the sample-angle checks and random generation.
"""



from __future__ import annotations

import numpy as np

from ..constants import TWO_PI, setting
from ..hyperbolic_core import SurfaceGroup, build_surface_group
from ..utils.errors import CircleMapError, RelatorNotIdentity, UnknownGenerator
from .lifts import (
    CircleLift, ConjugateCircleLift, MoebiusCircleLift, PLCircleLift,
    ReflectedCircleLift, lift_from_json, random_pl_homeomorphism)



REPRESENTATION_KINDS = (
    "fuchsian-boundary", "rotation", "trivial", "pl-custom",
    "conjugated-fuchsian", "reversed")
# produced by the analysis, never requested by a config
DERIVED_KINDS = ("semiconjugated",)


class Representation:
    """Represents a homomorphism from a surface group to the circle homeomorphisms.

    Attributes:
    -----------
        group : SurfaceGroup
            The surface group.
        lifts : dict[str, CircleLift]
            Canonical lift per generator label.
        kind : str
            One of `REPRESENTATION_KINDS` or `DERIVED_KINDS`.
        conjugator : CircleLift | None
            The PL conjugator, for conjugated actions.
    """
    def __init__(self, group: SurfaceGroup, lifts: dict[str, CircleLift], kind: str, conjugator: CircleLift | None=None):
        if kind not in REPRESENTATION_KINDS + DERIVED_KINDS:
            raise CircleMapError(f"unknown representation kind {kind!r}")
        missing = set(group.labels) - set(lifts)
        if missing:
            raise UnknownGenerator(f"no lift for generators {sorted(missing)}")

        self.group = group
        self.lifts = {label: lift.canonical() for label, lift in lifts.items()}
        self._inverses = {label: lift.inverse() for label, lift in self.lifts.items()}
        self.kind = kind
        self.conjugator = conjugator

    def __repr__(self):
        return f"Representation({self.group.name}, kind={self.kind!r})"

    def letter(self, letter: str) -> CircleLift:
        label = letter.lower()
        if label not in self.lifts:
            raise UnknownGenerator(f"unknown generator '{letter}'")
        return self.lifts[label] if letter.islower() else self._inverses[label]

    def evaluate_word(self, word: str) -> CircleLift:
        """Lift of a word, read as the left-to-right product; the empty word gives the identity."""
        if not word:
            return PLCircleLift.identity()
        result = self.letter(word[-1])
        for letter in reversed(word[:-1]):
            result = self.letter(letter).compose(result)
        return result

    def relator_defect(self, samples: int | None=None) -> float:
        """Largest circle distance from the identity over the relators (0 for free groups)."""
        samples = samples or setting("circle", "sample_angles", 256)
        defect = 0.0
        for word in self.group.relator_words:
            defect = max(defect, self.evaluate_word(word).circle_distance(PLCircleLift.identity(), samples))
        return defect

    def validate(self):
        tol = setting("circle", "relator_tol", 1e-9)
        defect = self.relator_defect()
        if defect > tol:
            raise RelatorNotIdentity(f"relator moves the circle by {defect:.3e} (tolerance {tol:g})")

    def to_json(self) -> dict:
        payload = {
            "group": self.group.to_json()["spec"],
            "kind": self.kind,
            "lifts": {label: lift.to_json() for label, lift in sorted(self.lifts.items())},
        }
        if self.conjugator is not None:
            payload["conjugator"] = self.conjugator.to_json()
        return payload

    @classmethod
    def from_json(cls, payload: dict, group: SurfaceGroup | None=None) -> Representation:
        group = group or build_surface_group(payload["group"])
        conjugator = lift_from_json(payload["conjugator"]) if "conjugator" in payload else None
        lifts = {label: lift_from_json(data) for label, data in payload["lifts"].items()}
        if conjugator is not None:
            # restore the shared conjugator so compositions stay exact
            lifts = {label: ConjugateCircleLift(conjugator, lift.inner) if isinstance(lift, ConjugateCircleLift) else lift
                     for label, lift in lifts.items()}
        rep = cls(group, lifts, payload["kind"], conjugator)
        rep.validate()
        return rep


def fuchsian_representation(group: SurfaceGroup) -> Representation:
    lifts = {label: MoebiusCircleLift(g) for label, g in group.generators.items()}
    return Representation(group, lifts, "fuchsian-boundary")


def rotation_representation(group: SurfaceGroup, angles: dict[str, float] | float) -> Representation:
    """Every generator acts by a rigid rotation (a single angle is used for all of them)."""
    if not isinstance(angles, dict):
        angles = {label: float(angles) for label in group.labels}
    lifts = {label: PLCircleLift.rotation(np.mod(angles[label], TWO_PI)) for label in group.labels}
    rep = Representation(group, lifts, "rotation")
    rep.validate()
    return rep


def trivial_representation(group: SurfaceGroup) -> Representation:
    lifts = {label: PLCircleLift.identity() for label in group.labels}
    return Representation(group, lifts, "trivial")


def random_pl_representation(group: SurfaceGroup, rng: np.random.Generator, breakpoints: int | None=None) -> Representation:
    """Independent random PL homeomorphisms on the generators of a free group."""
    if group.closed:
        raise CircleMapError("random PL actions are only defined for free (cusped) groups")
    breakpoints = breakpoints or setting("pipeline", "random_breakpoints", 4)
    lifts = {label: random_pl_homeomorphism(rng, breakpoints) for label in group.labels}
    return Representation(group, lifts, "pl-custom")


def conjugate_representation(rep: Representation, g: CircleLift) -> Representation:
    """The action g ρ g⁻¹."""
    g_inv = g.inverse()
    lifts = {label: ConjugateCircleLift(g, lift, g_inv) for label, lift in rep.lifts.items()}
    kind = "conjugated-fuchsian" if rep.kind == "fuchsian-boundary" else rep.kind
    conjugated = Representation(rep.group, lifts, kind, g)
    conjugated.validate()
    return conjugated


def reverse_orientation(rep: Representation) -> Representation:
    """Conjugation by x -> -x; flips the sign of the Euler number."""
    lifts = {label: ReflectedCircleLift(lift) for label, lift in rep.lifts.items()}
    return Representation(rep.group, lifts, "reversed")
