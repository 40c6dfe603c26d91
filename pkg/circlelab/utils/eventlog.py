"""
This module implements the invariant-check ledger shared by every stage.
Each check a stage performs becomes one `CheckEvent`; the `CheckLog` collects
them and renders the records embedded in reports and summaries.

### Key Features:
- **Single Entry per Check**:
    - A `(stage, name)` pair may be recorded once; repeats raise.

- **Margins**:
    - Every event stores the numeric margin it was judged on, so reports show
      how close a pass was.

### Classes:
- **`CheckEvent`**:
    Represents one invariant check with its stage, name, outcome and margin.
- **`CheckLog`**:
    Maintains a collection of check events and provides methods to add and export them.
"""


import math

from typing import Optional



class CheckEvent():
    """Represents an invariant check with its stage, outcome and margin.

    Attributes:
    -----------
        event_id : int
            Position of the event in its log.
        stage : str
            Pipeline stage that performed the check.
        name : str
            Name of the check.
        passed : bool
            Whether the check held.
        margin : float
            Value the check was judged on (a residual or a distance to a bound).
        detail : str
            Free-form note, e.g. the tolerance used.
    """
    def __init__(
        self,
        event_id: int,
        stage: str,
        name: str,
        passed: bool,
        margin: float,
        detail: Optional[str]):

        self.event_id = event_id
        self.stage = stage
        self.name = name
        self.passed = bool(passed)
        self.margin = float(margin)
        self.detail = detail or ""

    def __repr__(self):
        """Returns a formatted string representation of the event."""
        outcome = "pass" if self.passed else "FAIL"
        return f"{self.event_id}) [{self.stage}] {self.name}: {outcome} (margin {self.margin:.3e})"

    def to_record(self) -> dict:
        margin = self.margin if math.isfinite(self.margin) else repr(self.margin)
        return {
            "stage": self.stage,
            "name": self.name,
            "passed": self.passed,
            "margin": margin,
            "detail": self.detail,
        }


class CheckLog():
    """Represents a log of `events` produced by invariant checks.

    Can create new `events` with specified details in `add_event()`.

    Attributes:
    -----------
        events : list[CheckEvent]
            The stored events.
    """
    def __init__(self):
        self.events: list[CheckEvent] = []
        self._keys: set[tuple[str, str]] = set()

    def add_event(
        self,
        stage: str,
        name: str,
        passed: bool,
        margin: float,
        detail: Optional[str]=None) -> CheckEvent:
        """
        Adds a new `event` to the log with the given details.

        Params:
        -------
            stage : str
                Stage performing the check.
            name : str
                Name of the check, unique within its stage.
            passed : bool
                Outcome.
            margin : float
                Numeric value the outcome was decided on.
            detail : str
                Optional note.
        """
        key = (stage, name)
        if key in self._keys:
            raise ValueError(f"check {stage}/{name} recorded twice")

        self._keys.add(key)
        event = CheckEvent(len(self.events) + 1, stage, name, passed, margin, detail)
        self.events.append(event)
        return event

    def extend(self, other: "CheckLog"):
        for event in other.events:
            self.add_event(event.stage, event.name, event.passed, event.margin, event.detail)

    @property
    def all_passed(self) -> bool:
        return all(event.passed for event in self.events)

    def to_records(self) -> list[dict]:
        return [event.to_record() for event in self.events]
