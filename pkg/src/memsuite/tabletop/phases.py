"""Episode phase schedules for the tabletop task groups.

Phases partition [0, timeout).  The hide-and-select groups follow a fixed
rhythm: a 5-step observation window per cue display, a 5-step delay with an
empty table, then the selection window.  The shell game shows the ball for
five steps, covers everything on step five, and opens interaction on step
six.  Motion tasks run a single action phase.
"""

from __future__ import annotations

from ..errors import OutOfEpisode

OBSERVATION = "observation"
DELAY = "delay"
SELECTION = "selection"
ACTION = "action"


class PhaseSchedule:
    """Ordered (phase, start, end) spans covering [0, timeout)."""

    def __init__(self, spans: list[tuple[str, int, int]], timeout: int):
        self.spans = tuple(spans)
        self.timeout = timeout
        if spans[0][1] != 0 or spans[-1][2] != timeout:
            raise ValueError("schedule must cover [0, timeout)")
        for (_, _, e1), (_, s2, _) in zip(spans, spans[1:]):
            if e1 != s2:
                raise ValueError("schedule spans must be contiguous")

    def phase_at(self, t: int) -> str:
        if not 0 <= t < self.timeout:
            raise OutOfEpisode(f"step {t} outside [0, {self.timeout})")
        for name, start, end in self.spans:
            if start <= t < end:
                return name
        raise OutOfEpisode(f"step {t} not covered")  # unreachable by construction


def shell_game_schedule(timeout: int) -> PhaseSchedule:
    # ball visible 0-4; covered on step 5; interaction from step 6
    return PhaseSchedule([(OBSERVATION, 0, 5), (DELAY, 5, 6), (ACTION, 6, timeout)], timeout)


def show_delay_select_schedule(timeout: int, cue_windows: int = 1) -> PhaseSchedule:
    # cue displays occupy 5 steps each, then a 5-step empty-table delay
    shown = 5 * cue_windows
    return PhaseSchedule(
        [(OBSERVATION, 0, shown), (DELAY, shown, shown + 5), (SELECTION, shown + 5, timeout)],
        timeout)


def single_action_schedule(timeout: int) -> PhaseSchedule:
    return PhaseSchedule([(ACTION, 0, timeout)], timeout)
