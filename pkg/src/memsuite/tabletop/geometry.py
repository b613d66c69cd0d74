"""Workspace constants, palette, and glyph vocabulary for tabletop tasks.

The workspace is the square [-0.5, 0.5]^2 metres; one control step covers
0.05 s.  The palette and shape library are ordered: task modes use a prefix
of each list, and oracle indices refer to these orders.
"""

from __future__ import annotations

WORKSPACE_HALF = 0.5          # table half-extent in metres
DT = 0.05                     # seconds per control step
MAX_STEP_XY = 0.05            # per-step displacement bound (m)
MAX_STEP_ROT = 0.1            # per-step rotation bound (rad)

GRIPPER_RADIUS = 0.04
OBJECT_RADIUS = 0.03
MUG_RADIUS = 0.05
PEG_RADIUS = 0.06
ZONE_RADIUS = 0.1             # target-zone radius (m)

BALL_DECELERATION = 0.05      # m/s^2, uniform rolling deceleration
GRIPPER_STATIC_SPEED = 0.005  # m/s, "robot is static" threshold
TOUCH_STEPS = 2               # sustained-contact requirement (0.1 s at DT)

PROPRIO_DIM = 8               # x, y, angle, grip, vx, vy, angular rate, grip rate

# colour palette, ordered; modes use a prefix
PALETTE = ("red", "lime", "blue", "yellow", "magenta", "cyan", "maroon", "olive", "teal")
PALETTE_RGB = (
    (255, 0, 0),
    (0, 255, 0),
    (0, 0, 255),
    (255, 255, 0),
    (255, 0, 255),
    (0, 255, 255),
    (128, 0, 0),
    (128, 128, 0),
    (0, 128, 128),
)

# shape library, ordered; glyph ids beyond the library cover task props
SHAPES = ("cube", "sphere", "cylinder", "cross", "torus", "star", "pyramid",
          "t-shape", "crescent")
GLYPH_MUG = 9
GLYPH_BALL = 10
GLYPH_PEG = 11
GLYPH_ZONE = 12
N_GLYPHS = 13

OBJECT_FEATURE_DIM = 1 + 2 + 2 + 1 + len(PALETTE) + N_GLYPHS  # 28 per object

# fixed anchor points
GRIPPER_START_FAR = (0.0, -0.35)   # every task starts the gripper down-table
SELECTION_CENTER = (0.0, 0.15)     # hub of the candidate circle; solvers park
                                   # here during the delay, then move radially
CUE_DISPLAY = (0.0, 0.3)
SHELL_SLOTS = ((-0.2, 0.15), (0.0, 0.15), (0.2, 0.15))
PUSH_STRIP_Y = 0.4                 # ShellGamePush: mug centre must cross this line
INTERCEPT_ZONE = (0.3, -0.3)  # off the ball corridor: no unaided successes
PEG_POSITION = (0.0, 0.1)


def selection_circle(count: int) -> list[tuple[float, float]]:
    """Slot positions for a selection phase: a circle around the hub.

    The radius keeps any slot clear of the straight hub-to-slot path of its
    neighbours, so a disc gripper can visit one candidate without brushing
    another, and keeps the ring far enough from the gripper start that
    undirected wandering rarely produces a sustained touch.
    """
    import math

    cx, cy = SELECTION_CENTER
    radius = 0.25
    slots = []
    for k in range(count):
        angle = 2.0 * math.pi * k / count
        slots.append((cx + radius * math.cos(angle), cy + radius * math.sin(angle)))
    return slots


def cue_row(count: int) -> list[tuple[float, float]]:
    """Display positions for a simultaneous bunch of cue objects."""
    if count == 1:
        return [CUE_DISPLAY]
    xs = [-0.36 + 0.72 * i / (count - 1) for i in range(count)]
    return [(x, CUE_DISPLAY[1]) for x in xs]
