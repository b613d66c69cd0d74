"""Deterministic software rasterizer for tabletop scenes.

Two 128x128 RGB views: ``top`` maps the whole workspace, ``gripper`` is a
zoomed crop centred on the gripper.  Shapes draw as distinct glyphs in
palette colours; hidden objects are not drawn.  Pure numpy, no text, no
anti-aliasing, so identical scenes rasterise to identical bytes.
"""

from __future__ import annotations

import math

import numpy as np

from .geometry import GLYPH_BALL, GLYPH_MUG, GLYPH_PEG, GLYPH_ZONE, GRIPPER_RADIUS, PALETTE_RGB
from .scene import TabletopScene

SIDE = 128
GRIPPER_VIEW_HALF = 0.15   # metres visible around the gripper
BACKGROUND = (214, 211, 206)

_MUG_BODY = (168, 168, 176)
_GRIPPER_COLOR = (30, 30, 34)


def _window(img, px, py, half_px):
    x0 = max(0, int(math.floor(px - half_px)))
    x1 = min(SIDE, int(math.ceil(px + half_px)) + 1)
    y0 = max(0, int(math.floor(py - half_px)))
    y1 = min(SIDE, int(math.ceil(py + half_px)) + 1)
    if x0 >= x1 or y0 >= y1:
        return None
    cols, rows = np.meshgrid(np.arange(x0, x1), np.arange(y0, y1))
    return (slice(y0, y1), slice(x0, x1)), (cols + 0.5 - px), (rows + 0.5 - py)


def _rotate(u, v, angle):
    c, s = math.cos(angle), math.sin(angle)
    return u * c + v * s, -u * s + v * c


def _glyph_mask(glyph: int, u, v, r: float, angle: float):
    """Boolean coverage for one glyph in local pixel coordinates."""
    if glyph in (1, GLYPH_BALL):                    # sphere / ball: disc
        return u * u + v * v <= r * r
    if glyph == 0:                                   # cube: rotated square
        ru, rv = _rotate(u, v, angle)
        return np.maximum(np.abs(ru), np.abs(rv)) <= 0.88 * r
    if glyph == 2:                                   # cylinder: tall bar
        ru, rv = _rotate(u, v, angle)
        return (np.abs(ru) <= 0.5 * r) & (np.abs(rv) <= 0.95 * r)
    if glyph == 3:                                   # cross
        ru, rv = _rotate(u, v, angle)
        arm = 0.34 * r
        return ((np.abs(ru) <= arm) & (np.abs(rv) <= r)) | \
               ((np.abs(rv) <= arm) & (np.abs(ru) <= r))
    if glyph == 4:                                   # torus: ring
        rho = u * u + v * v
        return (rho <= r * r) & (rho >= (0.45 * r) ** 2)
    if glyph == 5:                                   # star: five-lobed rose
        rho = np.sqrt(u * u + v * v)
        phi = np.arctan2(v, u) - angle
        return rho <= r * (0.55 + 0.45 * np.cos(5.0 * phi))
    if glyph == 6:                                   # pyramid: triangle
        ru, rv = _rotate(u, v, angle)
        return (rv >= -0.85 * r) & (np.abs(ru) <= (0.85 * r - rv) * 0.55)
    if glyph == 7:                                   # t-shape
        ru, rv = _rotate(u, v, angle)
        bar = (np.abs(rv + 0.55 * r) <= 0.3 * r) & (np.abs(ru) <= 0.9 * r)
        stem = (np.abs(ru) <= 0.3 * r) & (rv >= -0.85 * r) & (rv <= 0.9 * r)
        return bar | stem
    if glyph == 8:                                   # crescent
        disc = u * u + v * v <= r * r
        ru, rv = _rotate(u, v, angle)
        bite = (ru - 0.5 * r) ** 2 + rv ** 2 <= (0.8 * r) ** 2
        return disc & ~bite
    if glyph == GLYPH_MUG:                           # mug: disc with rim
        return u * u + v * v <= r * r
    if glyph == GLYPH_PEG:                           # peg: rotated plank
        ru, rv = _rotate(u, v, angle)
        return (np.abs(ru) <= r) & (np.abs(rv) <= 0.4 * r)
    if glyph == GLYPH_ZONE:                          # zone: outline ring
        rho = u * u + v * v
        return (rho <= r * r) & (rho >= (0.85 * r) ** 2)
    return u * u + v * v <= r * r


def _paint(img, region, mask, color):
    patch = img[region]
    patch[mask] = color
    img[region] = patch


def render(scene: TabletopScene, view: str = "top") -> np.ndarray:
    """Rasterise one view ('top' or 'gripper') to uint8 (128, 128, 3)."""
    if view == "top":
        scale = SIDE / 1.0
        def to_px(x, y):
            return (x + 0.5) * scale, (0.5 - y) * scale
    elif view == "gripper":
        scale = SIDE / (2.0 * GRIPPER_VIEW_HALF)
        gx, gy = scene.gx, scene.gy
        def to_px(x, y):
            return (x - gx + GRIPPER_VIEW_HALF) * scale, (gy + GRIPPER_VIEW_HALF - y) * scale
    else:
        raise ValueError(f"unknown view {view!r}")

    img = np.empty((SIDE, SIDE, 3), dtype=np.uint8)
    img[:] = BACKGROUND

    order = sorted(range(scene.n_objects),
                   key=lambda i: (scene.obj_shape[i] != GLYPH_ZONE, i))
    for i in order:
        if not scene.obj_visible[i]:
            continue
        px, py = to_px(scene.obj_x[i], scene.obj_y[i])
        r = scene.obj_radius[i] * scale
        win = _window(img, px, py, r + 1)
        if win is None:
            continue
        region, u, v = win
        glyph = int(scene.obj_shape[i])
        color = _MUG_BODY if glyph == GLYPH_MUG else PALETTE_RGB[int(scene.obj_color[i])]
        mask = _glyph_mask(glyph, u, v, r, float(scene.obj_angle[i]))
        _paint(img, region, mask, color)
        if glyph == GLYPH_MUG:  # darker rim to read as crockery
            rim = (u * u + v * v <= r * r) & (u * u + v * v >= (0.72 * r) ** 2)
            _paint(img, region, rim, (108, 108, 118))

    # gripper: dark disc, brightness follows grip closure, plus a heading tick
    px, py = to_px(scene.gx, scene.gy)
    r = GRIPPER_RADIUS * scale
    win = _window(img, px, py, r + 1)
    if win is not None:
        region, u, v = win
        body = u * u + v * v <= r * r
        shade = tuple(min(255, c + int(90 * scene.grip)) for c in _GRIPPER_COLOR)
        _paint(img, region, body, shade)
        ru, rv = _rotate(u, v, scene.gangle)
        tick = (ru >= 0) & (ru <= 1.35 * r) & (np.abs(rv) <= 0.18 * r)
        _paint(img, region, tick & (u * u + v * v <= (1.4 * r) ** 2), (240, 240, 90))
    return img


def render_pair(scene: TabletopScene) -> np.ndarray:
    """Top view and gripper crop stacked channelwise: uint8 (128, 128, 6)."""
    return np.concatenate([render(scene, "top"), render(scene, "gripper")], axis=2)
