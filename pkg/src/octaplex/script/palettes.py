"""Named color palettes: lists of RGB stops, sampled by linear interpolation."""

from __future__ import annotations

PALETTES: dict[str, tuple[tuple[int, int, int], ...]] = {
    "rainbow": (
        (255, 0, 0),
        (255, 200, 0),
        (70, 255, 0),
        (0, 255, 220),
        (0, 70, 255),
        (180, 0, 255),
    ),
    # four strongly separated hues, one per ring axis family
    "axes4": (
        (235, 60, 60),
        (60, 205, 80),
        (70, 90, 235),
        (240, 210, 50),
    ),
    "fire": (
        (30, 0, 0),
        (200, 30, 0),
        (255, 160, 20),
        (255, 255, 190),
    ),
    "mono": (
        (0, 0, 0),
        (255, 255, 255),
    ),
}


def sample(name: str, pos: float) -> tuple[float, float, float]:
    """Palette color at pos in [0, 1], as linear floats in [0, 1]."""
    stops = PALETTES[name]
    if len(stops) == 1:
        r, g, b = stops[0]
        return (r / 255.0, g / 255.0, b / 255.0)
    pos = min(1.0, max(0.0, pos))
    x = pos * (len(stops) - 1)
    i = min(int(x), len(stops) - 2)
    f = x - i
    lo, hi = stops[i], stops[i + 1]
    return tuple((a + (b - a) * f) / 255.0 for a, b in zip(lo, hi))
