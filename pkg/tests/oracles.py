"""Independent oracles for the geometry and dynamics tests.

These deliberately use different algorithms from the package (separating
axes instead of side intersection, dense brute-force stepping instead of
the production scan) so each check has two routes to the same answer.
"""

import math


def rect_corners(cx, cy, heading, hl, hw):
    c = math.cos(heading)
    s = math.sin(heading)
    return [
        (cx + hl * c - hw * s, cy + hl * s + hw * c),
        (cx - hl * c - hw * s, cy - hl * s + hw * c),
        (cx - hl * c + hw * s, cy - hl * s - hw * c),
        (cx + hl * c + hw * s, cy + hl * s - hw * c),
    ]


def _project(corners, ax, ay):
    dots = [x * ax + y * ay for x, y in corners]
    return min(dots), max(dots)


def sat_overlap_margin(a_corners, b_corners):
    """Smallest separation/penetration over all candidate axes.

    > 0 means overlap (closed convention: 0 counts as touching);
    the magnitude is a robustness margin for near-boundary filtering.
    """
    margin = math.inf
    for corners in (a_corners, b_corners):
        for i in range(4):
            x1, y1 = corners[i]
            x2, y2 = corners[(i + 1) % 4]
            ex, ey = x2 - x1, y2 - y1
            ln = math.hypot(ex, ey)
            ax, ay = -ey / ln, ex / ln
            amin, amax = _project(a_corners, ax, ay)
            bmin, bmax = _project(b_corners, ax, ay)
            overlap = min(amax, bmax) - max(amin, bmin)
            margin = min(margin, overlap)
    return margin


def sat_rects_collide(a_corners, b_corners):
    return sat_overlap_margin(a_corners, b_corners) >= 0.0


def dense_first_contact_time(collides_at, t0, duration, dt):
    """Brute-force earliest contact: test every dt step after t0."""
    n = int(round(duration / dt))
    for i in range(1, n + 1):
        t = t0 + i * dt
        if collides_at(t):
            return t
    return None
