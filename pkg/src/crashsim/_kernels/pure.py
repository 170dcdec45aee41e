"""Pure-Python collision kernels (reference backend).

The compiled backend (_ext.pyx) transcribes these routines expression for
expression; both must return bit-identical floats so analysis output does
not depend on which backend is importable.  Keep any edit mirrored in the
.pyx file and covered by the parity tests.

Rectangles are passed unpacked as (cx, cy, ch, sh, hl, hw): center,
cos/sin of heading, half length, half width.  Sequence arguments are
plain Python lists here and typed memoryviews in the compiled twin.
"""

import math

BACKEND = "pure"

PI = math.pi
TWO_PI = 2.0 * math.pi


def wrap_pi(a):
    """Normalize an angle to [-pi, pi)."""
    r = (a + PI) % TWO_PI - PI
    if r >= PI:
        r -= TWO_PI
    return r


def seg_intersect(ax1, ay1, ax2, ay2, bx1, by1, bx2, by2):
    """Closed-segment intersection: (hit, x, y).

    Collinear overlaps report the midpoint of the shared portion.
    """
    rx = ax2 - ax1
    ry = ay2 - ay1
    sx = bx2 - bx1
    sy = by2 - by1
    qpx = bx1 - ax1
    qpy = by1 - ay1
    denom = rx * sy - ry * sx
    if denom != 0.0:
        t = (qpx * sy - qpy * sx) / denom
        u = (qpx * ry - qpy * rx) / denom
        if 0.0 <= t <= 1.0 and 0.0 <= u <= 1.0:
            return True, ax1 + t * rx, ay1 + t * ry
        return False, 0.0, 0.0
    if qpx * ry - qpy * rx != 0.0:
        return False, 0.0, 0.0
    rr = rx * rx + ry * ry
    if rr == 0.0:
        ss = sx * sx + sy * sy
        if ss == 0.0:
            if qpx == 0.0 and qpy == 0.0:
                return True, ax1, ay1
            return False, 0.0, 0.0
        w = ((ax1 - bx1) * sx + (ay1 - by1) * sy) / ss
        if 0.0 <= w <= 1.0:
            return True, ax1, ay1
        return False, 0.0, 0.0
    t0 = (qpx * rx + qpy * ry) / rr
    t1 = ((bx2 - ax1) * rx + (by2 - ay1) * ry) / rr
    if t0 > t1:
        t0, t1 = t1, t0
    lo = t0 if t0 > 0.0 else 0.0
    hi = t1 if t1 < 1.0 else 1.0
    if lo > hi:
        return False, 0.0, 0.0
    m = 0.5 * (lo + hi)
    return True, ax1 + m * rx, ay1 + m * ry


def rect_corners(cx, cy, ch, sh, hl, hw):
    """Corner coordinates (x0,y0,...,x3,y3) in counterclockwise order."""
    ax = hl * ch
    ay = hl * sh
    bx = hw * sh
    by = hw * ch
    return (
        cx + ax - bx, cy + ay + by,  # (+hl, +hw)
        cx - ax - bx, cy - ay + by,  # (-hl, +hw)
        cx - ax + bx, cy - ay - by,  # (-hl, -hw)
        cx + ax + bx, cy + ay - by,  # (+hl, -hw)
    )


def point_in_rect(px, py, cx, cy, ch, sh, hl, hw):
    dx = px - cx
    dy = py - cy
    lx = dx * ch + dy * sh
    if lx > hl or lx < -hl:
        return False
    ly = dy * ch - dx * sh
    return -hw <= ly <= hw


def rect_contact(acx, acy, ach, ash, ahl, ahw, bcx, bcy, bch, bsh, bhl, bhw):
    """Overlap test with a representative contact point: (hit, x, y).

    The point is the first side/side intersection in corner order; full
    containment (no edge crossing) reports the contained center.
    """
    ca = rect_corners(acx, acy, ach, ash, ahl, ahw)
    cb = rect_corners(bcx, bcy, bch, bsh, bhl, bhw)
    for i in range(4):
        i2 = (i + 1) % 4
        ax1 = ca[2 * i]
        ay1 = ca[2 * i + 1]
        ax2 = ca[2 * i2]
        ay2 = ca[2 * i2 + 1]
        for j in range(4):
            j2 = (j + 1) % 4
            hit, px, py = seg_intersect(
                ax1, ay1, ax2, ay2,
                cb[2 * j], cb[2 * j + 1], cb[2 * j2], cb[2 * j2 + 1],
            )
            if hit:
                return True, px, py
    if point_in_rect(bcx, bcy, acx, acy, ach, ash, ahl, ahw):
        return True, bcx, bcy
    if point_in_rect(acx, acy, bcx, bcy, bch, bsh, bhl, bhw):
        return True, acx, acy
    return False, 0.0, 0.0


def rects_collide(acx, acy, ach, ash, ahl, ahw, bcx, bcy, bch, bsh, bhl, bhw):
    hit, _, _ = rect_contact(
        acx, acy, ach, ash, ahl, ahw, bcx, bcy, bch, bsh, bhl, bhw
    )
    return hit


def rect_barrier_contact(cx, cy, ch, sh, hl, hw, xs, ys, i0, i1):
    """First barrier segment in [i0, i1) hit by any rectangle side.

    Returns (hit, px, py, nx, ny); the normal is the struck segment's unit
    normal oriented toward the rectangle center (against the approach).
    """
    rad = math.sqrt(hl * hl + hw * hw)
    corners = None
    for k in range(i0, i1 - 1):
        x1 = xs[k]
        y1 = ys[k]
        x2 = xs[k + 1]
        y2 = ys[k + 1]
        ex = x2 - x1
        ey = y2 - y1
        ee = ex * ex + ey * ey
        if ee == 0.0:
            continue
        # cheap reject: rectangle bounding circle vs segment distance
        u = ((cx - x1) * ex + (cy - y1) * ey) / ee
        if u < 0.0:
            u = 0.0
        elif u > 1.0:
            u = 1.0
        ddx = cx - (x1 + u * ex)
        ddy = cy - (y1 + u * ey)
        if ddx * ddx + ddy * ddy > rad * rad:
            continue
        if corners is None:
            corners = rect_corners(cx, cy, ch, sh, hl, hw)
        for i in range(4):
            i2 = (i + 1) % 4
            hit, px, py = seg_intersect(
                corners[2 * i], corners[2 * i + 1],
                corners[2 * i2], corners[2 * i2 + 1],
                x1, y1, x2, y2,
            )
            if hit:
                ln = math.sqrt(ee)
                nx = -ey / ln
                ny = ex / ln
                side = ex * (cy - y1) - ey * (cx - x1)
                if side < 0.0:
                    nx = -nx
                    ny = -ny
                return True, px, py, nx, ny
    return False, 0.0, 0.0, 0.0, 0.0


def rect_obstacle_contact(cx, cy, ch, sh, hl, hw, ox, oy, orad):
    """Disc obstacle vs rectangle: (hit, x, y) with x,y the closest rect point."""
    dx = ox - cx
    dy = oy - cy
    lx = dx * ch + dy * sh
    ly = dy * ch - dx * sh
    qx = -hl if lx < -hl else (hl if lx > hl else lx)
    qy = -hw if ly < -hw else (hw if ly > hw else ly)
    ddx = lx - qx
    ddy = ly - qy
    if ddx * ddx + ddy * ddy <= orad * orad:
        return True, cx + qx * ch - qy * sh, cy + qx * sh + qy * ch
    return False, 0.0, 0.0


def scan_first_contact(
    zt, zx, zy, zch, zsh, zhl, zhw,
    voff, vt, vx, vy, vhdg, vhl, vhw, exclude,
    boff, bx, by,
    ox, oy, orad,
):
    """Earliest contact of a projected footprint against the factual world.

    zt..zsh are per-step projected-footprint samples; index 0 (the injection instant)
    is not tested.  Vehicle arrays are flat with voff offsets and must be
    in canonical id order: ties at one step resolve vehicle < barrier <
    obstacle, then by ascending index.  Returns
    (step, kind, index, px, py, nx, ny) with step -1 for no contact and
    kind 0 vehicle / 1 barrier / 2 obstacle.
    """
    zrad = math.sqrt(zhl * zhl + zhw * zhw)
    n = len(zt)
    nveh = len(voff) - 1
    nbar = len(boff) - 1
    nobs = len(ox)
    cursors = [0] * nveh
    vrads = [math.sqrt(vhl[v] * vhl[v] + vhw[v] * vhw[v]) for v in range(nveh)]
    for i in range(1, n):
        t = zt[i]
        cx = zx[i]
        cy = zy[i]
        ch = zch[i]
        sh = zsh[i]
        for v in range(nveh):
            if v == exclude:
                continue
            s0 = voff[v]
            s1 = voff[v + 1]
            if t < vt[s0] or t > vt[s1 - 1]:
                continue
            if s1 - s0 == 1:
                pxv = vx[s0]
                pyv = vy[s0]
                phd = vhdg[s0]
            else:
                k = cursors[v]
                while s0 + k + 1 < s1 - 1 and vt[s0 + k + 1] < t:
                    k += 1
                cursors[v] = k
                ia = s0 + k
                ta = vt[ia]
                tb = vt[ia + 1]
                if t == ta:
                    pxv = vx[ia]
                    pyv = vy[ia]
                    phd = vhdg[ia]
                elif t == tb:
                    pxv = vx[ia + 1]
                    pyv = vy[ia + 1]
                    phd = vhdg[ia + 1]
                else:
                    u = (t - ta) / (tb - ta)
                    pxv = vx[ia] + (vx[ia + 1] - vx[ia]) * u
                    pyv = vy[ia] + (vy[ia + 1] - vy[ia]) * u
                    d = wrap_pi(vhdg[ia + 1] - vhdg[ia])
                    phd = wrap_pi(vhdg[ia] + d * u)
            dxc = pxv - cx
            dyc = pyv - cy
            rr = zrad + vrads[v]
            if dxc * dxc + dyc * dyc > rr * rr:
                continue
            hch = math.cos(phd)
            hsh = math.sin(phd)
            hit, px, py = rect_contact(
                cx, cy, ch, sh, zhl, zhw, pxv, pyv, hch, hsh, vhl[v], vhw[v]
            )
            if hit:
                return i, 0, v, px, py, 0.0, 0.0
        for b in range(nbar):
            hit, px, py, nxx, nyy = rect_barrier_contact(
                cx, cy, ch, sh, zhl, zhw, bx, by, boff[b], boff[b + 1]
            )
            if hit:
                return i, 1, b, px, py, nxx, nyy
        for o in range(nobs):
            dxc = ox[o] - cx
            dyc = oy[o] - cy
            rr = zrad + orad[o]
            if dxc * dxc + dyc * dyc > rr * rr:
                continue
            hit, px, py = rect_obstacle_contact(
                cx, cy, ch, sh, zhl, zhw, ox[o], oy[o], orad[o]
            )
            if hit:
                return i, 2, o, px, py, 0.0, 0.0
    return -1, -1, -1, 0.0, 0.0, 0.0, 0.0


def scan_const_velocity(
    ax0, ay0, avx, avy, ach, ash, ahl, ahw,
    bx0, by0, bvx, bvy, bch, bsh, bhl, bhw,
    sub_step, n_steps, extra_t,
):
    """First time two constant-velocity footprints touch, or -1.0.

    Scans t = sub_step .. n_steps*sub_step, then extra_t when > 0 (exact
    horizon endpoint for horizons that are not step multiples).
    """
    arad = math.sqrt(ahl * ahl + ahw * ahw)
    brad = math.sqrt(bhl * bhl + bhw * bhw)
    rr = arad + brad
    i = 1
    while True:
        if i <= n_steps:
            t = i * sub_step
        elif i == n_steps + 1 and extra_t > 0.0:
            t = extra_t
        else:
            return -1.0
        axc = ax0 + avx * t
        ayc = ay0 + avy * t
        bxc = bx0 + bvx * t
        byc = by0 + bvy * t
        dx = bxc - axc
        dy = byc - ayc
        if dx * dx + dy * dy <= rr * rr:
            hit, _, _ = rect_contact(
                axc, ayc, ach, ash, ahl, ahw, bxc, byc, bch, bsh, bhl, bhw
            )
            if hit:
                return t
        i += 1
