# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled collision kernels.

One-to-one transcription of crashsim._kernels.pure; every arithmetic
expression keeps the same operands in the same order so results are
bit-identical to the pure backend (build uses -ffp-contract=off, so no
fused multiply-adds sneak in).  Edit pure.py first, then mirror here.
"""

from libc.math cimport cos, fmod, sin, sqrt
from libc.stdint cimport int64_t

import numpy as _np

BACKEND = "compiled"

cdef double PI = 3.141592653589793
cdef double TWO_PI = 6.283185307179586


cdef inline double _pymod(double v, double w) nogil:
    # CPython float.__mod__ semantics
    cdef double r = fmod(v, w)
    if r != 0.0:
        if (w < 0.0) != (r < 0.0):
            r += w
    else:
        if w < 0.0:
            r = -0.0
        else:
            r = 0.0
    return r


cdef inline double _wrap_pi(double a) nogil:
    cdef double r = _pymod(a + PI, TWO_PI) - PI
    if r >= PI:
        r -= TWO_PI
    return r


def wrap_pi(double a):
    """Normalize an angle to [-pi, pi)."""
    return _wrap_pi(a)


cdef inline bint _seg_intersect(
    double ax1, double ay1, double ax2, double ay2,
    double bx1, double by1, double bx2, double by2,
    double *out_x, double *out_y,
) nogil:
    cdef double rx = ax2 - ax1
    cdef double ry = ay2 - ay1
    cdef double sx = bx2 - bx1
    cdef double sy = by2 - by1
    cdef double qpx = bx1 - ax1
    cdef double qpy = by1 - ay1
    cdef double denom = rx * sy - ry * sx
    cdef double t, u, rr, ss, w, t0, t1, lo, hi, m, tmp
    if denom != 0.0:
        t = (qpx * sy - qpy * sx) / denom
        u = (qpx * ry - qpy * rx) / denom
        if 0.0 <= t <= 1.0 and 0.0 <= u <= 1.0:
            out_x[0] = ax1 + t * rx
            out_y[0] = ay1 + t * ry
            return True
        return False
    if qpx * ry - qpy * rx != 0.0:
        return False
    rr = rx * rx + ry * ry
    if rr == 0.0:
        ss = sx * sx + sy * sy
        if ss == 0.0:
            if qpx == 0.0 and qpy == 0.0:
                out_x[0] = ax1
                out_y[0] = ay1
                return True
            return False
        w = ((ax1 - bx1) * sx + (ay1 - by1) * sy) / ss
        if 0.0 <= w <= 1.0:
            out_x[0] = ax1
            out_y[0] = ay1
            return True
        return False
    t0 = (qpx * rx + qpy * ry) / rr
    t1 = ((bx2 - ax1) * rx + (by2 - ay1) * ry) / rr
    if t0 > t1:
        tmp = t0
        t0 = t1
        t1 = tmp
    lo = t0 if t0 > 0.0 else 0.0
    hi = t1 if t1 < 1.0 else 1.0
    if lo > hi:
        return False
    m = 0.5 * (lo + hi)
    out_x[0] = ax1 + m * rx
    out_y[0] = ay1 + m * ry
    return True


def seg_intersect(double ax1, double ay1, double ax2, double ay2,
                  double bx1, double by1, double bx2, double by2):
    """Closed-segment intersection: (hit, x, y)."""
    cdef double px = 0.0
    cdef double py = 0.0
    cdef bint hit = _seg_intersect(ax1, ay1, ax2, ay2, bx1, by1, bx2, by2, &px, &py)
    return bool(hit), px, py


cdef inline void _rect_corners(
    double cx, double cy, double ch, double sh, double hl, double hw,
    double *out,  # 8 doubles
) nogil:
    cdef double ax = hl * ch
    cdef double ay = hl * sh
    cdef double bx = hw * sh
    cdef double by = hw * ch
    out[0] = cx + ax - bx
    out[1] = cy + ay + by
    out[2] = cx - ax - bx
    out[3] = cy - ay + by
    out[4] = cx - ax + bx
    out[5] = cy - ay - by
    out[6] = cx + ax + bx
    out[7] = cy + ay - by


def rect_corners(double cx, double cy, double ch, double sh, double hl, double hw):
    """Corner coordinates (x0,y0,...,x3,y3) in counterclockwise order."""
    cdef double out[8]
    _rect_corners(cx, cy, ch, sh, hl, hw, out)
    return (out[0], out[1], out[2], out[3], out[4], out[5], out[6], out[7])


cdef inline bint _point_in_rect(
    double px, double py,
    double cx, double cy, double ch, double sh, double hl, double hw,
) nogil:
    cdef double dx = px - cx
    cdef double dy = py - cy
    cdef double lx = dx * ch + dy * sh
    if lx > hl or lx < -hl:
        return False
    cdef double ly = dy * ch - dx * sh
    return -hw <= ly <= hw


def point_in_rect(double px, double py,
                  double cx, double cy, double ch, double sh, double hl, double hw):
    return bool(_point_in_rect(px, py, cx, cy, ch, sh, hl, hw))


cdef inline bint _rect_contact(
    double acx, double acy, double ach, double ash, double ahl, double ahw,
    double bcx, double bcy, double bch, double bsh, double bhl, double bhw,
    double *out_x, double *out_y,
) nogil:
    cdef double ca[8]
    cdef double cb[8]
    cdef int i, i2, j, j2
    _rect_corners(acx, acy, ach, ash, ahl, ahw, ca)
    _rect_corners(bcx, bcy, bch, bsh, bhl, bhw, cb)
    for i in range(4):
        i2 = (i + 1) % 4
        for j in range(4):
            j2 = (j + 1) % 4
            if _seg_intersect(
                ca[2 * i], ca[2 * i + 1], ca[2 * i2], ca[2 * i2 + 1],
                cb[2 * j], cb[2 * j + 1], cb[2 * j2], cb[2 * j2 + 1],
                out_x, out_y,
            ):
                return True
    if _point_in_rect(bcx, bcy, acx, acy, ach, ash, ahl, ahw):
        out_x[0] = bcx
        out_y[0] = bcy
        return True
    if _point_in_rect(acx, acy, bcx, bcy, bch, bsh, bhl, bhw):
        out_x[0] = acx
        out_y[0] = acy
        return True
    return False


def rect_contact(double acx, double acy, double ach, double ash, double ahl, double ahw,
                 double bcx, double bcy, double bch, double bsh, double bhl, double bhw):
    """Overlap test with a representative contact point: (hit, x, y)."""
    cdef double px = 0.0
    cdef double py = 0.0
    cdef bint hit = _rect_contact(
        acx, acy, ach, ash, ahl, ahw, bcx, bcy, bch, bsh, bhl, bhw, &px, &py
    )
    return bool(hit), px, py


def rects_collide(double acx, double acy, double ach, double ash, double ahl, double ahw,
                  double bcx, double bcy, double bch, double bsh, double bhl, double bhw):
    cdef double px = 0.0
    cdef double py = 0.0
    return bool(
        _rect_contact(acx, acy, ach, ash, ahl, ahw, bcx, bcy, bch, bsh, bhl, bhw, &px, &py)
    )


cdef inline bint _rect_barrier_contact(
    double cx, double cy, double ch, double sh, double hl, double hw,
    const double[::1] xs, const double[::1] ys, Py_ssize_t i0, Py_ssize_t i1,
    double *out_x, double *out_y, double *out_nx, double *out_ny,
) nogil:
    cdef double rad = sqrt(hl * hl + hw * hw)
    cdef double corners[8]
    cdef bint have_corners = False
    cdef Py_ssize_t k
    cdef int i, i2
    cdef double x1, y1, x2, y2, ex, ey, ee, u, ddx, ddy, ln, nx, ny, side
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
        u = ((cx - x1) * ex + (cy - y1) * ey) / ee
        if u < 0.0:
            u = 0.0
        elif u > 1.0:
            u = 1.0
        ddx = cx - (x1 + u * ex)
        ddy = cy - (y1 + u * ey)
        if ddx * ddx + ddy * ddy > rad * rad:
            continue
        if not have_corners:
            _rect_corners(cx, cy, ch, sh, hl, hw, corners)
            have_corners = True
        for i in range(4):
            i2 = (i + 1) % 4
            if _seg_intersect(
                corners[2 * i], corners[2 * i + 1],
                corners[2 * i2], corners[2 * i2 + 1],
                x1, y1, x2, y2,
                out_x, out_y,
            ):
                ln = sqrt(ee)
                nx = -ey / ln
                ny = ex / ln
                side = ex * (cy - y1) - ey * (cx - x1)
                if side < 0.0:
                    nx = -nx
                    ny = -ny
                out_nx[0] = nx
                out_ny[0] = ny
                return True
    return False


def rect_barrier_contact(double cx, double cy, double ch, double sh, double hl, double hw,
                         const double[::1] xs, const double[::1] ys,
                         Py_ssize_t i0, Py_ssize_t i1):
    """First barrier segment in [i0, i1) hit by any rectangle side."""
    cdef double px = 0.0, py = 0.0, nx = 0.0, ny = 0.0
    cdef bint hit = _rect_barrier_contact(
        cx, cy, ch, sh, hl, hw, xs, ys, i0, i1, &px, &py, &nx, &ny
    )
    return bool(hit), px, py, nx, ny


cdef inline bint _rect_obstacle_contact(
    double cx, double cy, double ch, double sh, double hl, double hw,
    double ox, double oy, double orad,
    double *out_x, double *out_y,
) nogil:
    cdef double dx = ox - cx
    cdef double dy = oy - cy
    cdef double lx = dx * ch + dy * sh
    cdef double ly = dy * ch - dx * sh
    cdef double qx = -hl if lx < -hl else (hl if lx > hl else lx)
    cdef double qy = -hw if ly < -hw else (hw if ly > hw else ly)
    cdef double ddx = lx - qx
    cdef double ddy = ly - qy
    if ddx * ddx + ddy * ddy <= orad * orad:
        out_x[0] = cx + qx * ch - qy * sh
        out_y[0] = cy + qx * sh + qy * ch
        return True
    return False


def rect_obstacle_contact(double cx, double cy, double ch, double sh, double hl, double hw,
                          double ox, double oy, double orad):
    """Disc obstacle vs rectangle: (hit, x, y)."""
    cdef double px = 0.0
    cdef double py = 0.0
    cdef bint hit = _rect_obstacle_contact(cx, cy, ch, sh, hl, hw, ox, oy, orad, &px, &py)
    return bool(hit), px, py


def scan_first_contact(
    const double[::1] zt, const double[::1] zx, const double[::1] zy,
    const double[::1] zch, const double[::1] zsh,
    double zhl, double zhw,
    const int64_t[::1] voff,
    const double[::1] vt, const double[::1] vx, const double[::1] vy,
    const double[::1] vhdg,
    const double[::1] vhl, const double[::1] vhw,
    Py_ssize_t exclude,
    const int64_t[::1] boff,
    const double[::1] bx, const double[::1] by,
    const double[::1] ox, const double[::1] oy, const double[::1] orad,
):
    """Earliest contact of a projected footprint against the factual world.

    Mirrors pure.scan_first_contact; see there for the contract.
    """
    cdef double zrad = sqrt(zhl * zhl + zhw * zhw)
    cdef Py_ssize_t n = zt.shape[0]
    cdef Py_ssize_t nveh = voff.shape[0] - 1
    cdef Py_ssize_t nbar = boff.shape[0] - 1
    cdef Py_ssize_t nobs = ox.shape[0]
    cdef Py_ssize_t i, v, b, o, s0, s1, k, ia
    cdef double t, cx, cy, ch, sh
    cdef double pxv, pyv, phd, ta, tb, u, d
    cdef double dxc, dyc, rr, hch, hsh
    cdef double px = 0.0, py = 0.0, nxx = 0.0, nyy = 0.0
    cdef bint hit

    cdef Py_ssize_t[::1] cursors = _np.zeros(nveh if nveh > 0 else 1, dtype=_np.intp)
    cdef double[::1] vrads = _np.empty(nveh if nveh > 0 else 1, dtype=_np.float64)
    for v in range(nveh):
        vrads[v] = sqrt(vhl[v] * vhl[v] + vhw[v] * vhw[v])

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
                    d = _wrap_pi(vhdg[ia + 1] - vhdg[ia])
                    phd = _wrap_pi(vhdg[ia] + d * u)
            dxc = pxv - cx
            dyc = pyv - cy
            rr = zrad + vrads[v]
            if dxc * dxc + dyc * dyc > rr * rr:
                continue
            hch = cos(phd)
            hsh = sin(phd)
            hit = _rect_contact(
                cx, cy, ch, sh, zhl, zhw, pxv, pyv, hch, hsh, vhl[v], vhw[v], &px, &py
            )
            if hit:
                return i, 0, v, px, py, 0.0, 0.0
        for b in range(nbar):
            hit = _rect_barrier_contact(
                cx, cy, ch, sh, zhl, zhw, bx, by, boff[b], boff[b + 1],
                &px, &py, &nxx, &nyy,
            )
            if hit:
                return i, 1, b, px, py, nxx, nyy
        for o in range(nobs):
            dxc = ox[o] - cx
            dyc = oy[o] - cy
            rr = zrad + orad[o]
            if dxc * dxc + dyc * dyc > rr * rr:
                continue
            hit = _rect_obstacle_contact(
                cx, cy, ch, sh, zhl, zhw, ox[o], oy[o], orad[o], &px, &py
            )
            if hit:
                return i, 2, o, px, py, 0.0, 0.0
    return -1, -1, -1, 0.0, 0.0, 0.0, 0.0


def scan_const_velocity(
    double ax0, double ay0, double avx, double avy,
    double ach, double ash, double ahl, double ahw,
    double bx0, double by0, double bvx, double bvy,
    double bch, double bsh, double bhl, double bhw,
    double sub_step, long long n_steps, double extra_t,
):
    """First time two constant-velocity footprints touch, or -1.0."""
    cdef double arad = sqrt(ahl * ahl + ahw * ahw)
    cdef double brad = sqrt(bhl * bhl + bhw * bhw)
    cdef double rr = arad + brad
    cdef long long i = 1
    cdef double t, axc, ayc, bxc, byc, dx, dy
    cdef double px = 0.0, py = 0.0
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
            if _rect_contact(
                axc, ayc, ach, ash, ahl, ahw, bxc, byc, bch, bsh, bhl, bhw, &px, &py
            ):
                return t
        i += 1
