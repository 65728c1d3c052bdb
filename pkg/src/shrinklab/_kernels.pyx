# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: adaptive Dormand-Prince 5(4) stepping of the
normalised rotational-profile equation, and exact polyline minimum distance.
Mirrors ``shrinklab._kernels_py`` operation for operation."""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, fmax, fmin, isfinite, pow, sqrt, INFINITY

cnp.import_array()

BACKEND = "cython"

STATUS_HORIZON = 0
STATUS_RADIUS_VANISHED = 1
STATUS_BLOW_UP = 2
STATUS_STEP_UNDERFLOW = 3
STATUS_MAX_STEPS = 4

cdef double _EPS = 2.220446049250313e-16

cdef double _C2 = 1.0 / 5.0, _C3 = 3.0 / 10.0, _C4 = 4.0 / 5.0, _C5 = 8.0 / 9.0
cdef double _A21 = 1.0 / 5.0
cdef double _A31 = 3.0 / 40.0, _A32 = 9.0 / 40.0
cdef double _A41 = 44.0 / 45.0, _A42 = -56.0 / 15.0, _A43 = 32.0 / 9.0
cdef double _A51 = 19372.0 / 6561.0, _A52 = -25360.0 / 2187.0
cdef double _A53 = 64448.0 / 6561.0, _A54 = -212.0 / 729.0
cdef double _A61 = 9017.0 / 3168.0, _A62 = -355.0 / 33.0, _A63 = 46732.0 / 5247.0
cdef double _A64 = 49.0 / 176.0, _A65 = -5103.0 / 18656.0
cdef double _B1 = 35.0 / 384.0, _B3 = 500.0 / 1113.0, _B4 = 125.0 / 192.0
cdef double _B5 = -2187.0 / 6784.0, _B6 = 11.0 / 84.0
cdef double _E1 = 71.0 / 57600.0, _E3 = -71.0 / 16695.0, _E4 = 71.0 / 1920.0
cdef double _E5 = -17253.0 / 339200.0, _E6 = 22.0 / 525.0, _E7 = -1.0 / 40.0


cdef inline double _rhs(double two_m, double t, double v, double w) nogil:
    # Exact 0.0 at the cylinder state (v, w) = (1, 0).
    return (1.0 + two_m * w * w) * ((1.0 / v - v) + t * w) * 0.5


def integrate_radial(int dim_n, double v0, double w0, double t0, double t1,
                     double atol, double rtol, long max_steps,
                     double v_floor, double v_ceil, double w_ceil, t_force):
    """Same contract as the pure Python twin; see ``_kernels_py``."""
    cdef double two_m = 2.0 * (dim_n - 1.0)
    cdef double direction = 1.0 if t1 >= t0 else -1.0

    if t_force is None:
        force_arr = np.empty(0, dtype=np.float64)
    else:
        force_arr = np.ascontiguousarray(np.asarray(t_force, dtype=np.float64))
    cdef Py_ssize_t n_extra = force_arr.shape[0]
    cdef Py_ssize_t i
    for i in range(1, n_extra):
        if (force_arr[i] - force_arr[i - 1]) * direction <= 0.0:
            raise ValueError("t_force must be strictly ordered in the march direction")
    force_full = np.concatenate([force_arr, [t1]])
    cdef double[::1] force = force_full
    cdef Py_ssize_t n_force = force.shape[0]

    cdef Py_ssize_t cap = 4096
    out_t = np.empty(cap, dtype=np.float64)
    out_v = np.empty(cap, dtype=np.float64)
    out_w = np.empty(cap, dtype=np.float64)
    cdef double[::1] ot = out_t
    cdef double[::1] ov = out_v
    cdef double[::1] ow = out_w
    cdef Py_ssize_t n_out = 0

    cdef double t = t0, v = v0, w = w0
    cdef int status = STATUS_MAX_STEPS

    ot[0] = t; ov[0] = v; ow[0] = w
    n_out = 1
    if v <= 0.0 or not isfinite(v) or not isfinite(w):
        return STATUS_RADIUS_VANISHED, out_t[:1].copy(), out_v[:1].copy(), out_w[:1].copy()

    cdef double k1v = w
    cdef double k1w = _rhs(two_m, t, v, w)
    cdef double k2v = 0, k2w = 0, k3v = 0, k3w = 0, k4v = 0, k4w = 0
    cdef double k5v = 0, k5w = 0, k6v = 0, k6w = 0, k7v = 0, k7w = 0
    cdef double tv, tw, v_new = 0, w_new = 0, ev, ew, err = 0
    cdef double sc_v, sc_w, d0, d1, h_nat, h, h_min, factor, base, target
    cdef bint rejected = False, clamped, bad
    cdef Py_ssize_t fi = 0
    cdef long steps = 0

    sc_v = atol + rtol * fabs(v)
    sc_w = atol + rtol * fabs(w)
    d0 = sqrt(0.5 * ((v / sc_v) * (v / sc_v) + (w / sc_w) * (w / sc_w)))
    d1 = sqrt(0.5 * ((k1v / sc_v) * (k1v / sc_v) + (k1w / sc_w) * (k1w / sc_w)))
    h_nat = 0.01 * d0 / d1 if d1 > 1e-10 else 1e-6
    h_nat = fmin(h_nat, fabs(t1 - t0))
    if h_nat <= 0.0:
        h_nat = 1e-6

    while True:
        if (t - t1) * direction >= 0.0:
            status = STATUS_HORIZON
            break
        if steps >= max_steps:
            status = STATUS_MAX_STEPS
            break
        steps += 1

        while fi < n_force - 1 and (force[fi] - t) * direction <= 0.0:
            fi += 1
        target = force[fi]

        h = direction * h_nat
        clamped = False
        if (t + h - target) * direction >= 0.0:
            h = target - t
            clamped = True

        h_min = 16.0 * _EPS * fmax(fmax(fabs(t), fabs(t + h)), 1e-3)
        if fabs(h) < h_min:
            status = STATUS_STEP_UNDERFLOW
            break

        bad = False
        tv = v + h * _A21 * k1v
        tw = w + h * _A21 * k1w
        if tv <= 0.0:
            bad = True
        else:
            k2v = tw
            k2w = _rhs(two_m, t + _C2 * h, tv, tw)
            tv = v + h * (_A31 * k1v + _A32 * k2v)
            tw = w + h * (_A31 * k1w + _A32 * k2w)
            if tv <= 0.0:
                bad = True
            else:
                k3v = tw
                k3w = _rhs(two_m, t + _C3 * h, tv, tw)
                tv = v + h * (_A41 * k1v + _A42 * k2v + _A43 * k3v)
                tw = w + h * (_A41 * k1w + _A42 * k2w + _A43 * k3w)
                if tv <= 0.0:
                    bad = True
                else:
                    k4v = tw
                    k4w = _rhs(two_m, t + _C4 * h, tv, tw)
                    tv = v + h * (_A51 * k1v + _A52 * k2v + _A53 * k3v + _A54 * k4v)
                    tw = w + h * (_A51 * k1w + _A52 * k2w + _A53 * k3w + _A54 * k4w)
                    if tv <= 0.0:
                        bad = True
                    else:
                        k5v = tw
                        k5w = _rhs(two_m, t + _C5 * h, tv, tw)
                        tv = v + h * (_A61 * k1v + _A62 * k2v + _A63 * k3v
                                      + _A64 * k4v + _A65 * k5v)
                        tw = w + h * (_A61 * k1w + _A62 * k2w + _A63 * k3w
                                      + _A64 * k4w + _A65 * k5w)
                        if tv <= 0.0:
                            bad = True
                        else:
                            k6v = tw
                            k6w = _rhs(two_m, t + h, tv, tw)
                            v_new = v + h * (_B1 * k1v + _B3 * k3v + _B4 * k4v
                                             + _B5 * k5v + _B6 * k6v)
                            w_new = w + h * (_B1 * k1w + _B3 * k3w + _B4 * k4w
                                             + _B5 * k5w + _B6 * k6w)
                            if v_new <= 0.0 or not isfinite(v_new) or not isfinite(w_new):
                                bad = True

        if not bad:
            k7v = w_new
            k7w = _rhs(two_m, t + h, v_new, w_new)
            ev = h * (_E1 * k1v + _E3 * k3v + _E4 * k4v + _E5 * k5v + _E6 * k6v + _E7 * k7v)
            ew = h * (_E1 * k1w + _E3 * k3w + _E4 * k4w + _E5 * k5w + _E6 * k6w + _E7 * k7w)
            sc_v = atol + rtol * fmax(fabs(v), fabs(v_new))
            sc_w = atol + rtol * fmax(fabs(w), fabs(w_new))
            err = sqrt(0.5 * ((ev / sc_v) * (ev / sc_v) + (ew / sc_w) * (ew / sc_w)))
            if not isfinite(err):
                bad = True

        if bad:
            rejected = True
            h_nat = 0.5 * fabs(h)
            continue

        if err <= 1.0:
            t = target if clamped else t + h
            v = v_new
            w = w_new
            k1v = k7v
            k1w = k7w
            if n_out >= cap:
                cap *= 2
                out_t = np.concatenate([out_t[:n_out], np.empty(cap - n_out)])
                out_v = np.concatenate([out_v[:n_out], np.empty(cap - n_out)])
                out_w = np.concatenate([out_w[:n_out], np.empty(cap - n_out)])
                ot = out_t; ov = out_v; ow = out_w
            ot[n_out] = t; ov[n_out] = v; ow[n_out] = w
            n_out += 1
            if v <= v_floor:
                status = STATUS_RADIUS_VANISHED
                break
            if v > v_ceil or fabs(w) > w_ceil:
                status = STATUS_BLOW_UP
                break
            factor = 10.0 if err == 0.0 else fmin(10.0, fmax(0.2, 0.9 * pow(err, -0.2)))
            if rejected:
                factor = fmin(factor, 1.0)
            rejected = False
            base = h_nat if clamped else fabs(h)
            h_nat = base * factor
        else:
            rejected = True
            h_nat = fabs(h) * fmax(0.2, 0.9 * pow(err, -0.2))

    return status, out_t[:n_out].copy(), out_v[:n_out].copy(), out_w[:n_out].copy()


cdef inline double _clamp01(double x) nogil:
    return 0.0 if x < 0.0 else (1.0 if x > 1.0 else x)


def polyline_min_distance(ax, ay, bx, by):
    """Exact minimum distance between two polylines; see ``_kernels_py``."""
    a_x = np.ascontiguousarray(np.asarray(ax, dtype=np.float64))
    a_y = np.ascontiguousarray(np.asarray(ay, dtype=np.float64))
    b_x = np.ascontiguousarray(np.asarray(bx, dtype=np.float64))
    b_y = np.ascontiguousarray(np.asarray(by, dtype=np.float64))
    cdef double[::1] AX = a_x, AY = a_y, BX = b_x, BY = b_y
    cdef Py_ssize_t na = AX.shape[0], nb = BX.shape[0]
    if na == 0 or nb == 0:
        raise ValueError("empty polyline")

    cdef double best = INFINITY
    cdef double o_pax = AX[0], o_pay = AY[0], o_pbx = BX[0], o_pby = BY[0]
    cdef Py_ssize_t o_i = 0, o_j = 0
    cdef Py_ssize_t sa = na - 1 if na > 1 else 1
    cdef Py_ssize_t sb = nb - 1 if nb > 1 else 1
    cdef Py_ssize_t i, j, i1, j1
    cdef double px1, py1, qx1, qy1, px2, py2, qx2, qy2
    cdef double d1x, d1y, d2x, d2y, rx, ry, a, e, f, c, b, denom, tnom, s, tt
    cdef double cx1, cy1, cx2, cy2, dx, dy, d2

    with nogil:
        for i in range(sa):
            i1 = i + 1 if i + 1 < na else na - 1
            px1 = AX[i]; py1 = AY[i]; qx1 = AX[i1]; qy1 = AY[i1]
            d1x = qx1 - px1; d1y = qy1 - py1
            a = d1x * d1x + d1y * d1y
            for j in range(sb):
                j1 = j + 1 if j + 1 < nb else nb - 1
                px2 = BX[j]; py2 = BY[j]; qx2 = BX[j1]; qy2 = BY[j1]
                d2x = qx2 - px2; d2y = qy2 - py2
                rx = px1 - px2; ry = py1 - py2
                e = d2x * d2x + d2y * d2y
                f = d2x * rx + d2y * ry
                if a <= 0.0 and e <= 0.0:
                    s = 0.0; tt = 0.0
                elif a <= 0.0:
                    s = 0.0
                    tt = _clamp01(f / e)
                else:
                    c = d1x * rx + d1y * ry
                    if e <= 0.0:
                        tt = 0.0
                        s = _clamp01(-c / a)
                    else:
                        b = d1x * d2x + d1y * d2y
                        denom = a * e - b * b
                        s = _clamp01((b * f - c * e) / denom) if denom > 0.0 else 0.0
                        tnom = b * s + f
                        if tnom < 0.0:
                            tt = 0.0
                            s = _clamp01(-c / a)
                        elif tnom > e:
                            tt = 1.0
                            s = _clamp01((b - c) / a)
                        else:
                            tt = tnom / e
                cx1 = px1 + s * d1x
                cy1 = py1 + s * d1y
                cx2 = px2 + tt * d2x
                cy2 = py2 + tt * d2y
                dx = cx1 - cx2; dy = cy1 - cy2
                d2 = dx * dx + dy * dy
                if d2 < best:
                    best = d2
                    o_pax = cx1; o_pay = cy1; o_pbx = cx2; o_pby = cy2
                    o_i = i; o_j = j
                    if best == 0.0:
                        break
            if best == 0.0:
                break

    return sqrt(best), o_pax, o_pay, o_pbx, o_pby, o_i, o_j
