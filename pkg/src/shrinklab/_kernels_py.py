"""Pure Python fallback for the hot kernels.

Implements the same API as the compiled extension ``shrinklab._kernels``:
an adaptive Dormand-Prince 5(4) integrator specialised to the normalised
rotational-profile equation, and exact minimum distance between two planar
polylines.  The algorithms and floating point operations mirror the Cython
version so results agree to rounding noise; only the speed differs.
"""

import math

import numpy as np

BACKEND = "python"

STATUS_HORIZON = 0
STATUS_RADIUS_VANISHED = 1
STATUS_BLOW_UP = 2
STATUS_STEP_UNDERFLOW = 3
STATUS_MAX_STEPS = 4

_EPS = 2.220446049250313e-16

# Dormand-Prince 5(4) tableau.
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0,
                                49.0 / 176.0, -5103.0 / 18656.0)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
# Error weights (5th minus embedded 4th order solution).
_E1, _E3, _E4, _E5, _E6, _E7 = (71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0,
                                -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)


def _rhs(two_m, t, v, w):
    # v'' for the radius profile normalised by sqrt(2(n-1)); two_m = 2(n-1).
    # Written so the cylinder state (v, w) = (1, 0) evaluates to exactly 0.0.
    return (1.0 + two_m * w * w) * ((1.0 / v - v) + t * w) * 0.5


def integrate_radial(dim_n, v0, w0, t0, t1, atol, rtol, max_steps,
                     v_floor, v_ceil, w_ceil, t_force):
    """March the normalised profile ODE from t0 to t1 (either direction).

    ``t_force`` lists parameter values (ordered in the march direction,
    strictly between t0 and t1) that must be hit exactly as step endpoints.
    Returns (status, t, v, w) with one row per accepted step.
    """
    two_m = 2.0 * (dim_n - 1.0)
    direction = 1.0 if t1 >= t0 else -1.0
    force = [float(x) for x in np.asarray(t_force, dtype=float)] if t_force is not None else []
    for i in range(1, len(force)):
        if (force[i] - force[i - 1]) * direction <= 0.0:
            raise ValueError("t_force must be strictly ordered in the march direction")
    force.append(t1)
    n_force = len(force)

    ts = [t0]
    vs = [v0]
    ws = [w0]
    t, v, w = t0, v0, w0
    if v <= 0.0 or not math.isfinite(v) or not math.isfinite(w):
        return STATUS_RADIUS_VANISHED, np.array(ts), np.array(vs), np.array(ws)

    k1v = w
    k1w = _rhs(two_m, t, v, w)

    sc_v = atol + rtol * abs(v)
    sc_w = atol + rtol * abs(w)
    d0 = math.sqrt(0.5 * ((v / sc_v) ** 2 + (w / sc_w) ** 2))
    d1 = math.sqrt(0.5 * ((k1v / sc_v) ** 2 + (k1w / sc_w) ** 2))
    h_nat = 0.01 * d0 / d1 if d1 > 1e-10 else 1e-6
    h_nat = min(h_nat, abs(t1 - t0))
    if h_nat <= 0.0:
        h_nat = 1e-6

    status = STATUS_MAX_STEPS
    fi = 0
    rejected = False
    steps = 0
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

        h_min = 16.0 * _EPS * max(abs(t), abs(t + h), 1e-3)
        if abs(h) < h_min:
            status = STATUS_STEP_UNDERFLOW
            break

        bad = False
        v_new = w_new = k7v = k7w = 0.0
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
                            if v_new <= 0.0 or not math.isfinite(v_new) or not math.isfinite(w_new):
                                bad = True

        if not bad:
            k7v = w_new
            k7w = _rhs(two_m, t + h, v_new, w_new)
            ev = h * (_E1 * k1v + _E3 * k3v + _E4 * k4v + _E5 * k5v + _E6 * k6v + _E7 * k7v)
            ew = h * (_E1 * k1w + _E3 * k3w + _E4 * k4w + _E5 * k5w + _E6 * k6w + _E7 * k7w)
            sc_v = atol + rtol * max(abs(v), abs(v_new))
            sc_w = atol + rtol * max(abs(w), abs(w_new))
            err = math.sqrt(0.5 * ((ev / sc_v) ** 2 + (ew / sc_w) ** 2))
            if not math.isfinite(err):
                bad = True

        if bad:
            rejected = True
            h_nat = 0.5 * abs(h)
            continue

        if err <= 1.0:
            t = target if clamped else t + h
            v, w = v_new, w_new
            k1v, k1w = k7v, k7w  # FSAL
            ts.append(t)
            vs.append(v)
            ws.append(w)
            if v <= v_floor:
                status = STATUS_RADIUS_VANISHED
                break
            if v > v_ceil or abs(w) > w_ceil:
                status = STATUS_BLOW_UP
                break
            factor = 10.0 if err == 0.0 else min(10.0, max(0.2, 0.9 * err ** -0.2))
            if rejected:
                factor = min(factor, 1.0)
            rejected = False
            # Resume from the natural step after a clamped (shortened) one.
            base = h_nat if clamped else abs(h)
            h_nat = base * factor
        else:
            rejected = True
            h_nat = abs(h) * max(0.2, 0.9 * err ** -0.2)

    return status, np.array(ts), np.array(vs), np.array(ws)


def _seg_seg(px1, py1, qx1, qy1, px2, py2, qx2, qy2):
    # Closest points between segments [P1,Q1] and [P2,Q2]; returns
    # (dist2, s, t) with parameters clamped to [0, 1].
    d1x, d1y = qx1 - px1, qy1 - py1
    d2x, d2y = qx2 - px2, qy2 - py2
    rx, ry = px1 - px2, py1 - py2
    a = d1x * d1x + d1y * d1y
    e = d2x * d2x + d2y * d2y
    f = d2x * rx + d2y * ry
    if a <= 0.0 and e <= 0.0:
        s = tt = 0.0
    elif a <= 0.0:
        s = 0.0
        tt = min(1.0, max(0.0, f / e))
    else:
        c = d1x * rx + d1y * ry
        if e <= 0.0:
            tt = 0.0
            s = min(1.0, max(0.0, -c / a))
        else:
            b = d1x * d2x + d1y * d2y
            denom = a * e - b * b
            s = min(1.0, max(0.0, (b * f - c * e) / denom)) if denom > 0.0 else 0.0
            tnom = b * s + f
            if tnom < 0.0:
                tt = 0.0
                s = min(1.0, max(0.0, -c / a))
            elif tnom > e:
                tt = 1.0
                s = min(1.0, max(0.0, (b - c) / a))
            else:
                tt = tnom / e
    cx1 = px1 + s * d1x
    cy1 = py1 + s * d1y
    cx2 = px2 + tt * d2x
    cy2 = py2 + tt * d2y
    dx, dy = cx1 - cx2, cy1 - cy2
    return dx * dx + dy * dy, s, tt


def polyline_min_distance(ax, ay, bx, by):
    """Exact minimum distance between two polylines in the plane.

    Returns (dist, pax, pay, pbx, pby, ia, ib): the closest points on each
    polyline and the indices of the segments attaining the minimum.
    """
    ax = np.asarray(ax, dtype=float)
    ay = np.asarray(ay, dtype=float)
    bx = np.asarray(bx, dtype=float)
    by = np.asarray(by, dtype=float)
    na, nb = len(ax), len(bx)
    if na == 0 or nb == 0:
        raise ValueError("empty polyline")
    best = float("inf")
    out = (math.inf, ax[0], ay[0], bx[0], by[0], 0, 0)
    sa = max(na - 1, 1)
    sb = max(nb - 1, 1)
    for i in range(sa):
        i1 = min(i + 1, na - 1)
        for j in range(sb):
            j1 = min(j + 1, nb - 1)
            d2, s, tt = _seg_seg(ax[i], ay[i], ax[i1], ay[i1],
                                 bx[j], by[j], bx[j1], by[j1])
            if d2 < best:
                best = d2
                pax = ax[i] + s * (ax[i1] - ax[i])
                pay = ay[i] + s * (ay[i1] - ay[i])
                pbx = bx[j] + tt * (bx[j1] - bx[j])
                pby = by[j] + tt * (by[j1] - by[j])
                out = (math.sqrt(best), pax, pay, pbx, pby, i, j)
                if best == 0.0:
                    return out
    return out
