"""Rotational self-shrinker profiles: forward shooting, the cone-asymptotic
family, property checks and equation residuals.

The profile u(t) of a rotational hypersurface (u(t) omega, -t) is weighted
minimal exactly when

    u'' = (1 + u'^2) * ((n-1)/u + (t u' - u)/2).

Two marching modes are provided.  ``integrate_profile`` integrates this
initial value problem outward, which is honest but ill-conditioned: the
equation amplifies perturbations roughly like exp((1+theta^2) t^2/4), so any
double-precision outward run leaves the true solution near t ~ 10-14 (sooner
for steep profiles).  ``catenoid_profile`` therefore builds the
cone-asymptotic family the stable way: it seeds the far-field expansion

    u = theta t + c1/t + c3/t^3 + O(1/t^5),   c1 = (n-1)/theta,

at a sufficiently large parameter and integrates inward, where the same
amplification factor now damps all errors.  The boundary radius u(0) and
boundary slope u'(0) > 0 of each family member are outputs, not inputs; the
inward-constructed curves are the ones that satisfy the defining properties
(convexity, 0 < u' < theta, u > theta t) to working precision.

Everything is phrased internally in radius units normalised by the cylinder
radius sqrt(2(n-1)), which makes the cylinder state an exact floating point
equilibrium of the right-hand side.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._backend import kernels
from .errors import (BracketError, EstimateError, IntegrationError, NonMonotoneError,
                     OutOfRangeError, PreconditionError)
from .geometry import rotational_scalars

DEFAULT_ATOL = 1e-10
DEFAULT_RTOL = 1e-10
DEFAULT_HORIZON = 50.0
DEFAULT_MAX_STEPS = 2_000_000
RADIUS_FLOOR = 1e-8          # stop when u drops below this (ambient units)
SLOPE_AGREEMENT = 0.05       # default |u/T - u'| tolerance, relative to theta
SERIES_RHO = 1e-3            # far-field expansion parameter (n-1)/(theta T^2)
THETA_PROBE_MAX = 2000.0     # steep end used to probe the boundary-radius floor
THETA_SOLVE_MAX = 1e4
THETA_SOLVE_MIN = 1e-4

TERMINATIONS = {
    kernels.STATUS_HORIZON: "reached_horizon",
    kernels.STATUS_RADIUS_VANISHED: "radius_vanished",
    kernels.STATUS_BLOW_UP: "blow_up",
    kernels.STATUS_STEP_UNDERFLOW: "step_underflow",
    kernels.STATUS_MAX_STEPS: "max_steps",
}


def cylinder_radius(dim_n):
    """Radius of the weighted-minimal cylinder orbit, sqrt(2(n-1))."""
    if dim_n < 2:
        raise PreconditionError("dim_n must be >= 2")
    return math.sqrt(2.0 * (dim_n - 1.0))


def profile_rhs(dim_n, t, u, u_prime):
    """u'' for a weighted-minimal rotational profile; raises if u <= 0."""
    if dim_n < 2:
        raise PreconditionError("dim_n must be >= 2")
    if u <= 0.0:
        raise PreconditionError("radius collapsed: u must be positive")
    return (1.0 + u_prime * u_prime) * ((dim_n - 1.0) / u + (t * u_prime - u) / 2.0)


@dataclass
class ProfileCurve:
    """Sampled profile (t_i, u_i, u'_i) with C^1 interpolation.

    ``theta_hat`` is filled by construction (inward mode) or by
    :func:`estimate_theta`.  ``meta`` carries the construction record,
    including forced residual stencils when they were requested.
    """

    dim_n: int
    t: np.ndarray
    u: np.ndarray
    u_prime: np.ndarray
    termination: str
    theta_hat: float | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.t = np.asarray(self.t, dtype=float)
        self.u = np.asarray(self.u, dtype=float)
        self.u_prime = np.asarray(self.u_prime, dtype=float)
        if not (self.t.shape == self.u.shape == self.u_prime.shape) or self.t.ndim != 1:
            raise PreconditionError("t, u, u_prime must be 1-d arrays of equal length")
        if self.t.size < 1:
            raise PreconditionError("empty profile")
        if self.t.size > 1 and not np.all(np.diff(self.t) > 0):
            raise PreconditionError("t must be strictly increasing")
        if not np.all(self.u > 0):
            raise PreconditionError("u must be positive at every retained sample")

    def __len__(self):
        return self.t.size

    @property
    def samples(self):
        return list(zip(self.t.tolist(), self.u.tolist(), self.u_prime.tolist()))

    @property
    def horizon(self):
        return float(self.t[-1])

    @property
    def initial_radius(self):
        return float(self.u[0])

    def _cell(self, tq):
        lo, hi = self.t[0], self.t[-1]
        if tq < lo or tq > hi:
            raise OutOfRangeError(f"t={tq:.9g} outside sampled range [{lo:.9g}, {hi:.9g}]")
        i = int(np.searchsorted(self.t, tq, side="right") - 1)
        return min(max(i, 0), self.t.size - 2)

    def sample_index(self, tq):
        """Index of the sample at exactly tq, or None."""
        i = int(np.searchsorted(self.t, tq))
        if i < self.t.size and self.t[i] == tq:
            return i
        return None

    def _hermite(self, tq):
        i = self.sample_index(tq)
        if i is not None:
            return ("node", i)
        return ("cell", self._cell(tq))

    def u_at(self, tq):
        kind, i = self._hermite(float(tq))
        if kind == "node":
            return float(self.u[i])
        t0, t1 = self.t[i], self.t[i + 1]
        dt = t1 - t0
        x = (tq - t0) / dt
        h00 = (2 * x - 3) * x * x + 1
        h10 = ((x - 2) * x + 1) * x
        h01 = (3 - 2 * x) * x * x
        h11 = (x - 1) * x * x
        return float(h00 * self.u[i] + h10 * dt * self.u_prime[i]
                     + h01 * self.u[i + 1] + h11 * dt * self.u_prime[i + 1])

    def u_prime_at(self, tq):
        kind, i = self._hermite(float(tq))
        if kind == "node":
            return float(self.u_prime[i])
        t0, t1 = self.t[i], self.t[i + 1]
        dt = t1 - t0
        x = (tq - t0) / dt
        d00 = 6 * x * (x - 1) / dt
        d10 = (3 * x - 4) * x + 1
        d01 = -6 * x * (x - 1) / dt
        d11 = (3 * x - 2) * x
        return float(d00 * self.u[i] + d10 * self.u_prime[i]
                     + d01 * self.u[i + 1] + d11 * self.u_prime[i + 1])

    def u_double_prime_at(self, tq):
        """Second derivative of the C^1 interpolant (independent of any ODE)."""
        tq = float(tq)
        kind, i = self._hermite(tq)
        if kind == "node":
            i = min(i, self.t.size - 2)
            if self.t.size < 2:
                raise OutOfRangeError("need at least two samples")
            x = 0.0 if self.sample_index(tq) == i else 1.0
        else:
            t0, t1 = self.t[i], self.t[i + 1]
            x = (tq - t0) / (t1 - t0)
        t0, t1 = self.t[i], self.t[i + 1]
        dt = t1 - t0
        s00 = (12 * x - 6) / (dt * dt)
        s10 = (6 * x - 4) / dt
        s01 = (6 - 12 * x) / (dt * dt)
        s11 = (6 * x - 2) / dt
        return float(s00 * self.u[i] + s10 * self.u_prime[i]
                     + s01 * self.u[i + 1] + s11 * self.u_prime[i + 1])


@dataclass(frozen=True)
class ShooterConfig:
    """Initial data and integrator settings for the outward march."""

    dim_n: int
    initial_radius: float
    initial_slope: float = 0.0
    horizon: float = DEFAULT_HORIZON
    atol: float = DEFAULT_ATOL
    rtol: float = DEFAULT_RTOL
    max_steps: int = DEFAULT_MAX_STEPS
    t_eval: tuple = ()

    def __post_init__(self):
        R0 = cylinder_radius(self.dim_n)
        # Closed right endpoint so the representable cylinder start is legal.
        if not 0.0 < self.initial_radius <= R0:
            raise PreconditionError(
                f"initial radius must lie in (0, {R0!r}], got {self.initial_radius!r}")
        if self.initial_slope < 0.0:
            raise PreconditionError("initial slope must be >= 0")
        if not self.horizon > 0.0:
            raise PreconditionError("horizon must be positive")
        if self.atol <= 0.0 or self.rtol <= 0.0:
            raise PreconditionError("tolerances must be positive")
        for tv in self.t_eval:
            if not 0.0 < tv < self.horizon:
                raise PreconditionError("t_eval points must lie strictly inside (0, horizon)")

    def as_dict(self):
        return {
            "dim_n": self.dim_n,
            "initial_radius": self.initial_radius,
            "initial_slope": self.initial_slope,
            "horizon": self.horizon,
            "atol": self.atol,
            "rtol": self.rtol,
            "max_steps": self.max_steps,
            "t_eval": list(self.t_eval),
        }


def integrate_profile(config):
    """Outward march of the profile equation from (u, u')(0).

    Terminations are reported honestly: ``reached_horizon`` only when the
    horizon was met, ``radius_vanished`` when u fell below 1e-8, ``blow_up``
    when the slope or radius exploded, ``step_underflow``/``max_steps`` when
    stepping died.  Because of the exp(t^2/4) error amplification discussed in
    the module docstring, horizons much beyond t ~ 10 cannot be certified in
    double precision; the residual checks expose this.
    """
    R0 = cylinder_radius(config.dim_n)
    force = np.asarray(sorted(set(float(x) for x in config.t_eval)), dtype=float)
    status, ts, vs, ws = kernels.integrate_radial(
        config.dim_n, config.initial_radius / R0, config.initial_slope / R0,
        0.0, config.horizon, config.atol, config.rtol, config.max_steps,
        RADIUS_FLOOR / R0, 1e9, 1e10, force)
    return ProfileCurve(
        dim_n=config.dim_n,
        t=ts,
        u=R0 * vs,
        u_prime=R0 * ws,
        termination=TERMINATIONS[status],
        meta={"mode": "outward", "config": config.as_dict(), "backend": kernels.BACKEND},
    )


# ---------------------------------------------------------------------------
# Cone-asymptotic family
# ---------------------------------------------------------------------------

def far_field_state(dim_n, theta, t):
    """(u, u') of the slope-theta member from the far-field expansion."""
    m = dim_n - 1.0
    c1 = m / theta
    c3 = -(m / (2.0 * theta)) * (m / theta ** 2 + 2.0 / (1.0 + theta ** 2))
    u = theta * t + c1 / t + c3 / t ** 3
    up = theta - c1 / t ** 2 - 3.0 * c3 / t ** 4
    return u, up


def _far_horizon(dim_n, theta, rho):
    return math.sqrt((dim_n - 1.0) / (theta * rho))


def residual_checkpoints(theta, ts, base_step=1e-3):
    """(t, h) pairs for five-point equation-residual stencils.

    The step scales like sqrt(u) to balance rounding against truncation in
    the second difference; u is estimated from the cone slope.
    """
    out = []
    for t in ts:
        u_est = max(1.0, theta * t)
        out.append((float(t), base_step * math.sqrt(u_est)))
    return out


def _stencil_points(checkpoints):
    pts = []
    for t, h in checkpoints:
        pts.extend([t - 2 * h, t - h, t, t + h, t + 2 * h])
    return np.unique(np.asarray(pts, dtype=float))


def catenoid_profile(dim_n, theta, horizon=None, atol=DEFAULT_ATOL, rtol=DEFAULT_RTOL,
                     series_rho=SERIES_RHO, ensure_agreement=False,
                     residual_ts=None, max_steps=DEFAULT_MAX_STEPS):
    """Construct the slope-theta half profile by stable inward integration.

    The far-field expansion seeds (u, u') at a horizon where its parameter
    (n-1)/(theta T^2) is at most ``series_rho``; marching inward to t = 0 then
    damps both the seeding error and all local integration errors.  With
    ``ensure_agreement`` the horizon is enlarged until the slope and secant
    estimates of theta agree within the default acceptance band.
    ``residual_ts`` requests exact five-point collocation stencils at the
    given parameters for later equation-residual checks.
    """
    if dim_n < 2:
        raise PreconditionError("dim_n must be >= 2")
    if not theta > 0:
        raise PreconditionError("theta must be positive")
    R0 = cylinder_radius(dim_n)
    m = dim_n - 1.0

    T = _far_horizon(dim_n, theta, series_rho)
    if horizon is not None:
        if horizon <= 0:
            raise PreconditionError("horizon must be positive")
        T = max(T, float(horizon))
    if ensure_agreement:
        # |u/T - u'| ~ 2(n-1)/(theta T^2); keep it under half the band.
        T = max(T, math.sqrt(4.0 * m / (SLOPE_AGREEMENT * theta * theta)))

    checkpoints = None
    force = None
    if residual_ts is not None:
        checkpoints = residual_checkpoints(theta, residual_ts)
        pts = _stencil_points(checkpoints)
        if pts.size and (pts[0] <= 0.0 or pts[-1] >= T):
            raise PreconditionError("residual stencils must lie strictly inside (0, horizon)")
        force = pts[::-1].copy()  # inward march: descending order

    u_far, up_far = far_field_state(dim_n, theta, T)
    status, ts, vs, ws = kernels.integrate_radial(
        dim_n, u_far / R0, up_far / R0, T, 0.0, atol, rtol, max_steps,
        RADIUS_FLOOR / R0, 1e9, 1e12, force)
    if status != kernels.STATUS_HORIZON:
        raise IntegrationError(
            f"inward construction failed: {TERMINATIONS[status]} at t={ts[-1]:.6g} "
            f"(theta={theta:.6g}, n={dim_n})")

    ts = ts[::-1].copy()
    us = (R0 * vs)[::-1].copy()
    ups = (R0 * ws)[::-1].copy()
    meta = {
        "mode": "cone_asymptotic",
        "theta": theta,
        "far_field_horizon": T,
        "series_rho": series_rho,
        "atol": atol,
        "rtol": rtol,
        "backend": kernels.BACKEND,
    }
    if checkpoints is not None:
        meta["residual_checkpoints"] = checkpoints
    prof = ProfileCurve(dim_n=dim_n, t=ts, u=us, u_prime=ups,
                        termination="reached_horizon", theta_hat=float(theta), meta=meta)
    return prof


def theta_to_radius(dim_n, theta, atol=DEFAULT_ATOL, rtol=DEFAULT_RTOL):
    """Boundary radius u(0) of the slope-theta family member."""
    # Soften the series target for very steep members: the inward march is
    # stability-limited to O(theta) steps per unit parameter.
    rho = SERIES_RHO * max(1.0, theta / 300.0)
    prof = catenoid_profile(dim_n, theta, series_rho=rho, atol=atol, rtol=rtol)
    return prof.initial_radius


@lru_cache(maxsize=None)
def family_radius_floor(dim_n):
    """Infimum of attainable boundary radii (steep-slope limit), probed once.

    Boundary radii do not fill (0, sqrt(2(n-1))): as theta grows, u(0)
    decreases only to a positive floor (about 0.62, 0.71, 0.75 times the
    cylinder radius for n = 2, 3, 4).
    """
    return theta_to_radius(dim_n, THETA_PROBE_MAX)


def _illinois(f, lo, hi, flo, fhi, xtol, ftol, max_iter=200):
    # Regula falsi with the Illinois weighting; f(lo), f(hi) must straddle 0.
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise BracketError("root bracket does not straddle the target")
    side = 0
    for _ in range(max_iter):
        x = (lo * fhi - hi * flo) / (fhi - flo)
        if not lo < x < hi and not hi < x < lo:
            x = 0.5 * (lo + hi)
        fx = f(x)
        if abs(fx) <= ftol or abs(hi - lo) <= xtol * max(1.0, abs(x)):
            return x
        if fx * flo < 0:
            hi, fhi = x, fx
            if side == -1:
                flo *= 0.5
            side = -1
        else:
            lo, flo = x, fx
            if side == 1:
                fhi *= 0.5
            side = 1
    raise BracketError("root search did not converge")


def radius_to_theta(dim_n, boundary_radius, theta_tol=1e-10, atol=DEFAULT_ATOL,
                    rtol=DEFAULT_RTOL):
    """Asymptotic slope of the family member with the given boundary radius.

    Inverts the strictly decreasing map theta -> u(0) by a bracketed root
    search in log(theta).  Radii at or below the family floor (see
    :func:`family_radius_floor`) have no cone-asymptotic member and raise
    BracketError.
    """
    R0 = cylinder_radius(dim_n)
    a = float(boundary_radius)
    if not 0.0 < a < R0:
        raise PreconditionError(
            f"boundary radius must lie in (0, {R0!r}), got {a!r}")

    def g(log_th):
        return theta_to_radius(dim_n, math.exp(log_th), atol=atol, rtol=rtol) - a

    lo, hi = math.log(0.05), math.log(20.0)
    glo = g(lo)
    while glo < 0.0:  # a(theta_lo) < a: need a shallower slope
        lo -= math.log(8.0)
        if lo < math.log(THETA_SOLVE_MIN):
            raise BracketError(
                f"boundary radius {a!r} too close to the cylinder radius {R0!r}")
        glo = g(lo)
    ghi = g(hi)
    while ghi > 0.0:  # a(theta_hi) > a: need a steeper slope
        hi += math.log(8.0)
        if hi > math.log(THETA_SOLVE_MAX):
            raise BracketError(
                f"no cone-asymptotic profile with boundary radius {a!r}; the "
                f"attainable radii for n={dim_n} lie in "
                f"({family_radius_floor(dim_n):.6f}, {R0:.6f})")
        ghi = g(hi)
    root = _illinois(g, lo, hi, glo, ghi, xtol=theta_tol, ftol=1e-12)
    return math.exp(root)


def estimate_theta(profile, agreement=SLOPE_AGREEMENT):
    """Asymptotic slope estimate u'(T), with the secant u(T)/T as cross-check.

    Requires a profile that reached its horizon; raises EstimateError when the
    two estimates disagree by more than ``agreement`` relative to the slope
    (horizon too short).  Stores the estimate on the profile.
    """
    if profile.termination != "reached_horizon":
        raise EstimateError(
            f"profile did not reach its horizon (termination={profile.termination})")
    T = profile.horizon
    if T <= 0:
        raise EstimateError("degenerate horizon")
    slope = float(profile.u_prime[-1])
    secant = float(profile.u[-1]) / T
    err = abs(secant - slope)
    scale = max(abs(slope), 1e-12)
    if err > agreement * scale:
        raise EstimateError(
            f"slope estimates disagree: u'(T)={slope:.6g} vs u(T)/T={secant:.6g} "
            f"(spread {err:.3g} > {agreement:.3g} * {scale:.3g}); extend the horizon")
    profile.theta_hat = slope
    profile.meta["theta_err"] = err
    return slope


def find_catenoid(dim_n, theta_target, bracket=None, theta_tol=1e-6,
                  radius_tol=1e-11, horizon=None, residual_ts=None,
                  atol=DEFAULT_ATOL, rtol=DEFAULT_RTOL):
    """Member of the cone-asymptotic family with slope ``theta_target``.

    Bisects on the boundary radius between ``bracket`` endpoints until the
    slope of the bisection iterate matches the target, verifying along the
    way that the sampled shooting map stays strictly decreasing.  The
    returned profile carries theta_hat within ``theta_tol`` (relative) of the
    target and passes :func:`catenoid_property_check`.
    """
    if not theta_target > 0:
        raise PreconditionError("theta_target must be positive")
    R0 = cylinder_radius(dim_n)
    if bracket is None:
        floor = family_radius_floor(dim_n)
        bracket = (floor * (1.0 + 1e-6), R0 * (1.0 - 1e-9))
    a_lo, a_hi = (float(bracket[0]), float(bracket[1]))
    if not 0 < a_lo < a_hi < R0:
        raise PreconditionError("bracket must satisfy 0 < a_lo < a_hi < cylinder radius")

    def theta_at(a):
        try:
            return radius_to_theta(dim_n, a, atol=atol, rtol=rtol)
        except BracketError:
            return math.inf  # below the family floor: steeper than any member

    th_lo = theta_at(a_lo)   # large slope end
    th_hi = theta_at(a_hi)   # small slope end
    if not (th_hi <= theta_target <= th_lo):
        raise BracketError(
            f"bracket radii ({a_lo!r}, {a_hi!r}) give slopes ({th_lo:.6g}, {th_hi:.6g}) "
            f"that do not straddle theta={theta_target!r}")

    seen = [(a_lo, th_lo), (a_hi, th_hi)]
    theta_mid = None
    lo, hi = a_lo, a_hi
    while hi - lo > radius_tol * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        theta_mid = theta_at(mid)
        seen.append((mid, theta_mid))
        ordered = sorted(seen)
        slopes = [th for _, th in ordered]
        for (a1, t1), (a2, t2) in zip(ordered, ordered[1:]):
            if t2 > t1 + 1e-7 * max(1.0, abs(t1)):
                raise NonMonotoneError(
                    f"shooting map not decreasing: theta({a1:.9g})={t1:.9g} < "
                    f"theta({a2:.9g})={t2:.9g}")
        del slopes
        if abs(theta_mid - theta_target) <= theta_tol * max(1.0, abs(theta_target)):
            break
        if theta_mid > theta_target:
            lo = mid
        else:
            hi = mid
    if theta_mid is None or abs(theta_mid - theta_target) > theta_tol * max(1.0, abs(theta_target)):
        raise BracketError("bisection exhausted the bracket without matching the slope")

    prof = catenoid_profile(dim_n, theta_mid, horizon=horizon, ensure_agreement=True,
                            residual_ts=residual_ts, atol=atol, rtol=rtol)
    prof.meta["bisection_radius"] = 0.5 * (lo + hi)
    prof.meta["theta_target"] = theta_target
    return prof


# ---------------------------------------------------------------------------
# Property checks and equation residuals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CatenoidPropertyReport:
    """Worst-case margins for the defining properties of the family."""

    cone_bound_ok: bool          # u(t) > theta * t for t > 0
    cone_bound_margin: float
    radius_bound_ok: bool        # u(0) < sqrt(2(n-1))
    radius_bound_margin: float
    slope_agreement_ok: bool     # u(T)/T vs u'(T)
    slope_agreement: float
    convex_ok: bool              # u'' > 0 through the equation
    convexity_margin: float
    slope_range_ok: bool         # 0 < u' on (0, T], u' <= theta_hat
    slope_min: float
    slope_max: float
    theta_hat: float

    @property
    def passed(self):
        return (self.cone_bound_ok and self.radius_bound_ok and self.slope_agreement_ok
                and self.convex_ok and self.slope_range_ok)


def catenoid_property_check(profile, agreement=SLOPE_AGREEMENT):
    """Check the defining properties of a cone-asymptotic profile.

    Always returns a report; the degenerate cylinder profile fails the slope
    positivity clause, which is the expected theta -> 0 behaviour.
    """
    th = profile.theta_hat
    if th is None:
        th = estimate_theta(profile, agreement=agreement)
    interior = profile.t > 0.0

    cone = profile.u[interior] - th * profile.t[interior]
    cone_margin = float(cone.min()) if cone.size else math.inf
    R0 = cylinder_radius(profile.dim_n)
    radius_margin = R0 - profile.initial_radius

    T = profile.horizon
    slope_agree = abs(float(profile.u[-1]) / T - float(profile.u_prime[-1])) if T > 0 else math.inf

    upp = np.array([profile_rhs(profile.dim_n, tt, uu, pp)
                    for tt, uu, pp in zip(profile.t, profile.u, profile.u_prime)])
    convex_margin = float(upp.min())

    p_int = profile.u_prime[interior]
    slope_min = float(p_int.min()) if p_int.size else math.inf
    slope_max = float(profile.u_prime.max())

    return CatenoidPropertyReport(
        cone_bound_ok=bool(cone_margin > 0.0) and profile.initial_radius > 0.0,
        cone_bound_margin=cone_margin,
        radius_bound_ok=bool(radius_margin > 0.0),
        radius_bound_margin=float(radius_margin),
        slope_agreement_ok=bool(slope_agree <= agreement * max(abs(th), 1e-12)),
        slope_agreement=float(slope_agree),
        convex_ok=bool(convex_margin > 0.0),
        convexity_margin=convex_margin,
        slope_range_ok=bool(slope_min > 0.0 and slope_max <= th * (1.0 + 1e-9)),
        slope_min=slope_min,
        slope_max=slope_max,
        theta_hat=float(th),
    )


def shrinker_residuals(profile, checkpoints=None):
    """|H_phi| at interior checkpoints, from radius samples alone.

    Uses the five-point collocation stencils recorded at construction when
    available (sample values are exact integrator states there); otherwise
    falls back to interpolated differencing, which is roughly two orders of
    magnitude coarser.  Returns (ts, residuals).
    """
    if checkpoints is None:
        checkpoints = profile.meta.get("residual_checkpoints")
    if checkpoints is None:
        th = profile.theta_hat if profile.theta_hat is not None else 1.0
        span = profile.horizon - profile.t[0]
        ts = np.linspace(profile.t[0] + 0.05 * span, profile.t[0] + 0.9 * span, 16)
        checkpoints = residual_checkpoints(max(abs(th), 0.1), ts)

    ts_out, res = [], []
    for t, h in checkpoints:
        idx = [profile.sample_index(t + k * h) for k in (-2, -1, 0, 1, 2)]
        if all(i is not None for i in idx):
            um2, um1, u0, up1, up2 = (float(profile.u[i]) for i in idx)
        else:
            um2, um1 = profile.u_at(t - 2 * h), profile.u_at(t - h)
            u0 = profile.u_at(t)
            up1, up2 = profile.u_at(t + h), profile.u_at(t + 2 * h)
        d1 = (um2 - 8.0 * um1 + 8.0 * up1 - up2) / (12.0 * h)
        d2 = (-um2 + 16.0 * um1 - 30.0 * u0 + 16.0 * up1 - up2) / (12.0 * h * h)
        ts_out.append(t)
        res.append(abs(rotational_scalars(profile.dim_n, t, u0, d1, d2).H_phi))
    return np.asarray(ts_out), np.asarray(res)


# ---------------------------------------------------------------------------
# Vertical translation
# ---------------------------------------------------------------------------

def translated_catenoid_hphi(profile, s, t):
    """H_phi of the profile surface lifted by s along the rotation axis.

    Lifting x -> x + s e_{n+1} changes only the support term, so
    H_phi = s u'(t) / (2 sqrt(1 + u'(t)^2)): positive wherever s > 0 and
    u' > 0.  (A frequently quoted form of this expression drops the factor
    1/2 coming from H_phi = H + <x, N>/2; see ``translated_hphi_detail``.)
    """
    up = profile.u_prime_at(float(t))
    return 0.5 * s * up / math.hypot(1.0, up)


@dataclass(frozen=True)
class TranslatedHphi:
    value: float           # derived from the support term, factor 1/2 included
    printed_form: float    # the same expression without the 1/2
    fd_value: float        # independent finite-difference evaluation


def translated_hphi_detail(profile, s, t, h=None, order=4):
    """Derived, legacy-form and finite-difference values of the lifted H_phi.

    The finite-difference route re-evaluates the full rotational bundle of
    the lifted immersion from radius samples alone, so it is independent of
    both the formula and the stored slope channel.
    """
    t = float(t)
    value = translated_catenoid_hphi(profile, s, t)
    up = profile.u_prime_at(t)
    printed = s * up / math.hypot(1.0, up)

    if h is None:
        h = 1e-3 * math.sqrt(max(1.0, profile.u_at(t)))
    idx = [profile.sample_index(t + k * h) for k in (-2, -1, 0, 1, 2)]
    if all(i is not None for i in idx):
        um2, um1, u0, up1, up2 = (float(profile.u[i]) for i in idx)
    else:
        um2, um1 = profile.u_at(t - 2 * h), profile.u_at(t - h)
        u0 = profile.u_at(t)
        up1, up2 = profile.u_at(t + h), profile.u_at(t + 2 * h)
    d1 = (um2 - 8.0 * um1 + 8.0 * up1 - up2) / (12.0 * h)
    d2 = (-um2 + 16.0 * um1 - 30.0 * u0 + 16.0 * up1 - up2) / (12.0 * h * h)
    # The lifted surface is the rotational graph v(tau) = u(tau + s) over
    # tau = t - s; only the support term changes.
    base = rotational_scalars(profile.dim_n, t, u0, d1, d2)
    s2 = math.hypot(1.0, d1)
    support_shift = (u0 - (t - s) * d1) / s2
    fd = base.H + 0.5 * support_shift
    return TranslatedHphi(value=float(value), printed_form=float(printed), fd_value=float(fd))
