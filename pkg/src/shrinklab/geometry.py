"""Closed-form weighted geometry of the model hypersurfaces, plus two
independent finite-difference oracles.

The ambient space is Euclidean R^(n+1) carrying the log-density
phi(x) = -|x|^2/4.  Orientation conventions are fixed once: outward normals
on spheres and cylinders, the upward normal e_{n+1} on horizontal
hyperplanes, and (omega, u')-type normals on rotational graphs.  With these
choices the mean curvature H is the trace of the second fundamental form
A(X, Y) = <D_X Y, N>, so H(S^n(R)) = -n/R, and the weighted mean curvature

    H_phi = H + <x, N>/2

vanishes exactly on self-shrinkers.  Sign anchors: H_phi(S^n(R)) = R/2 - n/R,
H_phi(P_t) = t/2, H_phi(S^k(R) x R^(n-k)) = R/2 - k/R.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import OutOfRangeError, PreconditionError

RIC_PHI = 0.5  # Ric - Hess(phi) = I/2 on unit vectors, everywhere in this space.


@dataclass(frozen=True)
class GaussianSpace:
    """Euclidean R^(n+1) with log-density phi(x) = -|x|^2/4."""

    ambient_dim: int

    def __post_init__(self):
        if self.ambient_dim < 2:
            raise PreconditionError("ambient_dim must be >= 2")

    def phi(self, x):
        x = np.asarray(x, dtype=float)
        return -0.25 * np.sum(x * x, axis=-1)

    def weight(self, x):
        return np.exp(self.phi(x))

    def ric_phi(self, direction=None):
        return RIC_PHI

    def phi_hessian(self):
        return -0.5 * np.eye(self.ambient_dim)


@dataclass(frozen=True)
class WeightedScalars:
    """The quantity bundle every model-surface evaluation produces."""

    H: float
    support: float          # <x, N>
    H_phi: float            # always H + support/2, exactly
    A_norm_sq: float        # |A|^2
    ric_phi: float = RIC_PHI


def _bundle(H, support, A_norm_sq):
    return WeightedScalars(H=H, support=support, H_phi=H + 0.5 * support,
                           A_norm_sq=A_norm_sq)


@dataclass(frozen=True)
class Sphere:
    """S^n(R) centered at the origin, outward normal."""

    dim_n: int
    radius: float

    def __post_init__(self):
        if self.dim_n < 1:
            raise PreconditionError("dim_n must be >= 1")
        if not self.radius > 0:
            raise PreconditionError("sphere radius must be positive")


@dataclass(frozen=True)
class Hyperplane:
    """P_t = {x_{n+1} = t}, upward normal e_{n+1}."""

    dim_n: int
    height: float

    def __post_init__(self):
        if self.dim_n < 1:
            raise PreconditionError("dim_n must be >= 1")


@dataclass(frozen=True)
class Cylinder:
    """C^k_R = S^k(R) x R^(n-k), outward normal on the spherical factor."""

    dim_n: int
    k: int
    radius: float

    def __post_init__(self):
        if not 1 <= self.k <= self.dim_n:
            raise PreconditionError(f"need 1 <= k <= n, got k={self.k}, n={self.dim_n}")
        if not self.radius > 0:
            raise PreconditionError("cylinder radius must be positive")


@dataclass(frozen=True)
class Catenoid:
    """Rotational self-shrinker (u(t) omega, -t) asymptotic to a cone."""

    profile: object  # ProfileCurve
    theta: float

    def __post_init__(self):
        if not self.theta > 0:
            raise PreconditionError("asymptotic slope theta must be positive")

    @property
    def dim_n(self):
        return self.profile.dim_n


@dataclass(frozen=True)
class RotationalGraph:
    """Generic rotational hypersurface (u(t) omega, -t) from sampled data."""

    profile: object  # ProfileCurve

    @property
    def dim_n(self):
        return self.profile.dim_n


def shrinker_radius(k):
    """Radius making S^k(R) x R^(n-k) weighted-minimal: sqrt(2k)."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    return math.sqrt(2.0 * k)


def lambda_cylinder_radius(lam, k):
    """Positive root of R/2 - k/R = lambda (constant-H_phi cylinder radius)."""
    if k < 1:
        raise PreconditionError("k must be >= 1")
    root = math.sqrt(lam * lam + 2.0 * k)
    # Two algebraically equal forms; pick the one without cancellation.
    return lam + root if lam >= 0 else 2.0 * k / (root - lam)


def rotational_scalars(dim_n, t, u, u_prime, u_double_prime):
    """Closed-form bundle for a rotational graph X(t, w) = (u(t) w, -t).

    Normal is (w, u')/sqrt(1+u'^2); for spheres sampled as profiles this is
    the outward normal, for the constant profile the outward cylinder normal.
    """
    if u <= 0:
        raise PreconditionError("profile radius must be positive")
    m = dim_n - 1
    s2 = 1.0 + u_prime * u_prime
    s = math.sqrt(s2)
    kappa_t = u_double_prime / (s2 * s)
    H = kappa_t - m / (u * s)
    support = (u - t * u_prime) / s
    A2 = kappa_t * kappa_t + m / (u * u * s2)
    return _bundle(H, support, A2)


def graph_scalars(dim_n, rho, g, g_prime, g_double_prime):
    """Bundle for a rotational graph x_{n+1} = g(|x'|) with upward normal."""
    if rho <= 0:
        raise PreconditionError("graph radius must be positive")
    m = dim_n - 1
    s2 = 1.0 + g_prime * g_prime
    s = math.sqrt(s2)
    kappa_r = g_double_prime / (s2 * s)
    kappa_s = g_prime / (rho * s)
    H = kappa_r + m * kappa_s
    support = (g - rho * g_prime) / s
    A2 = kappa_r * kappa_r + m * kappa_s * kappa_s
    return _bundle(H, support, A2)


def weighted_quantities(surface, point=None):
    """Closed-form (H, <x,N>, H_phi, |A|^2, Ric_phi) for a model surface.

    ``point`` is ignored for the homogeneous variants and is the profile
    parameter t for Catenoid/RotationalGraph.
    """
    if isinstance(surface, Sphere):
        n, R = surface.dim_n, surface.radius
        return _bundle(-n / R, R, n / (R * R))
    if isinstance(surface, Hyperplane):
        return _bundle(0.0, surface.height, 0.0)
    if isinstance(surface, Cylinder):
        k, R = surface.k, surface.radius
        return _bundle(-k / R, R, k / (R * R))
    if isinstance(surface, (Catenoid, RotationalGraph)):
        if point is None:
            raise PreconditionError("profile parameter required for rotational surfaces")
        prof = surface.profile
        t = float(point)
        u = prof.u_at(t)
        up = prof.u_prime_at(t)
        upp = prof.u_double_prime_at(t)
        return rotational_scalars(prof.dim_n, t, u, up, upp)
    raise PreconditionError(f"unsupported surface {surface!r}")


def h_phi_numeric(profile, t, h=1e-3, order=2):
    """Finite-difference H_phi of a rotational profile, from u samples only.

    Central differences of the stored radius channel at t -/+ h (order 2) or
    the five-point stencil (order 4) feed the closed-form rotational bundle;
    the stored slope channel is never used, which makes this an independent
    check of both the slope data and any equation that produced the samples.
    """
    if h <= 0:
        raise PreconditionError("step h must be positive")
    if order not in (2, 4):
        raise PreconditionError("order must be 2 or 4")
    reach = 2 * h if order == 4 else h
    if h < 64.0 * 2.220446049250313e-16 * max(1.0, abs(t)):
        raise PreconditionError("step underflow: h too small at this parameter")
    lo, hi = profile.t[0], profile.t[-1]
    if t - reach < lo or t + reach > hi:
        raise OutOfRangeError(
            f"stencil [{t - reach:.6g}, {t + reach:.6g}] outside sampled range "
            f"[{lo:.6g}, {hi:.6g}]")
    if order == 2:
        um, u0, up = profile.u_at(t - h), profile.u_at(t), profile.u_at(t + h)
        d1 = (up - um) / (2.0 * h)
        d2 = (up - 2.0 * u0 + um) / (h * h)
    else:
        um2, um1 = profile.u_at(t - 2 * h), profile.u_at(t - h)
        u0 = profile.u_at(t)
        up1, up2 = profile.u_at(t + h), profile.u_at(t + 2 * h)
        d1 = (um2 - 8.0 * um1 + 8.0 * up1 - up2) / (12.0 * h)
        d2 = (-um2 + 16.0 * um1 - 30.0 * u0 + 16.0 * up1 - up2) / (12.0 * h * h)
    if u0 <= 0 or min(um if order == 2 else um2, up if order == 2 else up2) <= 0:
        raise PreconditionError("profile not strictly positive on the stencil")
    return rotational_scalars(profile.dim_n, t, u0, d1, d2).H_phi


# ---------------------------------------------------------------------------
# Generic immersion oracle: weighted scalars of any chart by differencing the
# parameterisation itself.  Used to cross-check every closed form above and
# the variation surfaces of the stability module.
# ---------------------------------------------------------------------------

def sphere_exp_chart(pole_dim):
    """Chart a -> S^pole_dim around the first axis, a in R^pole_dim small."""
    def chart(a):
        a = np.asarray(a, dtype=float)
        r = float(np.linalg.norm(a))
        head = math.cos(r)
        if r < 1e-8:
            tail = a * (1.0 - r * r / 6.0)
        else:
            tail = a * (math.sin(r) / r)
        return np.concatenate([[head], tail])
    return chart


def sphere_chart(dim_n, radius):
    base = sphere_exp_chart(dim_n)
    return lambda a: radius * base(a)


def cylinder_chart(dim_n, k, radius):
    base = sphere_exp_chart(k)
    m = dim_n - k

    def chart(params):
        params = np.asarray(params, dtype=float)
        return np.concatenate([radius * base(params[:k]), params[k:k + m]])
    return chart


def hyperplane_chart(dim_n, height):
    def chart(params):
        params = np.asarray(params, dtype=float)
        return np.concatenate([params, [height]])
    return chart


def rotational_chart(profile):
    """(t, a) -> (u(t) nu(a), -t) with nu the sphere chart of the orbit."""
    m = profile.dim_n - 1
    base = sphere_exp_chart(m)

    def chart(params):
        params = np.asarray(params, dtype=float)
        t = params[0]
        nu = base(params[1:1 + m])
        return np.concatenate([profile.u_at(t) * nu, [-t]])
    return chart


def fd_weighted_scalars(chart, params, orient_hint, step=1e-3):
    """Weighted scalars of an immersed hypersurface by pure differencing.

    ``chart`` maps d surface parameters to R^(d+1); first and second
    fundamental forms come from central differences of the chart, the unit
    normal from the null space of the tangent matrix, with its sign fixed
    against ``orient_hint``.  Second-order accurate in ``step``.
    """
    params = np.asarray(params, dtype=float)
    d = params.size
    x0 = np.asarray(chart(params), dtype=float)
    if x0.size != d + 1:
        raise PreconditionError("chart must map d parameters to R^(d+1)")

    plus = np.empty((d, d + 1))
    minus = np.empty((d, d + 1))
    for i in range(d):
        e = np.zeros(d)
        e[i] = step
        plus[i] = chart(params + e)
        minus[i] = chart(params - e)

    tangents = (plus - minus) / (2.0 * step)          # rows T_i
    second = np.empty((d, d, d + 1))
    for i in range(d):
        second[i, i] = (plus[i] - 2.0 * x0 + minus[i]) / (step * step)
        for j in range(i + 1, d):
            ei = np.zeros(d); ei[i] = step
            ej = np.zeros(d); ej[j] = step
            mixed = (np.asarray(chart(params + ei + ej))
                     - np.asarray(chart(params + ei - ej))
                     - np.asarray(chart(params - ei + ej))
                     + np.asarray(chart(params - ei - ej))) / (4.0 * step * step)
            second[i, j] = mixed
            second[j, i] = mixed

    g = tangents @ tangents.T
    _, _, vt = np.linalg.svd(tangents)
    normal = vt[-1]
    if np.dot(normal, np.asarray(orient_hint, dtype=float)) < 0:
        normal = -normal

    hmat = second @ normal
    shape_op = np.linalg.solve(g, hmat)
    H = float(np.trace(shape_op))
    A2 = float(np.trace(shape_op @ shape_op))
    support = float(np.dot(x0, normal))
    return _bundle(H, support, A2)


def fd_quantities(surface, point=None, step=1e-3):
    """Immersion-difference twin of :func:`weighted_quantities`."""
    if isinstance(surface, Sphere):
        chart = sphere_chart(surface.dim_n, surface.radius)
        params = np.zeros(surface.dim_n)
        hint = chart(params)
        return fd_weighted_scalars(chart, params, hint, step)
    if isinstance(surface, Hyperplane):
        chart = hyperplane_chart(surface.dim_n, surface.height)
        params = np.zeros(surface.dim_n)
        hint = np.zeros(surface.dim_n + 1)
        hint[-1] = 1.0
        return fd_weighted_scalars(chart, params, hint, step)
    if isinstance(surface, Cylinder):
        chart = cylinder_chart(surface.dim_n, surface.k, surface.radius)
        params = np.zeros(surface.dim_n)
        hint = chart(params)
        hint[surface.k + 1:] = 0.0
        return fd_weighted_scalars(chart, params, hint, step)
    if isinstance(surface, (Catenoid, RotationalGraph)):
        if point is None:
            raise PreconditionError("profile parameter required for rotational surfaces")
        prof = surface.profile
        chart = rotational_chart(prof)
        params = np.zeros(prof.dim_n)
        params[0] = float(point)
        up = prof.u_prime_at(float(point))
        hint = np.zeros(prof.dim_n + 1)
        hint[0] = 1.0
        hint[-1] = up
        return fd_weighted_scalars(chart, params, hint, step)
    raise PreconditionError(f"unsupported surface {surface!r}")
