"""Independent cross-checks for the fast special-function paths.

Every routine here recomputes a quantity that :mod:`glancelab.specfun` (or the
experiment layer) produces by a *different* method, so agreement is evidence
rather than tautology:

- :func:`bessel_series`     Bessel J by Miller's backward recurrence with the
                            even-order normalization sum (DLMF 10.12.4/10.74.6),
                            no asymptotics anywhere.
- :func:`legendre_recurrence`
                            fully normalized equator values of associated
                            Legendre functions by three-term upward recurrence
                            (DLMF 14.10.3), seeded in log-Gamma space.
- :func:`disk_quadrature_norm`
                            the radial L2 norm of a disk mode by adaptive
                            quadrature, against the closed form
                            int_0^1 J_n(lam r)^2 r dr = J_{n+1}(lam)^2 / 2
                            valid at a zero of J_n (DLMF 10.22.37).
- :func:`olver_ode_check`   the turning-point change of variables used by the
                            uniform Bessel asymptotic, re-solved as an ODE with
                            a high-order Runge-Kutta integrator.
- :func:`airy_ode_check`    Ai on the real line by integrating y'' = x y from
                            origin values, against the series/asymptotic code.
- :func:`weyl_count`        Dirichlet eigenvalue counts of the unit disk by
                            phase counting, no zero-finding involved.

:func:`run_all` executes the whole battery and returns an
:class:`OracleReport`; the command line exposes it as ``glancelab selftest``.

These paths are deliberately slow and simple.  Do not "optimize" them by
calling into :mod:`glancelab.specfun`; their value is independence.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad, solve_ivp


class OracleError(Exception):
    """An oracle computation failed to converge (not a disagreement)."""


# ----------------------------------------------------------------------
# Bessel J by Miller's algorithm
# ----------------------------------------------------------------------

def _miller_pass(n: int, x: float, start: int) -> float:
    """One backward-recurrence pass from trial index `start` down to 0.

    Returns the normalized J_n(x).  Uses extended precision accumulators and
    rescales on the fly, since the trial solution can grow by thousands of
    orders of magnitude above the turning point.
    """
    xl = np.longdouble(x)
    two_over_x = np.longdouble(2.0) / xl
    b_hi = np.longdouble(0.0)      # B_{k+1}
    b = np.longdouble(1.0)         # B_k, k = start
    even_sum = np.longdouble(0.0)  # sum of B_k over even k >= 2
    b_n = np.longdouble(0.0)
    have_n = False
    # constructed via powers: the literals 1e4000 / 1e-4000 would already be
    # inf / 0.0 as Python floats before numpy ever saw them
    big = np.longdouble(10.0) ** 4000
    small = np.longdouble(10.0) ** -4000

    k = start
    while k >= 1:
        if k == n:
            b_n = b
            have_n = True
        if (k & 1) == 0:
            even_sum += b
        b_lo = two_over_x * np.longdouble(k) * b - b_hi
        b_hi = b
        b = b_lo
        if abs(b) > big:
            b *= small
            b_hi *= small
            even_sum *= small
            b_n *= small
        k -= 1
    # loop leaves b = B_0
    if n == 0:
        b_n = b
        have_n = True
    if not have_n:
        raise OracleError(f"start index {start} below order {n}")
    norm = b + 2.0 * even_sum
    if norm == 0.0:
        raise OracleError("degenerate normalization sum in Miller recurrence")
    return float(b_n / norm)


def bessel_series(n: int, x: float) -> float:
    """Bessel function J_n(x) by backward recurrence, independent of specfun.

    Parameters
    ----------
    n : int
        Order, n >= 0.
    x : float
        Argument, x >= 0.

    Returns
    -------
    float
        J_n(x).  Values below ~1e-250 may round to subnormals or zero; in the
        deep evanescent regime this routine certifies "negligible" rather
        than a precise tiny value.

    Notes
    -----
    Miller's algorithm: run the three-term recurrence
    B_{k-1} = (2k/x) B_k - B_{k+1} downward from an index above both n and x
    with trial data (0, 1), then normalize with
    J_0(x) + 2 sum_{k>=1} J_{2k}(x) = 1  (DLMF 10.12.4).  The start index is
    raised until two successive passes agree to 1e-13 relative.
    """
    if n < 0:
        raise ValueError("order must be nonnegative")
    if x < 0:
        raise ValueError("argument must be nonnegative")
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    start = int(max(n, x)) + 20
    prev = None
    for _ in range(12):
        val = _miller_pass(n, x, start)
        # |J| <= 1 always, so near a zero an absolute floor of 1e-15 is the
        # honest meaning of "converged"
        if prev is not None and abs(val - prev) <= 1e-13 * max(abs(val), 0.01):
            return val
        prev = val
        start += max(16, start // 2)
    raise OracleError(f"Miller recurrence did not stabilize for J_{n}({x})")


def bessel_prime_series(n: int, x: float) -> float:
    """d/dx J_n(x) from the recurrence identity J_n' = (J_{n-1} - J_{n+1})/2."""
    if n == 0:
        return -bessel_series(1, x)
    return 0.5 * (bessel_series(n - 1, x) - bessel_series(n + 1, x))


# ----------------------------------------------------------------------
# Associated Legendre at the equator, fully normalized
# ----------------------------------------------------------------------

def legendre_recurrence(l: int, m: int) -> float:
    """Equator value of the orthonormal spherical-harmonic colatitude factor.

    Returns N_lm * P_l^m(0) where N_lm = sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!)
    and P_l^m carries the Condon-Shortley phase, so that
    Y_l^m(theta, phi) = legendre_recurrence(l, m) * e^{i m phi} on the
    equator theta = pi/2 and int_{S^2} |Y_l^m|^2 = 1.

    Notes
    -----
    Upward recurrence in degree at fixed order (DLMF 14.10.3, normalized
    form).  At the equator the middle term vanishes, so degrees step by two:

        Pbar_l(0) = -sqrt( (2l+1)/(2l-3) * ((l-1)^2-m^2)/(l^2-m^2) ) Pbar_{l-2}(0)

    seeded with Pbar_m^m(0) = (-1)^m sqrt((2m+1)/(4 pi)) sqrt((2m)!)/(2^m m!),
    evaluated via log-Gamma to avoid overflow.  Odd l+m gives exactly 0.
    """
    if m < 0 or l < m:
        raise ValueError("need 0 <= m <= l")
    if (l + m) % 2 == 1:
        return 0.0
    log_seed = 0.5 * (math.log(2 * m + 1) - math.log(4.0 * math.pi)
                      + math.lgamma(2 * m + 1)) \
        - m * math.log(2.0) - math.lgamma(m + 1)
    sign = -1.0 if (m % 2) else 1.0
    # recur in log space: value = sign * exp(log_seed + sum log factors)
    log_val = log_seed
    for k in range(m + 2, l + 1, 2):
        ratio = ((2 * k + 1) * ((k - 1) ** 2 - m ** 2)) / \
                ((2 * k - 3) * (k ** 2 - m ** 2))
        log_val += 0.5 * math.log(ratio)
        sign = -sign
    return sign * math.exp(log_val)


# ----------------------------------------------------------------------
# Disk-mode normalization by quadrature
# ----------------------------------------------------------------------

def disk_quadrature_norm(n: int, lam: float) -> tuple[float, float]:
    """Radial norm of a disk mode two ways: quadrature vs closed form.

    Returns
    -------
    (quadrature, closed_form) : tuple of float
        quadrature  = int_0^1 J_n(lam r)^2 r dr  by adaptive quadrature,
        closed_form = J_{n+1}(lam)^2 / 2, exact when J_n(lam) = 0
        (DLMF 10.22.37 with nu = n).

    The caller is responsible for passing lam at (or near) a zero of J_n;
    otherwise the closed form does not apply.
    """
    val, err = quad(lambda r: bessel_series(n, lam * r) ** 2 * r, 0.0, 1.0,
                    limit=300, epsabs=1e-13, epsrel=1e-12)
    if err > 1e-8:
        raise OracleError(f"quadrature error estimate too large: {err}")
    closed = 0.5 * bessel_series(n + 1, lam) ** 2
    return val, closed


# ----------------------------------------------------------------------
# Turning-point variable and Airy equation, re-solved as ODEs
# ----------------------------------------------------------------------

def olver_ode_check(zeta_lo: float = -6.0, n_samples: int = 25):
    """Re-solve the turning-point change of variables as an ODE.

    The uniform large-order Bessel asymptotic uses the map z -> zeta defined
    on the oscillatory side z > 1 by (2/3)(-zeta)^{3/2} =
    sqrt(z^2-1) - arccos(1/z) (DLMF 10.20.3).  Differentiating gives

        dz/dzeta = -sqrt(-zeta) * z / sqrt(z^2 - 1),

    regular except at the turning point zeta = 0, where
    z = 1 + 2^{-1/3}(-zeta) + (3/10) 2^{-2/3} zeta^2 + ...

    Integrates from near the turning point down to `zeta_lo` with an 8th
    order Runge-Kutta method and returns sample pairs.

    Returns
    -------
    zetas, zs : ndarray
        Sampled zeta grid (descending from just below 0) and z(zeta).
    """
    z0 = 1e-4
    c = 2.0 ** (-1.0 / 3.0)
    z_start = 1.0 + c * z0 + 0.3 * c * c * z0 * z0

    def rhs(zeta, y):
        z = y[0]
        return [-math.sqrt(-zeta) * z / math.sqrt(z * z - 1.0)]

    zetas = np.linspace(-z0, zeta_lo, n_samples)
    sol = solve_ivp(rhs, (-z0, zeta_lo), [z_start], t_eval=zetas,
                    method="DOP853", rtol=1e-12, atol=1e-12)
    if not sol.success:
        raise OracleError(f"turning-point ODE failed: {sol.message}")
    return zetas, sol.y[0]


# Origin values of Ai, frozen from the Gamma-function expressions
# Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3)  (DLMF 9.2.3-4).
AIRY_AT_ZERO = 0.35502805388781723926
AIRY_PRIME_AT_ZERO = -0.25881940379280679840


def airy_ode_check(x_lo: float = -14.0, x_hi: float = 2.0, n_samples: int = 41):
    """Solve the Airy equation y'' = x y from frozen origin data.

    Integrates left and right from x = 0 with initial values
    (Ai(0), Ai'(0)) and returns sample values of Ai on [x_lo, x_hi].
    Independent of every series or asymptotic formula in specfun.

    Rightward integration amplifies error in the growing (Bi) direction by
    e^{2 xi(x)}, so keep x_hi modest; :func:`airy_positive_integral` is the
    well-conditioned oracle deeper into the decaying region.

    Returns
    -------
    xs, ais : ndarray
        Sample grid and Ai(x) on it.
    """
    def rhs(x, y):
        return [y[1], x * y[0]]

    xs = np.linspace(x_lo, x_hi, n_samples)
    out = np.empty_like(xs)
    left = xs[xs < 0.0]
    right = xs[xs > 0.0]
    y0 = [AIRY_AT_ZERO, AIRY_PRIME_AT_ZERO]
    if left.size:
        sol = solve_ivp(rhs, (0.0, float(left[0])), y0, t_eval=left[::-1],
                        method="DOP853", rtol=1e-12, atol=1e-14)
        if not sol.success:
            raise OracleError(f"Airy ODE (left) failed: {sol.message}")
        out[: left.size] = sol.y[0][::-1]
    out[xs == 0.0] = AIRY_AT_ZERO
    if right.size:
        sol = solve_ivp(rhs, (0.0, float(right[-1])), y0, t_eval=right,
                        method="DOP853", rtol=1e-12, atol=1e-14)
        if not sol.success:
            raise OracleError(f"Airy ODE (right) failed: {sol.message}")
        out[xs.size - right.size:] = sol.y[0]
    return xs, out


def airy_positive_integral(x: float) -> float:
    """Ai(x) for x >= 1 by the saddle-point contour integral.

    Shifting the Airy contour through the saddle t = i sqrt(x) gives the
    exact representation

        Ai(x) = (e^{-xi} / pi) int_0^inf e^{-sqrt(x) s^2} cos(s^3/3) ds,

    xi = (2/3) x^{3/2}.  The integrand is positive through its Gaussian
    peak (the cosine only turns over in the tail), so quadrature loses
    nothing to cancellation at any x.  Independent of every expansion in
    specfun.
    """
    if x < 1.0:
        raise ValueError("saddle-point oracle needs x >= 1")
    sx = math.sqrt(x)

    def f(s):
        return math.exp(-sx * s * s) * math.cos(s ** 3 / 3.0)

    cutoff = 2.0 + 7.0 / x ** 0.25   # e^{-sqrt(x) s^2} < 1e-21 beyond this
    val, err = quad(f, 0.0, cutoff, limit=200, epsabs=0.0, epsrel=1e-12)
    if err > 1e-10 * abs(val):
        raise OracleError(f"Airy integral not converged at x={x}: err {err}")
    return math.exp(-(2.0 / 3.0) * x * sx) * val / math.pi


# ----------------------------------------------------------------------
# Eigenvalue counting without zero-finding
# ----------------------------------------------------------------------

def _phase_integral(w: float) -> float:
    """g(w) = sqrt(w^2-1) - arccos(1/w) for w >= 1, stable near w = 1."""
    if w <= 1.0:
        return 0.0
    t2 = (w - 1.0) * (w + 1.0)
    t = math.sqrt(t2)
    if t < 0.1:
        # g = t - atan(t) = t^3/3 - t^5/5 + ...
        term = t * t2 / 3.0
        total = term
        for k in range(1, 24):
            term *= -t2 * (2 * k + 1) / (2 * k + 3)
            total += term
            if abs(term) <= 1e-18 * abs(total):
                break
        return total
    return t - math.atan(t)


def _zero_counter(n: int, x: float) -> int:
    """Number of positive zeros of J_n at or below x, by phase counting.

    The m-th zero satisfies n g(j/n)/pi + 1/4 = m + O(n^{-1}) uniformly
    (for n = 0, j/pi + 1/4 = m + O(j^{-1})), so the count is the floor of
    the continuous index.  Exact for all but zeros within O(1/n) of x.
    """
    if n == 0:
        idx = x / math.pi + 0.25
    elif x <= n:
        return 0
    else:
        idx = n * _phase_integral(x / n) / math.pi + 0.25
    return max(0, math.floor(idx))


def weyl_count(lam: float, lam_lo: float = 0.0) -> int:
    """Count Dirichlet eigenvalues of the unit disk with sqrt(E) in (lam_lo, lam].

    Each zero j_{n,m} <= lam contributes multiplicity 2 for n >= 1
    (angular factors e^{+-i n theta}) and 1 for n = 0.  Counting is purely
    by phase (see `_zero_counter`); no zeros are located.

    The two-term Weyl law for comparison: N(lam) ~ lam^2/4 - lam/2.
    """
    if lam_lo >= lam:
        return 0

    def count_upto(x: float) -> int:
        total = _zero_counter(0, x)
        n = 1
        while n < x:  # j_{n,1} > n, so orders >= x contribute nothing
            c = _zero_counter(n, x)
            if c == 0 and n > x - 1:
                break
            total += 2 * c
            n += 1
        return total

    return count_upto(lam) - (count_upto(lam_lo) if lam_lo > 0.0 else 0)


# ----------------------------------------------------------------------
# The battery
# ----------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    worst: float          # worst observed error, in units of the tolerance
    detail: str = ""


@dataclass
class OracleReport:
    checks: list[CheckResult] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(f"[{status}] {c.name}: worst {c.worst:.3g}x tolerance"
                         + (f" ({c.detail})" if c.detail else ""))
        lines.append(f"{'all checks passed' if self.all_passed else 'FAILURES PRESENT'}"
                     f" in {self.elapsed:.1f}s")
        return "\n".join(lines)


def _check(name, pairs, tol, detail=""):
    """Build a CheckResult from (got, want) pairs with mixed abs/rel tolerance."""
    worst = 0.0
    for got, want in pairs:
        err = abs(got - want) / max(abs(want), 1e-12)
        worst = max(worst, err / tol)
    return CheckResult(name, worst <= 1.0, worst, detail)


def run_all(include_slow: bool = True) -> OracleReport:
    """Run every oracle check, cross-validating the fast specfun paths.

    Parameters
    ----------
    include_slow : bool
        Include the large-order Bessel comparisons (a few seconds extra).

    Returns
    -------
    OracleReport
    """
    from . import specfun  # deferred: oracle must import even if specfun breaks

    t0 = time.time()
    rep = OracleReport()

    # -- frozen external anchors ------------------------------------------
    anchors = [
        (bessel_series(0, 2.40482555769577276862), 0.0),
    ]
    worst = max(abs(g - w) for g, w in anchors)
    rep.checks.append(CheckResult("bessel_series zero anchor",
                                  worst < 1e-13, worst / 1e-13,
                                  "J_0 at its first zero"))
    rep.checks.append(_check(
        "bessel_series frozen values",
        [(bessel_series(1, 2.40482555769577276862), 0.51914749728946678814),
         (bessel_series(100, 130.0), 0.08084377958789141517)],
        1e-12))

    # -- specfun Bessel vs Miller across all dispatch regimes --------------
    cases = [(0, 0.5), (0, 17.2), (3, 2.0), (7, 30.0), (12, 11.5),
             (40, 35.0), (60, 66.0), (120, 121.0), (200, 170.0),
             (500, 502.0), (500, 540.0), (1000, 1003.0), (1000, 980.0),
             (2000, 2100.0), (5000, 5015.0)]
    if include_slow:
        cases += [(20000, 20060.0), (20000, 20600.0), (100000, 100400.0)]
    worst = 0.0
    for n, x in cases:
        want = bessel_series(n, x)
        got = specfun.bessel_j(n, x)
        scale = max(abs(want), (n + 1.0) ** (-1.0 / 3.0))
        worst = max(worst, abs(got - want) / scale)
    rep.checks.append(CheckResult("specfun.bessel_j vs Miller recurrence",
                                  worst <= 1e-8, worst / 1e-8,
                                  f"{len(cases)} orders up to "
                                  f"{max(c[0] for c in cases)}"))

    # -- zero residuals -----------------------------------------------------
    zero_cases = [(0, 1), (0, 7), (5, 3), (40, 1), (300, 2), (1000, 4)]
    worst = 0.0
    for n, m in zero_cases:
        lam = specfun.bessel_zero(n, m)
        resid = abs(bessel_series(n, lam)) / max(abs(bessel_prime_series(n, lam)), 1e-30)
        worst = max(worst, resid)
    rep.checks.append(CheckResult("specfun.bessel_zero residuals",
                                  worst <= 1e-9, worst / 1e-9,
                                  f"{len(zero_cases)} zeros"))

    # -- zero-seed consistency: the Airy-transplant seed for the first zero
    # carries an O(1/n) error, so its decay exponent certifies the uniform
    # asymptotics far beyond the orders the direct oracles can reach
    ns = np.array([100.0, 200.0, 400.0, 800.0])
    errs = []
    for n in ns.astype(int):
        seed = n * specfun.z_of_zeta(n ** (-2.0 / 3.0) * specfun.airy_zero(1))
        errs.append(abs(specfun.bessel_zero(n, 1) - seed))
    lx = np.log(ns) - np.log(ns).mean()
    slope = float(lx @ (np.log(errs) - np.mean(np.log(errs)))) / float(lx @ lx)
    rep.checks.append(CheckResult("bessel_zero seed error decay",
                                  slope <= -0.8, 0.8 / max(-slope, 1e-12),
                                  f"log-log slope {slope:.3f} on n in "
                                  f"[{int(ns[0])}, {int(ns[-1])}]"))

    # -- Airy: ODE transport left of the growth barrier, contour integral right
    xs, want = airy_ode_check()
    worst = 0.0
    for x, w in zip(xs, want):
        got = specfun.airy_ai(x)
        worst = max(worst, abs(got - w) / max(abs(w), 1e-6))
    rep.checks.append(CheckResult("specfun.airy_ai vs Airy ODE",
                                  worst <= 1e-8, worst / 1e-8,
                                  f"grid [{xs[0]:.0f}, {xs[-1]:.0f}]"))
    worst = 0.0
    for x in (1.0, 1.5, 3.0, 4.2, 4.6, 5.5, 6.5, 7.9, 8.5, 9.5, 12.0):
        w = airy_positive_integral(x)
        worst = max(worst, abs(specfun.airy_ai(x) - w) / abs(w))
    rep.checks.append(CheckResult("specfun.airy_ai vs contour integral",
                                  worst <= 1e-8, worst / 1e-8,
                                  "positive axis through the bridge region"))

    # -- turning-point map by ODE -------------------------------------------
    zetas, zs = olver_ode_check()
    worst = 0.0
    for zeta, z in zip(zetas, zs):
        got = specfun.z_of_zeta(zeta)
        worst = max(worst, abs(got - z) / abs(z))
    anchor = abs(specfun.z_of_zeta(-1.01810488856711602) - 2.0) / 2.0
    worst = max(worst, anchor)
    rep.checks.append(CheckResult("specfun.z_of_zeta vs turning-point ODE",
                                  worst <= 1e-9, worst / 1e-9,
                                  "incl. frozen anchor z(zeta)=2"))

    # -- Legendre: closed form vs recurrence ---------------------------------
    leg_cases = [(2, 0), (3, 1), (10, 4), (11, 5), (80, 80), (200, 120),
                 (1500, 1400), (8000, 7804)]
    worst = 0.0
    for l, m in leg_cases:
        want = legendre_recurrence(l, m)
        got = specfun.legendre_equator(l, m)
        worst = max(worst, abs(got - want) / max(abs(want), 1e-300))
    rep.checks.append(CheckResult("specfun.legendre_equator vs recurrence",
                                  worst <= 1e-10, worst / 1e-10,
                                  f"{len(leg_cases)} (degree, order) pairs"))

    # -- disk normalization by quadrature ------------------------------------
    quad_cases = [(0, 1), (4, 3), (25, 2)]
    worst = 0.0
    for n, m in quad_cases:
        lam = specfun.bessel_zero(n, m)
        got, closed = disk_quadrature_norm(n, lam)
        worst = max(worst, abs(got - closed) / closed)
    rep.checks.append(CheckResult("disk norm: quadrature vs closed form",
                                  worst <= 1e-9, worst / 1e-9,
                                  f"{len(quad_cases)} modes"))

    # -- eigenvalue counting vs the smooth Weyl law ---------------------------
    lam = 2000.0
    got = weyl_count(lam)
    smooth = lam * lam / 4.0 - lam / 2.0
    rel = abs(got - smooth) / smooth
    rep.checks.append(CheckResult("weyl_count vs two-term Weyl law",
                                  rel <= 5e-3, rel / 5e-3,
                                  f"N({lam:.0f}) = {got}"))

    rep.elapsed = time.time() - t0
    return rep
