"""Spectral weights and band projections localized at the glancing scale.

For a trace on an interior circle/equator, each angular component k carries
the glancing distance

    sigma = 1 - (h k / R)^2,

the squared cosine of the incidence angle measured from tangency: sigma = 0
is exactly glancing, sigma = 1 is normal incidence, sigma < 0 is evanescent.
Everything here weights trace components as functions of sigma relative to
the scale h^rho, where h is the inverse frequency.

Two complementary weights split a power law at that scale:

    far_weight  (sigma, h) = sigma^s * chi1(sigma / h^rho)
    near_weight (sigma, h) = h^{s rho} * chi2(sigma / h^rho)

with chi1 + chi2 = 1, chi1 vanishing below 1 and equal to 1 above 2.  Their
sum ``glancing_weight`` behaves like sigma^s away from glancing and freezes
at h^{s rho} inside the glancing window; for s = 0 it is identically 1.

A ``BandSpec`` instead keeps components with h^{rho2} <= sigma <= h^{rho1}
sharply (endpoints included), which isolates the dyadic-in-scale shells the
scaling experiments measure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_CUTOFFS = ("exp", "smoothstep")


@dataclass(frozen=True)
class WeightSpec:
    """Parameters of the glancing-scale weight.

    Attributes
    ----------
    s : float
        Power of sigma away from glancing; s = 0 gives a pure cutoff pair.
    rho : float
        Localization exponent: the crossover sits at sigma ~ h^rho.
    cutoff : str
        Transition profile on [1, 2]: "exp" (smooth, compactly glued
        exponentials, the default) or "smoothstep" (C^2 polynomial).
    """
    s: float
    rho: float
    cutoff: str = "exp"

    def __post_init__(self):
        if not (self.rho >= 0.0):
            raise ValueError("rho must be nonnegative")
        if self.cutoff not in _CUTOFFS:
            raise ValueError(f"cutoff must be one of {_CUTOFFS}")


@dataclass(frozen=True)
class BandSpec:
    """Sharp band h^{rho2} <= sigma <= h^{rho1}, requiring rho1 < rho2.

    Since h < 1, the exponents order the band as h^{rho2} < h^{rho1}: rho1
    controls the far (large sigma) edge and rho2 the near-glancing edge.
    """
    rho1: float
    rho2: float

    def __post_init__(self):
        if not (0.0 <= self.rho1 < self.rho2):
            raise ValueError("need 0 <= rho1 < rho2")


def _check_h(h: float) -> None:
    if not (0.0 < h < 1.0):
        raise ValueError("h must lie in (0, 1)")


def _ramp_exp(u):
    """Smooth 0->1 ramp on [0, 1] from glued exponentials: C^infinity flat
    at both ends.  psi(u) = f(u)/(f(u) + f(1-u)), f(t) = exp(-1/t).
    """
    u = np.clip(u, 0.0, 1.0)
    out = np.empty_like(u)
    interior = (u > 0.0) & (u < 1.0)
    out[u <= 0.0] = 0.0
    out[u >= 1.0] = 1.0
    ui = u[interior]
    fa = np.exp(-1.0 / ui)
    fb = np.exp(-1.0 / (1.0 - ui))
    out[interior] = fa / (fa + fb)
    return out


def _ramp_smoothstep(u):
    """C^2 polynomial ramp 6u^5 - 15u^4 + 10u^3 on [0, 1]."""
    u = np.clip(u, 0.0, 1.0)
    return u * u * u * (u * (6.0 * u - 15.0) + 10.0)


def cutoff_pair(t, kind: str = "exp"):
    """The partition (chi1(t), chi2(t)): chi1 = 0 for t <= 1, 1 for t >= 2.

    chi1 ramps smoothly across [1, 2]; chi2 = 1 - chi1 exactly, so the pair
    is a partition of unity by construction.
    """
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    t1 = np.atleast_1d(t)
    if kind == "exp":
        chi1 = _ramp_exp(t1 - 1.0)
    elif kind == "smoothstep":
        chi1 = _ramp_smoothstep(t1 - 1.0)
    else:
        raise ValueError(f"cutoff must be one of {_CUTOFFS}")
    if scalar:
        return float(chi1[0]), float(1.0 - chi1[0])
    return chi1, 1.0 - chi1


def far_weight(sigma, h: float, spec: WeightSpec):
    """sigma^s chi1(sigma/h^rho): the power-law part, supported in
    sigma >= h^rho.  sigma^s is only evaluated where chi1 > 0, so negative
    (evanescent) sigma is safe.
    """
    _check_h(h)
    sigma = np.asarray(sigma, dtype=float)
    scalar = sigma.ndim == 0
    sig = np.atleast_1d(sigma)
    scale = h ** spec.rho
    chi1, _ = cutoff_pair(sig / scale, spec.cutoff)
    out = np.zeros_like(sig)
    live = chi1 > 0.0
    out[live] = sig[live] ** spec.s * chi1[live]
    return float(out[0]) if scalar else out


def near_weight(sigma, h: float, spec: WeightSpec):
    """h^{s rho} chi2(sigma/h^rho): the frozen part near glancing."""
    _check_h(h)
    sigma = np.asarray(sigma, dtype=float)
    scalar = sigma.ndim == 0
    sig = np.atleast_1d(sigma)
    _, chi2 = cutoff_pair(sig / h ** spec.rho, spec.cutoff)
    out = h ** (spec.s * spec.rho) * chi2
    return float(out[0]) if scalar else out


def glancing_weight(sigma, h: float, spec: WeightSpec):
    """The full weight far_weight + near_weight.

    Equal to sigma^s for sigma >= 2 h^rho, to h^{s rho} for sigma <= h^rho,
    and a smooth interpolation between the two in the crossover shell.
    """
    return far_weight(sigma, h, spec) + near_weight(sigma, h, spec)


def band_indicator(sigma, h: float, band: BandSpec):
    """Sharp indicator of h^{rho2} <= sigma <= h^{rho1}, endpoints kept."""
    _check_h(h)
    sigma = np.asarray(sigma, dtype=float)
    out = (sigma >= h ** band.rho2) & (sigma <= h ** band.rho1)
    return out if out.ndim else bool(out)


def glancing_weight_profile(h: float, spec: WeightSpec, sigma_grid=None):
    """(sigma, G(sigma)) pairs for plotting/inspection, log-spaced through
    the crossover by default."""
    if sigma_grid is None:
        scale = h ** spec.rho
        sigma_grid = np.geomspace(scale * 1e-2, min(1.0, scale * 1e3), 400)
    sigma_grid = np.asarray(sigma_grid, dtype=float)
    return sigma_grid, glancing_weight(sigma_grid, h, spec)


def apply_weight(amplitudes, sigmas, h: float, spec: WeightSpec):
    """Per-component weighted amplitudes G(sigma_k) a_k."""
    amplitudes = np.asarray(amplitudes)
    w = glancing_weight(sigmas, h, spec)
    return amplitudes * w


def apply_band(amplitudes, sigmas, h: float, band: BandSpec):
    """Amplitudes with components outside the sharp band zeroed."""
    amplitudes = np.asarray(amplitudes)
    keep = band_indicator(sigmas, h, band)
    return np.where(keep, amplitudes, 0.0)


def trace_norm(amplitudes, radius: float) -> float:
    """L2 norm over the restriction circle of sum_k a_k e^{i k theta}:
    sqrt(2 pi R sum |a_k|^2) by orthogonality of the angular factors.
    """
    if radius <= 0.0:
        raise ValueError("radius must be positive")
    amplitudes = np.asarray(amplitudes)
    return float(math.sqrt(2.0 * math.pi * radius
                           * float(np.sum(np.abs(amplitudes) ** 2))))
