"""Variance engine: second moments of the field energy density about the
coordinate origin, in position and wavevector space, the uncertainty product
and the massless-particle bound.

Both moments are taken about the ORIGIN, with no centroid subtraction:

    Dr^2 = Int d3r r^2 F*.F / Int d3r F*.F        (position grid path)
    Dk^2 = Int d3k k^2 Ft*.Ft / Int d3k Ft*.Ft    (wavevector path)

This differs from the statistics convention; translating a field changes
Dr^2.

Amplitude path.  In terms of helicity amplitudes the same moments read
(summed over both helicities)

    Dk^2 N = Int d3k k^2 |f|^2
    Dr^2 N = Int d3k f* [ f/kp^2 + (2 i kz)/(k kp^2) (kx d_ky - ky d_kx) f
                          - Lap_k f ]
           = Int d3k [ |grad f|^2 + |f|^2/kp^2
                       - (2 kz)/(k kp^2) Im(f* d_phi f) ]      (by parts)

with kp^2 = kx^2 + ky^2.  The weak (second) form needs only first
derivatives and is the one evaluated; a strong-form evaluator is kept for
amplitudes that provide an exact Laplacian (cross-check).

Quadrature: fixed cylindrical Gauss-Legendre x trapezoid rule (exponentially
accurate for the Gaussian-enveloped amplitude classes used here).  Grid-path
reductions are plain Riemann sums; numpy's pairwise summation keeps them
reproducible at the stated tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
import json

import numpy as np

from .errors import DegenerateFieldError, SingularAmplitudeError
from .kspace import (
    FieldGrid,
    HelicityAmplitudePair,
    SampledAmplitude,
    fourier_to_kspace,
    fourier_to_position,
)

__all__ = [
    "BOUND_EM",
    "CylindricalRule",
    "VarianceReport",
    "variance_position",
    "variance_kspace",
    "variance_position_from_amplitudes",
    "variance_kspace_from_amplitudes",
    "uncertainty_product",
    "massless_bound",
]

BOUND_EM = 2.5           # proven lower bound of Dr * Dk for the EM field
TRUNCATION_RATIO = 1e-8  # boundary-density / peak-density warning threshold


# ---------------------------------------------------------------------------
# quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CylindricalRule:
    """Tensor quadrature in cylindrical k-coordinates: Gauss-Legendre in
    k_perp on (0, k_max] and in kz on [-k_max, k_max], trapezoid in phi.

    The defaults are sized for Gaussian-enveloped polynomial amplitudes,
    where the rule converges superalgebraically (~1e-12 relative)."""

    k_max: float
    n_radial: int = 72
    n_phi: int = 24
    n_axial: int = 110

    def nodes(self):
        return _rule_nodes(self.k_max, self.n_radial, self.n_phi, self.n_axial)

    @classmethod
    def for_amplitudes(cls, amps: HelicityAmplitudePair, pad=1.0) -> "CylindricalRule":
        return cls(k_max=9.0 * amps.k_scale * pad)


@lru_cache(maxsize=16)
def _rule_nodes(k_max, n_radial, n_phi, n_axial):
    xp, wp = np.polynomial.legendre.leggauss(n_radial)
    kp = 0.5 * (xp + 1.0) * k_max
    wkp = 0.5 * k_max * wp
    xz, wz = np.polynomial.legendre.leggauss(n_axial)
    kz = xz * k_max
    wkz = k_max * wz
    phi = (np.arange(n_phi) + 0.5) * (2.0 * np.pi / n_phi)
    wphi = 2.0 * np.pi / n_phi
    KP = kp[:, None, None]
    PH = phi[None, :, None]
    KZ = kz[None, None, :]
    KX = np.ascontiguousarray(np.broadcast_to(KP * np.cos(PH), (n_radial, n_phi, n_axial)))
    KY = np.ascontiguousarray(np.broadcast_to(KP * np.sin(PH), (n_radial, n_phi, n_axial)))
    KZB = np.ascontiguousarray(np.broadcast_to(KZ, (n_radial, n_phi, n_axial)))
    W = (wkp[:, None, None] * wphi * wkz[None, None, :]) * KP  # k_perp measure
    return KX, KY, KZB, W


def _rule_for_amp(amp, rule):
    """Rule for one amplitude: explicit rule wins, else sized to its decay."""
    if rule is not None:
        return rule
    return CylindricalRule(k_max=9.0 * amp.k_scale)


def _alt_rule(rule):
    """Independently sized rule for the norm cross-check."""
    return CylindricalRule(
        k_max=rule.k_max * 1.15,
        n_radial=rule.n_radial + 17,
        n_phi=rule.n_phi + 4,
        n_axial=rule.n_axial + 19,
    )


def _weak_form(f, grads, KX, KY, KZ):
    K2 = KX * KX + KY * KY + KZ * KZ
    K = np.sqrt(K2)
    KP2 = KX * KX + KY * KY
    gx, gy, gz = grads
    dphi = KX * gy - KY * gx
    af2 = np.abs(f) ** 2
    integ = (
        np.abs(gx) ** 2 + np.abs(gy) ** 2 + np.abs(gz) ** 2
        + af2 / KP2
        - (2.0 * KZ / (K * KP2)) * (np.conj(f) * dphi).imag
    )
    return af2, K2, integ


def _amp_integrals(amp, rule: CylindricalRule, weak=True):
    """Per-amplitude integrals (norm, k2-moment, r2-moment numerator).

    Closures integrate on the cylindrical rule with their exact gradients;
    sampled amplitudes integrate on their own grid with spectral gradients.
    """
    if isinstance(amp, SampledAmplitude):
        KX, KY, KZ = amp.grid.meshes(sparse=False)
        af2, K2, integ = _weak_form(amp.values, amp.spectral_grad(), KX, KY, KZ)
        w = amp.grid.cell_volume
        return (
            float(af2.sum() * w),
            float((K2 * af2).sum() * w),
            float(integ.sum() * w),
        )
    KX, KY, KZ, W = rule.nodes()
    f = amp.value(KX, KY, KZ)
    if weak:
        af2, K2, integ = _weak_form(f, amp.grad(KX, KY, KZ), KX, KY, KZ)
        mr = float((W * integ).sum())
    else:
        K2 = KX * KX + KY * KY + KZ * KZ
        K = np.sqrt(K2)
        KP2 = KX * KX + KY * KY
        af2 = np.abs(f) ** 2
        gx, gy, gz = amp.grad(KX, KY, KZ)
        dphi = KX * gy - KY * gx
        lap = amp.laplacian(KX, KY, KZ)
        integ = (
            np.conj(f)
            * (f / KP2 + (2j * KZ / (K * KP2)) * dphi - lap)
        ).real
        mr = float((W * integ).sum())
    n = float((W * af2).sum())
    mk = float((W * K2 * af2).sum())
    return n, mk, mr


def _check_axis_regular(amps, rule=None):
    """Amplitudes must vanish on the kz-axis: probe |f| near k_perp = 0
    (closures), or bound the near-axis share of the norm (sampled grids)."""
    for amp in (amps.f_plus, amps.f_minus):
        if amp is None:
            continue
        if isinstance(amp, SampledAmplitude):
            # the 1/k_perp^2 density must stay bounded toward the axis: for
            # admissible amplitudes (vanishing at k_perp = 0) its near-axis
            # peak is no larger than its off-axis peak; a non-vanishing
            # amplitude spikes as 1/k_perp^2 in the closest cells
            KX, KY, KZ = amp.grid.meshes(sparse=False)
            kp2 = KX * KX + KY * KY
            near = kp2 < (3.0 * max(amp.grid.spacings[:2])) ** 2
            q = np.abs(amp.values) ** 2 / kp2
            off_peak = q[~near].max() if np.any(~near) else 0.0
            if np.any(near) and q[near].max() > 10.0 * max(off_peak, 1e-300):
                raise SingularAmplitudeError(
                    "sampled amplitude carries weight on the kz-axis; "
                    "1/k_perp^2 variance integrand is singular"
                )
            continue
        k_max = _rule_for_amp(amp, rule).k_max
        kz = k_max * np.array([0.31, -0.54, 0.12, -0.05, 0.44])
        ref = 0.0
        for frac in (0.1, 0.3, 0.6):
            ref = max(ref, np.abs(amp.value(np.full_like(kz, frac * k_max),
                                            0.0 * kz, kz)).max())
        scale = max(ref, 1e-300)
        for eps in (1e-5, 1e-7):
            v = np.abs(amp.value(np.full_like(kz, eps * k_max), 0.0 * kz, kz))
            if np.any(v > 0.3 * scale):
                raise SingularAmplitudeError(
                    "amplitudes carry weight on the kz-axis; 1/k_perp^2 "
                    "variance integrand is singular"
                )


def _norm_quadrature(amps: HelicityAmplitudePair, rule=None, alt=False) -> float:
    total = 0.0
    for amp in (amps.f_plus, amps.f_minus):
        if amp is None:
            continue
        if isinstance(amp, SampledAmplitude):
            total += float(
                (np.abs(amp.values) ** 2).sum() * amp.grid.cell_volume
            )
            continue
        r = _rule_for_amp(amp, rule)
        if alt:
            r = _alt_rule(r)
        KX, KY, KZ, W = r.nodes()
        total += float((W * np.abs(amp.value(KX, KY, KZ)) ** 2).sum())
    if not np.isfinite(total) or total <= 0.0:
        raise DegenerateFieldError("norm: degenerate amplitude pair")
    return total


# ---------------------------------------------------------------------------
# grid path
# ---------------------------------------------------------------------------

def _grid_moment(field: FieldGrid):
    grid = field.grid
    x, y, z = grid.axes()
    r2 = (
        (x ** 2)[:, None, None]
        + (y ** 2)[None, :, None]
        + (z ** 2)[None, None, :]
    )
    d = field.density()
    n = d.sum() * grid.cell_volume
    if not np.isfinite(n) or n <= 0.0:
        raise DegenerateFieldError("variance: zero field norm")
    m = (r2 * d).sum() * grid.cell_volume
    return m / n, float(n)


def variance_position(fieldR: FieldGrid) -> float:
    """Dr^2: second moment of F*.F about the origin (no mean subtraction)."""
    if fieldR.space != "position":
        raise ValueError("variance_position: field must be in position space")
    return float(_grid_moment(fieldR)[0])


def variance_kspace(fieldK: FieldGrid) -> float:
    """Dk^2: second moment of Ft*.Ft about k = 0."""
    if fieldK.space != "wavevector":
        raise ValueError("variance_kspace: field must be in wavevector space")
    return float(_grid_moment(fieldK)[0])


# ---------------------------------------------------------------------------
# amplitude path
# ---------------------------------------------------------------------------

def variance_position_from_amplitudes(
    amps: HelicityAmplitudePair, rule=None, weak=True
) -> float:
    """Dr^2 evaluated directly from the helicity amplitudes (see module
    docstring).  weak=False uses the strong (Laplacian) form, which requires
    the amplitudes to provide .laplacian."""
    _check_axis_regular(amps, rule)
    num = 0.0
    den = 0.0
    for amp in (amps.f_plus, amps.f_minus):
        if amp is None:
            continue
        n, _, mr = _amp_integrals(amp, _rule_for_amp(amp, rule), weak=weak)
        num += mr
        den += n
    if den <= 0.0:
        raise DegenerateFieldError("variance: degenerate amplitude pair")
    return num / den


def variance_kspace_from_amplitudes(amps: HelicityAmplitudePair, rule=None) -> float:
    """Dk^2 = Int k^2 (|f+|^2 + |f-|^2) / N."""
    num = 0.0
    den = 0.0
    for amp in (amps.f_plus, amps.f_minus):
        if amp is None:
            continue
        n, mk, _ = _amp_integrals(amp, _rule_for_amp(amp, rule), weak=True)
        num += mk
        den += n
    if den <= 0.0:
        raise DegenerateFieldError("variance: degenerate amplitude pair")
    return num / den


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class VarianceReport:
    """Full uncertainty diagnostic for one field configuration."""

    delta_r2: float
    delta_k2: float
    product: float
    bound: float
    saturation_ratio: float
    norm_r: float
    norm_k: float
    warnings: list = dc_field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "delta_r2": self.delta_r2,
            "delta_k2": self.delta_k2,
            "product": self.product,
            "bound": self.bound,
            "saturation_ratio": self.saturation_ratio,
            "norm_r": self.norm_r,
            "norm_k": self.norm_k,
            "warnings": list(self.warnings),
        }

    def to_json(self, indent=2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _report(dr2, dk2, nr, nk, bound, warnings):
    product = float(np.sqrt(dr2 * dk2))
    return VarianceReport(
        delta_r2=float(dr2),
        delta_k2=float(dk2),
        product=product,
        bound=float(bound),
        saturation_ratio=product / bound,
        norm_r=float(nr),
        norm_k=float(nk),
        warnings=warnings,
    )


def uncertainty_product(source, rule=None, bound=BOUND_EM) -> VarianceReport:
    """Build a VarianceReport from any of:

    * HelicityAmplitudePair     analytic amplitude path
    * FieldGrid                 grid path (partner obtained by FFT)
    * (fieldR, fieldK) tuple    grid path with independently sampled sides
    """
    warnings = []
    if isinstance(source, HelicityAmplitudePair):
        _check_axis_regular(source, rule)
        num_r = num_k = nk = 0.0
        for amp in (source.f_plus, source.f_minus):
            if amp is None:
                continue
            n, mk, mr = _amp_integrals(amp, _rule_for_amp(amp, rule))
            nk += n
            num_k += mk
            num_r += mr
        if nk <= 0.0:
            raise DegenerateFieldError("uncertainty_product: degenerate amplitudes")
        # norm recomputed on an independently sized rule: agreement measures
        # quadrature convergence, and Plancherel ties both to the position norm
        nr = _norm_quadrature(source, rule, alt=True)
        return _report(num_r / nk, num_k / nk, nr, nk, bound, warnings)

    if isinstance(source, FieldGrid):
        if source.space == "position":
            fieldR, fieldK = source, fourier_to_kspace(source)
        else:
            fieldR, fieldK = fourier_to_position(source), source
    elif isinstance(source, tuple) and len(source) == 2:
        fieldR, fieldK = source
        if fieldR.space != "position" or fieldK.space != "wavevector":
            raise ValueError("uncertainty_product: expected (position, wavevector)")
    else:
        raise TypeError("uncertainty_product: unsupported source type")

    for fld, tag in ((fieldR, "position"), (fieldK, "wavevector")):
        if fld.boundary_density_ratio() > TRUNCATION_RATIO:
            warnings.append(f"truncation: {tag}-space density at boundary "
                            f"exceeds {TRUNCATION_RATIO:g} of peak")
    dr2, nr = _grid_moment(fieldR)
    dk2, nk = _grid_moment(fieldK)
    return _report(dr2, dk2, nr, nk, bound, warnings)


def massless_bound(h) -> float:
    """Lower bound of Dr * Dk for a massless particle of helicity modulus h:
    1 + sqrt(1/4 + 2h).  Photons (h = 1) give 5/2."""
    h = float(h)
    if h < 0 or not np.isfinite(h):
        raise ValueError("massless_bound: h must be a nonnegative real")
    return 1.0 + np.sqrt(0.25 + 2.0 * h)
