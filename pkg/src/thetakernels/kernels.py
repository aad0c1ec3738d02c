"""Compositional kernels on the sphere from iterated PGFs.

A PGF f with coefficients (p_k) defines a positive-definite kernel
K(x, z) = f(rho(x, z)) on unit vectors through the correlation
rho(x, z) = <x/|x|, z/|z|>.  Composing PGFs composes kernels, giving three
constructions:

    pure:     the n-fold self-composition of one f,
    mixed:    f_n o ... o f_1 for distinct factors,
    c-mixed:  the mixed kernel over the critical one-parameter family
              f_k(s) = 1 - ((1 - s)**(-theta) + c_k)**(-1/theta).

For theta-form factors every pure kernel has a closed form obtained by
iterating parameters instead of composing evaluations; c-mixed kernels
collapse to a single closed form in sum(c_k).  Infinite-depth limits and the
spherical-harmonic eigensystem (eigenvalues surf(m) * p_k / r(m, k) with
multiplicities r(m, k)) complete the picture.

Values at rho = 1 are assigned analytically wherever the closed form passes
through (1 - rho)**(-theta): float evaluation at the singularity would
produce inf * 0 artifacts.  Kernel values can be negative for rho < 0 (any
factor with p_1 > p_0 does it), so no range clamping is applied to outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import (
    DimensionMismatch,
    DimensionUnsupported,
    EmptySequence,
    IndexOutOfRange,
    InvalidRegime,
    RegimeViolation,
    UnknownSumConvergence,
    ZeroVector,
)
from .pgf import (
    ComposedPgf,
    Pgf,
    Regime,
    SeriesPgf,
    ThetaPgf,
    make_theta_pgf,
    pgf_compose_sequence,
    pgf_iterate_closed,
    series_coefficients,
)

__all__ = [
    "PureKernel",
    "MixedKernel",
    "CMixedKernel",
    "KernelSpec",
    "Eigensystem",
    "correlation",
    "kernel_at_rho",
    "pure_kernel_eval",
    "mixed_kernel_eval",
    "cmixed_kernel_eval",
    "kernel_limit",
    "cmixed_pure_representation",
    "gram",
    "cross_gram",
    "spec_to_pgf",
    "surface_area",
    "multiplicity",
    "eigensystem",
]


# ---------------------------------------------------------------------------
# Kernel parameter records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PureKernel:
    """n-fold self-composition of a single PGF."""

    f: Pgf
    depth: int

    def __post_init__(self) -> None:
        if not (isinstance(self.depth, int) and self.depth >= 1):
            raise InvalidRegime(f"depth must be an integer >= 1, got {self.depth!r}")


@dataclass(frozen=True)
class MixedKernel:
    """Composition of distinct PGFs, innermost (first-applied) factor first."""

    factors: tuple[Pgf, ...]

    def __post_init__(self) -> None:
        if len(self.factors) == 0:
            raise EmptySequence("mixed kernel needs at least one factor")


@dataclass(frozen=True)
class CMixedKernel:
    """Mixed kernel over the critical family indexed by c_1 .. c_n."""

    theta: float
    c_sequence: tuple[float, ...]

    def __post_init__(self) -> None:
        if not 0.0 < self.theta <= 1.0:
            raise InvalidRegime(f"c-mixed kernels need theta in (0, 1], got {self.theta}")
        if len(self.c_sequence) == 0:
            raise EmptySequence("c-mixed kernel needs at least one c value")
        if not all(math.isfinite(c) and c > 0.0 for c in self.c_sequence):
            raise InvalidRegime(f"c-mixed kernels need all c > 0, got {self.c_sequence}")

    @property
    def depth(self) -> int:
        return len(self.c_sequence)


KernelSpec = Union[PureKernel, MixedKernel, CMixedKernel]


# ---------------------------------------------------------------------------
# Correlation
# ---------------------------------------------------------------------------

def correlation(x: Sequence[float], z: Sequence[float]) -> float:
    """Inner product of unit-normalized vectors, clamped to [-1, 1]."""
    xv = np.asarray(x, dtype=float)
    zv = np.asarray(z, dtype=float)
    if xv.shape != zv.shape or xv.ndim != 1:
        raise DimensionMismatch(
            f"correlation needs two vectors of equal length, got {xv.shape} and {zv.shape}")
    nx = float(np.linalg.norm(xv))
    nz = float(np.linalg.norm(zv))
    if nx == 0.0 or nz == 0.0:
        raise ZeroVector("correlation is undefined for zero vectors")
    if np.array_equal(xv, zv):
        return 1.0
    rho = float(np.dot(xv / nx, zv / nz))
    return min(1.0, max(-1.0, rho))


# ---------------------------------------------------------------------------
# Closed forms for iterated theta kernels
# ---------------------------------------------------------------------------

def _pure_theta_values(p, n: int, rho: np.ndarray) -> np.ndarray:
    """Closed form for the n-fold theta kernel on an array of correlations.

    rho = 1 is filled in analytically for the r = 1, theta > 0 regimes whose
    expressions pass through (1 - rho)**(-theta); all n-fold values there
    equal 1 because these PGFs have full mass.
    """
    theta, a, c, q, r = p.theta, p.a, p.c, p.q, p.r
    out = np.empty_like(rho)
    if p.regime is Regime.MINUS_ONE:
        a_n = a ** n
        out[:] = a_n * rho + (1.0 - a_n) * q
        return out
    if p.regime.is_zero():
        a_n = a ** n
        out[:] = r - (r - q) ** (1.0 - a_n) * np.power(r - rho, a_n)
        return out
    if p.regime is Regime.MAIN_SUPER:
        at_one = rho >= 1.0
        u = 1.0 - rho
        with np.errstate(divide="ignore", over="ignore"):
            if a == 1.0:
                out = 1.0 - np.power(np.power(u, -theta) + n * c, -1.0 / theta)
            else:
                # Factor a**n out of (a**n u**-theta + c (a**n - 1)/(a - 1)):
                # the prefactor a**(-n/theta) underflows gracefully for huge n.
                decay = math.exp(-n / theta * math.log(a))
                accum = c * (-math.expm1(-n * math.log(a))) / (a - 1.0)
                out = 1.0 - decay * np.power(np.power(u, -theta) + accum, -1.0 / theta)
        out[at_one] = 1.0
        return out
    # Subcritical main: a**n may underflow to 0, which lands exactly on the
    # limit expression; only theta > 0 with r = 1 needs the rho = 1 patch.
    with np.errstate(over="ignore"):
        a_n = math.exp(n * math.log(a))
    fixed = (r - q) ** (-theta)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        out = r - np.power(a_n * np.power(r - rho, -theta) + (1.0 - a_n) * fixed,
                           -1.0 / theta)
    if theta > 0.0 and r == 1.0:
        out[rho >= 1.0] = 1.0
    return out


def _as_rho_array(rho) -> tuple[np.ndarray, bool]:
    arr = np.asarray(rho, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(arr < -1.0) or np.any(arr > 1.0):
        raise InvalidRegime(f"correlation must lie in [-1, 1], got {rho!r}")
    return arr, scalar


def kernel_at_rho(spec: KernelSpec, rho):
    """Kernel value as a function of the correlation (scalar or array).

    Theta-form pure kernels and c-mixed kernels go through their closed
    forms; everything else composes evaluations innermost-first.
    """
    arr, scalar = _as_rho_array(rho)
    if isinstance(spec, PureKernel):
        if isinstance(spec.f, ThetaPgf):
            out = _pure_theta_values(spec.f.params, spec.depth, arr.copy())
        else:
            out = arr
            for _ in range(spec.depth):
                out = spec.f.eval_extended(out)
    elif isinstance(spec, MixedKernel):
        out = arr
        for f in spec.factors:
            out = f.eval_extended(out)
    elif isinstance(spec, CMixedKernel):
        out = _cmixed_values(spec.theta, spec.c_sequence, arr)
    else:
        raise TypeError(f"not a kernel spec: {spec!r}")
    out = np.asarray(out, dtype=float)
    return float(out[0]) if scalar else out


def pure_kernel_eval(f: Pgf, n: int, x: Sequence[float], z: Sequence[float]) -> float:
    """Pure compositional kernel of depth n between two input vectors."""
    return kernel_at_rho(PureKernel(f, n), correlation(x, z))


def mixed_kernel_eval(fs: Sequence[Pgf], x: Sequence[float], z: Sequence[float]) -> float:
    """Mixed compositional kernel; fs[0] is applied first."""
    return kernel_at_rho(MixedKernel(tuple(fs)), correlation(x, z))


def _cmixed_values(theta: float, c_sequence: Sequence[float], rho: np.ndarray) -> np.ndarray:
    total = math.fsum(c_sequence)
    at_one = rho >= 1.0
    with np.errstate(divide="ignore", over="ignore"):
        out = 1.0 - np.power(np.power(1.0 - rho, -theta) + total, -1.0 / theta)
    out[at_one] = 1.0
    return out


def cmixed_kernel_eval(theta: float, c_sequence: Sequence[float],
                       x: Sequence[float], z: Sequence[float]) -> float:
    """c-mixed kernel 1 - ((1 - rho)**(-theta) + sum c_k)**(-1/theta)."""
    spec = CMixedKernel(theta, tuple(c_sequence))
    return kernel_at_rho(spec, correlation(x, z))


def cmixed_pure_representation(theta: float, c_sequence: Sequence[float],
                               k: int) -> ThetaPgf:
    """The critical PGF g_k whose k-fold iterate equals the depth-k c-mixed kernel.

    g_k is the a = 1 theta PGF with c replaced by the running average
    (c_1 + ... + c_k) / k.
    """
    spec = CMixedKernel(theta, tuple(c_sequence))   # validates theta and c
    if not (isinstance(k, int) and 1 <= k <= len(spec.c_sequence)):
        raise IndexOutOfRange(
            f"k must lie in 1 .. {len(spec.c_sequence)}, got {k!r}")
    c_bar = math.fsum(spec.c_sequence[:k]) / k
    return make_theta_pgf(theta=theta, a=1.0, c=c_bar)


# ---------------------------------------------------------------------------
# Infinite-depth limits
# ---------------------------------------------------------------------------

def kernel_limit(spec: KernelSpec, rho, c_sum: float | None = None,
                 sum_diverges: bool = False):
    """Depth -> infinity limit of a pure or c-mixed kernel at given correlation.

    Pure theta kernels: supercritical and critical (r = 1, a >= 1) tend to 1
    everywhere; the subcritical r = 1 branches with theta >= 0 tend to q off
    the diagonal and keep 1 at rho = 1; every other regime tends to q at all
    correlations (these PGFs are defective, so even K_n(1) drains to q).

    c-mixed: 1 everywhere when sum c_k diverges; otherwise the closed form
    with the full sum (1 at rho = 1).  The caller must say which via c_sum
    or sum_diverges, else UnknownSumConvergence is raised.
    """
    arr, scalar = _as_rho_array(rho)
    if isinstance(spec, CMixedKernel):
        if sum_diverges:
            out = np.ones_like(arr)
        elif c_sum is not None:
            if not (math.isfinite(c_sum) and c_sum >= math.fsum(spec.c_sequence) - 1e-12):
                raise InvalidRegime(
                    f"c_sum = {c_sum} is not a valid total for the given prefix")
            out = _cmixed_values(spec.theta, (c_sum,), arr)
        else:
            raise UnknownSumConvergence(
                "c-mixed limit needs c_sum (convergent) or sum_diverges=True")
        return float(out[0]) if scalar else out
    if isinstance(spec, PureKernel) and isinstance(spec.f, ThetaPgf):
        p = spec.f.params
        if p.regime is Regime.MAIN_SUPER:
            out = np.ones_like(arr)
        elif p.r == 1.0 and (p.regime is Regime.ZERO_1
                             or (p.regime is Regime.MAIN_SUB_1 and p.theta > 0.0)):
            out = np.where(arr >= 1.0, 1.0, p.q)
        else:
            out = np.full_like(arr, p.q)
        return float(out[0]) if scalar else out
    raise RegimeViolation(
        "infinite-depth limits are defined for theta-form pure kernels "
        "and c-mixed kernels only")


# ---------------------------------------------------------------------------
# Gram matrices
# ---------------------------------------------------------------------------

def _as_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise DimensionMismatch(
            f"points must form a non-empty 2-d array, got shape {pts.shape}")
    norms = np.linalg.norm(pts, axis=1)
    if np.any(norms == 0.0):
        raise ZeroVector("kernel inputs must be nonzero vectors")
    return pts / norms[:, None]


def gram(spec: KernelSpec, points) -> np.ndarray:
    """Symmetric kernel matrix over a list of input vectors.

    Each unordered pair is evaluated once and mirrored, so symmetry is exact
    by construction.
    """
    unit = _as_points(points)
    n = unit.shape[0]
    rho = np.clip(unit @ unit.T, -1.0, 1.0)
    np.fill_diagonal(rho, 1.0)
    iu = np.triu_indices(n)
    values = kernel_at_rho(spec, rho[iu])
    out = np.zeros((n, n))
    out[iu] = values
    out.T[iu] = values
    return out


def cross_gram(spec: KernelSpec, points_a, points_b) -> np.ndarray:
    """Kernel matrix between two point sets (rows of a against rows of b)."""
    ua = _as_points(points_a)
    ub = _as_points(points_b)
    if ua.shape[1] != ub.shape[1]:
        raise DimensionMismatch(
            f"point sets live in different dimensions: {ua.shape[1]} vs {ub.shape[1]}")
    rho = np.clip(ua @ ub.T, -1.0, 1.0)
    return kernel_at_rho(spec, rho.ravel()).reshape(rho.shape)


# ---------------------------------------------------------------------------
# Eigensystem on the sphere
# ---------------------------------------------------------------------------

def spec_to_pgf(spec: KernelSpec) -> Pgf:
    """The single PGF whose evaluation at rho equals the kernel.

    Theta-form pure kernels iterate in closed form; c-mixed kernels collapse
    to the critical PGF with c = sum c_k; the rest compose evaluators.
    """
    if isinstance(spec, PureKernel):
        if isinstance(spec.f, ThetaPgf):
            return pgf_iterate_closed(spec.f, spec.depth)
        return pgf_compose_sequence([spec.f] * spec.depth)
    if isinstance(spec, MixedKernel):
        return pgf_compose_sequence(list(spec.factors))
    if isinstance(spec, CMixedKernel):
        return make_theta_pgf(theta=spec.theta, a=1.0,
                              c=math.fsum(spec.c_sequence))
    raise TypeError(f"not a kernel spec: {spec!r}")


def surface_area(m: int) -> float:
    """Surface area of the unit sphere in R^m, 2 pi^(m/2) / Gamma(m/2)."""
    if not (isinstance(m, int) and m >= 1):
        raise DimensionUnsupported(f"dimension must be an integer >= 1, got {m!r}")
    return 2.0 * math.pi ** (m / 2.0) / math.gamma(m / 2.0)


def multiplicity(m: int, k: int) -> int:
    """Number of degree-k spherical harmonics in R^m, exact integer.

    ((2k + m - 2) / k) * binom(k + m - 3, k - 1) for k >= 1, and 1 for k = 0
    (the constant harmonic; the printed formula has k in a denominator).
    Needs m >= 3; the binomial degenerates at m = 2, not supported.
    """
    if not (isinstance(m, int) and m >= 3):
        raise DimensionUnsupported(
            f"multiplicities need integer dimension m >= 3, got {m!r}"
            + (" (m = 2 unsupported: the binomial degenerates)" if m == 2 else ""))
    if not (isinstance(k, int) and k >= 0):
        raise ValueError(f"degree must be an integer >= 0, got {k!r}")
    if k == 0:
        return 1
    numerator = (2 * k + m - 2) * math.comb(k + m - 3, k - 1)
    return numerator // k


@dataclass(frozen=True)
class Eigensystem:
    """Spherical-harmonic eigenvalues of a compositional kernel in R^m.

    lambdas[k] = surf(m) * p_k / r(m, k) with multiplicity r(m, k); the sum
    rule sum_k lambdas[k] * r(m, k) = surf(m) * sum_k p_k is then an
    identity, which tests exploit against independently extracted p_k.
    """

    dimension: int
    lambdas: tuple[float, ...]
    multiplicities: tuple[int, ...]
    coefficients: tuple[float, ...]

    @property
    def k_max(self) -> int:
        return len(self.lambdas) - 1

    def records(self) -> list[dict]:
        return [{"k": k, "lambda": self.lambdas[k], "multiplicity": self.multiplicities[k]}
                for k in range(len(self.lambdas))]


def eigensystem(spec: KernelSpec, m: int, k_max: int) -> Eigensystem:
    """Eigensystem of the kernel on the unit sphere in R^m up to degree k_max.

    The composed kernel's coefficients p_k come from the contour-extraction
    oracle (not the per-factor formulas), so eigensystems stay available for
    series and mixed specs with no closed form.
    """
    if not (isinstance(m, int) and m >= 3):
        raise DimensionUnsupported(
            f"eigensystems need integer dimension m >= 3, got {m!r}"
            + (" (m = 2 unsupported: the multiplicity formula degenerates)"
               if m == 2 else ""))
    if not (isinstance(k_max, int) and k_max >= 0):
        raise ValueError(f"k_max must be an integer >= 0, got {k_max!r}")
    p = series_coefficients(spec_to_pgf(spec), k_max)
    surf = surface_area(m)
    mults = [multiplicity(m, k) for k in range(k_max + 1)]
    lambdas = [surf * float(pk) / mult for pk, mult in zip(p, mults)]
    return Eigensystem(dimension=m, lambdas=tuple(lambdas),
                       multiplicities=tuple(mults),
                       coefficients=tuple(float(v) for v in p))
