"""Two independent evaluators for integrals of |A|^2 log|B|^2 over the circle.

The spectral route expands log|e^{it} - rho|^2 in its Fourier series and pairs
it against the autocorrelation of A, which truncates exactly at deg A; the
quadrature route integrates the boundary values numerically, with windowed
exponential substitutions around the circle zeros of B to resolve the
logarithmic singularities.  The convention x log x = 0 at x = 0 applies
throughout, and quotient functionals are always evaluated as differences of
the two integrals, never as pointwise ratios.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, IllConditioned, ZeroPolynomial
from .polycircle import (
    TAU_SEP,
    CirclePoly,
    as_coefficients,
    eval_poly,
    poly_degree,
    root_clusters,
)

TAU_ROOT = 1e-6      # residual certificate threshold for root finding
_S_CUT = 37.0        # window substitutions stop at |t - angle| = e^{-37}
_LOG_FLOOR = 1e-64   # clamps squared distances so log never returns -inf


@dataclass(frozen=True)
class QuadratureConfig:
    """Settings for the adaptive circle quadrature."""

    base_nodes: int = 4096
    tolerance: float = 1e-9
    max_depth: int = 40
    window: float = 1e-2

    @classmethod
    def from_dict(cls, data: dict) -> "QuadratureConfig":
        allowed = {"base_nodes", "tolerance", "max_depth", "window"}
        unknown = set(data) - allowed
        if unknown:
            raise ValueError(f"unknown quadrature config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def from_file(cls, path) -> "QuadratureConfig":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


DEFAULT_QUADRATURE = QuadratureConfig()


@dataclass(frozen=True)
class TrigSquare:
    """|A(e^{it})|^2 as a trigonometric polynomial.

    ``coefficients`` holds c_{-d}..c_d with c_k = sum_j A_{j+k} conj(A_j),
    so c_{-k} = conj(c_k) and c_0 = sum |A_j|^2.
    """

    coefficients: np.ndarray
    degree: int

    def __post_init__(self):
        self.coefficients.setflags(write=False)

    def coefficient(self, k: int) -> complex:
        if abs(k) > self.degree:
            return 0j
        return complex(self.coefficients[self.degree + k])

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        k = np.arange(-self.degree, self.degree + 1)
        return np.real(np.exp(1j * np.outer(t, k)) @ self.coefficients)


def trig_square(A) -> TrigSquare:
    """Autocorrelation of the coefficient vector of A."""
    arr = as_coefficients(A)
    deg = poly_degree(arr)
    if deg < 0:
        raise ZeroPolynomial("|A|^2 undefined for the zero polynomial")
    a = arr[: deg + 1]
    c = np.zeros(2 * deg + 1, dtype=complex)
    for k in range(deg + 1):
        ck = np.vdot(a[: deg + 1 - k], a[k:])
        c[deg + k] = ck
        c[deg - k] = np.conj(ck)
    return TrigSquare(c, deg)


@dataclass(frozen=True)
class RootCertificates:
    """Roots of a coefficient vector with Newton-step residual certificates.

    ``infinite_count`` counts trailing zero coefficients, i.e. the degree drop
    relative to the length of the input ("roots at infinity").
    """

    roots: np.ndarray
    residuals: np.ndarray
    infinite_count: int


def _roots_with_certificates(B) -> RootCertificates:
    arr = as_coefficients(B)
    deg = poly_degree(arr)
    if deg < 0:
        raise ZeroPolynomial("the zero polynomial has no root set")
    infinite = arr.size - 1 - deg
    body = arr[: deg + 1]
    if deg == 0:
        empty = np.zeros(0, dtype=complex)
        return RootCertificates(empty, np.zeros(0), infinite)
    roots = np.roots(body[::-1])
    dcoeffs = body[1:] * np.arange(1, deg + 1)
    bv = eval_poly(body, roots)
    dv = eval_poly(dcoeffs, roots)
    with np.errstate(divide="ignore", invalid="ignore"):
        step = np.where(dv != 0, bv / dv, 0.0)
    ok = np.isfinite(step) & (np.abs(step) < 0.1 * (1.0 + np.abs(roots)))
    roots = roots - np.where(ok, step, 0.0)
    bv = eval_poly(body, roots)
    dv = eval_poly(dcoeffs, roots)
    with np.errstate(divide="ignore", invalid="ignore"):
        resid = np.where(np.abs(dv) > 0, np.abs(bv) / np.abs(dv), np.inf)
    return RootCertificates(roots, resid, infinite)


def poly_roots(B, tol: float = TAU_ROOT) -> RootCertificates:
    """Companion-matrix roots with one Newton polish step per root.

    Raises ``IllConditioned`` when any Newton-step residual certificate
    exceeds ``tol``; the caller is expected to fall back to the quadrature
    route in that case.
    """
    cert = _roots_with_certificates(B)
    if cert.residuals.size and np.max(cert.residuals) > tol:
        raise IllConditioned(
            f"worst root residual {np.max(cert.residuals):.3e} exceeds {tol:.0e}"
        )
    return cert


def log_pair_spectral(A, B, b_roots=None) -> float:
    """Integral of |A|^2 log|B|^2 over dm, by the exact series pairing.

    Expands log|B|^2 over the roots of B; each root pairs against the
    finitely many autocorrelation coefficients of A, so the series truncates
    exactly at deg A.  Roots within ``TAU_SEP`` of the circle are projected
    onto it (the inside/outside series branches coincide in that limit).
    ``b_roots`` supplies a certified root list and skips root finding.
    """
    ts = trig_square(A)
    arr = as_coefficients(B)
    deg = poly_degree(arr)
    if deg < 0:
        raise ZeroPolynomial("log|B| undefined for the zero polynomial")
    lead = complex(arr[deg])
    if b_roots is None:
        roots = poly_roots(arr).roots
    else:
        roots = np.asarray(b_roots, dtype=complex)
        if roots.size != deg:
            raise ValueError(
                f"certified root list has {roots.size} entries, expected {deg}"
            )
    c0 = float(ts.coefficients[ts.degree].real)
    total = c0 * 2.0 * math.log(abs(lead))
    if roots.size == 0:
        return total
    mods = np.abs(roots)
    on_circle = np.abs(mods - 1.0) <= TAU_SEP
    roots = np.where(on_circle, roots / mods, roots)
    mods = np.where(on_circle, 1.0, mods)
    outside = mods > 1.0
    total += c0 * 2.0 * float(np.sum(np.log(mods[outside])))
    d = ts.degree
    if d >= 1:
        mu = np.where(outside, 1.0 / np.conj(roots), roots)
        m = np.arange(1, d + 1)
        powers = mu[:, None] ** m[None, :]
        cm = ts.coefficients[ts.degree + 1 :]
        total -= 2.0 * float(np.sum(np.real(powers @ (cm / m))))
    return total


# ---------------------------------------------------------------------------
# Quadrature route
# ---------------------------------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


def _gl_integrate(f, a: float, b: float, panels: int) -> float:
    edges = np.linspace(a, b, panels + 1)
    half = (b - a) / (2.0 * panels)
    mids = 0.5 * (edges[:-1] + edges[1:])
    pts = (mids[:, None] + half * _GL_NODES[None, :]).ravel()
    weights = np.tile(_GL_WEIGHTS * half, panels)
    return float(np.dot(f(pts), weights))


def _merge_windows(angles, halfwidth: float):
    """Merge windows around the given angles into disjoint circular clusters.

    Returns a list of ``(start, end, centers)`` with start < end and the
    cluster centers sorted ascending; intervals may extend beyond [0, 2pi)
    to represent wrap-around.
    """
    centers = np.sort(np.mod(np.asarray(angles, dtype=float), 2 * np.pi))
    clusters: list[list[float]] = [[centers[0]]]
    for c in centers[1:]:
        if c - halfwidth <= clusters[-1][-1] + halfwidth:
            clusters[-1].append(c)
        else:
            clusters.append([c])
    # wrap-around merge of the last cluster into the first
    if len(clusters) > 1 and clusters[0][0] + 2 * np.pi - halfwidth <= clusters[-1][-1] + halfwidth:
        first = [c + 2 * np.pi for c in clusters.pop(0)]
        clusters[-1].extend(first)
    out = []
    for group in clusters:
        out.append((group[0] - halfwidth, group[-1] + halfwidth, group))
    return out


def _window_pieces(start: float, end: float, centers, s_cut_of=None):
    """One-sided substitution pieces for a merged window of singular angles.

    Each sub-arc between a center and the nearest breakpoint maps to the
    s-interval [-log span, s_cut] under t = center + sign * e^{-s}.
    ``s_cut_of`` may shorten the default tail cut per center when the caller
    has certified that the dropped tail is below tolerance.
    """
    pts = [start]
    for left, right in zip(centers[:-1], centers[1:]):
        pts.append(0.5 * (left + right))
    pts.append(end)
    pieces = []
    for i, c in enumerate(centers):
        s_cut = _S_CUT if s_cut_of is None else min(_S_CUT, s_cut_of(c))
        for edge, sign in ((pts[i], -1.0), (pts[i + 1], 1.0)):
            span = abs(edge - c)
            if span <= 0:
                continue
            s0 = -math.log(span)
            if s0 < s_cut:
                pieces.append((c, sign, s0, s_cut))
    return pieces


def _level_nodes(window_pieces, arc_pieces, level: int):
    """Gauss-Legendre nodes (in t) and weights for one refinement level."""
    pts = []
    wts = []
    for c, sign, s0, s_cut in window_pieces:
        panels = max(2, int(math.ceil((s_cut - s0) / 2.5))) * 2**level
        edges = np.linspace(s0, s_cut, panels + 1)
        half = (s_cut - s0) / (2.0 * panels)
        mids = 0.5 * (edges[:-1] + edges[1:])
        s = (mids[:, None] + half * _GL_NODES[None, :]).ravel()
        u = np.exp(-s)
        pts.append(c + sign * u)
        wts.append(np.tile(_GL_WEIGHTS * half, panels) * u)
    for a, b, p0 in arc_pieces:
        panels = p0 * 2**level
        edges = np.linspace(a, b, panels + 1)
        half = (b - a) / (2.0 * panels)
        mids = 0.5 * (edges[:-1] + edges[1:])
        pts.append((mids[:, None] + half * _GL_NODES[None, :]).ravel())
        wts.append(np.tile(_GL_WEIGHTS * half, panels))
    return np.concatenate(pts), np.concatenate(wts)


def circle_quadrature(f, singular_angles=(), config: QuadratureConfig | None = None,
                      scale: float = 1.0, s_cut_of=None) -> float:
    """Mean of a vectorized integrand f(t) over t in [0, 2pi).

    With no singular angles this is the periodic trapezoid rule, doubled
    until two successive levels agree within tolerance.  Around each singular
    angle a window of the configured width is cut out and integrated under
    the substitution t = angle +/- e^{-s}, which resolves logarithmic
    singularities; windows and the complement arcs are refined together by
    panel doubling.  ``s_cut_of`` optionally shortens the substitution tail
    per angle (the caller certifies the dropped mass).  Raises
    ``BudgetExceeded`` when the refinement depth limit is hit before two
    successive levels agree.
    """
    cfg = config or DEFAULT_QUADRATURE
    tol = cfg.tolerance * max(1.0, abs(scale))
    angles = np.asarray(singular_angles, dtype=float)
    if angles.size == 0:
        nodes = cfg.base_nodes
        value = float(np.mean(f(np.arange(nodes) * (2 * np.pi / nodes))))
        for _ in range(cfg.max_depth):
            mids = (np.arange(nodes) + 0.5) * (2 * np.pi / nodes)
            refined = 0.5 * (value + float(np.mean(f(mids))))
            if abs(refined - value) <= tol:
                return refined
            value = refined
            nodes *= 2
        raise BudgetExceeded(
            f"trapezoid refinement did not reach {tol:.2e} within depth {cfg.max_depth}"
        )

    # Deduplicate angle list; multiplicity lives inside the integrand.
    angles = np.sort(np.mod(angles, 2 * np.pi))
    keep = np.concatenate(([True], np.diff(angles) > 1e-12))
    if keep.sum() > 1 and (angles[keep][-1] - angles[keep][0]) >= 2 * np.pi - 1e-12:
        keep_idx = np.nonzero(keep)[0]
        keep[keep_idx[-1]] = False
    angles = angles[keep]

    half = cfg.window / 2.0
    clusters = _merge_windows(angles, half)
    if sum(end - start for start, end, _ in clusters) >= 2 * np.pi:
        raise ValueError(
            "singular windows cover the whole circle; reduce config.window"
        )
    window_pieces = []
    arc_pieces = []
    for start, end, centers in clusters:
        window_pieces.extend(_window_pieces(start, end, centers, s_cut_of))
    for idx, (_, end, _) in enumerate(clusters):
        nxt_start = clusters[(idx + 1) % len(clusters)][0]
        if idx + 1 == len(clusters):
            nxt_start += 2 * np.pi
        if nxt_start - end > 1e-12:
            length = nxt_start - end
            arc_pieces.append((end, nxt_start, max(1, int(math.ceil(length / 0.15)))))

    pts, wts = _level_nodes(window_pieces, arc_pieces, 0)
    value = float(np.dot(f(pts), wts)) / (2 * np.pi)
    for level in range(1, cfg.max_depth + 1):
        pts, wts = _level_nodes(window_pieces, arc_pieces, level)
        refined = float(np.dot(f(pts), wts)) / (2 * np.pi)
        if abs(refined - value) <= tol:
            return refined
        value = refined
    raise BudgetExceeded(
        f"window refinement did not reach {tol:.2e} within depth {cfg.max_depth}"
    )


def _deflate_root(coeffs: np.ndarray, rho: complex) -> np.ndarray:
    """Quotient of a coefficient vector by (z - rho), remainder discarded."""
    rev = coeffs[::-1]
    out = np.empty(rev.size - 1, dtype=complex)
    acc = rev[0]
    for k in range(rev.size - 1):
        out[k] = acc
        acc = rev[k + 1] + rho * acc
    return out[::-1]


def log_pair_quadrature(A, B, config: QuadratureConfig | None = None,
                        b_roots=None) -> float:
    """Integral of |A|^2 log|B|^2 over dm by adaptive circle quadrature.

    Circle zeros of B are located (from ``b_roots`` when supplied, otherwise
    from the companion matrix without certification), deflated out of B, and
    their log factors evaluated through 2|sin((t - angle)/2)|, which stays
    accurate arbitrarily close to the singularity.  Windows around each
    circle or near-circle zero are integrated under the exponential
    substitution; the integrand follows x log x = 0 at common zeros of A
    and B.
    """
    cfg = config or DEFAULT_QUADRATURE
    a_arr = as_coefficients(A)
    b_arr = as_coefficients(B)
    deg = poly_degree(b_arr)
    if deg < 0:
        raise ZeroPolynomial("log|B| undefined for the zero polynomial")
    body = b_arr[: deg + 1]
    if b_roots is None and deg > 0:
        roots = _roots_with_certificates(body).roots
    elif b_roots is not None:
        roots = np.asarray(b_roots, dtype=complex)
    else:
        roots = np.zeros(0, dtype=complex)

    deflated = body
    factor_angles: list[float] = []
    window_angles: list[float] = []
    for rho in roots:
        mod = abs(rho)
        if abs(mod - 1.0) <= TAU_SEP:
            tau = rho / mod
            deflated = _deflate_root(deflated, tau)
            factor_angles.append(float(np.angle(tau)))
            window_angles.append(float(np.angle(tau)))
        elif abs(mod - 1.0) < cfg.window / 2.0:
            window_angles.append(float(np.angle(rho)))

    factors = np.asarray(factor_angles)
    scale = float(np.sum(np.abs(a_arr) ** 2)) * max(
        1.0, 2.0 * abs(math.log(max(abs(body[deg]), 1e-300)))
    )

    def integrand(t):
        t = np.asarray(t, dtype=float)
        z = np.exp(1j * t)
        a2 = np.abs(eval_poly(a_arr, z)) ** 2
        b2 = np.abs(eval_poly(deflated, z)) ** 2
        logb = np.log(np.maximum(b2, _LOG_FLOOR))
        if factors.size:
            dist2 = 4.0 * np.sin(0.5 * (t[None, :] - factors[:, None])) ** 2
            logb = logb + np.sum(np.log(np.maximum(dist2, _LOG_FLOOR)), axis=0)
        return np.where(a2 > 0, a2 * logb, 0.0)

    # The substitution tail beyond u0 = e^{-S} contributes at most
    # |A|^2_near * u0 * |log|B|^2|_near; where A vanishes at the window
    # center this lets the tail stop far earlier than the generic cutoff.
    deg_a = poly_degree(a_arr)
    sum_a = float(np.sum(np.abs(a_arr)))
    budget = cfg.tolerance * max(1.0, scale) / (8.0 * max(1, len(window_angles)))

    def s_cut_of(center: float) -> float:
        amp_root = abs(complex(eval_poly(a_arr, np.exp(1j * center))))
        s = 10.0
        while s < _S_CUT:
            u0 = math.exp(-s)
            amp = (amp_root + u0 * deg_a * sum_a) ** 2
            log_bound = 2.0 * deg * (s + 2.0) + 160.0
            if 2.0 * amp * u0 * log_bound <= budget:
                return s
            s += 3.0
        return _S_CUT

    return circle_quadrature(integrand, window_angles, cfg, scale=scale,
                             s_cut_of=s_cut_of)


# ---------------------------------------------------------------------------
# Ratio functional (difference of the two logarithmic integrals)
# ---------------------------------------------------------------------------


def polar_q_coefficients(coeffs, n: int) -> np.ndarray:
    """Coefficients of q = p - (1/n) D p for a degree-n coefficient vector."""
    arr = as_coefficients(coeffs)
    j = np.arange(n, dtype=float)
    return (n - j) / n * arr[:n]


def polar_roots_certified(p: CirclePoly, q) -> np.ndarray:
    """Certified roots of the polar factor q of a circle polynomial.

    Each multiple zero of p (multiplicity m) is a zero of q of multiplicity
    exactly m - 1; those are taken from p's certified root list and deflated,
    and only the remaining well-separated roots go through the companion
    matrix.  Raises ``IllConditioned`` when the residual certificates of the
    remaining roots fail.
    """
    q = as_coefficients(q)
    deg = poly_degree(q)
    if deg < 0:
        raise ZeroPolynomial("polar factor is identically zero")
    body = q[: deg + 1]
    known: list[complex] = []
    for tau, mult in root_clusters(p.roots):
        known.extend([tau] * (mult - 1))
    rest = body
    for tau in known:
        rest = _deflate_root(rest, tau)
    if rest.size - 1 > 0:
        cert = poly_roots(rest)
        extra = cert.roots
    else:
        extra = np.zeros(0, dtype=complex)
    return np.concatenate([np.asarray(known, dtype=complex), extra])


@dataclass(frozen=True)
class RatioFunctionalValue:
    """The difference functional together with its two constituent integrals.

    ``certificates`` records the evidence backing each route: the worst root
    residual for a spectral term, or the quadrature tolerance met.
    """

    value: float
    entropy_integral: float
    jensen_integral: float
    routes: dict
    certificates: dict

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "entropy_integral": self.entropy_integral,
            "jensen_integral": self.jensen_integral,
            "routes": dict(self.routes),
            "certificates": dict(self.certificates),
        }


def ratio_functional(p: CirclePoly, config: QuadratureConfig | None = None) -> RatioFunctionalValue:
    """The polar-quotient functional of p, as a difference of integrals.

    Computes int |p|^2 log|p|^2 dm - int |p|^2 log|q|^2 dm with
    q = p - (1/n)Dp, never forming a pointwise quotient, so common boundary
    zeros of p and q are harmless.  Each term is evaluated spectrally when
    root certification succeeds, by quadrature otherwise; the route used is
    recorded per term.
    """
    n = p.degree
    a = p.coefficients
    q = polar_q_coefficients(a, n)
    entropy_integral = log_pair_spectral(a, a, b_roots=p.roots)
    routes = {"entropy": "spectral"}
    certificates = {"entropy": {"kind": "certified_roots", "count": n}}
    try:
        q_roots = polar_roots_certified(p, q)
        jensen_integral = log_pair_spectral(a, q, b_roots=q_roots)
        routes["jensen"] = "spectral"
        resid = np.abs(eval_poly(q, q_roots)) if q_roots.size else np.zeros(0)
        certificates["jensen"] = {
            "kind": "root_residuals",
            "worst": float(np.max(resid)) if resid.size else 0.0,
        }
    except IllConditioned:
        cfg = config or DEFAULT_QUADRATURE
        jensen_integral = log_pair_quadrature(a, q, cfg)
        routes["jensen"] = "quadrature"
        certificates["jensen"] = {
            "kind": "quadrature_tolerance",
            "tolerance": cfg.tolerance,
        }
    return RatioFunctionalValue(
        entropy_integral - jensen_integral, entropy_integral, jensen_integral,
        routes, certificates,
    )
