"""Polynomials with all zeros on the unit circle.

Construction from roots, reflection relative to a fixed degree, the
self-inversive normalization, the polar-derivative factor q = p - (1/n)Dp
with D = z d/dz, and the coefficient functionals built on top of them.

Coefficient vectors are 1-d complex arrays ordered lowest degree first.
Roots are the primary data; coefficients are expanded once at construction
and cached on the value.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegreeOverflow,
    InconsistentReflection,
    NonUnimodularRoot,
    NotSelfInversive,
    SeparationFailure,
    ZeroLeading,
)

# Package-wide tolerances.  All identities here are polynomial-degree-bounded
# with mild conditioning for n <= 64, so these sit an order of magnitude above
# accumulated double-precision rounding at that scale.
TAU_UNIMOD = 1e-12   # allowed deviation of |root| from 1 on input
TAU_EXPAND = 1e-10   # relative coefficient tolerance, against max |a_j|
TAU_SEP = 1e-8       # chordal separation deciding the simple-zero flag
TAU_CROSS = 1e-8     # spectral vs quadrature cross-check tolerance


def as_coefficients(values) -> np.ndarray:
    """Coerce input to a 1-d complex coefficient array, lowest degree first."""
    arr = np.atleast_1d(np.asarray(values, dtype=complex))
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("coefficients must form a nonempty 1-d sequence")
    return arr


def poly_degree(coeffs) -> int:
    """Index of the highest nonzero coefficient, -1 for the zero polynomial."""
    arr = as_coefficients(coeffs)
    nz = np.nonzero(arr)[0]
    return int(nz[-1]) if nz.size else -1


def eval_poly(coeffs, z):
    """Evaluate a coefficient vector at scalar or array arguments (Horner)."""
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for c in as_coefficients(coeffs)[::-1]:
        acc = acc * z + c
    return acc


def _leja_order(roots: np.ndarray) -> np.ndarray:
    """Indices ordering the roots so successive partial products stay small.

    Greedy Leja ordering: each next root maximizes the product of distances
    to the ones already taken.  Without it, expanding structured root sets
    (e.g. roots of unity in angle order) grows intermediate coefficients
    exponentially and loses ~6 digits by degree 32.
    """
    m = roots.size
    if m < 3:
        return np.arange(m)
    order = np.empty(m, dtype=int)
    taken = np.zeros(m, dtype=bool)
    first = int(np.argmax(np.abs(roots)))
    order[0] = first
    taken[first] = True
    logdist = np.full(m, -np.inf)
    with np.errstate(divide="ignore"):
        logdist[~taken] = np.log(np.abs(roots[~taken] - roots[first]))
    for k in range(1, m):
        # argmax restricted to untaken indices; repeated roots reach -inf and
        # are simply taken last, keeping the result a true permutation.
        candidates = np.nonzero(~taken)[0]
        idx = int(candidates[np.argmax(logdist[candidates])])
        order[k] = idx
        taken[idx] = True
        if k < m - 1:
            with np.errstate(divide="ignore"):
                logdist[~taken] += np.log(np.abs(roots[~taken] - roots[idx]))
    return order


def expand_from_roots(roots, leading) -> np.ndarray:
    """Coefficients of ``leading * prod(z - root)``, lowest degree first."""
    roots = np.asarray(roots, dtype=complex)
    coeffs = np.array([leading], dtype=complex)
    for tau in roots[_leja_order(roots)]:
        nxt = np.zeros(coeffs.size + 1, dtype=complex)
        nxt[1:] = coeffs
        nxt[: coeffs.size] -= tau * coeffs
        coeffs = nxt
    return coeffs


def root_clusters(roots, tol: float = TAU_SEP):
    """Group roots whose pairwise chordal distance is within ``tol``.

    Returns a list of ``(center, multiplicity)`` pairs with the center
    projected back onto the unit circle.  Intended for certified root lists
    of circle polynomials, where clusters are genuine multiplicities.
    """
    roots = np.asarray(roots, dtype=complex)
    order = np.argsort(np.angle(roots))
    clusters: list[list[complex]] = []
    for idx in order:
        tau = complex(roots[idx])
        if clusters and abs(tau - clusters[-1][-1]) <= tol:
            clusters[-1].append(tau)
        else:
            clusters.append([tau])
    # The sweep is linear in angle, so the first and last cluster can wrap
    # around the branch cut.
    if len(clusters) > 1 and abs(clusters[0][0] - clusters[-1][-1]) <= tol:
        clusters[0] = clusters.pop() + clusters[0]
    out = []
    for group in clusters:
        center = np.mean(group)
        center /= abs(center)
        out.append((complex(center), len(group)))
    return out


@dataclass(frozen=True)
class CirclePoly:
    """A degree-n polynomial with every zero on the unit circle.

    Fields: ``degree`` n >= 1, ``coefficients`` a_0..a_n, certified ``roots``
    tau_1..tau_n with |tau| = 1, and the ``leading`` factor a = a_n != 0.
    Values are immutable and safe to share between threads.
    """

    degree: int
    coefficients: np.ndarray
    roots: np.ndarray
    leading: complex

    def __post_init__(self):
        self.coefficients.setflags(write=False)
        self.roots.setflags(write=False)

    def __call__(self, z):
        return eval_poly(self.coefficients, z)

    @property
    def angles(self) -> np.ndarray:
        """Root angles in radians, in storage order."""
        return np.angle(self.roots)

    def scaled(self, factor: complex) -> "CirclePoly":
        """The polynomial multiplied by a nonzero constant."""
        if factor == 0:
            raise ZeroLeading("scaling factor must be nonzero")
        return CirclePoly(
            self.degree,
            factor * self.coefficients,
            self.roots.copy(),
            complex(factor * self.leading),
        )

    def is_self_inversive(self, tol: float = TAU_EXPAND) -> bool:
        """Whether the polynomial equals its reflection within ``tol``."""
        refl = reflect(self.coefficients, self.degree)
        scale = np.max(np.abs(self.coefficients))
        return bool(np.max(np.abs(refl - self.coefficients)) <= tol * scale)


def from_roots(roots, leading=1.0) -> CirclePoly:
    """Build a CirclePoly from unimodular roots and a nonzero leading factor.

    Roots are projected exactly onto the circle by dividing by their modulus;
    a root whose modulus deviates from 1 by more than ``TAU_UNIMOD`` raises
    ``NonUnimodularRoot``.
    """
    leading = complex(leading)
    if leading == 0:
        raise ZeroLeading("leading coefficient must be nonzero")
    roots = np.atleast_1d(np.asarray(roots, dtype=complex))
    if roots.size == 0:
        raise ValueError("a CirclePoly needs at least one root (degree >= 1)")
    mods = np.abs(roots)
    worst = np.max(np.abs(mods - 1.0))
    if worst > TAU_UNIMOD:
        raise NonUnimodularRoot(
            f"root modulus deviates from 1 by {worst:.3e} (> {TAU_UNIMOD:.0e})"
        )
    roots = roots / mods
    coeffs = expand_from_roots(roots, leading)
    return CirclePoly(roots.size, coeffs, roots, leading)


def from_angles(angles, leading=1.0) -> CirclePoly:
    """Build a CirclePoly with roots ``exp(i * angle)``."""
    angles = np.atleast_1d(np.asarray(angles, dtype=float))
    return from_roots(np.exp(1j * angles), leading)


def reflect(coeffs, n: int) -> np.ndarray:
    """Reflection relative to degree ``n``: output_j = conj(input_{n-j}).

    An involution on coefficient vectors of degree <= n; raises
    ``DegreeOverflow`` when the input degree exceeds ``n``.
    """
    arr = as_coefficients(coeffs)
    deg = poly_degree(arr)
    if deg > n:
        raise DegreeOverflow(f"degree {deg} exceeds reflection degree {n}")
    padded = np.zeros(n + 1, dtype=complex)
    padded[: min(arr.size, n + 1)] = arr[: n + 1]
    return np.conj(padded[::-1])


@dataclass(frozen=True)
class NormalizationResult:
    """A unimodular factor eta together with the self-inversive eta * p."""

    eta: complex
    normalized: CirclePoly


def _reflection_multiplier(coeffs, n: int) -> complex:
    """Least-squares unimodular lambda with reflect(p) = lambda * p."""
    arr = as_coefficients(coeffs)
    refl = reflect(arr, n)
    lam = complex(np.vdot(arr, refl) / np.vdot(arr, arr))
    mod = abs(lam)
    if mod == 0:
        raise InconsistentReflection("reflection is orthogonal to the input")
    lam /= mod
    scale = np.max(np.abs(arr))
    resid = np.max(np.abs(refl - lam * arr))
    if resid > TAU_EXPAND * scale:
        raise InconsistentReflection(
            f"reflection residual {resid / scale:.3e} exceeds {TAU_EXPAND:.0e}; "
            "roots are off the circle"
        )
    return lam


def normalize_self_inversive(p: CirclePoly) -> NormalizationResult:
    """Unimodular eta such that eta * p is self-inversive.

    eta solves eta^2 = lambda where reflect(p) = lambda * p.  Of the two
    square roots the one with nonnegative real part is chosen, ties broken
    toward positive imaginary part.
    """
    lam = _reflection_multiplier(p.coefficients, p.degree)
    eta = cmath.sqrt(lam)
    if eta.real < 0 or (eta.real == 0 and eta.imag < 0):
        eta = -eta
    return NormalizationResult(eta, p.scaled(eta))


@dataclass(frozen=True)
class PolarDecomposition:
    """The polar factor pair (q, q*) of a self-inversive polynomial.

    q = p - (1/n)Dp has degree <= n-1 and q_j = ((n-j)/n) a_j; the reflection
    q* = (1/n)Dp has vanishing constant term and qstar_j = (j/n) a_j, so that
    p = q + q* coefficientwise.
    """

    parent: CirclePoly
    q: np.ndarray
    qstar: np.ndarray
    simple_zeros: bool

    def __post_init__(self):
        self.q.setflags(write=False)
        self.qstar.setflags(write=False)

    @property
    def degree(self) -> int:
        return self.parent.degree


def has_simple_zeros(roots, tol: float = TAU_SEP) -> bool:
    """Whether all pairwise chordal root distances exceed ``tol``."""
    roots = np.asarray(roots, dtype=complex)
    if roots.size < 2:
        return True
    diffs = np.abs(roots[:, None] - roots[None, :])
    diffs[np.diag_indices(roots.size)] = np.inf
    return bool(np.min(diffs) > tol)


def polar_factor(p: CirclePoly) -> PolarDecomposition:
    """Polar decomposition of a self-inversive CirclePoly.

    Raises ``NotSelfInversive`` when the reflection of p deviates from p by
    more than ``TAU_EXPAND`` relative to the coefficient scale.
    """
    n = p.degree
    a = p.coefficients
    refl = reflect(a, n)
    scale = np.max(np.abs(a))
    dev = np.max(np.abs(refl - a))
    if dev > TAU_EXPAND * scale:
        raise NotSelfInversive(
            f"reflection deviates by {dev / scale:.3e} relative (> {TAU_EXPAND:.0e})"
        )
    j = np.arange(n + 1, dtype=float)
    q = ((n - j[:n]) / n) * a[:n]
    qstar = (j / n) * a
    return PolarDecomposition(p, q, qstar, has_simple_zeros(p.roots))


def parseval_norm(p) -> float:
    """Squared L2 norm on the circle, computed as sum |a_j|^2."""
    coeffs = p.coefficients if isinstance(p, CirclePoly) else as_coefficients(p)
    return float(np.sum(np.abs(coeffs) ** 2))


def gamma_remainder(p: CirclePoly) -> float:
    """The remainder coefficient sum: sum_{j=1}^{n-1} j(n-j)/n^2 |a_j|^2.

    Vanishes exactly on binomials a_0 + a_n z^n; empty (zero) for n = 1.
    """
    n = p.degree
    if n < 2:
        return 0.0
    j = np.arange(1, n, dtype=float)
    mid = p.coefficients[1:n]
    return float(np.sum(j * (n - j) / n**2 * np.abs(mid) ** 2))


def weighted_form_Sn(g, n: int) -> float:
    """The weighted quadratic form sum_{j=1}^{n-1} ((n-j)/j) |g_j|^2.

    Ignores g_0 and all g_j with j >= n.  Requires n >= 2.
    """
    if n < 2:
        raise ValueError("the weighted form needs n >= 2")
    arr = as_coefficients(g)
    j_top = min(n - 1, arr.size - 1)
    if j_top < 1:
        return 0.0
    j = np.arange(1, j_top + 1, dtype=float)
    return float(np.sum((n - j) / j * np.abs(arr[1 : j_top + 1]) ** 2))


def partial_energy_Al(g, l: int) -> float:
    """Partial coefficient energy sum_{j=0}^{l} |g_j|^2 (nondecreasing in l)."""
    if l < 0:
        raise ValueError("partial energy index must be >= 0")
    arr = as_coefficients(g)
    return float(np.sum(np.abs(arr[: l + 1]) ** 2))


def perturb_roots(p: CirclePoly, epsilon: float, seed=None) -> CirclePoly:
    """Split the roots of a self-inversive p into pairwise distinct ones.

    Root j is rotated by epsilon * j / n (magnitudes <= epsilon), and the
    result is renormalized self-inversive choosing the square root of the
    reflection multiplier nearest 1, so the output converges to p
    coefficientwise as epsilon -> 0.  Falls back to seeded jitter if the
    deterministic schedule produces a collision; ``SeparationFailure`` after
    that is essentially unreachable for epsilon > 0.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    n = p.degree
    rng = np.random.default_rng(seed)
    offsets = epsilon * np.arange(1, n + 1) / n
    for _ in range(8):
        rotated = p.roots * np.exp(1j * offsets)
        if n < 2:
            break
        diffs = np.abs(rotated[:, None] - rotated[None, :])
        diffs[np.diag_indices(n)] = np.inf
        if np.min(diffs) > 0:
            break
        offsets = epsilon * (np.arange(1, n + 1) - 0.5 * rng.random(n)) / n
    else:
        raise SeparationFailure(
            f"could not separate roots at epsilon={epsilon:.3e}"
        )
    coeffs = expand_from_roots(rotated, p.leading)
    lam = _reflection_multiplier(coeffs, n)
    eta = cmath.sqrt(lam)
    if abs(eta - 1) > abs(eta + 1):
        eta = -eta
    return CirclePoly(n, eta * coeffs, rotated, eta * p.leading)


def coefficients_to_json(coeffs) -> list:
    """Coefficient vector as JSON-ready [re, im] pairs, lowest degree first."""
    arr = as_coefficients(coeffs)
    return [[float(c.real), float(c.imag)] for c in arr]


def coefficients_from_json(data) -> np.ndarray:
    """Inverse of :func:`coefficients_to_json`."""
    return np.array([complex(re, im) for re, im in data], dtype=complex)
