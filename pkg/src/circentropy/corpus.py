"""Deterministic random instance generation for the verification corpora."""

from __future__ import annotations

import math

import numpy as np

from .polycircle import CirclePoly, from_angles, normalize_self_inversive, parseval_norm


def instance_rng(master_seed: int, *key: int) -> np.random.Generator:
    """Generator seeded deterministically from a master seed and an index key.

    The per-instance derivation makes corpus runs reproducible regardless of
    scheduling or chunking.
    """
    return np.random.default_rng(
        np.random.SeedSequence(entropy=[int(master_seed), *(int(k) for k in key)])
    )


def random_circle_poly(
    n: int,
    rng: np.random.Generator,
    multiple: bool = False,
    unit_norm: bool = False,
    min_gap: float = 0.0,
) -> CirclePoly:
    """Random self-inversive polynomial of degree n with circle zeros.

    ``multiple`` forces at least one repeated zero (two for n >= 8).
    ``min_gap`` resamples until all distinct root angles are separated by at
    least that much, which keeps grid-based cross-checks meaningful.
    ``unit_norm`` rescales so that the squared norm is 1.
    """
    for _ in range(200):
        angles = rng.uniform(0.0, 2.0 * np.pi, n)
        if multiple and n >= 2:
            j = int(rng.integers(0, n - 1))
            angles[j + 1] = angles[j]
            if n >= 8 and rng.random() < 0.5:
                k = int(rng.integers(0, n - 1))
                if k != j:
                    angles[k + 1] = angles[k]
        if min_gap > 0.0:
            distinct = np.unique(np.sort(np.mod(angles, 2 * np.pi)))
            if distinct.size > 1:
                gaps = np.diff(
                    np.concatenate([distinct, [distinct[0] + 2 * np.pi]])
                )
                if np.min(gaps) < min_gap:
                    continue
        break
    else:
        raise RuntimeError("could not sample angles satisfying the gap constraint")
    leading = (0.5 + 1.5 * rng.random()) * np.exp(2j * np.pi * rng.random())
    p = normalize_self_inversive(from_angles(angles, leading)).normalized
    if unit_norm:
        p = p.scaled(1.0 / math.sqrt(parseval_norm(p)))
    return p


def random_binomial(n: int, rng: np.random.Generator) -> CirclePoly:
    """A member c(omega + z^n) of the extremal family with N(p) = 1."""
    omega = np.exp(2j * np.pi * rng.random())
    zeta = np.exp(2j * np.pi * rng.random())
    angles = (np.angle(-omega) + 2 * np.pi * np.arange(n)) / n
    return from_angles(angles, zeta / math.sqrt(2.0))


def random_schur_triple(rng: np.random.Generator, max_zeros: int = 3,
                        max_n: int = 10, max_f_degree: int = 12):
    """Random (phi, f, n) input for the weighted contraction check.

    phi is a Blaschke product with up to ``max_zeros`` zeros drawn inside the
    disk of radius 0.95 and a unimodular constant; f is a random polynomial
    with vanishing constant coefficient.
    """
    n = int(rng.integers(2, max_n + 1))
    count = int(rng.integers(0, max_zeros + 1))
    radii = 0.95 * np.sqrt(rng.random(count))
    zeros = radii * np.exp(2j * np.pi * rng.random(count))
    gamma = np.exp(2j * np.pi * rng.random())
    deg = int(rng.integers(1, max_f_degree + 1))
    f = rng.standard_normal(deg + 1) + 1j * rng.standard_normal(deg + 1)
    f[0] = 0.0
    if not np.any(f):
        f[deg] = 1.0
    return zeros, complex(gamma), f, n
