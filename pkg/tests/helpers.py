"""Shared random-instance generators for the test suite.

numpy's own linear algebra (qr, eigh) is used here on purpose: the tests
cross-check the package's hand-rolled routines against an independent
implementation instead of trusting them to test themselves.
"""

import numpy as np


def random_state(rng, n):
    vec = rng.normal(size=n) + 1j * rng.normal(size=n)
    return vec / np.linalg.norm(vec)


def random_unitary(rng, n):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(g)
    # fix the column phases so the distribution is Haar, not QR-biased
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_hermitian(rng, n, degenerate=False):
    if degenerate:
        u = random_unitary(rng, n)
        half = max(1, n // 2)
        vals = np.concatenate([
            np.full(half, rng.normal()),
            rng.normal(size=n - half),
        ])
        return (u * vals) @ u.conj().T
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) / 2


def random_partition(rng, n, k):
    """Split indices 0..n-1 into k nonempty groups."""
    assert 1 <= k <= n
    labels = np.concatenate([np.arange(k), rng.integers(0, k, size=n - k)])
    rng.shuffle(labels)
    return [np.flatnonzero(labels == m) for m in range(k)]


def orthogonal_family(rng, n, k):
    """k operators M_m = U D_m V with D_m the indicator of group m.

    Any two members are two-sided orthogonal and the family resolves the
    identity, so it is exactly the kind of collection that superposes into
    a unitary.
    """
    u = random_unitary(rng, n)
    v = random_unitary(rng, n)
    family = []
    for group in random_partition(rng, n, k):
        d = np.zeros(n)
        d[group] = 1.0
        family.append((u * d) @ v)
    return family


def random_phases(rng, k):
    return np.exp(1j * rng.uniform(0.0, 2 * np.pi, size=k))
