"""Shared test utilities: seeded random states and unitaries."""

import numpy as np

from supent import BipartiteState


def random_state(rng, dim_a, dim_b):
    g = rng.standard_normal((dim_a, dim_b)) + 1j * rng.standard_normal((dim_a, dim_b))
    return BipartiteState(g / np.linalg.norm(g))


def random_unitary(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_sphere_pair(rng):
    """(alpha, beta) uniform on the complex unit sphere."""
    z = rng.standard_normal(4)
    alpha = complex(z[0], z[1])
    beta = complex(z[2], z[3])
    norm = np.sqrt(abs(alpha) ** 2 + abs(beta) ** 2)
    return alpha / norm, beta / norm
