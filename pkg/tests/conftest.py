"""Shared test helpers: independent scalar-algebra oracles and input generators."""

import math

import numpy as np
import pytest


def radii_from_internal(d_ab, d_ac, d_bc, theta, omega, d):
    """Distances from the new chain point to the three predecessors.

    Pure law-of-cosines algebra on the embedded quadruplet (no calls into
    the package): the predecessors span a triangle with side lengths
    d_ab, d_ac, d_bc; the new point sits at bond length d from c, bond
    angle theta at c and signed torsion omega.
    """
    r_b = math.sqrt(d_bc ** 2 + d ** 2 - 2.0 * d_bc * d * math.cos(theta))
    cos_tb = (d_ab ** 2 + d_bc ** 2 - d_ac ** 2) / (2.0 * d_ab * d_bc)
    theta_b = math.acos(max(-1.0, min(1.0, cos_tb)))
    du = d_bc - d * math.cos(theta) - d_ab * math.cos(theta_b)
    dm = d * math.sin(theta) * math.cos(omega) - d_ab * math.sin(theta_b)
    dn = d * math.sin(theta) * math.sin(omega)
    r_a = math.sqrt(du * du + dm * dm + dn * dn)
    return r_a, r_b, d


def angle_gap(x, y):
    """Distance between two angles modulo 2*pi."""
    return abs(math.remainder(x - y, 2.0 * math.pi))


def householder_reflect(point, plane_a, plane_b, plane_c):
    """Reflect a point through the plane of three points, by plain vectors."""
    point, plane_a, plane_b, plane_c = (np.asarray(p, dtype=float)
                                        for p in (point, plane_a, plane_b, plane_c))
    n = np.cross(plane_b - plane_a, plane_c - plane_a)
    n = n / np.linalg.norm(n)
    return point - 2.0 * np.dot(point - plane_a, n) * n


def random_placement_case(rng, theta_lo=0.2, theta_hi=None):
    """Non-collinear predecessors plus (theta, omega, d) in the usual ranges."""
    theta_hi = math.pi - theta_lo if theta_hi is None else theta_hi
    while True:
        a, b, c = rng.uniform(-3.0, 3.0, size=(3, 3))
        if np.linalg.norm(np.cross(b - a, c - b)) > 0.3:
            break
    theta = rng.uniform(theta_lo, theta_hi)
    omega = rng.uniform(-math.pi, math.pi)
    d = rng.uniform(0.5, 2.0)
    return a, b, c, theta, omega, d


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)
