import numpy as np
import pytest

from pgacr.ga_core import Multivector, Signature


def random_mv(sig, rng, density=0.6, grade=None):
    """Random multivector; optionally restricted to one grade."""
    masks = sig.blades(grade)
    terms = {m: float(rng.normal()) for m in masks if rng.random() < density}
    if not terms:
        terms = {masks[0]: 1.0}
    return Multivector(sig, terms)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def transversal_trial(rng, guard=1e6):
    """Sine cross-ratio of 4 concurrent 2-D lines vs. their cut by a random line.

    Returns (sine value, affine value on the transversal, det3 value) or
    None when the transversal is rejected by the conditioning guard.
    """
    x0 = rng.uniform(-3, 3, 2)
    angles = rng.uniform(0, np.pi, 4)
    s = np.sort(angles)
    if np.diff(np.concatenate([s, [s[0] + np.pi]])).min() < 1e-3:
        return None
    q = rng.uniform(-5, 5, 2)
    phi = rng.uniform(0, np.pi)
    u = np.array([np.cos(phi), np.sin(phi)])
    ts, pts = [], []
    for a in angles:
        d = np.array([np.cos(a), np.sin(a)])
        # x0 + s d = q + t u
        m = np.column_stack([d, -u])
        if abs(np.linalg.det(m)) < 1e-12:
            return None
        _, t = np.linalg.solve(m, q - x0)
        if abs(t) > guard:
            return None
        ts.append(float(t))
        pts.append(np.array([*(q + t * u), 1.0]))
    from pgacr.oracle import classical_cr_affine, det3_cross_ratio, sine_cr

    return sine_cr(angles), classical_cr_affine(ts), det3_cross_ratio([*x0, 1.0], pts)
