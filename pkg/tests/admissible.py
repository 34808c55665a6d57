"""Random admissible (theta, constants) for every behaviour class."""
from __future__ import annotations

import numpy as np



def _d(v: float) -> float:
    # dyadic, so that integer and vanishing conditions hold exactly in any precision
    return round(v * 2**20) / 2**20


def _c(rng, lo=0.1, hi=0.9):
    return complex(_d(rng.uniform(lo, hi)), _d(rng.uniform(-0.3, 0.3)))


def sample(tag: str, rng: np.random.Generator):
    """(theta, constants) drawn at random inside the class's admissibility conditions."""
    t0, tx, t1, ti = _c(rng), _c(rng), _c(rng), 1 + _c(rng, 0.2, 1.2)
    a = _c(rng, 0.3, 1.5)
    k = int(rng.integers(0, 2))
    sg = (-1) ** k
    if tag == "PowerGeneric":
        return (t0, tx, t1, ti), {"sigma": complex(_d(rng.uniform(0.2, 0.8)), _d(rng.uniform(-0.5, 0.5))), "a": a}
    if tag == "PowerRho":
        rho = _c(rng, 0.2, 0.8)
        return (t0, tx, t1, 1 + (1 + rho) - sg * t1), {"a": a, "k": k}
    if tag == "PowerNegOmega":
        return (t0, tx, _c(rng, 0.2, 0.8), 1.0), {"a": a}
    if tag == "InvOscNuPhi":
        return (t0, tx, t1, ti), {"nu": _d(rng.uniform(0.2, 0.8)), "phi": _c(rng, -1, 1)}
    if tag == "InvOscA":
        u, w = (_d(v) for v in rng.uniform(0.2, 0.8, 2))
        return (t0, tx, 1j * w, 1 + 1j * u), {"nu": float((u + w) / 2), "a": a}
    if tag == "TaylorRow1":
        return (t0, tx, t1, ti), {"k": k}
    if tag == "TaylorRow2":
        # N = 1 and alpha = gamma: the level-2 logarithm vanishes identically
        return (1 - sg * tx, tx, t1, 1 + t1), {"a": a, "k": k}
    if tag == "TaylorRow3":
        return (0, 0, t1, ti), {"a": a}
    if tag == "TaylorRow4":
        return (t0, tx, t1, ti), {"k": k}
    if tag == "TaylorRow5":
        # N = 1 and theta_0 = theta_x: the level-1 logarithm vanishes identically
        return (tx, tx, t1, 1 + 1 - sg * t1), {"a": a, "k": k}
    if tag == "TaylorRow6":
        return (t0, tx, 0, 1), {"a": a}
    if tag == "LogRow1":
        N = int(rng.integers(0, 3))
        consts = {"a": a, "k": k, "sign": int(rng.choice([-1, 1]))}
        return (N - sg * tx, tx, t1, ti), consts
    if tag == "LogRow2":
        return (t0, tx, t1, ti), {"a": a}
    if tag == "LogRow3":
        N = int(rng.integers(1, 3))
        return (t0, tx, t1, 1 + N - sg * t1), {"a": a, "k": k}
    if tag == "InvLogRow1":
        return (t0, tx, t1, 1 + t1), {"a": a, "sign": int(rng.choice([-1, 1]))}
    if tag == "InvLogRow2":
        return (t0, tx, t1, ti), {"a": a}
    raise KeyError(tag)
