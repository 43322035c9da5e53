"""Random boundary-compatible profiles for activation tests.

Profiles are built as eta(x) = c*x + bump(x) with bump(1) = bump(b) = 0, so
the boundary identity eta(b) = b*eta(1) holds exactly.  The slope budget is
split between the linear part and the bump, keeping the total Lipschitz
constant below ``max_slope``; boundary-jump assertions rely on that bound.
"""

from __future__ import annotations

import numpy as np

from equichar import EtaProfile


def random_eta_profile(
    b: float,
    rng: np.random.Generator,
    samples: int = 17,
    max_slope: float = 0.4,
) -> EtaProfile:
    xs = np.linspace(1.0, b, samples)
    c = rng.uniform(-max_slope / 2, max_slope / 2)
    bump = np.concatenate([[0.0], rng.uniform(-1.0, 1.0, samples - 2), [0.0]])
    steepest = np.abs(np.diff(bump)).max() / (xs[1] - xs[0])
    if steepest > 0:
        bump *= (max_slope / 2) / steepest * rng.uniform(0.5, 1.0)
    return EtaProfile(b, xs, c * xs + bump)
