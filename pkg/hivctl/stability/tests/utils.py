import numpy as np

from scenarios.presets import baseline_params


RATE_NAMES = ("lam", "d", "beta", "a", "p", "c", "h_ctl", "big_n", "mu")


def jittered_params(rng, spread=2.0, **changes):
    """Simulation constants, each scaled by a log-uniform factor in
    [1/spread, spread]."""
    base = baseline_params(**changes)
    factors = np.exp(rng.uniform(-np.log(spread), np.log(spread), 9))
    return base.with_overrides(
        **{
            name: getattr(base, name) * float(factor)
            for name, factor in zip(RATE_NAMES, factors)
        }
    )


def draw_until(rng, accept, count, limit=100000):
    """`count` jittered parameter sets for which `accept(params)` holds."""
    accepted = []
    for _ in range(limit):
        params = jittered_params(rng)
        if accept(params):
            accepted.append(params)
            if len(accepted) == count:
                return accepted
    raise AssertionError(f"only {len(accepted)} of {count} draws accepted")
