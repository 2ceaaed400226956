"""Named scenarios of the published simulations.

Every preset is a flat mapping with the keys a scenario file uses, so a
preset, a JSON file and command-line flags can be layered on top of each
other.
"""

from dynamics.types import HistoryFunction, ModelParams, ObjectiveWeights


SIMULATE = "simulate"
EQUILIBRIA = "equilibria"
STABILITY = "stability"
OPTIMIZE = "optimize"
FIGURES = "figures"

MODES = (SIMULATE, EQUILIBRIA, STABILITY, OPTIMIZE, FIGURES)

FIG1_IC1 = "fig1-ic1"
FIG1_IC2 = "fig1-ic2"
FIG2 = "fig2"
FIG3 = "fig3"
CROSSING_EXAMPLE = "crossing-example"

BASELINE_PARAMS = {
    "lam": 1.0,
    "d": 0.1,
    "beta": 0.00025,
    "p": 0.001,
    "h_ctl": 0.2,
    "a": 0.2,
    "c": 0.03,
    "mu": 3.0,
    "tau": 10.0,
}
BASELINE_WEIGHTS = {"A1": 30.0, "A2": 40.0}

# Below N = d * mu / (beta * lam) = 1200 only the disease-free point is
# attracting, above it the full endemic point is.
N_DISEASE_FREE = 750.0
N_ENDEMIC = 1500.0

IC1 = {"x0": 5.0, "y0": 1.0, "v0": 1.0, "z0": 2.0}
IC2 = {"x0": 45.0, "y0": 2.0, "v0": 1.0, "z0": 4.0}

HORIZON = {"tf": 500.0, "dt": 0.01}

PRESETS = {
    FIG1_IC1: {
        **BASELINE_PARAMS,
        **BASELINE_WEIGHTS,
        **IC1,
        **HORIZON,
        "big_n": N_DISEASE_FREE,
        "mode": SIMULATE,
    },
    FIG1_IC2: {
        **BASELINE_PARAMS,
        **BASELINE_WEIGHTS,
        **IC2,
        **HORIZON,
        "big_n": N_DISEASE_FREE,
        "mode": SIMULATE,
    },
    FIG2: {
        **BASELINE_PARAMS,
        **BASELINE_WEIGHTS,
        **IC1,
        **HORIZON,
        "big_n": N_ENDEMIC,
        "mode": SIMULATE,
    },
    FIG3: {
        **BASELINE_PARAMS,
        **BASELINE_WEIGHTS,
        **IC1,
        **HORIZON,
        "big_n": N_ENDEMIC,
        "mode": OPTIMIZE,
    },
    # Crossing polynomial with S = 3262009/360000 and V = 313/2000000,
    # f(0) = 1/2000 at tau = 10.
    CROSSING_EXAMPLE: {
        **BASELINE_PARAMS,
        **BASELINE_WEIGHTS,
        **IC1,
        **HORIZON,
        "big_n": N_ENDEMIC,
        "mode": STABILITY,
    },
}


def baseline_params(big_n: float = N_ENDEMIC, **changes) -> ModelParams:
    """The simulation constants with the given virion count."""
    return ModelParams(**{**BASELINE_PARAMS, "big_n": big_n, **changes})


def baseline_history(initial: dict = IC1) -> HistoryFunction:
    return HistoryFunction(**initial)


def baseline_weights(tf: float = HORIZON["tf"]) -> ObjectiveWeights:
    return ObjectiveWeights(tf=tf, **BASELINE_WEIGHTS)
