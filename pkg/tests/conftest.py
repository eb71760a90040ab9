import numpy as np
import pytest

from grassfeel.optimizer import GPConfig, OptimizerState, PreferenceTriple, map_estimate


def random_pref_state(rng: np.random.Generator, n_obs: int, with_map: bool = False,
                      cfg: GPConfig | None = None) -> OptimizerState:
    """Random observations plus a random but self-consistent preference list."""
    state = OptimizerState(
        X=rng.random((n_obs, 7)),
        rng=np.random.default_rng(rng.integers(2**32)),
    )
    n_prefs = int(rng.integers(1, n_obs + 1))
    for _ in range(n_prefs):
        w, l = rng.choice(n_obs, size=2, replace=False)
        state.prefs.append(PreferenceTriple(int(w), (int(l),)))
    if with_map:
        state.map_goodness = map_estimate(state, cfg or GPConfig())
        state.incumbent = int(np.argmax(state.map_goodness))
        state.iteration = 1
    return state


@pytest.fixture
def rng():
    return np.random.default_rng(20260822)
