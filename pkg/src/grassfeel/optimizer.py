"""Preference-driven slider search over the unit 7-cube.

One round of interaction: the user slides along a 1-D segment of the cube
and commits the best-feeling point. Each commit yields pairwise preferences
(chosen beats both endpoints), a Gaussian-process prior over a latent
goodness function is combined with a logistic choice likelihood, the
posterior mode is found by Newton ascent, and expected improvement over the
GP regression on those mode values picks the far end of the next segment.
The near end is always the current incumbent, so every segment is a line
search through the best known point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve
from scipy.spatial.distance import cdist
from scipy.special import expit
from scipy.stats import norm, qmc

from .params import N_PARAMS

# Endpoints closer than this are treated as the same observation.
DUPLICATE_TOL = 1e-9
# A chosen point this close to an endpoint yields no preference against it.
PREFERENCE_TOL = 1e-6

GRAD_TOL = 1e-6
MAX_NEWTON_ITERS = 500

_EI_SAMPLES = 1024
_POLISH_STEPS = 50
_GOLDEN_ITERS = 32
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class GPConfig:
    """Kernel and likelihood hyperparameters plus the session seed."""

    signal_variance: float = 1.0
    lengthscales: tuple[float, ...] = (0.5,) * N_PARAMS
    noise_variance: float = 1e-4
    btl_scale: float = 0.1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.signal_variance <= 0.0 or self.noise_variance <= 0.0:
            raise ValueError("variances must be positive")
        if len(self.lengthscales) != N_PARAMS or any(l <= 0.0 for l in self.lengthscales):
            raise ValueError(f"{N_PARAMS} positive lengthscales required")
        if self.btl_scale <= 0.0:
            raise ValueError("btl_scale must be positive")


@dataclass(frozen=True)
class PreferenceTriple:
    """Winner index beats each loser index (one or two losers)."""

    winner: int
    losers: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= len(self.losers) <= 2:
            raise ValueError("a preference needs one or two losers")
        if self.winner < 0 or any(l < 0 for l in self.losers):
            raise ValueError("indices must be non-negative")
        if self.winner in self.losers:
            raise ValueError("winner cannot also be a loser")


@dataclass(frozen=True)
class SliderSegment:
    """Endpoints of the 1-D search segment, both inside the unit cube."""

    x0: np.ndarray
    x1: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "x0", _cube_point(self.x0))
        object.__setattr__(self, "x1", _cube_point(self.x1))
        if np.array_equal(self.x0, self.x1):
            raise ValueError("segment endpoints must differ")


@dataclass
class OptimizerState:
    """Observations, preferences, posterior-mode values, and RNG stream."""

    X: np.ndarray = field(default_factory=lambda: np.empty((0, N_PARAMS)))
    prefs: list[PreferenceTriple] = field(default_factory=list)
    map_goodness: np.ndarray = field(default_factory=lambda: np.empty(0))
    incumbent: int | None = None
    iteration: int = 0
    rng: np.random.Generator = field(default_factory=np.random.default_rng)


def new_state(cfg: GPConfig) -> OptimizerState:
    return OptimizerState(rng=np.random.default_rng(cfg.seed))


def _cube_point(x) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.shape != (N_PARAMS,):
        raise ValueError(f"expected a {N_PARAMS}-vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)) or np.any(v < 0.0) or np.any(v > 1.0):
        raise ValueError("point must lie in the unit cube")
    return v


def kernel(x, y, cfg: GPConfig) -> float:
    """Anisotropic squared-exponential covariance between two cube points."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    ell = np.asarray(cfg.lengthscales)
    return float(cfg.signal_variance * np.exp(-0.5 * np.sum(((x - y) / ell) ** 2)))


def _kernel_cross(A: np.ndarray, B: np.ndarray, cfg: GPConfig) -> np.ndarray:
    ell = np.asarray(cfg.lengthscales)
    sq = cdist(A / ell, B / ell, "sqeuclidean")
    return cfg.signal_variance * np.exp(-0.5 * sq)


def kernel_matrix(X: np.ndarray, cfg: GPConfig) -> np.ndarray:
    """Regularized Gram matrix K(X, X) + noise_variance * I."""
    K = _kernel_cross(X, X, cfg)
    return K + cfg.noise_variance * np.eye(len(X))


def pref_likelihood(g_winner: float, g_loser: float, scale: float) -> float:
    """Logistic probability that the winner's goodness beats the loser's."""
    if scale <= 0.0:
        raise ValueError("scale must be positive")
    return float(expit((g_winner - g_loser) / scale))


def _pairs(prefs) -> list[tuple[int, int]]:
    return [(p.winner, l) for p in prefs for l in p.losers]


def _chol(K: np.ndarray):
    try:
        return cho_factor(K, lower=True)
    except LinAlgError as exc:
        raise ValueError("kernel matrix is not positive definite") from exc


def log_posterior(g, state: OptimizerState, cfg: GPConfig) -> tuple[float, np.ndarray]:
    """Unnormalized log posterior of latent goodness values, with gradient.

    value = sum over preference pairs of log sigma((g_w - g_l) / s)
            - 0.5 * g^T K^{-1} g
    """
    g = np.asarray(g, dtype=float)
    n = len(state.X)
    if g.shape != (n,):
        raise ValueError(f"goodness vector must have shape ({n},)")
    cho = _chol(kernel_matrix(state.X, cfg)) if n else None
    return _log_posterior_given(g, _pairs(state.prefs), cho, cfg.btl_scale)


def _log_posterior_given(g, pairs, cho, scale) -> tuple[float, np.ndarray]:
    if cho is not None:
        kinv_g = cho_solve(cho, g)
    else:
        kinv_g = np.zeros_like(g)
    value = -0.5 * float(g @ kinv_g)
    grad = -kinv_g
    for w, l in pairs:
        z = (g[w] - g[l]) / scale
        value += -np.logaddexp(0.0, -z)  # log sigma(z)
        q = expit(-z) / scale            # d/dg_w log sigma(z)
        grad[w] += q
        grad[l] -= q
    return value, grad


def map_estimate(state: OptimizerState, cfg: GPConfig) -> np.ndarray:
    """Posterior mode of the latent goodness values by damped Newton ascent.

    Starts from zero and stops when the gradient infinity-norm drops to
    1e-6; the objective is strictly concave so this is the global mode.
    """
    n = len(state.X)
    if n == 0:
        raise ValueError("at least one observation required")
    pairs = _pairs(state.prefs)
    K = kernel_matrix(state.X, cfg)
    cho = _chol(K)
    kinv = cho_solve(cho, np.eye(n))
    s = cfg.btl_scale

    g = np.zeros(n)
    value, grad = _log_posterior_given(g, pairs, cho, s)
    for _ in range(MAX_NEWTON_ITERS):
        if np.max(np.abs(grad)) <= GRAD_TOL:
            return g
        # Newton system: (K^{-1} + W) step = grad, W the likelihood curvature.
        W = np.zeros((n, n))
        for w, l in pairs:
            z = (g[w] - g[l]) / s
            c = expit(z) * expit(-z) / (s * s)
            W[w, w] += c
            W[l, l] += c
            W[w, l] -= c
            W[l, w] -= c
        step = np.linalg.solve(kinv + W, grad)
        t = 1.0
        slope = float(grad @ step)
        while t > 1e-12:
            cand = g + t * step
            cand_value, cand_grad = _log_posterior_given(cand, pairs, cho, s)
            if cand_value >= value + 1e-4 * t * slope:
                g, value, grad = cand, cand_value, cand_grad
                break
            t *= 0.5
        else:
            break
    final = float(np.max(np.abs(grad)))
    if final <= GRAD_TOL:
        return g
    raise RuntimeError(f"posterior mode search did not converge; |grad|_inf = {final:.3e}")


class _Posterior:
    """GP regression on the mode values, factorized once per state."""

    def __init__(self, state: OptimizerState, cfg: GPConfig):
        n = len(state.X)
        if n == 0:
            raise ValueError("at least one observation required")
        if state.map_goodness.shape != (n,):
            raise ValueError("stale goodness values: refit before predicting")
        self.cfg = cfg
        self.X = state.X
        self.cho = _chol(kernel_matrix(state.X, cfg))
        self.alpha = cho_solve(self.cho, state.map_goodness)

    def predict(self, xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        ks = _kernel_cross(np.atleast_2d(xs), self.X, self.cfg)
        mean = ks @ self.alpha
        v = cho_solve(self.cho, ks.T)
        var = self.cfg.signal_variance - np.einsum("ij,ji->i", ks, v)
        if np.any(var < -1e-12):
            raise ValueError(f"negative predictive variance {float(var.min()):.3e}")
        return mean, np.maximum(var, 0.0)


def posterior_predict(x, state: OptimizerState, cfg: GPConfig) -> tuple[float, float]:
    """Predictive mean and variance of goodness at one cube point."""
    mean, var = _Posterior(state, cfg).predict(np.asarray(x, dtype=float))
    return float(mean[0]), float(var[0])


def ei_value(mean: float, sigma: float, best: float) -> float:
    """Closed-form expected improvement for a Gaussian belief over a best value."""
    imp = mean - best
    if sigma <= 1e-12:
        return max(imp, 0.0)
    z = imp / sigma
    return float(imp * norm.cdf(z) + sigma * norm.pdf(z))


def _ei_batch(mean: np.ndarray, var: np.ndarray, best: float) -> np.ndarray:
    sigma = np.sqrt(var)
    imp = mean - best
    out = np.maximum(imp, 0.0)
    live = sigma > 1e-12
    z = np.divide(imp, sigma, out=np.zeros_like(imp), where=live)
    out[live] = (imp * norm.cdf(z) + sigma * norm.pdf(z))[live]
    return out


def expected_improvement(x, state: OptimizerState, cfg: GPConfig) -> float:
    """Expected improvement of one cube point over the incumbent's mode value."""
    if state.incumbent is None:
        raise ValueError("no incumbent yet")
    mean, var = posterior_predict(x, state, cfg)
    return ei_value(mean, math.sqrt(var), float(state.map_goodness[state.incumbent]))


def _golden_max(f, lo: float, hi: float, iters: int) -> tuple[float, float]:
    """Golden-section search for a maximum; returns the best probed point."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    best_x, best_f = (c, fc) if fc >= fd else (d, fd)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(d)
        x, fx = (c, fc) if fc >= fd else (d, fd)
        if fx > best_f:
            best_x, best_f = x, fx
    return best_x, best_f


def argmax_ei(state: OptimizerState, cfg: GPConfig) -> np.ndarray:
    """Acquisition maximizer: seeded quasi-random sweep plus coordinate polish.

    Deterministic for a given state and seed; does not consume the state's
    RNG stream.
    """
    if state.incumbent is None:
        raise ValueError("no incumbent yet")
    post = _Posterior(state, cfg)
    best_val = float(state.map_goodness[state.incumbent])

    sob = qmc.Sobol(d=N_PARAMS, scramble=True, seed=cfg.seed)
    cand = sob.random(_EI_SAMPLES)
    mean, var = post.predict(cand)
    ei = _ei_batch(mean, var, best_val)
    idx = int(np.argmax(ei))
    x = cand[idx].copy()
    best_ei = float(ei[idx])

    def ei_at(point: np.ndarray) -> float:
        m, v = post.predict(point)
        return float(_ei_batch(m, v, best_val)[0])

    for step in range(_POLISH_STEPS):
        d = step % N_PARAMS

        def along(val: float, _d=d) -> float:
            y = x.copy()
            y[_d] = val
            return ei_at(y)

        x_d, f_d = _golden_max(along, 0.0, 1.0, _GOLDEN_ITERS)
        if f_d > best_ei:
            x[d] = x_d
            best_ei = f_d
    return x


def next_slider(state: OptimizerState, cfg: GPConfig) -> SliderSegment:
    """Next search segment: incumbent to acquisition argmax.

    The very first segment anchors at the cube center and explores toward a
    seeded random point. A degenerate far end is redrawn from the state RNG.
    """
    if state.iteration == 0 or len(state.X) == 0:
        x0 = np.full(N_PARAMS, 0.5)
        x1 = state.rng.random(N_PARAMS)
    else:
        x0 = state.X[state.incumbent].copy()
        x1 = argmax_ei(state, cfg)
    while np.linalg.norm(x0 - x1) < PREFERENCE_TOL:
        x1 = state.rng.random(N_PARAMS)
    return SliderSegment(x0, x1)


def slider_point(seg: SliderSegment, t: float) -> np.ndarray:
    """Point at fraction ``t`` along the segment; t must lie in [0, 1]."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"slider position {t} outside [0, 1]")
    return np.clip((1.0 - t) * seg.x0 + t * seg.x1, 0.0, 1.0)


def _find_observation(X: np.ndarray, x: np.ndarray) -> int | None:
    if len(X) == 0:
        return None
    d = np.linalg.norm(X - x, axis=1)
    i = int(np.argmin(d))
    return i if d[i] <= DUPLICATE_TOL else None


def incorporate_choice(
    state: OptimizerState, seg: SliderSegment, t_chosen: float, cfg: GPConfig
) -> OptimizerState:
    """Fold one committed slider choice into the state and refit.

    The chosen point is recorded as an observation; segment endpoints are
    recorded too unless already observed. The chosen point is preferred over
    each endpoint it does not (nearly) coincide with, then the posterior
    mode is refit and the incumbent becomes its argmax.
    """
    x_c = slider_point(seg, t_chosen)
    state.X = np.vstack([state.X, x_c])
    idx_c = len(state.X) - 1

    losers = []
    for endpoint in (seg.x0, seg.x1):
        j = _find_observation(state.X, endpoint)
        if j is None:
            state.X = np.vstack([state.X, endpoint])
            j = len(state.X) - 1
        if np.linalg.norm(endpoint - x_c) >= PREFERENCE_TOL:
            losers.append(j)
    losers = tuple(dict.fromkeys(losers))
    if losers:
        state.prefs.append(PreferenceTriple(idx_c, losers))

    state.map_goodness = map_estimate(state, cfg)
    state.incumbent = int(np.argmax(state.map_goodness))
    state.iteration += 1
    return state


def state_to_json(state: OptimizerState) -> dict:
    """JSON-ready snapshot; exact, including the RNG stream position."""
    return {
        "X": state.X.tolist(),
        "prefs": [{"winner": p.winner, "losers": list(p.losers)} for p in state.prefs],
        "map_goodness": state.map_goodness.tolist(),
        "incumbent": state.incumbent,
        "iteration": state.iteration,
        "rng_state": state.rng.bit_generator.state,
    }


def state_from_json(data: dict) -> OptimizerState:
    rng = np.random.default_rng()
    rng.bit_generator.state = data["rng_state"]
    return OptimizerState(
        X=np.array(data["X"], dtype=float).reshape(-1, N_PARAMS),
        prefs=[PreferenceTriple(p["winner"], tuple(p["losers"])) for p in data["prefs"]],
        map_goodness=np.array(data["map_goodness"], dtype=float),
        incumbent=data["incumbent"],
        iteration=data["iteration"],
        rng=rng,
    )
