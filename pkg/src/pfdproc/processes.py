"""The two PFD processes: moving-maximum (Kundu) and max-autoregressive.

Both constructions ride on one fact: a maximum of independent power function
variables is again a power function variable, with shapes adding.

Kundu process of order k, exponents (a_0, ..., a_k), over i.i.d. uniforms U:

    X_n = max(U_n**(1/a_0), U_{n-1}**(1/a_1), ..., U_{n-k}**(1/a_k))

Stationary (k pre-period uniforms are always generated so the first emitted
sample already has the stationary law), non-Markovian, marginal PFD(sum a_i),
with MA-like dependence that cuts off after lag k.  The reverse direction
reads future innovations instead of past ones.

Max-autoregressive process, parameters a and d with 0 < d < a:

    X_0 = U_0**(1/a),    X_n = max(X_{n-1}**(a/(a-d)), U_n**(1/d))

Stationary Markov with marginal PFD(a); maximization plays the role addition
plays in an AR(1).  Started from a fixed x0 instead, the path is still Markov
and converges in law to PFD(a).

Closed forms implemented here (lag-1 joint CDFs, cross moments, ascent and
descent probabilities) are validated elsewhere against quadrature and
simulation oracles.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DegenerateStatsError, DomainError
from .numerics import RngStream
from .pfd import PfdLaw, clip_open_unit

__all__ = [
    "KunduParams",
    "MaxArParams",
    "HigherMaxArParams",
    "SamplePath",
    "OrderProbs",
    "simulate_kundu",
    "kundu_marginal",
    "kundu_mean_var",
    "kundu_joint_cdf_lag1",
    "kundu_cross_moment_terms",
    "kundu_cross_moment",
    "kundu_lag_corr",
    "kundu_order_probs",
    "simulate_maxar",
    "maxar_joint_cdf",
    "maxar_cross_moment",
    "maxar_lag1_corr",
    "maxar_descent_prob",
    "simulate_maxar_higher",
    "empirical_autocorr",
]

MODEL_TAGS = ("kundu", "maxar", "maxar_higher", "external")

# Reject hold exponents a/(a-d) beyond ~1e12: they overflow pow() and carry
# no usable dependence structure anyway.
_MIN_RELATIVE_GAP = 1e-12


def _check_unit_interval(name: str, *values: float) -> None:
    for v in values:
        if not (0.0 <= v <= 1.0):
            raise DomainError(f"{name} must lie in [0, 1], got {v}")


@dataclass(frozen=True)
class KunduParams:
    """Exponent vector (a_0, ..., a_k) and time direction of a Kundu process."""

    alphas: tuple[float, ...]
    direction: str = "forward"

    def __post_init__(self) -> None:
        alphas = tuple(float(a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        if len(alphas) < 1:
            raise ValueError("at least one exponent is required")
        if any(not (math.isfinite(a) and a > 0) for a in alphas):
            raise ValueError(f"all exponents must be positive finite reals, got {alphas}")
        if self.direction not in ("forward", "reverse"):
            raise ValueError(f"direction must be 'forward' or 'reverse', got {self.direction!r}")

    @property
    def order(self) -> int:
        return len(self.alphas) - 1

    @property
    def total_shape(self) -> float:
        return float(sum(self.alphas))


def kundu_marginal(params: KunduParams) -> PfdLaw:
    """Stationary marginal law PFD(sum of exponents), identical for both directions."""
    return PfdLaw(params.total_shape)


def kundu_mean_var(params: KunduParams) -> tuple[float, float]:
    return kundu_marginal(params).mean_var()


def simulate_kundu(params: KunduParams, n: int, stream: RngStream) -> "SamplePath":
    """Exact stationary sample path of length n.

    Draws n + k uniforms (k extra pre-period innovations) so every emitted
    value already follows the stationary law.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    gen = stream.generator()
    k = params.order
    u = gen.random(n + k)
    out: np.ndarray | None = None
    for j, a in enumerate(params.alphas):
        if params.direction == "forward":
            seg = u[k - j : k - j + n]
        else:
            seg = u[j : j + n]
        powered = seg ** (1.0 / a)
        out = powered if out is None else np.maximum(out, powered)
    return SamplePath(
        values=clip_open_unit(out),
        model_tag="kundu",
        stream=stream,
        params={"alphas": list(params.alphas), "direction": params.direction},
    )


def kundu_joint_cdf_lag1(params: KunduParams, x_prev: float, x_cur: float) -> float:
    """Joint CDF P(X_{n-1} <= x_prev, X_n <= x_cur).

    Each uniform shared by the two neighbors contributes the tighter of its
    two constraints:

        x_cur**a_0 * x_prev**a_k * prod_i min(x_prev**a_i, x_cur**a_{i+1})

    For the reverse direction the roles of the two arguments swap.
    """
    _check_unit_interval("joint CDF arguments", x_prev, x_cur)
    if params.direction == "reverse":
        x_prev, x_cur = x_cur, x_prev
    al = params.alphas
    k = params.order
    p = x_cur ** al[0] * x_prev ** al[k]
    for i in range(k):
        p *= min(x_prev ** al[i], x_cur ** al[i + 1])
    return float(p)


def kundu_cross_moment_terms(alpha: float, beta: float) -> tuple[float, float, float, float]:
    """The four pieces of E(X_n * X_{n-1}) for an order-1 process.

    The lag-1 pair shares one uniform; conditioning on which side of each
    neighbor the shared uniform dominates splits the expectation into four
    terms.  Time reversal swaps the roles of the exponents, so
    term_d(alpha, beta) = term_a(beta, alpha) and the sum is symmetric.
    """
    a, b = float(alpha), float(beta)
    if not (a > 0 and b > 0):
        raise ValueError("exponents must be positive")
    s1 = a * a + b * b + a * b + a + b
    term_a = b * b / (b + 1.0) * (1.0 / (a + b + 1.0) - a / s1)
    term_b = a * b / s1
    term_c = a * b / ((a + 1.0) * (b + 1.0)) * (
        1.0 - b / (a + b + 1.0) - a / (a + b + 1.0) + a * b / s1
    )
    term_d = a * a / (a + 1.0) * (1.0 / (a + b + 1.0) - b / s1)
    return term_a, term_b, term_c, term_d


def kundu_cross_moment(alpha: float, beta: float) -> float:
    """E(X_n * X_{n-1}) for the order-1 process; symmetric in (alpha, beta)."""
    return float(sum(kundu_cross_moment_terms(alpha, beta)))


def kundu_lag_corr(alpha: float, beta: float, lag: int) -> float:
    """Autocorrelation of the order-1 process at the given lag.

    Lag 0 is 1; lag 1 has a closed form; lags >= 2 vanish exactly because
    the two values share no uniforms.
    """
    if lag < 0:
        raise ValueError("lag must be nonnegative")
    if lag == 0:
        return 1.0
    if lag >= 2:
        return 0.0
    law = PfdLaw(float(alpha) + float(beta))
    mean, var = law.mean_var()
    return float((kundu_cross_moment(alpha, beta) - mean * mean) / var)


class OrderProbs(NamedTuple):
    p_less: float
    p_greater: float
    p_tie: float


def kundu_order_probs(alpha: float, beta: float) -> OrderProbs:
    """P(X_1 < X_2), P(X_1 > X_2), P(X_1 = X_2) for consecutive order-1 values.

    Consecutive values can be exactly equal only at alpha == beta, where the
    shared uniform drives both maxima; enumerating the orderings of the
    three uniforms involved gives mass 1/3 to each outcome.  Both strict
    branches are discontinuous at the diagonal because that tie mass
    switches sides.
    """
    a, b = float(alpha), float(beta)
    if not (a > 0 and b > 0):
        raise ValueError("exponents must be positive")
    if a > b:
        p_less = a / (2.0 * a + b)
        return OrderProbs(p_less, 1.0 - p_less, 0.0)
    if a < b:
        p_less = (a + b) / (2.0 * b + a)
        return OrderProbs(p_less, 1.0 - p_less, 0.0)
    return OrderProbs(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)


@dataclass(frozen=True)
class MaxArParams:
    """Parameters (alpha, delta) of the max-autoregressive process, 0 < delta < alpha."""

    alpha: float
    delta: float

    def __post_init__(self) -> None:
        a, d = float(self.alpha), float(self.delta)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "delta", d)
        if not (math.isfinite(a) and a > 0):
            raise ValueError(f"alpha must be a positive finite real, got {a}")
        if not (math.isfinite(d) and 0 < d < a):
            raise ValueError(f"delta must lie strictly inside (0, alpha), got delta={d}, alpha={a}")
        if (a - d) / a < _MIN_RELATIVE_GAP:
            raise ValueError(
                f"delta too close to alpha: relative gap {(a - d) / a:.3e} "
                f"below {_MIN_RELATIVE_GAP:.0e}"
            )

    @property
    def hold_exponent(self) -> float:
        """Exponent alpha/(alpha - delta) > 1 applied to the previous value."""
        return self.alpha / (self.alpha - self.delta)


def simulate_maxar(
    params: MaxArParams, n: int, stream: RngStream, x0: float | None = None
) -> "SamplePath":
    """Sample path of length n; stationary start by default.

    Stationary start draws X_0 = U**(1/alpha) so the whole path is
    stationary.  A fixed x0 in (0, 1) starts a non-stationary path that
    converges in law to PFD(alpha).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    gen = stream.generator()
    if x0 is None:
        x = gen.random() ** (1.0 / params.alpha)
        start = "stationary"
    else:
        if not (0.0 < x0 < 1.0):
            raise ValueError(f"x0 must lie in the open interval (0, 1), got {x0}")
        x = float(x0)
        start = x0
    hold = params.hold_exponent
    inv_delta = 1.0 / params.delta
    xs = [0.0] * n
    xs[0] = x
    if n > 1:
        for i, ui in enumerate(gen.random(n - 1).tolist(), start=1):
            w = ui**inv_delta
            h = x**hold
            x = h if h > w else w
            xs[i] = x
    return SamplePath(
        values=clip_open_unit(np.asarray(xs)),
        model_tag="maxar",
        stream=stream,
        params={"alpha": params.alpha, "delta": params.delta, "start": start},
    )


def maxar_joint_cdf(params: MaxArParams, x0: float, x1: float) -> float:
    """Joint CDF P(X_{n-1} <= x0, X_n <= x1) = x1**delta * min(x0**alpha, x1**(alpha-delta))."""
    _check_unit_interval("joint CDF arguments", x0, x1)
    a, d = params.alpha, params.delta
    return float(x1**d * min(x0**a, x1 ** (a - d)))


def maxar_cross_moment(params: MaxArParams) -> float:
    """E(X_0 * X_1) under the stationary law."""
    a, d = params.alpha, params.delta
    r = 1.0 / a + (1.0 + d) / (a - d) + 1.0
    return float(d / (d + 1.0) * (a / (a + 1.0) - 1.0 / r) + 1.0 / r)


def maxar_lag1_corr(params: MaxArParams) -> float:
    """Lag-1 autocorrelation; lies in (0, 1) and decreases in delta for fixed alpha."""
    law = PfdLaw(params.alpha)
    mean, var = law.mean_var()
    return float((maxar_cross_moment(params) - mean * mean) / var)


def maxar_descent_prob(params: MaxArParams) -> float:
    """P(X_1 < X_0) = alpha/(alpha + delta); always in (1/2, 1)."""
    return float(params.alpha / (params.alpha + params.delta))


@dataclass(frozen=True)
class HigherMaxArParams:
    """Order-k max-autoregressive recursion; exploratory, no marginal law asserted.

    ``inner_exponents`` = (d_k, ..., d_1) act on lags k down to 1; the
    innovation enters as U**(1/innovation_exponent).  ``x0_values`` seed the
    first k path values.
    """

    inner_exponents: tuple[float, ...]
    innovation_exponent: float
    x0_values: tuple[float, ...]

    def __post_init__(self) -> None:
        inner = tuple(float(d) for d in self.inner_exponents)
        starts = tuple(float(x) for x in self.x0_values)
        object.__setattr__(self, "inner_exponents", inner)
        object.__setattr__(self, "x0_values", starts)
        if len(inner) < 1:
            raise ValueError("at least one inner exponent is required")
        if any(not (math.isfinite(d) and d > 0) for d in inner):
            raise ValueError("inner exponents must be positive finite reals")
        if not (math.isfinite(self.innovation_exponent) and self.innovation_exponent > 0):
            raise ValueError("innovation exponent must be a positive finite real")
        if len(starts) != len(inner):
            raise ValueError("need exactly one start value per inner exponent")
        if any(not (0.0 < x < 1.0) for x in starts):
            raise ValueError("start values must lie in the open interval (0, 1)")

    @property
    def order(self) -> int:
        return len(self.inner_exponents)


def simulate_maxar_higher(params: HigherMaxArParams, n: int, stream: RngStream) -> "SamplePath":
    """Path of the order-k recursion X_t = max(X_{t-k}**d_k, ..., X_{t-1}**d_1, U**(1/d)).

    The first k emitted values are the supplied starts.  For k = 1 with
    d_1 = alpha/(alpha - delta) and innovation exponent delta this
    reproduces ``simulate_maxar`` with the same stream and fixed start.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    gen = stream.generator()
    k = params.order
    xs = list(params.x0_values[:n])
    if n > k:
        inv_delta = 1.0 / params.innovation_exponent
        exps = params.inner_exponents
        for t, ui in enumerate(gen.random(n - k).tolist(), start=k):
            best = ui**inv_delta
            for i, d in enumerate(exps):
                cand = xs[t - k + i] ** d
                if cand > best:
                    best = cand
            xs.append(best)
    return SamplePath(
        values=clip_open_unit(np.asarray(xs)),
        model_tag="maxar_higher",
        stream=stream,
        params={
            "inner_exponents": list(params.inner_exponents),
            "innovation_exponent": params.innovation_exponent,
            "x0_values": list(params.x0_values),
        },
    )


@dataclass(frozen=True)
class SamplePath:
    """A simulated or ingested trajectory with its provenance.

    Values lie strictly inside (0, 1).  ``stream`` records the seed pair for
    simulated paths and is None for external data.
    """

    values: np.ndarray
    model_tag: str = "external"
    stream: RngStream | None = None
    params: dict | None = None

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.ndim != 1 or values.size < 1:
            raise ValueError("values must be a nonempty one-dimensional array")
        if self.model_tag not in MODEL_TAGS:
            raise ValueError(f"model_tag must be one of {MODEL_TAGS}, got {self.model_tag!r}")
        if np.any(values <= 0.0) or np.any(values >= 1.0):
            raise ValueError("path values must lie strictly inside (0, 1)")

    @property
    def n(self) -> int:
        return int(self.values.size)

    def _metadata(self) -> dict:
        return {
            "model_tag": self.model_tag,
            "params": self.params,
            "master_seed": self.stream.master_seed if self.stream else None,
            "stream_id": self.stream.stream_id if self.stream else None,
            "n": self.n,
        }

    def to_json_dict(self) -> dict:
        doc = self._metadata()
        doc["values"] = [float(v) for v in self.values]
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def to_csv(self, target, extra_metadata: dict | None = None) -> None:
        """Write one value per row under header ``x`` with ``#`` metadata lines."""
        meta = self._metadata()
        meta["params"] = json.dumps(self.params, sort_keys=True)
        if extra_metadata:
            meta.update(extra_metadata)
        lines = [f"# {key}={value}" for key, value in meta.items()]
        lines.append("x")
        lines.extend(repr(float(v)) for v in self.values)
        text = "\n".join(lines) + "\n"
        if hasattr(target, "write"):
            target.write(text)
        else:
            with open(target, "w", encoding="utf-8") as fh:
                fh.write(text)

    @classmethod
    def from_csv(cls, source) -> "SamplePath":
        """Read a path written by :meth:`to_csv`; metadata lines are optional."""
        if hasattr(source, "read"):
            text = source.read()
        else:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        meta: dict[str, str] = {}
        values: list[float] = []
        saw_header = False
        for line in io.StringIO(text):
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if "=" in body:
                    key, _, val = body.partition("=")
                    meta[key.strip()] = val.strip()
                continue
            if not saw_header:
                if line != "x":
                    raise ValueError(f"expected header 'x', got {line!r}")
                saw_header = True
                continue
            values.append(float(line))
        if not saw_header:
            raise ValueError("missing 'x' header")
        model_tag = meta.get("model_tag", "external")
        stream = None
        if meta.get("master_seed", "None") != "None" and meta.get("stream_id", "None") != "None":
            stream = RngStream(int(meta["master_seed"]), int(meta["stream_id"]))
        params = None
        if meta.get("params") and meta["params"] != "null":
            params = json.loads(meta["params"])
        return cls(values=np.asarray(values), model_tag=model_tag, stream=stream, params=params)


def empirical_autocorr(path, lag: int) -> float:
    """Sample lag correlation using the mean and variance of the full path."""
    values = np.asarray(getattr(path, "values", path), dtype=float)
    if lag < 0:
        raise ValueError("lag must be nonnegative")
    if values.size <= lag + 1:
        raise ValueError(f"path length {values.size} must exceed lag + 1 = {lag + 1}")
    if lag == 0:
        return 1.0
    centered = values - values.mean()
    denom = float(np.dot(centered, centered))
    if denom == 0.0:
        raise DegenerateStatsError("autocorrelation undefined for a constant path")
    return float(np.dot(centered[:-lag], centered[lag:]) / denom)
