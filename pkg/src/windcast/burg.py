"""AR(p) modelling with Burg coefficient estimation.

The model follows the convention

    X_t = alpha_1 X_{t-1} + alpha_2 X_{t-2} + ... + alpha_p X_{t-p} + e_t

on the demeaned series, with e_t white noise.  Coefficients are estimated
by minimising the combined forward and backward prediction-error power,
with the coefficient vector constrained to the Levinson-Durbin recursion.
That construction yields reflection coefficients bounded by 1 in magnitude,
hence a stable model, which is why it is preferred over Yule-Walker for
short per-slot histories.

The series mean is removed before fitting and re-added at prediction time;
the model equation above carries no intercept.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InsufficientHistory, NonFiniteInput, TooShort

__all__ = [
    "ArModel",
    "OrderCriterion",
    "fit_burg",
    "select_order",
    "predict_one",
    "predict_multi",
    "is_stable",
]


@dataclass(frozen=True)
class ArModel:
    """Fitted autoregressive model of order p.

    Attributes
    ----------
    order : int
        Model order p >= 0.  Order 0 is the degenerate model that always
        predicts ``mean``.
    coefficients : ndarray
        alpha_1 .. alpha_p in the prediction convention above.
    mean : float
        Sample mean removed before fitting (m/s for wind data).
    noise_variance : float
        Final prediction-error power of the recursion, an estimate of
        Var(e_t).  Non-negative.
    reflection : ndarray
        Burg reflection coefficients k_1 .. k_p, each with |k| <= 1.
        Empty for models constructed directly from raw coefficients.
    """

    order: int
    coefficients: np.ndarray
    mean: float
    noise_variance: float
    reflection: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        coef = np.atleast_1d(np.asarray(self.coefficients, dtype=float))
        refl = np.atleast_1d(np.asarray(self.reflection, dtype=float))
        if len(coef) != self.order:
            raise ValueError(
                f"order {self.order} needs {self.order} coefficients, "
                f"got {len(coef)}"
            )
        if len(refl) not in (0, self.order):
            raise ValueError("reflection must be empty or one per order")
        if self.noise_variance < 0:
            raise ValueError("noise_variance must be non-negative")
        object.__setattr__(self, "coefficients", coef)
        object.__setattr__(self, "reflection", refl)

    @property
    def is_degenerate(self) -> bool:
        """True for the order-0 constant predictor."""
        return self.order == 0


@dataclass(frozen=True)
class OrderCriterion:
    """Order-selection rule: a fixed p, or AIC/FPE minimisation up to a cap."""

    kind: str  # "fixed" | "aic" | "fpe"
    max_order: int = 20
    fixed_order: int | None = None

    def __post_init__(self):
        if self.kind not in ("fixed", "aic", "fpe"):
            raise ValueError(f"unknown criterion kind {self.kind!r}")
        if self.max_order < 1:
            raise ValueError("max_order must be >= 1")
        if self.kind == "fixed":
            if self.fixed_order is None:
                raise ValueError("fixed criterion needs fixed_order")
            if not 0 <= self.fixed_order <= self.max_order:
                raise ValueError("fixed_order must be within 0..max_order")

    @classmethod
    def fixed(cls, p: int, max_order: int | None = None) -> "OrderCriterion":
        return cls(kind="fixed", max_order=max(p, 1) if max_order is None
                   else max_order, fixed_order=p)

    @classmethod
    def aic(cls, max_order: int = 20) -> "OrderCriterion":
        return cls(kind="aic", max_order=max_order)

    @classmethod
    def fpe(cls, max_order: int = 20) -> "OrderCriterion":
        return cls(kind="fpe", max_order=max_order)


def _burg_recursion(d: np.ndarray, order: int):
    """Run the Burg recursion on a demeaned series.

    Returns ``(reflection, sigma2)`` where ``reflection[m-1]`` is the stage-m
    reflection coefficient and ``sigma2[m]`` the prediction-error power after
    stage m (``sigma2[0]`` is the input power).
    """
    n = len(d)
    sigma2 = np.empty(order + 1)
    sigma2[0] = np.dot(d, d) / n
    reflection = np.zeros(order)
    f = d.copy()  # forward prediction errors, valid at indices m..n-1
    b = d.copy()  # backward prediction errors, valid at indices m-1..n-2
    for m in range(1, order + 1):
        fv = f[m:n]
        bv = b[m - 1:n - 1]
        den = np.dot(fv, fv) + np.dot(bv, bv)
        # den == 0 means the series is already perfectly predicted; the
        # remaining stages contribute nothing
        k = 0.0 if den <= 0.0 else 2.0 * np.dot(fv, bv) / den
        reflection[m - 1] = k
        # both updates must see the stage-(m-1) errors; fv and bv are views,
        # so materialise the results before writing either back
        f_next = fv - k * bv
        b_next = bv - k * fv
        f[m:n] = f_next
        b[m:n] = b_next
        sigma2[m] = sigma2[m - 1] * (1.0 - k * k)
    return reflection, sigma2


def _levinson_coefficients(reflection: np.ndarray) -> np.ndarray:
    """Expand reflection coefficients into the full AR coefficient vector."""
    a = np.zeros(0)
    for k in reflection:
        a = np.concatenate([a - k * a[::-1], [k]])
    return a


def fit_burg(x, order: int) -> ArModel:
    """Fit an AR(p) model with the Burg method.

    Parameters
    ----------
    x : array_like
        Input series, at least ``order + 1`` finite samples.
    order : int
        Requested order p >= 0.

    Returns
    -------
    ArModel
        Coefficients in the prediction convention, the removed mean, the
        final prediction-error power, and the reflection coefficients.  A
        zero-variance input yields the degenerate order-0 model.

    Raises
    ------
    TooShort
        If ``len(x) <= order``.
    NonFiniteInput
        If any sample is NaN or infinite.
    """
    x = np.asarray(x, dtype=float)
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    if len(x) <= order:
        raise TooShort(f"{len(x)} samples cannot support order {order}")
    if not np.all(np.isfinite(x)):
        raise NonFiniteInput("input contains NaN or infinity")

    mean = float(x.mean())
    d = x - mean
    power = float(np.dot(d, d) / len(d))
    if power == 0.0 or order == 0:
        return ArModel(order=0, coefficients=np.zeros(0), mean=mean,
                       noise_variance=power, reflection=np.zeros(0))

    reflection, sigma2 = _burg_recursion(d, order)
    coefficients = _levinson_coefficients(reflection)
    return ArModel(
        order=order,
        coefficients=coefficients,
        mean=mean,
        noise_variance=float(max(sigma2[order], 0.0)),
        reflection=reflection,
    )


def select_order(x, criterion: OrderCriterion) -> int:
    """Choose an AR order.

    ``fixed`` passes its order through.  ``aic`` and ``fpe`` fit Burg models
    for p = 1..max_order in a single recursion and return the minimiser of

        AIC(p) = n ln(sigma2_p) + 2 p
        FPE(p) = sigma2_p (n + p + 1) / (n - p - 1)

    with ties broken toward the smaller order.  A constant series returns 0.

    Raises
    ------
    TooShort
        If ``len(x) < 3`` or ``max_order >= len(x) / 2``.
    """
    x = np.asarray(x, dtype=float)
    n = len(x)
    if n < 3:
        raise TooShort(f"need at least 3 samples, got {n}")
    if criterion.kind == "fixed":
        return int(criterion.fixed_order)  # type: ignore[arg-type]
    max_order = criterion.max_order
    if max_order >= n / 2:
        raise TooShort(f"max_order {max_order} too large for {n} samples")
    if not np.all(np.isfinite(x)):
        raise NonFiniteInput("input contains NaN or infinity")

    d = x - x.mean()
    if np.dot(d, d) == 0.0:
        return 0
    _, sigma2 = _burg_recursion(d, max_order)
    best_p, best_score = 1, math.inf
    for p in range(1, max_order + 1):
        s2 = sigma2[p]
        if criterion.kind == "aic":
            score = n * math.log(s2) + 2 * p if s2 > 0 else -math.inf
        else:  # fpe
            score = s2 * (n + p + 1) / (n - p - 1)
        if score < best_score:
            best_p, best_score = p, score
    return best_p


def predict_one(model: ArModel, history) -> float:
    """One-step-ahead prediction.

    ``history`` holds the most recent values first; at least ``model.order``
    values are required.  The noise term enters at its expectation, zero:

        x_hat = mean + sum_i alpha_i (history[i-1] - mean)
    """
    history = np.asarray(history, dtype=float)
    p = model.order
    if len(history) < p:
        raise InsufficientHistory(
            f"need {p} history values, got {len(history)}"
        )
    if p == 0:
        return model.mean
    return float(
        model.mean + np.dot(model.coefficients, history[:p] - model.mean)
    )


def predict_multi(model: ArModel, history, horizon: int) -> np.ndarray:
    """Iterate :func:`predict_one` for ``horizon`` steps.

    Each prediction is fed back as the newest history value.  For a stable
    model the iteration contracts toward ``mean``, which reproduces the
    well-known levelling-off of long-horizon AR forecasts.
    """
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    history = np.asarray(history, dtype=float)
    p = model.order
    if len(history) < p:
        raise InsufficientHistory(
            f"need {p} history values, got {len(history)}"
        )
    window = list(history[:p])
    out = np.empty(horizon)
    for h in range(horizon):
        nxt = predict_one(model, window)
        out[h] = nxt
        if p:
            window = [nxt] + window[: p - 1]
    return out


def is_stable(model: ArModel) -> bool:
    """Whether the fitted filter is stationary.

    Burg-fitted models are judged by their reflection coefficients: all
    |k_i| < 1 strictly.  Models built from raw coefficients use the
    closed-form bounds for p <= 2 (AR(1): -1 < a1 < 1; AR(2): |a2| < 1,
    a1 + a2 < 1, a2 - a1 < 1) and the characteristic-root criterion above
    order 2.
    """
    if model.order == 0:
        return True
    if len(model.reflection) == model.order:
        return bool(np.all(np.abs(model.reflection) < 1.0))
    a = model.coefficients
    if model.order == 1:
        return bool(-1.0 < a[0] < 1.0)
    if model.order == 2:
        return bool(abs(a[1]) < 1.0 and a[0] + a[1] < 1.0 and a[1] - a[0] < 1.0)
    # roots of z^p - a1 z^(p-1) - ... - ap must lie inside the unit circle
    roots = np.roots(np.concatenate([[1.0], -a]))
    return bool(np.all(np.abs(roots) < 1.0))
