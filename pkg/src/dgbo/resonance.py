"""Resonance function, Jacobian factors and interaction-case lower bounds.

Asymptotic relations are given fixed numeric semantics: "comparable" (~)
means within a factor of 4 between dyadic blocks, "much larger" (>>) means
a factor of at least 16.  Samplers shrink every annulus by a margin of
N_min/100 to stay clear of region boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dyadic import validate_dyadic
from .errors import RegionError
from .spectral import dispersion_derivative, dispersion_symbol

COMPARABLE_FACTOR = 4
DOMINANCE_FACTOR = 16

HIGH_LOW = "high_low"
HIGH_HIGH_OPPOSITE = "high_high_opposite"
HIGH_HIGH_SAME = "high_high_same"
CASE_KINDS = (HIGH_LOW, HIGH_HIGH_OPPOSITE, HIGH_HIGH_SAME)


def resonance(xi1, xi2, alpha: float):
    """Omega(xi1, xi2) = omega(xi1) + omega(xi2) - omega(xi1 + xi2); symmetric."""
    xi1 = np.asarray(xi1, dtype=np.float64)
    xi2 = np.asarray(xi2, dtype=np.float64)
    out = (
        dispersion_symbol(xi1, alpha)
        + dispersion_symbol(xi2, alpha)
        - dispersion_symbol(xi1 + xi2, alpha)
    )
    return out if np.ndim(out) else float(out)


def modulation_identity_residual(tau1, tau2, xi1, xi2, alpha: float):
    """(tau - omega(xi)) - (sigma1 + sigma2 + Omega) with tau, xi the sums.

    Vanishes identically; kept as an explicit consistency probe.
    """
    tau1, tau2 = np.asarray(tau1, float), np.asarray(tau2, float)
    xi1, xi2 = np.asarray(xi1, float), np.asarray(xi2, float)
    sigma1 = tau1 - dispersion_symbol(xi1, alpha)
    sigma2 = tau2 - dispersion_symbol(xi2, alpha)
    lhs = (tau1 + tau2) - dispersion_symbol(xi1 + xi2, alpha)
    out = lhs - (sigma1 + sigma2 + resonance(xi1, xi2, alpha))
    return out if np.ndim(out) else float(out)


def jacobian_factor(xi1, xi2, alpha: float, which: str):
    """|omega' difference| steering the bilinear change of variables.

    "omega_prime_diff": |omega'(xi1) - omega'(xi2)|;
    "shifted_diff":     |omega'(xi1) - omega'(xi1 + xi2)|.
    """
    xi1 = np.asarray(xi1, dtype=np.float64)
    xi2 = np.asarray(xi2, dtype=np.float64)
    if which == "omega_prime_diff":
        out = np.abs(
            dispersion_derivative(xi1, alpha) - dispersion_derivative(xi2, alpha)
        )
    elif which == "shifted_diff":
        out = np.abs(
            dispersion_derivative(xi1, alpha)
            - dispersion_derivative(xi1 + xi2, alpha)
        )
    else:
        raise RegionError(f"unknown jacobian kind {which!r}")
    return out if np.ndim(out) else float(out)


def h_function(x, xi: float, alpha: float):
    """Curve function of the same-sign high-high analysis and its derivative.

    h(x) = (xi/2+x)|xi/2+x|^(1+a) + (xi/2-x)|xi/2-x|^(1+a) - 2^(-1-a) xi |xi|^(1+a),
    h'(x) = (2+a) * (|xi/2+x|^(1+a) - |xi/2-x|^(1+a)); h(0) = h'(0) = 0.
    """
    x = np.asarray(x, dtype=np.float64)
    p = xi / 2.0 + x
    m = xi / 2.0 - x
    h = (
        p * np.abs(p) ** (1.0 + alpha)
        + m * np.abs(m) ** (1.0 + alpha)
        - 2.0 ** (-1.0 - alpha) * xi * np.abs(xi) ** (1.0 + alpha)
    )
    hp = (2.0 + alpha) * (np.abs(p) ** (1.0 + alpha) - np.abs(m) ** (1.0 + alpha))
    if np.ndim(h):
        return h, hp
    return float(h), float(hp)


@dataclass(frozen=True)
class InteractionCase:
    """A dyadic frequency interaction with its sign constraint.

    high_low:            N ~ N1 >> N2, signs free;
    high_high_opposite:  N1 ~ N2 >~ N, xi1*xi2 < 0;
    high_high_same:      N1 ~ N2 ~ N, xi1*xi2 > 0.
    """

    kind: str
    n1: int
    n2: int
    n: int

    def __post_init__(self):
        if self.kind not in CASE_KINDS:
            raise RegionError(f"unknown interaction kind {self.kind!r}")
        for name in ("n1", "n2", "n"):
            validate_dyadic(getattr(self, name), name)
        n1, n2, n = self.n1, self.n2, self.n

        def comparable(a, b):
            return max(a, b) <= COMPARABLE_FACTOR * min(a, b)

        if self.kind == HIGH_LOW:
            if not comparable(n, n1):
                raise RegionError(f"high_low needs N ~ N1, got N={n}, N1={n1}")
            if n1 < DOMINANCE_FACTOR * n2:
                raise RegionError(f"high_low needs N1 >> N2, got N1={n1}, N2={n2}")
        elif self.kind == HIGH_HIGH_OPPOSITE:
            if not comparable(n1, n2):
                raise RegionError(f"needs N1 ~ N2, got N1={n1}, N2={n2}")
            if n > COMPARABLE_FACTOR * n1:
                raise RegionError(f"needs N <~ N1, got N={n}, N1={n1}")
        else:
            if not (comparable(n1, n2) and comparable(n1, n) and comparable(n2, n)):
                raise RegionError(
                    f"high_high_same needs N1 ~ N2 ~ N, got ({n1}, {n2}, {n})"
                )

    @property
    def sign(self) -> str:
        """Constraint on the product xi1*xi2."""
        if self.kind == HIGH_HIGH_OPPOSITE:
            return "negative"
        if self.kind == HIGH_HIGH_SAME:
            return "positive"
        return "any"

    @property
    def n_min(self) -> int:
        return min(self.n1, self.n2, self.n)

    @property
    def n_max(self) -> int:
        return max(self.n1, self.n2, self.n)


def case_bound(case: InteractionCase, alpha: float) -> float:
    """Closed-form resonance lower-bound scale for the case."""
    if case.kind == HIGH_LOW:
        return case.n1 ** (1.0 + alpha) * case.n2
    if case.kind == HIGH_HIGH_OPPOSITE:
        return case.n1 ** (1.0 + alpha) * case.n
    return case.n1 ** (2.0 + alpha)


def generic_resonance_bound(case: InteractionCase, alpha: float) -> float:
    """The case-independent lower-bound scale N_max^alpha * N_min."""
    return case.n_max**alpha * case.n_min


def _annulus(n: int, margin: float) -> tuple[float, float]:
    return n / 2.0 + margin, 2.0 * n - margin


def sample_interaction(
    case: InteractionCase,
    n_samples: int,
    rng: np.random.Generator,
    max_rounds: int = 200,
) -> tuple[np.ndarray, np.ndarray]:
    """Draw (xi1, xi2) uniformly from the case region by rejection sampling."""
    margin = case.n_min / 100.0
    lo1, hi1 = _annulus(case.n1, margin)
    lo2, hi2 = _annulus(case.n2, margin)
    lo, hi = _annulus(case.n, margin)

    # quick feasibility check on attainable |xi1 + xi2|
    if case.sign == "positive":
        sum_lo, sum_hi = lo1 + lo2, hi1 + hi2
    elif case.sign == "negative":
        sum_lo, sum_hi = 0.0, hi1 + hi2  # cancellation allowed
    else:
        sum_lo, sum_hi = max(0.0, lo1 - hi2), hi1 + hi2
    if sum_hi < lo or sum_lo > hi:
        raise RegionError(
            f"{case.kind} region with N=({case.n1}, {case.n2}, {case.n}) cannot "
            f"reach the output annulus"
        )

    out1: list[np.ndarray] = []
    out2: list[np.ndarray] = []
    collected = 0
    for _ in range(max_rounds):
        batch = max(4 * (n_samples - collected), 64)
        a1 = rng.uniform(lo1, hi1, batch)
        a2 = rng.uniform(lo2, hi2, batch)
        if case.sign == "positive":
            s1 = np.where(rng.random(batch) < 0.5, -1.0, 1.0)
            s2 = s1
        elif case.sign == "negative":
            s1 = np.where(rng.random(batch) < 0.5, -1.0, 1.0)
            s2 = -s1
        else:
            s1 = np.where(rng.random(batch) < 0.5, -1.0, 1.0)
            s2 = np.where(rng.random(batch) < 0.5, -1.0, 1.0)
        xi1 = s1 * a1
        xi2 = s2 * a2
        keep = np.abs(xi1 + xi2) >= lo
        keep &= np.abs(xi1 + xi2) <= hi
        if keep.any():
            out1.append(xi1[keep])
            out2.append(xi2[keep])
            collected += int(keep.sum())
        if collected >= n_samples:
            xi1 = np.concatenate(out1)[:n_samples]
            xi2 = np.concatenate(out2)[:n_samples]
            return xi1, xi2
    raise RegionError(
        f"{case.kind} region with N=({case.n1}, {case.n2}, {case.n}) appears empty "
        f"(no acceptances after {max_rounds} rounds)"
    )


@dataclass(frozen=True)
class RatioStats:
    """Summary of sampled |Omega| / bound ratios."""

    minimum: float
    maximum: float
    mean: float
    n_samples: int


def resonance_bound_ratio(
    case: InteractionCase, alpha: float, n_samples: int, seed: int
) -> RatioStats:
    """Sample the case region and summarize |Omega| against the case bound."""
    if n_samples < 1:
        raise RegionError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    xi1, xi2 = sample_interaction(case, n_samples, rng)
    ratios = np.abs(resonance(xi1, xi2, alpha)) / case_bound(case, alpha)
    return RatioStats(
        minimum=float(ratios.min()),
        maximum=float(ratios.max()),
        mean=float(ratios.mean()),
        n_samples=n_samples,
    )
