"""Reproducible pseudorandom rational corpora for the property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .exactfield import ALPHA, BETA, ZERO, as_qf13
from .flags import FlagId, flag_data
from .metrics import MetricParams, TangentVector

DEFAULT_SEED = 20240613


def rng(seed: int = DEFAULT_SEED) -> random.Random:
    return random.Random(seed)


def rational(r: random.Random, lo: int = -9, hi: int = 9, max_den: int = 5) -> Fraction:
    return Fraction(r.randint(lo, hi), r.randint(1, max_den))


def positive(r: random.Random, hi: int = 9, max_den: int = 5) -> Fraction:
    return Fraction(r.randint(1, hi), r.randint(1, max_den))


def qf13(r: random.Random, irrational: bool = True):
    """Random a + b*sqrt13 with small rational a, b."""
    b = rational(r) if irrational and r.random() < 0.5 else 0
    return as_qf13(rational(r)) + as_qf13(b) * (ALPHA + 2)


def go_params(theta, r: random.Random) -> MetricParams:
    """Random metric satisfying the g.o. closed form."""
    theta = FlagId.parse(theta)
    if theta is FlagId.EMPTY:
        mu = positive(r)
        a = mu * Fraction(r.randint(-9, 9), 10)
        return MetricParams(theta, (mu,) * 6, (a, -a, a))
    if theta is FlagId.ALPHA1:
        mu = positive(r)
        a = mu * Fraction(r.randint(-9, 9), 10)
        return MetricParams(theta, (mu - a * a / mu, mu, mu), (a,))
    mu2, mu3 = positive(r), positive(r)
    mu1 = 34 * as_qf13(mu2) * mu3 / (BETA * BETA * mu2 + ALPHA * ALPHA * mu3)
    return MetricParams(theta, (mu1, mu2, mu3))


def any_params(theta, r: random.Random) -> MetricParams:
    """Random valid metric (almost never g.o.)."""
    theta = FlagId.parse(theta)
    if theta is FlagId.EMPTY:
        mus = [positive(r) for _ in range(6)]
        offs = []
        for k in range(3):
            bound = min(mus[2 * k], mus[2 * k + 1])
            offs.append(bound * Fraction(r.randint(-9, 9), 10))
        return MetricParams(theta, mus, offs)
    mus = [positive(r) for _ in range(3)]
    if theta is FlagId.ALPHA1:
        return MetricParams(theta, mus, (min(mus[1], mus[2]) * Fraction(r.randint(-9, 9), 10),))
    return MetricParams(theta, mus)


def mixed_params(theta, r: random.Random) -> MetricParams:
    return go_params(theta, r) if r.random() < 0.5 else any_params(theta, r)


def tangent(theta, r: random.Random, full: bool = False) -> TangentVector:
    """Random tangent vector; unless ``full``, biased toward the special sets."""
    theta = FlagId.parse(theta)
    n = flag_data(theta).dim_m
    c = [rational(r) for _ in range(n)]
    if full:
        return TangentVector(theta, [x if x else Fraction(1) for x in c])
    mode = r.random()
    if mode < 0.4:
        keep = [r.random() < 0.4 for _ in range(n)]
        c = [x if k else 0 for x, k in zip(c, keep)]
    elif mode < 0.6 and theta is FlagId.ALPHA1:
        # z3 = 0 and w2 z1 + w3 z2 = 0 with z1 = -c[4]
        c[0] = 0
        w2, w3, z2 = c[1], c[2], c[3]
        if w2:
            c[4] = w3 * z2 / w2
        else:
            c[3] = 0 if w3 else c[3]
    elif mode < 0.6 and theta is FlagId.EMPTY:
        k = r.randrange(3)
        c = [x if i // 2 == k else 0 for i, x in enumerate(c)]
    return TangentVector(theta, c)


__all__ = ["DEFAULT_SEED", "rng", "rational", "positive", "qf13", "go_params", "any_params", "mixed_params", "tangent", "ZERO"]
