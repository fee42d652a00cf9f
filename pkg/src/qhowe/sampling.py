"""Seeded exact evaluation points with pole rejection."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from .scalars import EvalPoint, PoleError

__all__ = ["random_rational", "sample_points", "evaluate_with_rejection"]


def random_rational(rng: random.Random, lo: Fraction, hi: Fraction, max_den: int = 13) -> Fraction:
    while True:
        den = rng.randint(2, max_den)
        num = rng.randint(int(lo * den) + 1, int(hi * den))
        x = Fraction(num, den)
        if lo < x < hi and x != 1:
            return x


def _draw(rng: random.Random, nz: int) -> EvalPoint:
    q = random_rational(rng, Fraction(1), Fraction(3))
    if rng.random() < 0.5:
        q = 1 / q
    zs = [random_rational(rng, Fraction(1, 8), Fraction(2)) for _ in range(nz)]
    return EvalPoint(q, zs)


def sample_points(count: int, nz: int, seed: int = 0,
                  accept: Callable[[EvalPoint], object] | None = None,
                  max_tries: int = 1000):
    """``count`` points with ``nz`` spectral values; returns (points, rejected).

    ``accept(point)`` may raise ``PoleError`` (or ZeroDivisionError) to reject
    a point; rejected points are reported alongside the accepted ones.
    """
    rng = random.Random(seed)
    points, rejected = [], []
    for _ in range(max_tries):
        if len(points) >= count:
            break
        p = _draw(rng, nz)
        if accept is not None:
            try:
                accept(p)
            except ZeroDivisionError:
                rejected.append(p)
                continue
        points.append(p)
    return points, rejected


def evaluate_with_rejection(fn: Callable[[EvalPoint], object], count: int, nz: int, seed: int):
    """Run ``fn`` at ``count`` accepted points; poles cause a redraw."""
    rng = random.Random(seed)
    results, rejected = [], []
    tries = 0
    while len(results) < count:
        tries += 1
        if tries > 50 * count + 100:
            raise RuntimeError("too many rejected points")
        p = _draw(rng, nz)
        try:
            results.append((p, fn(p)))
        except (PoleError, ZeroDivisionError):
            rejected.append(p)
    return results, rejected


__all__ += ["PoleError"]
