"""Exact polynomial fits of counts sampled at several field sizes."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class FitStatus(str, enum.Enum):
    CONFIRMED = "confirmed"      # some sample beyond the interpolation nodes agrees
    CONSISTENT = "consistent"    # too few samples to validate
    REFUTED = "refuted"          # no polynomial of degree <= max_degree fits


@dataclass(frozen=True)
class FitReport:
    """Minimal-degree interpolant through every sample.

    ``coefficients`` are ascending in ``q`` and already multiplied back by
    ``q^shift``; ``degree`` includes the shift.
    """

    samples: tuple[tuple[int, int], ...]
    degree: int
    coefficients: tuple[Fraction, ...]
    status: FitStatus
    shift: int = 0

    @property
    def integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def __call__(self, q: int) -> Fraction:
        return sum((c * q ** k for k, c in enumerate(self.coefficients)), Fraction(0))

    def polynomial(self) -> str:
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            mag = abs(c)
            coef = str(mag) if (mag != 1 or not mono) else ""
            sign = "-" if c < 0 else "+"
            terms.append((sign, coef + ("*" if coef and mono else "") + mono))
        if not terms:
            return "0"
        head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return head + "".join(f" {s} {t}" for s, t in terms[1:])

    def to_dict(self) -> dict:
        return {
            "samples": [list(s) for s in self.samples],
            "degree": self.degree,
            "coefficients": [str(c) for c in self.coefficients],
            "polynomial": self.polynomial(),
            "status": self.status.value,
            "shift": self.shift,
        }


def _newton(xs: Sequence[int], ys: Sequence[Fraction]) -> list[Fraction]:
    """Power-basis coefficients (ascending) of the interpolant through the points."""
    coef = list(ys)
    m = len(xs)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * m
    for i in range(m - 1, -1, -1):
        # poly = poly * (x - xs[i]) + coef[i]
        nxt = [Fraction(0)] * m
        for k in range(m - 1):
            nxt[k + 1] += poly[k]
        for k in range(m):
            nxt[k] -= xs[i] * poly[k]
        nxt[0] += coef[i]
        poly = nxt
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def fit_degree(samples: Sequence[tuple[int, int]], max_degree: int | None = None,
               shift: int = 0) -> FitReport:
    """Fit ``count(q)`` exactly over the rationals.

    With ``shift`` the counts are first divided by ``q^shift`` (which must
    divide them), saving ``shift`` sample points for validation.  A fit is
    confirmed when the interpolant's degree leaves at least one sample unused
    by the interpolation, and refuted when its degree exceeds ``max_degree``.
    """
    pts = sorted((int(q), int(c)) for q, c in samples)
    qs = [q for q, _ in pts]
    if not pts or len(set(qs)) != len(qs):
        raise ValueError("need samples at distinct q")
    ys = []
    for q, c in pts:
        if c % q ** shift:
            raise ValueError(f"count {c} at q={q} not divisible by q^{shift}")
        ys.append(Fraction(c // q ** shift))
    reduced = _newton(qs, ys)
    deg = len(reduced) - 1 if any(reduced) else 0
    coefficients = tuple([Fraction(0)] * shift + reduced)
    total_deg = deg + shift
    if max_degree is not None and total_deg > max_degree:
        status = FitStatus.REFUTED
    elif deg <= len(pts) - 2:
        status = FitStatus.CONFIRMED
    else:
        status = FitStatus.CONSISTENT
    return FitReport(tuple(pts), total_deg, coefficients, status, shift)
