"""Modular invariants of genus-2 families, fiber Chern numbers and bounds.

Everything is closed-form rational arithmetic:

* ``lambda = delta0/10 + delta1/5`` and ``kappa = delta0/5 + 7*delta1/5`` for
  genus 2, so Noether's ``12*lambda = kappa + delta`` holds by construction;
* fiber Chern numbers come from the opaque local data ``(N, F_red^2, mu,
  alpha, beta-, beta+)``;
* relative invariants add the fiber Chern numbers to the modular invariants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .certificate import Certificate, Check
from .fibergraph import FiberDeltas
from .rational import Rational, fmt

LAMBDA_MIN = Fraction(1, 60)
KAPPA_MIN = Fraction(1, 15)
DELTA_MIN = Fraction(1, 12)

MAX_GENUS = 10**6


class InvariantError(ValueError):
    pass


@dataclass(frozen=True)
class ModularInvariants:
    lambda_: Fraction
    kappa: Fraction
    delta: Fraction
    delta0: Fraction
    delta1: Fraction

    def __post_init__(self) -> None:
        for name in ("lambda_", "kappa", "delta", "delta0", "delta1"):
            val = Fraction(getattr(self, name))
            if val < 0:
                raise InvariantError(f"{name.rstrip('_')} must be non-negative, got {fmt(val)}")
            object.__setattr__(self, name, val)
        if self.delta != self.delta0 + self.delta1:
            raise InvariantError("delta != delta0 + delta1")
        if 12 * self.lambda_ != self.kappa + self.delta:
            raise InvariantError("Noether equality 12*lambda = kappa + delta fails")

    def as_dict(self) -> dict[str, Fraction]:
        return {"lambda": self.lambda_, "kappa": self.kappa, "delta": self.delta,
                "delta0": self.delta0, "delta1": self.delta1}


def genus2_modular(d0: Rational, d1: Rational) -> ModularInvariants:
    d0, d1 = Fraction(d0), Fraction(d1)
    if d0 < 0 or d1 < 0:
        raise InvariantError("delta0 and delta1 must be non-negative")
    return ModularInvariants(
        lambda_=d0 / 10 + d1 / 5,
        kappa=d0 / 5 + 7 * d1 / 5,
        delta=d0 + d1,
        delta0=d0,
        delta1=d1,
    )


def family_deltas(fibers: Iterable[FiberDeltas | Sequence[Rational]]) -> tuple[Fraction, Fraction]:
    d0 = d1 = Fraction(0)
    for f in fibers:
        vals = tuple(f)
        if len(vals) != 2:
            raise InvariantError(f"genus-2 delta vectors have two entries, got {len(vals)}")
        d0 += Fraction(vals[0])
        d1 += Fraction(vals[1])
    return d0, d1


@dataclass(frozen=True)
class ChernLocalData:
    N: int
    Fred2: int
    mu: int
    alpha: int
    beta_minus: Fraction
    beta_plus: Fraction
    beta: Fraction

    def __post_init__(self) -> None:
        for name in ("beta_minus", "beta_plus", "beta"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))


@dataclass(frozen=True)
class ChernNumbers:
    c1sq: Fraction
    c2: Fraction
    chi: Fraction

    def __post_init__(self) -> None:
        for name in ("c1sq", "c2", "chi"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def consistent(self) -> bool:
        return 12 * self.chi == self.c1sq + self.c2

    def __str__(self) -> str:
        return f"c1sq={fmt(self.c1sq)} c2={fmt(self.c2)} chi={fmt(self.chi)}"


def chern_from_local(d: ChernLocalData) -> ChernNumbers:
    if d.beta != d.beta_minus + d.beta_plus:
        raise InvariantError(
            f"beta={fmt(d.beta)} is not beta_minus + beta_plus = {fmt(d.beta_minus + d.beta_plus)}")
    c1sq = 4 * d.N + d.Fred2 + d.alpha - d.beta_minus
    c2 = 2 * d.N + d.mu - d.beta_plus
    chi = Fraction(6 * d.N + d.Fred2 + d.alpha + d.mu, 12) - d.beta / 12
    out = ChernNumbers(c1sq, c2, chi)
    assert out.consistent
    return out


@dataclass(frozen=True)
class RelativeInvariants:
    Kf2: Fraction
    ef: Fraction
    chif: Fraction

    @property
    def noether_defect(self) -> Fraction:
        return 12 * self.chif - (self.Kf2 + self.ef)


def relative_invariants(m: ModularInvariants, cherns: Iterable[ChernNumbers]) -> RelativeInvariants:
    cherns = list(cherns)
    return RelativeInvariants(
        Kf2=m.kappa + sum((c.c1sq for c in cherns), Fraction(0)),
        ef=m.delta + sum((c.c2 for c in cherns), Fraction(0)),
        chif=m.lambda_ + sum((c.chi for c in cherns), Fraction(0)),
    )


def genus2_bound_certificate(m: ModularInvariants) -> Certificate:
    """Check a non-isotrivial genus-2 family against the sharp lower bounds.

    Raises :class:`InvariantError` when ``delta == 0``: such families are
    isotrivial or smooth and the bounds say nothing about them.
    """
    if m.delta == 0:
        raise InvariantError("isotrivial or smooth family: bounds not applicable")
    checks = [
        Check("lambda", m.lambda_, LAMBDA_MIN),
        Check("kappa", m.kappa, KAPPA_MIN),
        Check("delta", m.delta, DELTA_MIN),
    ]
    flags = [f"{c.label}-minimal" for c in checks if c.tight]
    notes = []
    if m.lambda_ == LAMBDA_MIN:
        # minimal lambda forces delta = 1/12 and kappa = 7/60, never 1/15
        checks.append(Check("kappa at minimal lambda", m.kappa, Fraction(7, 60), "=="))
        notes.append("lambda and kappa cannot be minimal simultaneously")
    return Certificate("genus-2 sharp bounds", tuple(checks), tuple(flags), tuple(notes))


def delta_i_lower_bound(g: int, i: int) -> Fraction:
    """Lower bound for a nonzero ``delta_i`` of a genus-``g`` family."""
    if not 0 <= i <= g // 2:
        raise InvariantError(f"boundary index {i} out of range for genus {g}")
    if i == 0:
        return Fraction(1, 4 * g * g)
    return Fraction(1, (4 * i + 2) * (4 * (g - i) + 2))


@dataclass(frozen=True)
class GenusBounds:
    genus: int
    lambda_: Fraction
    delta: Fraction
    kappa: Fraction
    # min over boundary types of the Moriwaki-weighted delta_i bounds, over 8g+4
    lambda_via_min: Fraction

    def __iter__(self):
        return iter((self.lambda_, self.delta, self.kappa))

    @property
    def lambda_consistent(self) -> bool:
        return self.lambda_via_min >= self.lambda_


def general_genus_bounds(g: int, max_genus: int = MAX_GENUS) -> GenusBounds:
    if g < 3:
        raise InvariantError(f"general bounds need genus >= 3 (got {g})")
    if g > max_genus:
        raise InvariantError(f"genus {g} exceeds the configured limit {max_genus}")
    terms = [g * delta_i_lower_bound(g, 0)]
    terms += [4 * i * (g - i) * delta_i_lower_bound(g, i) for i in range(1, g // 2 + 1)]
    out = GenusBounds(
        genus=g,
        lambda_=Fraction(1, 16 * g * (2 * g + 1)),
        delta=Fraction(1, 4 * (2 * g + 1) ** 2),
        kappa=Fraction(g - 1, 4 * g * g * (2 * g + 1)),
        lambda_via_min=Fraction(1, 8 * g + 4) * min(terms),
    )
    if not out.lambda_consistent:
        raise AssertionError(f"lambda bound is not implied at genus {g}")
    return out


def moriwaki_check(g: int, lambda_: Rational, deltas: Sequence[Rational]) -> Check:
    """``(8g+4) lambda >= g delta_0 + sum 4 i (g-i) delta_i``, exactly."""
    if g < 2:
        raise InvariantError("Moriwaki's inequality needs genus >= 2")
    if len(deltas) != g // 2 + 1:
        raise InvariantError(f"expected {g // 2 + 1} delta entries for genus {g}, got {len(deltas)}")
    ds = [Fraction(d) for d in deltas]
    rhs = g * ds[0] + sum((4 * i * (g - i) * ds[i] for i in range(1, len(ds))), Fraction(0))
    return Check("moriwaki", (8 * g + 4) * Fraction(lambda_), rhs)


def slope_check(g: int, kappa: Rational, lambda_: Rational) -> Check:
    if g < 2:
        raise InvariantError("the slope inequality needs genus >= 2")
    return Check("slope", Fraction(kappa), Fraction(4 * g - 4, g) * Fraction(lambda_))
