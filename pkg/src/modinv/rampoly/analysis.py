"""Local and global ramification of a branch curve ``p(x, t) = 0`` on P1 x P1.

The base of the fibration is the ``t``-line; fibers are the lines
``t = const``.  At a point of the curve we compute

* the fiber contact: multiplicity of ``x0`` as a root of ``p(x, t0)``;
* the multiplicity sequence of the curve under repeated blowups;
* the branch base orders ``e_b``: for each analytic branch, the degree of
  the projection to the base restricted to that branch (its ``t``-order);

and combine them into the local index ``sum m(m-1) + sum (e_b - 1)``.
Everything stays over the rationals; whenever a singular infinitely-near
point or a repeated Puiseux root needs an algebraic extension we stop with
:class:`ExtensionFieldRequired` instead of approximating.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Sequence, Union

from ..certificate import Certificate, Check
from ..rational import fmt, parse_rational
from .parser import parse_poly
from .poly import BiPoly, T, UPoly, X, interpolate, poly_gcd, split_rational, sylvester_resultant

MAX_DEPTH = 64


class RampolyError(ValueError):
    pass


class OffCurve(RampolyError):
    pass


class VerticalComponent(RampolyError):
    pass


class ExtensionFieldRequired(RampolyError):
    def __init__(self, factor: UPoly, context: str) -> None:
        self.factor = factor
        super().__init__(f"extension field required: {context} has the irreducible-over-Q "
                         f"factor {factor.to_str('z')}")


class _Infinity:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "INF"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
Coord = Union[Fraction, _Infinity]


def parse_coord(text: str) -> Coord:
    s = text.strip()
    if s.upper() in ("INF", "INFINITY", "∞"):
        return INF
    return parse_rational(s)


@dataclass(frozen=True)
class PointSpec:
    x0: Coord
    t0: Coord

    def __post_init__(self) -> None:
        for name in ("x0", "t0"):
            v = getattr(self, name)
            if v is not INF:
                if isinstance(v, bool) or not isinstance(v, (int, Fraction)):
                    raise TypeError(f"{name} must be rational or INF")
                object.__setattr__(self, name, Fraction(v))

    @classmethod
    def parse(cls, text: str) -> "PointSpec":
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"expected '<x0>,<t0>', got {text!r}")
        return cls(parse_coord(parts[0]), parse_coord(parts[1]))

    def __str__(self) -> str:
        def c(v: Coord) -> str:
            return "INF" if v is INF else fmt(v)
        return f"({c(self.x0)},{c(self.t0)})"


def chart_flip(p: BiPoly, flip_x: bool, flip_t: bool) -> BiPoly:
    """Substitute ``x -> 1/w`` and/or ``t -> 1/r`` and clear denominators.

    The result is multiplied by ``w^a`` (resp. ``r^b``) where ``(a, b)`` is the
    bidegree, so it stays a polynomial in the same two slots.
    """
    if p.is_zero():
        raise RampolyError("cannot flip the zero polynomial")
    a, b = p.bidegree
    return BiPoly({
        ((a - i) if flip_x else i, (b - j) if flip_t else j): v
        for (i, j), v in p.terms.items()
    })


def localize(p: BiPoly, pt: PointSpec) -> BiPoly:
    """Move ``pt`` to the origin, flipping charts for infinite coordinates."""
    if p.is_zero():
        raise RampolyError("zero polynomial")
    fx, ft = pt.x0 is INF, pt.t0 is INF
    q = chart_flip(p, fx, ft) if (fx or ft) else p
    dx = Fraction(0) if fx else pt.x0
    dt = Fraction(0) if ft else pt.t0
    return q.translate(dx, dt) if (dx or dt) else q


def _on_curve(q: BiPoly, pt: PointSpec) -> None:
    if q.coeff(0, 0) != 0:
        raise OffCurve(f"point {pt} is not on the curve")


def _fiber_poly(q: BiPoly, pt: PointSpec) -> UPoly:
    f = q.at_t(0)
    if f.is_zero():
        raise VerticalComponent(f"vertical component: the fiber through {pt} lies on the curve")
    return f


def fiber_contact(p: BiPoly, pt: PointSpec) -> int:
    q = localize(p, pt)
    _on_curve(q, pt)
    return _fiber_poly(q, pt).order()


def mult_at_point(p: BiPoly, pt: PointSpec) -> int:
    q = localize(p, pt)
    _on_curve(q, pt)
    return q.order


def _cone_roots(cone: UPoly, context: str) -> list[tuple[Fraction, int]]:
    """Rational roots of a tangent-cone / edge polynomial; repeated
    irrational factors are fatal."""
    roots, rest = split_rational(cone)
    for fac, k in rest:
        if k >= 2:
            raise ExtensionFieldRequired(fac, context)
    return roots


def _mult_seq(q: BiPoly, depth: int) -> list[int]:
    if depth > MAX_DEPTH:
        raise RampolyError("blowup recursion too deep (is the curve reduced?)")
    m = q.order
    if m <= 1:
        return []
    out = [m]
    cone = q.homogeneous_part(m)
    # directions s = c*u live in the first chart; u = 0 is the second chart's origin
    phi = UPoly([cone.coeff(m - k, k) for k in range(m + 1)])
    for c, k in _cone_roots(phi, "a tangent direction"):
        if k < 2:
            continue
        q1 = q.compose(X, X * T).div_monomial(m, 0)
        if c:
            q1 = q1.translate(0, c)
        out += _mult_seq(q1, depth + 1)
    if m - phi.degree >= 2:
        q2 = q.compose(X * T, T).div_monomial(0, m)
        out += _mult_seq(q2, depth + 1)
    return out


def multiplicity_sequence(p: BiPoly, pt: PointSpec) -> list[int]:
    """Multiplicities of every singular infinitely-near point above ``pt``,
    largest first."""
    q = localize(p, pt)
    _on_curve(q, pt)
    _fiber_poly(q, pt)
    return sorted(_mult_seq(q, 0), reverse=True)


def _lower_hull(points: set[tuple[int, int]], start: tuple[int, int]) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Newton-polygon edges from ``start`` leftwards to the leftmost point."""
    i_min = min(i for i, _ in points)
    edges = []
    cur = start
    while cur[0] > i_min:
        ci, cj = cur
        best = None
        for (i, j) in points:
            if i >= ci:
                continue
            slope = Fraction(j - cj, ci - i)
            if best is None or slope < best[0] or (slope == best[0] and i < best[1][0]):
                best = (slope, (i, j))
        assert best is not None
        edges.append((cur, best[1]))
        cur = best[1]
    return edges


def _branches(q: BiPoly, depth: int) -> list[int]:
    if depth > MAX_DEPTH:
        raise RampolyError("Puiseux recursion too deep (is the curve reduced?)")
    contact = q.at_t(0).order()
    i_min = min(i for i, _ in q.terms)
    out: list[int] = []
    if i_min >= 2:
        raise RampolyError("the curve is not reduced at this point (repeated section x = x0)")
    if i_min == 1:
        # the section u = 0 itself is a branch, unramified over the base
        out.append(1)
    for (i1, j1), (i2, j2) in _lower_hull(set(q.terms), (contact, 0)):
        di, dj = i1 - i2, j2 - j1
        gg = gcd(di, dj)
        b, a = di // gg, dj // gg
        edge = UPoly([q.coeff(i2 + k * b, j2 - k * a) for k in range(gg + 1)])
        roots, rest = split_rational(edge)
        for fac, k in rest:
            if k >= 2:
                raise ExtensionFieldRequired(fac, "a Newton-polygon edge")
            out += [b] * fac.degree
        for zeta, k in roots:
            if k == 1:
                out.append(b)
                continue
            # u = tau^a (c + u1), s = lam tau^b with c^b = zeta lam^a
            v1 = pow(b, -1, a) if a > 1 else 1
            u1 = (b * v1 - 1) // a
            c, lam = zeta ** v1, zeta ** u1
            n = a * i2 + b * j2
            sub = q.compose(T ** a * (X + c), T ** b * lam).div_monomial(0, n)
            out += [b * e for e in _branches(sub, depth + 1)]
    return out


def branch_base_orders(p: BiPoly, pt: PointSpec) -> list[int]:
    """Base degrees ``e_b`` of the analytic branches through ``pt``, largest first."""
    q = localize(p, pt)
    _on_curve(q, pt)
    _fiber_poly(q, pt)
    return sorted(_branches(q, 0), reverse=True)


@dataclass(frozen=True)
class ResolutionReport:
    point: PointSpec
    contact: int
    multiplicity: int
    mult_sequence: tuple[int, ...]
    branch_orders: tuple[int, ...]

    @property
    def local_index(self) -> int:
        return (sum(m * (m - 1) for m in self.mult_sequence)
                + sum(e - 1 for e in self.branch_orders))

    def render(self) -> str:
        return (f"point {self.point}: contact={self.contact} mult={self.multiplicity} "
                f"seq=[{','.join(map(str, self.mult_sequence))}] "
                f"branches={{{','.join(map(str, self.branch_orders))}}} index={self.local_index}")


def resolve(p: BiPoly, pt: PointSpec) -> ResolutionReport:
    return ResolutionReport(
        point=pt,
        contact=fiber_contact(p, pt),
        multiplicity=mult_at_point(p, pt),
        mult_sequence=tuple(multiplicity_sequence(p, pt)),
        branch_orders=tuple(branch_base_orders(p, pt)),
    )


def local_ram_index(p: BiPoly, pt: PointSpec) -> int:
    return resolve(p, pt).local_index


def _vertical_content(p: BiPoly) -> UPoly:
    g = UPoly()
    for c in p.x_coeffs():
        g = poly_gcd(g, c) if g else c.monic()
    return g


def x_discriminant(p: BiPoly) -> UPoly:
    """``Res_x(p, dp/dx)`` at formal x-degree, as a polynomial in ``t``."""
    a, b = p.bidegree
    if a < 1:
        raise RampolyError("the curve has no x-dependence")
    cp = p.x_coeffs()
    cd = p.diff_x().x_coeffs() if a > 1 else [UPoly()]
    cd = cd + [UPoly()] * (a - len(cd))
    bound = b * (2 * a - 1)
    xs = [Fraction(k) for k in range(bound + 1)]
    ys = []
    for t0 in xs:
        f = [c(t0) for c in reversed(cp)]
        g = [c(t0) for c in reversed(cd)]
        ys.append(sylvester_resultant(f, g))
    return interpolate(xs, ys)


def _check_branch_curve(p: BiPoly) -> tuple[int, int]:
    if p.is_zero():
        raise RampolyError("zero polynomial")
    a, b = p.bidegree
    if a < 1:
        raise VerticalComponent("the curve is a union of fibers")
    content = _vertical_content(p)
    if content.degree > 0:
        raise VerticalComponent(f"vertical factor {content.to_str('t')}")
    return a, b


def global_ram_index(p: BiPoly) -> int:
    """``K.D + D^2`` on P1 x P1 for ``D`` of bidegree ``(a, b)``: ``2b(a-1)``."""
    a, b = _check_branch_curve(p)
    if a > 1 and x_discriminant(p).is_zero():
        raise RampolyError("the curve is not reduced")
    return 2 * b * (a - 1)


@dataclass(frozen=True)
class Residual:
    """A non-rational factor hiding candidate points."""

    variable: str  # "t": discriminant factor; "x": factor inside a rational fiber
    factor: UPoly
    multiplicity: int
    fiber: Coord | None = None

    @property
    def degree(self) -> int:
        return self.factor.degree

    def __str__(self) -> str:
        where = ""
        if self.fiber is not None:
            where = f" in fiber t={'INF' if self.fiber is INF else fmt(self.fiber)}"
        return f"{self.variable}: {self.factor.to_str(self.variable)} (degree {self.degree}, multiplicity {self.multiplicity}){where}"


@dataclass(frozen=True)
class CandidateReport:
    points: tuple[PointSpec, ...]
    fibers: tuple[Coord, ...]
    residual: tuple[Residual, ...]
    discriminant: UPoly
    order_at_infinity: int


def _fiber_points(q: BiPoly, a: int, t_label: Coord) -> tuple[list[PointSpec], list[Residual]]:
    f = q.at_t(0)
    pts: list[PointSpec] = []
    res: list[Residual] = []
    if f.is_zero():
        raise VerticalComponent(f"the fiber t={t_label} lies on the curve")
    if f.degree < a:
        pts.append(PointSpec(INF, t_label))
    if f.degree >= 2:
        g = poly_gcd(f, f.derivative())
        if g.degree > 0:
            roots, rest = split_rational(g)
            pts += [PointSpec(r, t_label) for r, _ in roots]
            res += [Residual("x", fac, k + 1, t_label) for fac, k in rest]
    return pts, res


def candidate_singular_points(p: BiPoly) -> CandidateReport:
    """Points where the projection to the ``t``-line can ramify or the curve
    can be singular: repeated roots and x-degree drops in special fibers."""
    a, b = _check_branch_curve(p)
    if a == 1:
        disc = UPoly.const(1)
        bound = 0
    else:
        disc = x_discriminant(p)
        if disc.is_zero():
            raise RampolyError("the curve is not reduced")
        bound = b * (2 * a - 1)
    roots, rest = split_rational(disc) if disc.degree > 0 else ([], [])
    residual = [Residual("t", fac, k) for fac, k in rest]
    fibers: list[Coord] = [r for r, _ in roots]
    inf_order = bound - disc.degree
    if inf_order > 0:
        fibers.append(INF)
    points: list[PointSpec] = []
    for t0 in fibers:
        q = chart_flip(p, False, True) if t0 is INF else p.translate(0, t0)
        pts, res = _fiber_points(q, a, t0)
        points += pts
        residual += res
    return CandidateReport(tuple(points), tuple(fibers), tuple(residual), disc, inf_order)


@dataclass(frozen=True)
class CompletenessCertificate:
    global_index: int
    local: tuple[tuple[PointSpec, int], ...]
    residual: tuple[Residual, ...]
    unlisted: tuple[tuple[PointSpec, int], ...] = field(default=())

    @property
    def total(self) -> int:
        return sum(v for _, v in self.local)

    @property
    def deficit(self) -> int:
        return self.global_index - self.total

    @property
    def passed(self) -> bool:
        return (self.deficit == 0 and not self.residual
                and all(v == 0 for _, v in self.unlisted))

    def summary(self) -> str:
        terms = " + ".join(str(v) for _, v in self.local) or "0"
        rel = "=" if self.deficit == 0 else ">"
        line = f"{self.global_index} {rel} {terms} {'PASS' if self.passed else 'FAIL'}"
        if self.deficit:
            line += f" (deficit {self.deficit})"
        return line

    def as_certificate(self) -> Certificate:
        checks = [Check("global = sum local", self.global_index, self.total, "==")]
        checks += [Check(f"unlisted {pt}", v, 0, "==") for pt, v in self.unlisted]
        checks.append(Check("unresolved residual factors", len(self.residual), 0, "=="))
        return Certificate("no other singular fibers", tuple(checks),
                           notes=tuple(str(r) for r in self.residual))


def certify_complete(p: BiPoly, pts: Sequence[PointSpec]) -> CompletenessCertificate:
    """Check that the listed points exhaust the relative ramification."""
    glob = global_ram_index(p)
    local = tuple((pt, local_ram_index(p, pt)) for pt in pts)
    total = sum(v for _, v in local)
    if total > glob:
        raise RampolyError(f"inconsistent data: local indices sum to {total} > global {glob}")
    cands = candidate_singular_points(p)
    listed = set(pts)
    unlisted = tuple((c, local_ram_index(p, c)) for c in cands.points if c not in listed)
    return CompletenessCertificate(glob, local, cands.residual, unlisted)


def branch_parity_check(parts: Sequence[tuple[int, int]]) -> bool:
    """A double cover branched along the sum exists iff both degrees are even."""
    a = sum(p[0] for p in parts)
    b = sum(p[1] for p in parts)
    return a % 2 == 0 and b % 2 == 0


@dataclass(frozen=True)
class PolyFile:
    poly: BiPoly
    expression: str
    points: tuple[PointSpec, ...]
    source: str = "<poly>"


class PolyFileError(RampolyError):
    pass


def parse_poly_file(text: str, source: str = "<poly>") -> PolyFile:
    expr: str | None = None
    points: list[PointSpec] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("point"):
            try:
                points.append(PointSpec.parse(line[len("point"):]))
            except ValueError as exc:
                raise PolyFileError(f"{source}:{lineno}: {exc}") from None
        elif expr is None:
            expr = line
            try:
                poly = parse_poly(line)
            except ValueError as exc:
                raise PolyFileError(f"{source}:{lineno}: {exc}") from None
        else:
            raise PolyFileError(f"{source}:{lineno}: only one expression line is allowed")
    if expr is None:
        raise PolyFileError(f"{source}: no polynomial expression")
    return PolyFile(poly, expr, tuple(points), source)


def load_poly_file(path: str | Path) -> PolyFile:
    p = Path(path)
    return parse_poly_file(p.read_text(encoding="utf-8"), source=str(p))
