from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from modinv.rampoly import (
    INF,
    ExtensionFieldRequired,
    OffCurve,
    PointSpec,
    RampolyError,
    VerticalComponent,
    branch_base_orders,
    branch_parity_check,
    candidate_singular_points,
    certify_complete,
    chart_flip,
    fiber_contact,
    global_ram_index,
    load_poly_file,
    local_ram_index,
    localize,
    mult_at_point,
    multiplicity_sequence,
    parse_poly,
    parse_poly_file,
    resolve,
)
from modinv.rampoly.analysis import x_discriminant
from modinv.rampoly.poly import BiPoly, T, X

H = parse_poly("x^6+(15x^4+40x^3)t-(45x^2+24x)t^2+5t^3")
G = parse_poly("5x^6-18x^5+(15x^4+20x^3)t+(-45x^2+30x-16)t^2+9t^3")

xs, ts = sp.symbols("x t")


def to_sympy(p: BiPoly):
    return sum((sp.Rational(v.numerator, v.denominator) * xs**i * ts**j for (i, j), v in p.terms.items()),
               sp.Integer(0))


P = PointSpec.parse

# (poly, point, contact, mult, sequence, branches, index)
CASES = [
    (H, "0,0", 6, 3, [3, 2], [3, 2, 1], 11),
    (H, "-1,-1", 5, 1, [], [5], 4),
    (H, "INF,INF", 6, 3, [3, 3], [2, 2, 2], 15),
    (G, "0,0", 5, 2, [2, 2], [5], 8),
    (G, "1,1", 5, 2, [2, 2], [3, 2], 7),
    (G, "INF,INF", 6, 3, [3, 3], [2, 2, 2], 15),
]


@pytest.mark.parametrize("p,coords,contact,mult,seq,branches,index", CASES)
def test_branch_curve_points(p, coords, contact, mult, seq, branches, index):
    pt = P(coords)
    assert fiber_contact(p, pt) == contact
    assert mult_at_point(p, pt) == mult
    assert multiplicity_sequence(p, pt) == seq
    assert branch_base_orders(p, pt) == branches
    assert local_ram_index(p, pt) == index
    assert sum(branches) == contact


def test_local_forms_against_sympy():
    u, s = xs, ts
    h_m1 = u**6 - 6*u**5 + (15*u**4 - 20*u**3 + 60*u**2 - 72*u + 32)*s + (-45*u**2 + 66*u - 36)*s**2 + 5*s**3
    assert sp.expand(to_sympy(localize(H, P("-1,-1"))) - h_m1) == 0
    assert sp.expand(to_sympy(H).subs({xs: u - 1, ts: s - 1}, simultaneous=True) - h_m1) == 0
    g_1 = 5*u**6 + 12*u**5 + (15*u**4 + 80*u**3 + 60*u**2)*s - (45*u**2 + 60*u + 4)*s**2 + 9*s**3
    assert sp.expand(to_sympy(localize(G, P("1,1"))) - g_1) == 0


def test_chart_flips():
    assert chart_flip(H, True, True) == parse_poly("5x^6-(24x^5+45x^4)t+(40x^3+15x^2)t^2+t^3")
    assert chart_flip(G, True, True) == parse_poly("9x^6+(-16x^6+30x^5-45x^4)t+(20x^3+15x^2)t^2+(-18x+5)t^3")
    w, r = sp.symbols("w r")
    for p in (H, G):
        flipped = sp.expand(w**6 * r**3 * to_sympy(p).subs({xs: 1 / w, ts: 1 / r}, simultaneous=True))
        assert sp.expand(flipped - to_sympy(chart_flip(p, True, True)).subs({xs: w, ts: r})) == 0
    assert chart_flip(X, True, False) == BiPoly.const(1)


@pytest.mark.parametrize("p", [H, G])
@pytest.mark.parametrize("fx,ft", [(True, False), (False, True), (True, True)])
def test_flip_involution_full_support(p, fx, ft):
    assert chart_flip(chart_flip(p, fx, ft), fx, ft) == p


@st.composite
def small_bipolys(draw):
    terms = draw(st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)),
                                 st.integers(-9, 9).filter(bool), min_size=1, max_size=8))
    return BiPoly(terms)


@given(small_bipolys(), st.booleans(), st.booleans())
def test_flip_twice_strips_monomial_factor(p, fx, ft):
    i0, j0 = p.min_exponents()
    twice = chart_flip(chart_flip(p, fx, ft), fx, ft)
    assert twice == p.div_monomial(i0 if fx else 0, j0 if ft else 0)


def test_discriminants_against_sympy():
    for p, want in ((H, 152882380800000 * ts**11 * (ts + 1)**4),
                    (G, 34828517376000000 * ts**8 * (ts - 1)**7)):
        d = x_discriminant(p)
        got = sum(sp.Rational(c.numerator, c.denominator) * ts**k for k, c in enumerate(d.c))
        oracle = sp.resultant(to_sympy(p), sp.diff(to_sympy(p), xs), xs)
        assert sp.expand(got - oracle) == 0
        assert sp.expand(got - want) == 0


def test_global_indices():
    assert global_ram_index(H) == global_ram_index(G) == 30
    assert global_ram_index(parse_poly("x - t^5")) == 0
    with pytest.raises(VerticalComponent):
        global_ram_index(parse_poly("(t-1)(x^2-t)"))
    with pytest.raises(RampolyError):
        global_ram_index(BiPoly())
    with pytest.raises(RampolyError, match="not reduced"):
        global_ram_index(parse_poly("(x^2-t)^2"))


def test_candidates():
    c = candidate_singular_points(H)
    assert c.fibers == (-1, 0, INF) and c.residual == ()
    assert set(c.points) == {P("0,0"), P("-1,-1"), P("INF,INF")}
    c = candidate_singular_points(G)
    assert c.fibers == (0, 1, INF) and set(c.points) == {P("0,0"), P("1,1"), P("INF,INF")}
    c = candidate_singular_points(parse_poly("x^2 - t"))
    assert c.fibers == (0, INF)
    assert set(c.points) == {P("0,0"), P("INF,INF")}


def test_candidates_report_irrational_factors():
    c = candidate_singular_points(parse_poly("x^2 - t^2 + 2"))
    (r,) = c.residual
    assert r.variable == "t" and r.degree == 2
    c = candidate_singular_points(parse_poly("(x^2-2)^2 + t"))
    assert any(r.variable == "x" and r.degree == 2 and r.fiber == 0 for r in c.residual)


def test_certificates():
    cert = certify_complete(H, [P("0,0"), P("-1,-1"), P("INF,INF")])
    assert cert.passed and cert.summary() == "30 = 11 + 4 + 15 PASS"
    cert = certify_complete(G, [P("0,0"), P("1,1"), P("INF,INF")])
    assert cert.passed and cert.summary() == "30 = 8 + 7 + 15 PASS"
    partial = certify_complete(H, [P("0,0")])
    assert not partial.passed and partial.deficit == 19
    assert {pt for pt, _ in partial.unlisted} == {P("-1,-1"), P("INF,INF")}
    with pytest.raises(RampolyError, match="inconsistent"):
        certify_complete(H, [P("0,0"), P("0,0"), P("INF,INF")])


def test_certificate_fails_on_residual():
    p = parse_poly("x^2 - t^2 + 2")
    cert = certify_complete(p, [])
    assert cert.global_index == 4 and not cert.passed and cert.residual


def test_point_errors():
    with pytest.raises(OffCurve):
        fiber_contact(H, P("1,0"))
    with pytest.raises(VerticalComponent):
        multiplicity_sequence(parse_poly("t(x-t)"), P("0,0"))


def test_extension_field_errors():
    p = parse_poly("(x^2-2t^2)^2 + t^5")
    with pytest.raises(ExtensionFieldRequired, match="z\\^2 - 1/2"):
        multiplicity_sequence(p, P("0,0"))
    with pytest.raises(ExtensionFieldRequired):
        branch_base_orders(p, P("0,0"))
    # simple irrational directions are fine
    assert branch_base_orders(parse_poly("x^2 - 2t^2"), P("0,0")) == [1, 1]


def test_parity():
    assert branch_parity_check([(6, 3), (0, 1)])
    assert all(branch_parity_check([(6, 3), (0, 1)] + [(0, 1)] * (2 * n)) for n in range(10))
    assert not branch_parity_check([(6, 3)])


def test_poly_files(data_dir):
    pf = load_poly_file(data_dir / "examples" / "h_lambda.poly")
    assert pf.poly == H and pf.points == (P("0,0"), P("-1,-1"), P("INF,INF"))
    with pytest.raises(RampolyError):
        parse_poly_file("x\ny\n")
    with pytest.raises(RampolyError):
        parse_poly_file("# nothing\n")
    with pytest.raises(RampolyError):
        parse_poly_file("x - t\npoint 1\n")


# random germs built from known branches: (factor, base order of that branch)
@st.composite
def branch_factor(draw):
    kind = draw(st.sampled_from(["line", "curve", "cusp", "puiseux"]))
    a = Fraction(draw(st.integers(-4, 4).filter(bool)), draw(st.integers(1, 3)))
    k = draw(st.integers(1, 3))
    if kind == "line":
        return X - T ** k * a, 1
    if kind == "curve":
        b = Fraction(draw(st.integers(-3, 3).filter(bool)))
        return X - T ** k * a - T ** (k + draw(st.integers(1, 2))) * b, 1
    if kind == "cusp":
        c = Fraction(draw(st.integers(-3, 3).filter(bool)))
        return (X - T ** k * a) ** 2 - T ** (2 * k + 1) * c, 2
    e = draw(st.sampled_from([2, 3, 4]))
    m = draw(st.integers(1, 7).filter(lambda v: v % e and (e != 4 or v % 2)))
    return X ** e - T ** m * a, e


@settings(max_examples=60)
@given(st.lists(branch_factor(), min_size=1, max_size=4))
def test_branch_orders_on_random_germs(factors):
    distinct = {}
    for f, e in factors:
        distinct.setdefault(f, e)
    p = BiPoly.const(1)
    for f in distinct:
        p = p * f
    want = sorted(distinct.values(), reverse=True)
    pt = P("0,0")
    got = branch_base_orders(p, pt)
    assert got == want
    assert sum(got) == fiber_contact(p, pt)
    seq = multiplicity_sequence(p, pt)
    assert seq == sorted(seq, reverse=True)
    assert (seq == []) == (mult_at_point(p, pt) == 1)


@pytest.mark.parametrize("p,coords", [(H, "0,0"), (G, "0,0"), (G, "1,1"), (H, "-1,-1")])
def test_shear_invariance(p, coords):
    pt = P(coords)
    sheared = p.compose(X + T, T)
    moved = PointSpec(pt.x0 - pt.t0, pt.t0)
    assert local_ram_index(sheared, moved) == local_ram_index(p, pt)


@settings(max_examples=25)
@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.sampled_from(CASES[:2] + CASES[3:5]))
def test_affine_invariance(c, d, e, case):
    p, coords, *_, index = case
    pt = P(coords)
    q = p.compose(X + T * c + d, T + e)
    moved = PointSpec(pt.x0 - c * (pt.t0 - e) - d, pt.t0 - e)
    r = resolve(q, moved)
    assert r.local_index == index
    assert sum(r.branch_orders) == r.contact


def test_global_equals_sum_over_candidates():
    for p in (H, G):
        c = candidate_singular_points(p)
        assert sum(local_ram_index(p, pt) for pt in c.points) == global_ram_index(p)
