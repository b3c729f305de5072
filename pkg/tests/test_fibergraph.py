from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modinv.fibergraph import (
    Component,
    Edge,
    FiberFormatError,
    FiberGraph,
    GraphError,
    UnsupportedGenus,
    beta,
    chain_H,
    chain_type,
    delta_components,
    format_fiber,
    load_fiber,
    parse_fiber,
    principal_chains,
    principal_components,
    solve_self_intersections,
    validate_graph,
)

SHIPPED = {
    "F_1a": (0, Fraction(1, 12)),
    "F_1b": (0, Fraction(1, 12)),
    "F_2a": (Fraction(1, 3), 0),
    "F_2b": (Fraction(1, 3), 0),
    "II": (0, 0),
    "IX-1": (0, 0),
    "VIII-1": (0, 0),
}


def fiber(data_dir, stem):
    return load_fiber(data_dir / "fibers" / f"{stem}.fiber")


@pytest.mark.parametrize("stem,want", sorted(SHIPPED.items()))
def test_shipped_deltas(data_dir, stem, want):
    assert tuple(delta_components(fiber(data_dir, stem))) == tuple(Fraction(w) for w in want)


@pytest.mark.parametrize("stem", sorted(SHIPPED))
def test_shipped_graphs_satisfy_fiber_dot_component(data_dir, stem):
    g = fiber(data_dir, stem)
    rep = validate_graph(g)
    assert rep.ok, rep.violations
    assert set(rep.checked_identities) == set(g.ids)
    assert solve_self_intersections(g) == {c.id: c.selfint for c in g.components}


def test_extremal_chains_and_types(data_dir):
    g = fiber(data_dir, "F_1a")
    (c,) = principal_chains(g)
    assert sorted(c.mults) == [3, 4] and chain_type(g, c) == 1
    g = fiber(data_dir, "F_2b")
    (c,) = principal_chains(g)
    assert c.is_loop and c.mults == (3, 2, 3) and chain_type(g, c) == 0
    assert chain_H(c) == Fraction(1, 3)


def test_longer_delta1_chain():
    assert chain_H([3, 4, 5, 6]) == Fraction(1, 6)
    assert chain_H([6, 5, 4, 3]) == Fraction(1, 6)


def test_principal_components(data_dir):
    assert principal_components(fiber(data_dir, "II")) == {"E"}
    assert principal_components(fiber(data_dir, "VIII-1")) == {"B"}


def test_node_weight_examples():
    assert beta(3, 4) == Fraction(1, 12)
    assert beta(2, 4) == Fraction(1, 2)
    assert beta(5, 5) == 1
    with pytest.raises(ValueError):
        beta(0, 3)


@given(st.integers(1, 200), st.integers(1, 200), st.integers(1, 30))
def test_beta_symmetric_scale_invariant(a, b, k):
    assert beta(a, b) == beta(b, a) == beta(k * a, k * b)
    assert 0 < beta(a, b) <= 1


@given(st.lists(st.integers(1, 40), min_size=2, max_size=12))
def test_chain_H_reversal(mults):
    assert chain_H(mults) == chain_H(mults[::-1])
    assert chain_H(mults) == sum(beta(a, b) for a, b in zip(mults, mults[1:]))


@pytest.mark.parametrize("stem", ["F_1a", "F_1b", "F_2a", "F_2b"])
@given(data=st.data())
def test_relabel_invariance(data_dir, stem, data):
    g = fiber(data_dir, stem)
    ids = g.ids
    perm = data.draw(st.permutations([f"n{k}" for k in range(len(ids))]))
    h = g.relabel(dict(zip(ids, perm)))
    assert delta_components(h) == delta_components(g)


@pytest.mark.parametrize("stem", sorted(SHIPPED))
def test_format_round_trip(data_dir, stem):
    g = fiber(data_dir, stem)
    assert parse_fiber(format_fiber(g)) == g


@st.composite
def random_trees(draw):
    n = draw(st.integers(1, 12))
    comps = [Component(f"c{k}", draw(st.integers(1, 6)), draw(st.integers(0, 2))) for k in range(n)]
    edges = [Edge(f"c{draw(st.integers(0, k - 1))}", f"c{k}") for k in range(1, n)]
    return FiberGraph("tree", 2, tuple(comps), tuple(edges))


@given(random_trees())
def test_tree_with_at_most_one_principal_component_has_no_delta(g):
    if len(principal_components(g)) <= 1:
        assert principal_chains(g) == []
        assert delta_components(g).total == 0


@given(random_trees())
def test_tree_chain_endpoints_are_principal(g):
    pc = principal_components(g)
    for c in principal_chains(g):
        assert set(c.endpoints) <= pc
        assert not set(c.interior) & pc


def test_loop_with_one_principal_component_has_delta(data_dir):
    # a single principal component does not force delta = 0 once the graph has a cycle
    g = fiber(data_dir, "F_2b")
    assert len(principal_components(g)) == 1
    assert delta_components(g)[0] == Fraction(1, 3)


def test_wrong_selfint_is_reported_not_fatal(data_dir):
    g = fiber(data_dir, "VIII-1")
    comps = tuple(Component(c.id, c.mult, c.genus, -5 if c.id == "C" else c.selfint)
                  for c in g.components)
    bad = FiberGraph(g.name, g.genus, comps, g.edges)
    rep = validate_graph(bad)
    assert rep.codes() == {"fiber-dot-component"} and not rep.fatal
    assert delta_components(bad) == delta_components(g)
    with pytest.raises(GraphError, match="conflicts"):
        solve_self_intersections(bad)


def test_structural_errors():
    g = FiberGraph("x", 2, (Component("a", 1), Component("b", 0)), (Edge("a", "b"),))
    assert "mult" in validate_graph(g).codes()
    with pytest.raises(GraphError):
        delta_components(g)
    g = FiberGraph("x", 2, (Component("a", 1), Component("b", 1)), ())
    assert "disconnected" in validate_graph(g).codes()
    g = FiberGraph("x", 2, (Component("a", 1, 1),), (Edge("a", "a"),))
    with pytest.raises(GraphError, match="self-node"):
        delta_components(g)


def test_unsupported_genus():
    g = FiberGraph("x", 3, (Component("a", 1, 3),), ())
    with pytest.raises(UnsupportedGenus):
        delta_components(g)


@pytest.mark.parametrize("text,line,token", [
    ("fiber a\ngenus 2\ncomponent A mult=x\n", 3, "mult=x"),
    ("fiber a\ngenus 2\nvertex A\n", 3, "vertex"),
    ("fiber a\ngenus 2\ncomponent A mult=1 colour=red\n", 3, "colour"),
    ("fiber a\ngenus 2\ncomponent A mult=1\nedge A B\n", None, "B"),
])
def test_parse_errors_carry_position(text, line, token):
    with pytest.raises(FiberFormatError) as exc:
        parse_fiber(text, source="t.fiber")
    assert exc.value.line == line and exc.value.token == token
    assert "t.fiber" in str(exc.value)


def test_missing_header():
    with pytest.raises(FiberFormatError, match="genus"):
        parse_fiber("fiber a\ncomponent A mult=1\n")


def test_chaintype_override(data_dir):
    g = fiber(data_dir, "F_1a")
    text = format_fiber(g) + "chaintype C1 C2 type=0\n"
    assert tuple(delta_components(parse_fiber(text))) == (Fraction(1, 12), 0)
