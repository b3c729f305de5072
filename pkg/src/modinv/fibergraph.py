"""Weighted dual graphs of singular fibers and their delta invariants.

A :class:`FiberGraph` is the dual graph of the minimal normal crossing model
of a fiber: vertices are components (multiplicity, geometric genus, optional
self-intersection), edges are nodes.  Principal components are the
non-rational ones and the ones meeting the rest of the fiber in at least three
points; principal chains are the strings of non-principal rational curves
joining them.  Each node of a chain carries the weight
``gcd(a, b)**2 / (a * b)`` and the type-``i`` delta of the fiber is the total
weight of its type-``i`` chains.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .rational import fmt


class GraphError(ValueError):
    """Structural problem that blocks delta computations."""


class UnsupportedGenus(GraphError):
    pass


class FiberFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, token: str | None = None,
                 source: str | None = None) -> None:
        self.line = line
        self.token = token
        self.source = source
        where = f"{source or '<fiber>'}:{line}" if line is not None else (source or "<fiber>")
        tok = f" (at {token!r})" if token is not None else ""
        super().__init__(f"{where}: {message}{tok}")


def beta(a: int, b: int) -> Fraction:
    """Weight of a node whose branches have multiplicities ``a`` and ``b``."""
    if a < 1 or b < 1:
        raise ValueError("multiplicities must be positive")
    d = math.gcd(a, b)
    return Fraction(d * d, a * b)


@dataclass(frozen=True)
class Component:
    id: str
    mult: int
    genus: int = 0
    selfint: int | None = None


@dataclass(frozen=True)
class Edge:
    u: str
    v: str
    count: int = 1

    @property
    def is_loop(self) -> bool:
        return self.u == self.v


@dataclass(frozen=True)
class Node:
    """A single node; ``a``/``b`` are the multiplicities of its two branches."""

    endpoints: tuple[str, str]
    a: int
    b: int

    @property
    def beta(self) -> Fraction:
        return beta(self.a, self.b)


@dataclass(frozen=True)
class FiberGraph:
    name: str
    genus: int
    components: tuple[Component, ...]
    edges: tuple[Edge, ...] = ()
    # (id1, id2, type) overrides for the unique chain between id1 and id2
    chain_types: tuple[tuple[str, str, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "chain_types", tuple(self.chain_types))

    @property
    def ids(self) -> list[str]:
        return [c.id for c in self.components]

    def component(self, cid: str) -> Component:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def mult(self, cid: str) -> int:
        return self.component(cid).mult

    def edge_instances(self) -> list[tuple[int, str, str]]:
        """Every node as ``(index, u, v)``; an edge with ``count=k`` yields k nodes."""
        out = []
        for e in self.edges:
            for _ in range(e.count):
                out.append((len(out), e.u, e.v))
        return out

    def nodes(self) -> list[Node]:
        mults = {c.id: c.mult for c in self.components}
        return [Node((u, v), mults[u], mults[v]) for _, u, v in self.edge_instances()]

    def degree(self, cid: str) -> int:
        """Number of points where ``cid`` meets the rest (a self-node counts twice)."""
        d = 0
        for e in self.edges:
            if e.u == cid:
                d += e.count
            if e.v == cid:
                d += e.count
        return d

    def adjacency(self) -> dict[str, dict[str, int]]:
        adj: dict[str, dict[str, int]] = {c.id: defaultdict(int) for c in self.components}
        for e in self.edges:
            if e.u in adj and e.v in adj:
                adj[e.u][e.v] += e.count
                if not e.is_loop:
                    adj[e.v][e.u] += e.count
        return {k: dict(v) for k, v in adj.items()}

    def relabel(self, mapping: Mapping[str, str]) -> "FiberGraph":
        comps = tuple(Component(mapping[c.id], c.mult, c.genus, c.selfint) for c in self.components)
        edges = tuple(Edge(mapping[e.u], mapping[e.v], e.count) for e in self.edges)
        ct = tuple((mapping[a], mapping[b], t) for a, b, t in self.chain_types)
        return FiberGraph(self.name, self.genus, comps, edges, ct)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    fatal: bool = True


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()
    checked_identities: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def fatal(self) -> bool:
        return any(v.fatal for v in self.violations)

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}


def _connected(ids: Iterable[str], adj: Mapping[str, Mapping[str, int]]) -> bool:
    ids = list(ids)
    if not ids:
        return True
    seen = {ids[0]}
    stack = [ids[0]]
    while stack:
        cur = stack.pop()
        for nb in adj.get(cur, {}):
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(ids)


def validate_graph(g: FiberGraph) -> ValidationReport:
    out: list[Violation] = []
    checked: list[str] = []
    ids = g.ids
    seen: set[str] = set()
    for cid in ids:
        if cid in seen:
            out.append(Violation("duplicate-id", f"component id {cid!r} used twice"))
        seen.add(cid)
    for c in g.components:
        if c.mult < 1:
            out.append(Violation("mult", f"component {c.id!r} has multiplicity {c.mult} < 1"))
        if c.genus < 0:
            out.append(Violation("genus", f"component {c.id!r} has negative genus {c.genus}"))
    for e in g.edges:
        for end in (e.u, e.v):
            if end not in seen:
                out.append(Violation("unknown-id", f"edge refers to unknown component {end!r}"))
        if e.count < 1:
            out.append(Violation("count", f"edge {e.u}-{e.v} has count {e.count} < 1"))
    if g.genus < 0:
        out.append(Violation("fiber-genus", f"fiber genus {g.genus} is negative"))
    if any(v.fatal for v in out):
        return ValidationReport(tuple(out))

    adj = g.adjacency()
    if not _connected(ids, adj):
        out.append(Violation("disconnected", "dual graph is disconnected"))

    # F . C = 0 for every component with a known self-intersection
    for c in g.components:
        if c.selfint is None:
            continue
        total = c.mult * c.selfint + sum(g.mult(j) * n for j, n in adj[c.id].items() if j != c.id)
        checked.append(c.id)
        if total != 0:
            out.append(Violation(
                "fiber-dot-component",
                f"F.{c.id} = {total} != 0 (mult {c.mult}, selfint {c.selfint})",
                fatal=False,
            ))
    return ValidationReport(tuple(out), tuple(checked))


def require_valid(g: FiberGraph) -> None:
    report = validate_graph(g)
    if report.fatal:
        msgs = "; ".join(v.message for v in report.violations if v.fatal)
        raise GraphError(f"fiber {g.name!r} is invalid: {msgs}")


def solve_self_intersections(g: FiberGraph) -> dict[str, int]:
    """Self-intersections forced by ``F . C = 0``, merged with the given ones."""
    require_valid(g)
    adj = g.adjacency()
    out: dict[str, int] = {}
    for c in g.components:
        rest = sum(g.mult(j) * n for j, n in adj[c.id].items() if j != c.id)
        q, r = divmod(-rest, c.mult)
        if r:
            raise GraphError(
                f"component {c.id!r}: self-intersection -{rest}/{c.mult} is not an integer")
        if c.selfint is not None and c.selfint != q:
            raise GraphError(
                f"component {c.id!r}: given self-intersection {c.selfint} conflicts with {q}")
        out[c.id] = q
    return out


# ---------------------------------------------------------------------------
# principal components and chains


def principal_components(g: FiberGraph) -> set[str]:
    require_valid(g)
    return {c.id for c in g.components if c.genus >= 1 or g.degree(c.id) >= 3}


@dataclass(frozen=True)
class PrincipalChain:
    endpoints: tuple[str, str]
    interior: tuple[str, ...]
    mults: tuple[int, ...]
    edge_ids: frozenset[int] = field(default=frozenset(), compare=False)

    @property
    def is_loop(self) -> bool:
        return self.endpoints[0] == self.endpoints[1]

    @property
    def H(self) -> Fraction:
        return chain_H(self)


def chain_H(c: PrincipalChain | Iterable[int]) -> Fraction:
    """Sum of node weights along a chain given by its multiplicity sequence."""
    mults = tuple(c.mults if isinstance(c, PrincipalChain) else c)
    if len(mults) < 2:
        raise ValueError("a chain has at least two multiplicities")
    return sum((beta(a, b) for a, b in zip(mults, mults[1:])), Fraction(0))


def principal_chains(g: FiberGraph) -> list[PrincipalChain]:
    principal = principal_components(g)
    instances = g.edge_instances()
    incident: dict[str, list[tuple[int, str]]] = defaultdict(list)
    for idx, u, v in instances:
        incident[u].append((idx, v))
        if u != v:
            incident[v].append((idx, u))
        else:
            incident[u].append((idx, u))
    mults = {c.id: c.mult for c in g.components}

    chains: list[PrincipalChain] = []
    seen: set[frozenset[int]] = set()
    for start in sorted(principal):
        for first_edge, nxt in incident[start]:
            path = [start]
            used = [first_edge]
            prev_edge, cur = first_edge, nxt
            dead_end = False
            while cur not in principal:
                path.append(cur)
                others = [(i, w) for i, w in incident[cur] if i != prev_edge]
                if len(others) != 1:
                    # a leaf: the tail hangs off a single principal component
                    dead_end = True
                    break
                prev_edge, cur = others[0]
                used.append(prev_edge)
            if dead_end:
                continue
            key = frozenset(used)
            if key in seen:
                continue
            seen.add(key)
            path.append(cur)
            chains.append(PrincipalChain(
                endpoints=(path[0], path[-1]),
                interior=tuple(path[1:-1]),
                mults=tuple(mults[p] for p in path),
                edge_ids=key,
            ))
    return chains


def _side_genus(g: FiberGraph, side: set[str], removed_edges: frozenset[int]) -> int:
    if any(g.component(c).genus >= 1 or g.mult(c) >= 2 for c in side):
        return 1
    n_edges = sum(1 for idx, u, v in g.edge_instances()
                  if idx not in removed_edges and u in side and v in side)
    # a connected graph with at least as many edges as vertices has a cycle
    return 1 if n_edges >= len(side) else 0


def _reach(start: str, adj: Mapping[str, Iterable[str]]) -> set[str]:
    seen = {start}
    stack = [start]
    while stack:
        cur = stack.pop()
        for nb in adj[cur]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return seen


def _override(g: FiberGraph, c: PrincipalChain) -> int | None:
    want = {c.endpoints[0], c.endpoints[1]}
    for a, b, t in g.chain_types:
        if {a, b} == want:
            same = [x for x in principal_chains(g) if {x.endpoints[0], x.endpoints[1]} == want]
            if len(same) != 1:
                raise GraphError(
                    f"chaintype {a} {b}: {len(same)} chains share these endpoints")
            return t
    return None


def chain_type(g: FiberGraph, c: PrincipalChain) -> int:
    """Type (0 or 1) of a principal chain in a genus-2 fiber.

    Loops, non-separating chains and chains whose multiplicities share a
    common factor are of type 0.  A separating chain is of type 1 when both
    sides carry genus, where a side counts as carrying genus if it has a
    non-rational or non-reduced component or contains a cycle.  A
    ``chaintype`` annotation in the graph wins over all of this.
    """
    if g.genus != 2:
        raise UnsupportedGenus(f"chain types are implemented for genus 2 only (got {g.genus})")
    forced = _override(g, c)
    if forced is not None:
        return forced
    if c.is_loop:
        return 0

    interior = set(c.interior)
    adj: dict[str, set[str]] = {cid: set() for cid in g.ids if cid not in interior}
    for idx, u, v in g.edge_instances():
        if idx in c.edge_ids or u in interior or v in interior:
            continue
        adj[u].add(v)
        adj[v].add(u)
    left = _reach(c.endpoints[0], adj)
    if c.endpoints[1] in left:
        return 0
    if math.gcd(*c.mults) >= 2:
        return 0
    right = _reach(c.endpoints[1], adj)
    return min(_side_genus(g, left, c.edge_ids), _side_genus(g, right, c.edge_ids))


@dataclass(frozen=True)
class FiberDeltas:
    delta: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        vals = tuple(Fraction(d) for d in self.delta)
        if any(d < 0 for d in vals):
            raise ValueError("delta entries are non-negative")
        object.__setattr__(self, "delta", vals)

    @classmethod
    def zero(cls, genus: int = 2) -> "FiberDeltas":
        return cls(tuple(Fraction(0) for _ in range(genus // 2 + 1)))

    def __getitem__(self, i: int) -> Fraction:
        return self.delta[i]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.delta)

    def __len__(self) -> int:
        return len(self.delta)

    @property
    def total(self) -> Fraction:
        return sum(self.delta, Fraction(0))

    def __str__(self) -> str:
        return " ".join(f"delta{i}={fmt(d)}" for i, d in enumerate(self.delta))


def delta_components(g: FiberGraph) -> FiberDeltas:
    if g.genus != 2:
        raise UnsupportedGenus(f"delta_components supports genus 2 only (got {g.genus})")
    require_valid(g)
    loops = [e for e in g.edges if e.is_loop]
    if loops:
        raise GraphError(
            f"fiber {g.name!r}: self-node on {loops[0].u!r}; components must be smooth")
    acc = [Fraction(0), Fraction(0)]
    for c in principal_chains(g):
        acc[chain_type(g, c)] += chain_H(c)
    return FiberDeltas(tuple(acc))


# ---------------------------------------------------------------------------
# file format


def _kv(tokens: list[str], lineno: int, source: str | None) -> dict[str, str]:
    out = {}
    for tok in tokens:
        if "=" not in tok:
            raise FiberFormatError("expected key=value", lineno, tok, source)
        k, v = tok.split("=", 1)
        out[k] = v
    return out


def _int(value: str, lineno: int, token: str, source: str | None) -> int:
    try:
        return int(value)
    except ValueError:
        raise FiberFormatError("expected an integer", lineno, token, source) from None


def parse_fiber(text: str, source: str | None = None) -> FiberGraph:
    """Parse the line-oriented fiber format (see README for the grammar)."""
    name: str | None = None
    genus: int | None = None
    comps: list[Component] = []
    edges: list[Edge] = []
    overrides: list[tuple[str, str, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "fiber":
            if len(rest) != 1:
                raise FiberFormatError("usage: fiber <name>", lineno, line, source)
            name = rest[0]
        elif head == "genus":
            if len(rest) != 1:
                raise FiberFormatError("usage: genus <int>", lineno, line, source)
            genus = _int(rest[0], lineno, rest[0], source)
        elif head == "component":
            if not rest:
                raise FiberFormatError("component needs an id", lineno, line, source)
            cid, kv = rest[0], _kv(rest[1:], lineno, source)
            unknown = set(kv) - {"mult", "genus", "selfint"}
            if unknown:
                raise FiberFormatError("unknown component field", lineno, sorted(unknown)[0], source)
            if "mult" not in kv:
                raise FiberFormatError("component needs mult=", lineno, cid, source)
            comps.append(Component(
                cid,
                _int(kv["mult"], lineno, "mult=" + kv["mult"], source),
                _int(kv.get("genus", "0"), lineno, "genus=" + kv.get("genus", ""), source),
                _int(kv["selfint"], lineno, "selfint=" + kv["selfint"], source)
                if "selfint" in kv else None,
            ))
        elif head == "edge":
            if len(rest) < 2:
                raise FiberFormatError("usage: edge <id1> <id2> [count=<int>]", lineno, line, source)
            kv = _kv(rest[2:], lineno, source)
            if set(kv) - {"count"}:
                raise FiberFormatError("unknown edge field", lineno, sorted(set(kv) - {"count"})[0], source)
            count = _int(kv.get("count", "1"), lineno, "count=" + kv.get("count", ""), source)
            if count < 1:
                raise FiberFormatError("count must be >= 1", lineno, f"count={count}", source)
            edges.append(Edge(rest[0], rest[1], count))
        elif head == "chaintype":
            if len(rest) != 3:
                raise FiberFormatError("usage: chaintype <id1> <id2> type=<0|1>", lineno, line, source)
            kv = _kv(rest[2:], lineno, source)
            if set(kv) != {"type"} or kv["type"] not in ("0", "1"):
                raise FiberFormatError("expected type=0 or type=1", lineno, rest[2], source)
            overrides.append((rest[0], rest[1], int(kv["type"])))
        else:
            raise FiberFormatError("unknown directive", lineno, head, source)
    if name is None:
        raise FiberFormatError("missing 'fiber <name>' line", source=source)
    if genus is None:
        raise FiberFormatError("missing 'genus <int>' line", source=source)
    known = {c.id for c in comps}
    for e in edges:
        for end in (e.u, e.v):
            if end not in known:
                raise FiberFormatError("edge refers to unknown component", None, end, source)
    return FiberGraph(name, genus, tuple(comps), tuple(edges), tuple(overrides))


def load_fiber(path: str | Path) -> FiberGraph:
    p = Path(path)
    return parse_fiber(p.read_text(encoding="utf-8"), source=str(p))


def format_fiber(g: FiberGraph) -> str:
    lines = [f"fiber {g.name}", f"genus {g.genus}"]
    for c in g.components:
        extra = f" selfint={c.selfint}" if c.selfint is not None else ""
        lines.append(f"component {c.id} mult={c.mult} genus={c.genus}{extra}")
    for e in g.edges:
        lines.append(f"edge {e.u} {e.v}" + (f" count={e.count}" if e.count != 1 else ""))
    for a, b, t in g.chain_types:
        lines.append(f"chaintype {a} {b} type={t}")
    return "\n".join(lines) + "\n"
