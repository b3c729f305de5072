"""Catalog of genus-2 singular fibers: Chern numbers, local data, dual graphs.

The catalog is a plain text data file (``data/catalog.txt`` by default) so
new Namikawa-Ueno types can be added without touching code.  Queries cover
name lookup, the chi floor of fibers with smooth reduction, minimal nonzero
delta searches, and the chi bookkeeping behind rigidity of extremal families.
"""

from __future__ import annotations

import difflib
import shlex
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .certificate import Certificate, Check
from .fibergraph import FiberDeltas, FiberGraph, chain_H, delta_components, load_fiber
from .invariants import ChernLocalData, ChernNumbers, chern_from_local, genus2_modular
from .rational import fmt, parse_rational

CHI_FLOOR = Fraction(2, 5)
CHI_SECOND = Fraction(1, 2)


class CatalogError(ValueError):
    pass


class UnknownFiber(CatalogError, KeyError):
    def __init__(self, name: str, suggestions: Sequence[str]) -> None:
        self.name = name
        self.suggestions = list(suggestions)
        hint = f"; nearest: {', '.join(self.suggestions)}" if self.suggestions else ""
        super().__init__(f"unknown fiber {name!r}{hint}")

    def __str__(self) -> str:
        return self.args[0]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    chern: ChernNumbers | None
    smooth_reduction: bool
    local: ChernLocalData | None = None
    graph: FiberGraph | None = None
    deltas: FiberDeltas | None = None
    aliases: tuple[str, ...] = ()
    # (multiplicity sequence, chain type) for entries without a shipped graph
    chains: tuple[tuple[tuple[int, ...], int], ...] = field(default=())

    @property
    def chi(self) -> Fraction:
        if self.chern is None:
            raise CatalogError(f"{self.name}: no Chern numbers in the catalog")
        return self.chern.chi


def _parse_bool(text: str, where: str) -> bool:
    if text in ("true", "yes", "1"):
        return True
    if text in ("false", "no", "0"):
        return False
    raise CatalogError(f"{where}: expected a boolean, got {text!r}")


def _parse_local(tokens: list[str], where: str) -> ChernLocalData:
    kv = dict(t.split("=", 1) for t in tokens if "=" in t)
    need = ("N", "Fred2", "mu", "alpha", "bminus", "bplus", "beta")
    missing = [k for k in need if k not in kv]
    if missing or len(kv) != len(tokens):
        raise CatalogError(f"{where}: local data needs {' '.join(k + '=' for k in need)}")
    return ChernLocalData(
        N=int(kv["N"]), Fred2=int(kv["Fred2"]), mu=int(kv["mu"]), alpha=int(kv["alpha"]),
        beta_minus=parse_rational(kv["bminus"]), beta_plus=parse_rational(kv["bplus"]),
        beta=parse_rational(kv["beta"]),
    )


def parse_catalog(text: str, base: Path | None = None, source: str = "<catalog>") -> "Catalog":
    raw: dict[str, dict] = {}
    order: list[str] = []
    chains: dict[str, list[tuple[tuple[int, ...], int]]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        where = f"{source}:{lineno}"
        try:
            tokens = shlex.split(line, comments=True)
        except ValueError as exc:
            raise CatalogError(f"{where}: {exc}") from None
        if not tokens:
            continue
        kind = tokens[0]
        if kind == "entry":
            if len(tokens) < 2:
                raise CatalogError(f"{where}: entry needs a name")
            name = tokens[1]
            if name in raw:
                raise CatalogError(f"{where}: duplicate entry {name!r}")
            rest = tokens[2:]
            local = None
            if "local:" in rest:
                cut = rest.index("local:")
                local = _parse_local(rest[cut + 1:], where)
                rest = rest[:cut]
            fields: dict[str, str] = {}
            for tok in rest:
                if "=" not in tok:
                    raise CatalogError(f"{where}: expected key=value, got {tok!r}")
                k, v = tok.split("=", 1)
                if k == "aka":
                    fields["aka"] = (fields.get("aka", "") + " " + v).strip()
                elif k in fields:
                    raise CatalogError(f"{where}: repeated field {k!r}")
                else:
                    fields[k] = v
            unknown = set(fields) - {"c1sq", "c2", "chi", "smooth_reduction", "graph", "aka"}
            if unknown:
                raise CatalogError(f"{where}: unknown field {sorted(unknown)[0]!r}")
            triple = [k in fields for k in ("c1sq", "c2", "chi")]
            if any(triple) and not all(triple):
                raise CatalogError(f"{where}: give all of c1sq, c2, chi or none")
            if "smooth_reduction" not in fields:
                raise CatalogError(f"{where}: smooth_reduction= is required")
            raw[name] = {"fields": fields, "local": local, "where": where}
            order.append(name)
        elif kind == "chain":
            if len(tokens) != 4:
                raise CatalogError(f"{where}: usage: chain \"<name>\" mults=a,b,... type=<0|1>")
            kv = dict(t.split("=", 1) for t in tokens[2:] if "=" in t)
            try:
                mults = tuple(int(m) for m in kv["mults"].split(","))
                ctype = int(kv["type"])
            except (KeyError, ValueError):
                raise CatalogError(f"{where}: bad chain line") from None
            if ctype not in (0, 1) or len(mults) < 2 or min(mults) < 1:
                raise CatalogError(f"{where}: bad chain data")
            chains.setdefault(tokens[1], []).append((mults, ctype))
        else:
            raise CatalogError(f"{where}: unknown record {kind!r}")

    entries = []
    for name in order:
        info = raw[name]
        f, where = info["fields"], info["where"]
        chern = None
        if "chi" in f:
            chern = ChernNumbers(parse_rational(f["c1sq"]), parse_rational(f["c2"]),
                                 parse_rational(f["chi"]))
            if not chern.consistent:
                raise CatalogError(f"{where}: {name}: 12 chi != c1sq + c2")
        local = info["local"]
        if local is not None and chern is not None and chern_from_local(local) != chern:
            raise CatalogError(f"{where}: {name}: local data does not reproduce the Chern numbers")
        graph = deltas = None
        if "graph" in f:
            gpath = Path(f["graph"])
            if base is not None and not gpath.is_absolute():
                gpath = base / gpath
            graph = load_fiber(gpath)
            deltas = delta_components(graph)
        entry_chains = tuple(chains.pop(name, ()))
        if entry_chains:
            if graph is not None:
                raise CatalogError(f"{where}: {name}: chain data given for an entry with a graph")
            acc = [Fraction(0), Fraction(0)]
            for mults, ctype in entry_chains:
                acc[ctype] += chain_H(mults)
            deltas = FiberDeltas(tuple(acc))
        smooth = _parse_bool(f["smooth_reduction"], where)
        if smooth and deltas is not None and deltas.total != 0:
            raise CatalogError(f"{where}: {name}: smooth reduction but nonzero delta")
        if smooth and deltas is None:
            deltas = FiberDeltas.zero()
        entries.append(CatalogEntry(
            name=name, chern=chern, smooth_reduction=smooth, local=local, graph=graph,
            deltas=deltas, aliases=tuple(f.get("aka", "").split()), chains=entry_chains,
        ))
    if chains:
        raise CatalogError(f"{source}: chain data for unknown entries {sorted(chains)}")
    return Catalog(tuple(entries))


def load_catalog(path: str | Path | None = None) -> "Catalog":
    if path is None:
        return default_catalog()
    p = Path(path)
    return parse_catalog(p.read_text(encoding="utf-8"), base=p.parent, source=str(p))


@lru_cache(maxsize=1)
def default_catalog() -> "Catalog":
    data = resources.files("modinv") / "data"
    with resources.as_file(data) as d:
        p = Path(d) / "catalog.txt"
        return parse_catalog(p.read_text(encoding="utf-8"), base=p.parent, source="catalog.txt")


@dataclass(frozen=True)
class ChiFloorReport:
    minimum: Fraction
    argmin: tuple[str, ...]
    second: Fraction | None
    certificate: Certificate

    @property
    def passed(self) -> bool:
        return self.certificate.passed


@dataclass(frozen=True)
class RigiditySolution:
    names: tuple[str, ...]
    sum_c1sq: Fraction
    sum_c2: Fraction
    Kf2: Fraction
    ef: Fraction
    flagged: bool = False

    @property
    def integral(self) -> bool:
        return self.Kf2.denominator == 1 and self.ef.denominator == 1

    def render(self) -> str:
        line = (f"{{{', '.join(self.names)}}} sum_c1sq={fmt(self.sum_c1sq)} "
                f"sum_c2={fmt(self.sum_c2)} K2={fmt(self.Kf2)} e={fmt(self.ef)} "
                f"integral={'yes' if self.integral else 'no'}")
        if self.flagged:
            line += "  [exceeds claimed bound]"
        return line


@dataclass(frozen=True)
class Catalog:
    entries: tuple[CatalogEntry, ...]

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, name: object) -> bool:
        try:
            self.lookup(str(name))
        except UnknownFiber:
            return False
        return True

    def lookup(self, name: str) -> CatalogEntry:
        for e in self.entries:
            if name == e.name or name in e.aliases:
                return e
        # case-insensitive, and bare type names match their bracketed form
        folded = {name.casefold(), f"[{name}]".casefold()}
        for e in self.entries:
            if e.name.casefold() in folded or any(a.casefold() in folded for a in e.aliases):
                return e
        pool = self.names() + [a for e in self.entries for a in e.aliases]
        raise UnknownFiber(name, difflib.get_close_matches(name, pool, n=3, cutoff=0.5))

    def smooth_reduction_entries(self) -> list[CatalogEntry]:
        return [e for e in self.entries if e.smooth_reduction and e.chern is not None]

    def chi_floor_check(self, names: Iterable[str] | None = None) -> ChiFloorReport:
        """Minimum chi over fibers with smooth reduction (optionally a subset)."""
        pool = self.smooth_reduction_entries()
        full = names is None
        if not full:
            wanted = [self.lookup(n).name for n in names]
            pool = [e for e in pool if e.name in wanted]
        if not pool:
            raise CatalogError("no fibers with smooth reduction selected")
        chis = sorted({e.chi for e in pool})
        low = chis[0]
        argmin = tuple(sorted(e.name for e in pool if e.chi == low))
        second = chis[1] if len(chis) > 1 else None
        checks = [Check("min chi", low, CHI_FLOOR)]
        if full:
            checks += [
                Check("floor attained", low, CHI_FLOOR, "=="),
                Check("argmin size", len(argmin), 1, "=="),
                Check("second chi", second if second is not None else 0, CHI_SECOND, "=="),
            ]
        cert = Certificate("chi floor of smooth-reduction fibers", tuple(checks),
                           (f"argmin={','.join(argmin)}",))
        return ChiFloorReport(low, argmin, second, cert)

    def extremal_delta_search(self, type_index: int) -> tuple[Fraction, tuple[str, ...]]:
        """Smallest nonzero ``delta_type_index`` over entries that carry delta data."""
        if type_index not in (0, 1):
            raise CatalogError("type index must be 0 or 1")
        vals = [(e.deltas[type_index], e.name) for e in self.entries
                if e.deltas is not None and e.deltas[type_index] != 0]
        if not vals:
            raise CatalogError(f"no entry has nonzero delta{type_index}")
        low = min(v for v, _ in vals)
        return low, tuple(sorted(n for v, n in vals if v == low))

    def rigidity_enumerate(
        self,
        fixed: CatalogEntry | str,
        chi_target: Fraction,
        min_others: int = 2,
        claimed_max_others: int | None = None,
    ) -> list[RigiditySolution]:
        """All multisets of smooth-reduction fibers completing ``chi_f = chi_target``.

        The fixed fiber contributes its own chi plus the modular lambda of a
        family whose only non-smooth-reduction fiber it is.  Solutions with
        more than ``claimed_max_others`` fibers are kept but flagged.
        """
        if isinstance(fixed, str):
            fixed = self.lookup(fixed)
        if fixed.deltas is None or fixed.chern is None:
            raise CatalogError(f"{fixed.name}: needs both delta data and Chern numbers")
        chi_target = Fraction(chi_target)
        if chi_target <= 0:
            raise CatalogError("chi target must be positive")
        m = genus2_modular(*fixed.deltas)
        remainder = chi_target - m.lambda_ - fixed.chi
        if remainder < 0:
            return []
        pool = sorted(self.smooth_reduction_entries(), key=lambda e: (e.chi, e.name))
        max_size = int(remainder / min(e.chi for e in pool)) if pool else 0

        found: list[tuple[CatalogEntry, ...]] = []

        def extend(start: int, left: Fraction, chosen: list[CatalogEntry]) -> None:
            if left == 0:
                found.append(tuple(chosen))
                return
            if len(chosen) == max_size:
                return
            for k in range(start, len(pool)):
                if pool[k].chi > left:
                    break
                chosen.append(pool[k])
                extend(k, left - pool[k].chi, chosen)
                chosen.pop()

        extend(0, remainder, [])
        out = []
        for combo in found:
            if len(combo) < min_others:
                continue
            c1 = sum((e.chern.c1sq for e in combo), Fraction(0))
            c2 = sum((e.chern.c2 for e in combo), Fraction(0))
            out.append(RigiditySolution(
                names=tuple(e.name for e in combo),
                sum_c1sq=c1,
                sum_c2=c2,
                Kf2=m.kappa + fixed.chern.c1sq + c1,
                ef=m.delta + fixed.chern.c2 + c2,
                flagged=claimed_max_others is not None and len(combo) > claimed_max_others,
            ))
        out.sort(key=lambda s: (len(s.names), s.names))
        return out
