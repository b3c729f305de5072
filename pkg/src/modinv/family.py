"""Family files: a genus-2 fibration described by its singular fibers.

Format::

    family <name>
    genus <int>
    fiber <catalog-name | path-to-fiber-file>     # repeated

Fibers not listed are smooth.  A fiber given by path contributes only its
delta vector (its Chern numbers are unknown), in which case the relative
invariants are not assembled.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .catalog import Catalog, UnknownFiber, default_catalog
from .certificate import Certificate
from .fibergraph import FiberDeltas, UnsupportedGenus, delta_components, load_fiber
from .invariants import (
    ChernNumbers,
    InvariantError,
    ModularInvariants,
    RelativeInvariants,
    family_deltas,
    genus2_bound_certificate,
    genus2_modular,
    relative_invariants,
)
from .rational import fmt


class FamilyFormatError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyFiber:
    label: str
    deltas: FiberDeltas
    chern: ChernNumbers | None


@dataclass(frozen=True)
class Family:
    name: str
    genus: int
    fibers: tuple[FamilyFiber, ...]


@dataclass(frozen=True)
class FamilyReport:
    family: Family
    modular: ModularInvariants
    certificate: Certificate | None
    relative: RelativeInvariants | None

    def lines(self) -> list[tuple[str, str]]:
        m = self.modular
        out = [("family", self.family.name), ("genus", str(self.family.genus))]
        for f in self.family.fibers:
            out.append(("fiber", f"{f.label} {f.deltas}"))
        out += [(k, fmt(v)) for k, v in m.as_dict().items()]
        if self.relative is not None:
            r = self.relative
            out += [("K_f^2", fmt(r.Kf2)), ("e_f", fmt(r.ef)), ("chi_f", fmt(r.chif))]
        return out


def _resolve_fiber(token: str, base: Path | None, catalog: Catalog, where: str) -> FamilyFiber:
    try:
        e = catalog.lookup(token)
    except UnknownFiber as exc:
        path = Path(token)
        if base is not None and not path.is_absolute():
            path = base / path
        if not path.is_file():
            raise FamilyFormatError(f"{where}: {exc} and no such fiber file") from None
        g = load_fiber(path)
        return FamilyFiber(g.name or token, delta_components(g), None)
    if e.deltas is None:
        raise FamilyFormatError(f"{where}: catalog entry {e.name} has no delta data")
    return FamilyFiber(e.name, e.deltas, e.chern)


def parse_family(text: str, base: Path | None = None, catalog: Catalog | None = None,
                 source: str = "<family>") -> Family:
    catalog = catalog or default_catalog()
    name: str | None = None
    genus: int | None = None
    fibers: list[FamilyFiber] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{source}:{lineno}"
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if not rest:
            raise FamilyFormatError(f"{where}: {key!r} needs a value")
        if key == "family":
            name = rest
        elif key == "genus":
            try:
                genus = int(rest)
            except ValueError:
                raise FamilyFormatError(f"{where}: genus must be an integer") from None
            if genus != 2:
                raise UnsupportedGenus(f"{where}: only genus-2 families are supported (got {genus})")
        elif key == "fiber":
            fibers.append(_resolve_fiber(rest, base, catalog, where))
        else:
            raise FamilyFormatError(f"{where}: unknown keyword {key!r}")
    if name is None or genus is None:
        raise FamilyFormatError(f"{source}: 'family' and 'genus' lines are required")
    return Family(name, genus, tuple(fibers))


def load_family(path: str | Path, catalog: Catalog | None = None) -> Family:
    p = Path(path)
    return parse_family(p.read_text(encoding="utf-8"), base=p.parent, catalog=catalog, source=str(p))


def analyse_family(fam: Family) -> FamilyReport:
    d0, d1 = family_deltas(f.deltas for f in fam.fibers)
    m = genus2_modular(d0, d1)
    try:
        cert = genus2_bound_certificate(m)
    except InvariantError:
        cert = None
    rel = None
    if all(f.chern is not None for f in fam.fibers):
        rel = relative_invariants(m, [f.chern for f in fam.fibers])
    return FamilyReport(fam, m, cert, rel)

