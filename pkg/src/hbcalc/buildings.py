"""Generalized holomorphic buildings as combinatorial objects, plus surgery.

A building is a list of components (genus, punctures, relative Chern datum,
kind flags) together with breaking pairs and nodal pairs.  Punctures are
addressed by site (component id, puncture index); a breaking pair joins a
positive puncture to a negative puncture over the same orbit with both
constraints zero, and nodal pairs join components at anonymous interior
points (only their count ever enters a formula).  Decorations and level
structure are deliberately not modeled: every invariant computed here is
independent of them.

Buildings are immutable; surgery (disjoint union, adding a node, gluing
punctures, augmenting by trivial cylinders, collapsing to the core,
extracting subbuildings) returns new values.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable

from .errors import BuildingError, NoCoreError
from .orbits import OrbitRef

Site = tuple[str, int]
BreakingPair = tuple[Site, Site]  # positive site first
NodalPair = tuple[str, str]

KINDS = ("nontrivial", "trivial", "constant")


@dataclass(frozen=True)
class Puncture:
    """A puncture of a component: sign, asymptotic orbit, constraint, and the
    optional winding of the controlling eigenfunction of the curve end."""

    sign: int
    orbit: OrbitRef
    constraint: float = 0.0
    controlling_winding: int | None = None

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise BuildingError(f"puncture sign must be +1 or -1, got {self.sign}")
        if self.constraint < 0:
            raise BuildingError(f"constraint must be >= 0, got {self.constraint}")


@dataclass(frozen=True)
class Component:
    id: str
    genus: int
    punctures: tuple[Puncture, ...]
    rel_c1: int = 0
    kind: str = "nontrivial"
    wind_pi: int | None = None
    image_class: str | None = None

    def __post_init__(self):
        if not self.id:
            raise BuildingError("component id must be nonempty")
        if self.genus < 0:
            raise BuildingError(f"component {self.id!r}: genus must be >= 0")
        if self.kind not in KINDS:
            raise BuildingError(f"component {self.id!r}: unknown kind {self.kind!r}")
        if self.wind_pi is not None and self.wind_pi < 0:
            raise BuildingError(f"component {self.id!r}: wind_pi must be >= 0")
        if self.kind == "constant":
            if self.punctures:
                raise BuildingError(f"constant component {self.id!r} cannot have punctures")
        if self.kind == "trivial":
            if self.rel_c1 != 0:
                raise BuildingError(f"trivial component {self.id!r} must have rel_c1 = 0")
            simples = {p.orbit.simple for p in self.punctures}
            if len(simples) > 1:
                raise BuildingError(
                    f"trivial component {self.id!r} has punctures over distinct "
                    f"simple orbits {sorted(simples)}"
                )
            if self.punctures:
                if not any(p.sign > 0 for p in self.punctures) or not any(
                    p.sign < 0 for p in self.punctures
                ):
                    raise BuildingError(
                        f"nonconstant trivial component {self.id!r} needs at least one "
                        "positive and one negative puncture"
                    )
            else:
                raise BuildingError(
                    f"trivial component {self.id!r} has no punctures; declare it constant"
                )

    def signed_sites(self, sign: int) -> list[int]:
        return [i for i, p in enumerate(self.punctures) if p.sign == sign]


def is_trivial_cylinder(component: Component) -> bool:
    """Trivial kind, genus 0, exactly one positive and one negative puncture
    over the same cover of the same simple orbit."""
    if component.kind != "trivial" or component.genus != 0:
        return False
    if len(component.punctures) != 2:
        return False
    a, b = component.punctures
    return a.sign == -b.sign and a.orbit == b.orbit


@dataclass(frozen=True)
class Building:
    components: tuple[Component, ...]
    breaking_pairs: tuple[BreakingPair, ...] = ()
    nodal_pairs: tuple[NodalPair, ...] = ()

    def __post_init__(self):
        by_id = {}
        for comp in self.components:
            if comp.id in by_id:
                raise BuildingError(f"duplicate component id {comp.id!r}")
            by_id[comp.id] = comp
        seen_sites: set[Site] = set()
        for pair in self.breaking_pairs:
            pos_site, neg_site = pair
            pos = self._puncture_checked(by_id, pos_site)
            neg = self._puncture_checked(by_id, neg_site)
            if pos.sign != 1 or neg.sign != -1:
                raise BuildingError(
                    f"breaking pair {pair} must join a positive puncture to a negative one"
                )
            if pos.orbit != neg.orbit:
                raise BuildingError(
                    f"breaking pair {pair} joins distinct orbits "
                    f"{pos.orbit} and {neg.orbit}"
                )
            if pos.constraint != 0.0 or neg.constraint != 0.0:
                raise BuildingError(
                    f"breaking pair {pair} has a nonzero constraint; breaking "
                    "punctures are unconstrained"
                )
            for site in pair:
                if site in seen_sites:
                    raise BuildingError(f"puncture {site} appears in two breaking pairs")
                seen_sites.add(site)
        for pair in self.nodal_pairs:
            for cid in pair:
                if cid not in by_id:
                    raise BuildingError(f"nodal pair {pair} references unknown component {cid!r}")

    @staticmethod
    def _puncture_checked(by_id, site: Site) -> Puncture:
        cid, idx = site
        if cid not in by_id:
            raise BuildingError(f"site {site} references unknown component {cid!r}")
        punctures = by_id[cid].punctures
        if not 0 <= idx < len(punctures):
            raise BuildingError(f"site {site} is out of range for component {cid!r}")
        return punctures[idx]

    # --- lookups ---------------------------------------------------------

    def component(self, cid: str) -> Component:
        for comp in self.components:
            if comp.id == cid:
                return comp
        raise BuildingError(f"unknown component {cid!r}")

    def has_component(self, cid: str) -> bool:
        return any(c.id == cid for c in self.components)

    def puncture(self, site: Site) -> Puncture:
        return self.component(site[0]).punctures[site[1]]

    def breaking_sites(self) -> set[Site]:
        out: set[Site] = set()
        for pos_site, neg_site in self.breaking_pairs:
            out.add(pos_site)
            out.add(neg_site)
        return out

    def external_sites(self) -> list[Site]:
        """Sites of punctures not swallowed by breaking pairs, sorted."""
        internal = self.breaking_sites()
        out = [
            (comp.id, i)
            for comp in self.components
            for i in range(len(comp.punctures))
            if (comp.id, i) not in internal
        ]
        return sorted(out)

    def node_endpoints(self, cid: str) -> int:
        return sum((a == cid) + (b == cid) for a, b in self.nodal_pairs)

    def pair_partner(self, site: Site) -> Site | None:
        for pos_site, neg_site in self.breaking_pairs:
            if site == pos_site:
                return neg_site
            if site == neg_site:
                return pos_site
        return None

    def canonical(self) -> "Building":
        """Components sorted by id, pairs sorted; used for emission and equality."""
        return Building(
            components=tuple(sorted(self.components, key=lambda c: c.id)),
            breaking_pairs=tuple(sorted(self.breaking_pairs)),
            nodal_pairs=tuple(sorted(tuple(sorted(p)) for p in self.nodal_pairs)),
        )

    def same_as(self, other: "Building") -> bool:
        return self.canonical() == other.canonical()


# --- topological invariants ------------------------------------------------


def euler_char(building: Building) -> int:
    """Euler characteristic of the glued compactified surface.

    Per component 2 - 2g - (#punctures + #node endpoints); glued circles have
    Euler characteristic zero, so breaking pairs do not change the sum.
    """
    total = 0
    for comp in building.components:
        total += 2 - 2 * comp.genus - (len(comp.punctures) + building.node_endpoints(comp.id))
    return total


def component_graph(building: Building) -> dict[str, set[str]]:
    adj: dict[str, set[str]] = {c.id: set() for c in building.components}
    for pos_site, neg_site in building.breaking_pairs:
        adj[pos_site[0]].add(neg_site[0])
        adj[neg_site[0]].add(pos_site[0])
    for a, b in building.nodal_pairs:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _reachable(adj: dict[str, set[str]], start: str) -> set[str]:
    seen = {start}
    stack = [start]
    while stack:
        for nxt in adj[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def is_connected(building: Building) -> bool:
    if not building.components:
        return True
    adj = component_graph(building)
    return len(_reachable(adj, building.components[0].id)) == len(adj)


def connected_component_ids(building: Building) -> list[list[str]]:
    adj = component_graph(building)
    out = []
    remaining = set(adj)
    while remaining:
        start = min(remaining)
        piece = _reachable(adj, start)
        remaining -= piece
        out.append(sorted(piece))
    return out


def arithmetic_genus(building: Building) -> int:
    """Genus of the glued compactified surface of a connected building."""
    if not is_connected(building):
        raise BuildingError("arithmetic genus is defined for connected buildings only")
    chi = euler_char(building)
    n_ext = len(building.external_sites())
    num = 2 - n_ext - chi
    if num % 2 != 0:
        raise BuildingError(
            f"parity mismatch: chi={chi}, external punctures={n_ext} "
            "(impossible for a well-formed building)"
        )
    return num // 2


def assert_stability(building: Building) -> None:
    """Constant components must have negative punctured Euler characteristic."""
    for comp in building.components:
        if comp.kind != "constant":
            continue
        chi_dot = 2 - 2 * comp.genus - building.node_endpoints(comp.id)
        if chi_dot >= 0:
            raise BuildingError(
                f"constant component {comp.id!r} is unstable: chi = {chi_dot} >= 0"
            )


def _trivial_breaking_unchecked(building: Building, pair_index: int) -> bool:
    pos_site, neg_site = building.breaking_pairs[pair_index]
    trimmed = replace(
        building,
        breaking_pairs=tuple(
            p for i, p in enumerate(building.breaking_pairs) if i != pair_index
        ),
    )
    adj = component_graph(trimmed)
    side = _reachable(adj, pos_site[0])
    if neg_site[0] in side:
        return False  # deletion does not disconnect
    other = _reachable(adj, neg_site[0])
    for piece in (side, other):
        if all(is_trivial_cylinder(trimmed.component(cid)) for cid in piece):
            return True
    return False


def is_trivial_breaking(building: Building, pair_index: int) -> bool:
    """A breaking pair is trivial if deleting its edge splits the graph and one
    side consists entirely of trivial cylinders."""
    if not 0 <= pair_index < len(building.breaking_pairs):
        raise BuildingError(f"breaking pair index {pair_index} out of range")
    if not is_connected(building):
        raise BuildingError("trivial-breaking test needs a connected building")
    return _trivial_breaking_unchecked(building, pair_index)


# --- surgery ----------------------------------------------------------------


def _fresh_id(building: Building, stem: str) -> str:
    taken = {c.id for c in building.components}
    n = 1
    while f"{stem}{n}" in taken:
        n += 1
    return f"{stem}{n}"


def disjoint_union(a: Building, b: Building) -> Building:
    """Concatenation; clashing component ids from `b` are renamed deterministically."""
    taken = {c.id for c in a.components}
    rename: dict[str, str] = {}
    for comp in b.components:
        new = comp.id
        n = 1
        while new in taken:
            new = f"{comp.id}~{n}"
            n += 1
        taken.add(new)
        rename[comp.id] = new

    def site(s: Site) -> Site:
        return (rename[s[0]], s[1])

    return Building(
        components=a.components
        + tuple(replace(c, id=rename[c.id]) for c in b.components),
        breaking_pairs=a.breaking_pairs
        + tuple((site(p), site(n)) for p, n in b.breaking_pairs),
        nodal_pairs=a.nodal_pairs
        + tuple((rename[x], rename[y]) for x, y in b.nodal_pairs),
    )


def add_node(building: Building, comp_a: str, comp_b: str) -> Building:
    """Append one nodal pair (comp_a may equal comp_b); chi drops by exactly 2."""
    for cid in (comp_a, comp_b):
        if not building.has_component(cid):
            raise BuildingError(f"unknown component {cid!r}")
    return replace(building, nodal_pairs=building.nodal_pairs + ((comp_a, comp_b),))


def glue_punctures(building: Building, pos_site: Site, neg_site: Site) -> Building:
    """Append a breaking pair joining two external punctures.

    They must have opposite signs, identical orbits and zero constraints, and
    neither may already be glued.
    """
    pos = building.puncture(pos_site)
    neg = building.puncture(neg_site)
    if pos.sign != 1 or neg.sign != -1:
        raise BuildingError("gluing needs a positive site first and a negative site second")
    if pos.orbit != neg.orbit:
        raise BuildingError(
            f"cannot glue punctures over distinct orbits {pos.orbit} and {neg.orbit}"
        )
    if pos.constraint != 0.0 or neg.constraint != 0.0:
        raise BuildingError("cannot glue constrained punctures (constraints must be 0)")
    taken = building.breaking_sites()
    for site in (pos_site, neg_site):
        if site in taken:
            raise BuildingError(f"puncture {site} is already glued")
    return replace(building, breaking_pairs=building.breaking_pairs + ((pos_site, neg_site),))


def _trivial_cylinder_over(building: Building, orbit: OrbitRef,
                           pos_constraint: float = 0.0,
                           neg_constraint: float = 0.0) -> Component:
    return Component(
        id=_fresh_id(building, "tcyl"),
        genus=0,
        punctures=(
            Puncture(sign=1, orbit=orbit, constraint=pos_constraint),
            Puncture(sign=-1, orbit=orbit, constraint=neg_constraint),
        ),
        rel_c1=0,
        kind="trivial",
    )


def augment(building: Building, site) -> Building:
    """Insert a trivial cylinder over an external puncture or a breaking pair.

    `site` is a (component id, puncture index) pair for the puncture case, or
    an integer index into breaking_pairs.  All of chi, genus, index and c_N
    are unchanged by this operation.
    """
    if isinstance(site, int):
        if not 0 <= site < len(building.breaking_pairs):
            raise BuildingError(f"breaking pair index {site} out of range")
        pos_site, neg_site = building.breaking_pairs[site]
        orbit = building.puncture(pos_site).orbit
        cyl = _trivial_cylinder_over(building, orbit)
        cyl_pos = (cyl.id, 0)
        cyl_neg = (cyl.id, 1)
        pairs = tuple(p for i, p in enumerate(building.breaking_pairs) if i != site)
        pairs += ((pos_site, cyl_neg), (cyl_pos, neg_site))
        return replace(
            building,
            components=building.components + (cyl,),
            breaking_pairs=pairs,
        )

    target_site: Site = (site[0], site[1])
    punct = building.puncture(target_site)
    if target_site in building.breaking_sites():
        raise BuildingError(f"puncture {target_site} is not external; augment at the pair")
    cyl = _trivial_cylinder_over(
        building,
        punct.orbit,
        pos_constraint=punct.constraint if punct.sign == 1 else 0.0,
        neg_constraint=punct.constraint if punct.sign == -1 else 0.0,
    )
    # the cylinder end matching the puncture's sign becomes the new external
    # puncture (inheriting the constraint); the opposite end glues to `site`,
    # whose constraint is reset to zero as a breaking puncture
    comps = []
    for comp in building.components:
        if comp.id != target_site[0]:
            comps.append(comp)
            continue
        new_puncts = list(comp.punctures)
        new_puncts[target_site[1]] = replace(punct, constraint=0.0)
        comps.append(replace(comp, punctures=tuple(new_puncts)))
    comps.append(cyl)
    if punct.sign == 1:
        new_pair: BreakingPair = (target_site, (cyl.id, 1))
    else:
        new_pair = ((cyl.id, 0), target_site)
    return Building(
        components=tuple(comps),
        breaking_pairs=building.breaking_pairs + (new_pair,),
        nodal_pairs=building.nodal_pairs,
    )


def core(building: Building) -> Building:
    """Collapse every trivial cylinder, splicing its two ends together.

    The result is the unique building the input augments; it exists iff no
    connected piece consists purely of trivial cylinders (a lone cylinder,
    a cycle of cylinders, or a self-glued cylinder has no core).
    """
    current = building
    while True:
        cylinders = sorted(
            c.id for c in current.components if is_trivial_cylinder(c)
        )
        if not cylinders:
            return current
        progressed = False
        for cid in cylinders:
            if current.node_endpoints(cid) > 0:
                continue  # augmentation never attaches nodes to its cylinders
            comp = current.component(cid)
            pos_idx = comp.signed_sites(1)[0]
            neg_idx = comp.signed_sites(-1)[0]
            pos_site: Site = (cid, pos_idx)
            neg_site: Site = (cid, neg_idx)
            up = current.pair_partner(pos_site)  # negative puncture above
            down = current.pair_partner(neg_site)  # positive puncture below
            if up is not None and up[0] == cid:
                continue  # self-glued cylinder: irreducible
            if up is None and down is None:
                continue  # standalone cylinder piece: irreducible
            pairs = [
                p
                for p in current.breaking_pairs
                if pos_site not in p and neg_site not in p
            ]
            comps = tuple(c for c in current.components if c.id != cid)
            if up is not None and down is not None:
                pairs.append((down, up))
                current = Building(
                    components=comps,
                    breaking_pairs=tuple(pairs),
                    nodal_pairs=current.nodal_pairs,
                )
            else:
                # one end external: its constraint moves to the severed partner
                if up is None:
                    outer = current.puncture(pos_site)
                    partner = down
                else:
                    outer = current.puncture(neg_site)
                    partner = up
                new_comps = []
                for c in comps:
                    if c.id != partner[0]:
                        new_comps.append(c)
                        continue
                    puncts = list(c.punctures)
                    puncts[partner[1]] = replace(
                        puncts[partner[1]], constraint=outer.constraint
                    )
                    new_comps.append(replace(c, punctures=tuple(puncts)))
                current = Building(
                    components=tuple(new_comps),
                    breaking_pairs=tuple(pairs),
                    nodal_pairs=current.nodal_pairs,
                )
            progressed = True
            break
        if not progressed:
            raise NoCoreError(
                "building has no core: a connected piece consists entirely of "
                "trivial cylinders"
            )


def subbuilding(building: Building, ids: Iterable[str]) -> tuple[Building, dict[Site, float]]:
    """Restrict to the named components.

    Breaking pairs with one endpoint outside become external punctures of the
    result; severed breaking punctures carry induced constraint 0 and
    inherited external punctures keep their stored constraints.  Returns the
    sub-building and the induced constraints keyed by external site.
    """
    keep = set(ids)
    for cid in keep:
        if not building.has_component(cid):
            raise BuildingError(f"unknown component {cid!r}")
    comps = tuple(c for c in building.components if c.id in keep)
    pairs = tuple(
        (p, n)
        for p, n in building.breaking_pairs
        if p[0] in keep and n[0] in keep
    )
    nodes = tuple(
        (a, b) for a, b in building.nodal_pairs if a in keep and b in keep
    )
    sub = Building(components=comps, breaking_pairs=pairs, nodal_pairs=nodes)
    induced = {site: sub.puncture(site).constraint for site in sub.external_sites()}
    return sub, induced


def detach_component(building: Building, cid: str) -> tuple[Building, dict[Site, float]]:
    """One component as a standalone finite energy surface.

    All breaking pairs touching it are severed (even pairs joining the
    component to itself) and node decorations are dropped; every puncture
    becomes external with its stored constraint, which is zero at severed
    breaking punctures.  This is the decomposition the index and Chern-number
    additivity formulas sum over.
    """
    comp = building.component(cid)
    piece = Building(components=(comp,))
    induced = {
        (cid, i): comp.punctures[i].constraint for i in range(len(comp.punctures))
    }
    return piece, induced


def set_constraints(building: Building, values: dict[Site, float]) -> Building:
    """Return a building whose inline puncture constraints are overridden at
    the given external sites."""
    if not values:
        return building
    external = set(building.external_sites())
    for site in values:
        if site not in external:
            raise BuildingError(f"constraint keyed by non-external site {site}")
    comps = []
    for comp in building.components:
        puncts = list(comp.punctures)
        changed = False
        for idx in range(len(puncts)):
            site = (comp.id, idx)
            if site in values:
                puncts[idx] = replace(puncts[idx], constraint=float(values[site]))
                changed = True
        comps.append(replace(comp, punctures=tuple(puncts)) if changed else comp)
    return replace(building, components=tuple(comps))


def maximal_trivial_subbuildings(building: Building) -> list[list[str]]:
    """Connected pieces of the set of trivial components (node edges ignored:
    trivial subbuildings cannot contain nodes)."""
    trivial_ids = {c.id for c in building.components if c.kind == "trivial"}
    adj: dict[str, set[str]] = {cid: set() for cid in trivial_ids}
    for pos_site, neg_site in building.breaking_pairs:
        if pos_site[0] in trivial_ids and neg_site[0] in trivial_ids:
            adj[pos_site[0]].add(neg_site[0])
            adj[neg_site[0]].add(pos_site[0])
    out = []
    remaining = set(trivial_ids)
    while remaining:
        start = min(remaining)
        piece = _reachable(adj, start)
        remaining -= piece
        out.append(sorted(piece))
    return out
