"""Index and Chern-number formulas for buildings, with additivity audits.

For a building with glued Euler characteristic chi, total relative Chern
number c1 and external punctures z with constraints c_z,

    total CZ index   mu(b; c) = sum_{z pos} mu(gamma_z; -c_z cut)
                              - sum_{z neg} mu(gamma_z; +c_z cut)
    Fredholm index   ind(b; c) = -chi + 2 c1 + mu(b; c)
    normal Chern     c_N(b; c) = c1 - chi + sum_{z pos} alpha_minus(gamma_z; -c_z)
                               - sum_{z neg} alpha_plus(gamma_z; +c_z)

and for connected buildings the three are tied together by

    2 c_N = ind - 2 + 2 genus + #(even constrained punctures),

which is asserted (never merely reported).  Additivity over connected
components holds with one breaking-parity term per breaking pair and one
unit per nodal *point* (two per stored nodal pair):

    ind(b; c) = sum_i ind(b_i; c_i) + 2 #nodal_pairs
    c_N(b; c) = sum_i c_N(b_i; c_i) + sum_pairs parity(gamma) + 2 #nodal_pairs

Disconnected buildings are accepted by ind/c_N (chi sums over pieces);
arithmetic genus, and hence the displayed identity, needs connectedness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .buildings import (
    Building,
    Site,
    arithmetic_genus,
    detach_component,
    euler_char,
    is_connected,
)
from .errors import BuildingError, IncompleteInputError, InconsistentDataError, InternalCheckError
from .orbits import Catalog

ConstraintMap = dict[Site, float]


def resolve_constraints(building: Building, constraints: ConstraintMap | None) -> ConstraintMap:
    """Constraints for every external puncture: inline values overridden by
    the supplied map (whose keys must be external sites)."""
    sites = building.external_sites()
    out = {site: building.puncture(site).constraint for site in sites}
    if constraints:
        site_set = set(sites)
        for site, value in constraints.items():
            if site not in site_set:
                raise BuildingError(f"constraint keyed by non-external site {site}")
            if value < 0:
                raise BuildingError(f"constraint at {site} must be >= 0, got {value}")
            out[site] = float(value)
    return out


def _threshold(sign: int, constraint: float) -> float:
    # positive punctures are cut at -c, negative punctures at +c
    return -constraint if sign == 1 else constraint


def cz_total(catalog: Catalog, building: Building,
             constraints: ConstraintMap | None = None) -> int:
    cs = resolve_constraints(building, constraints)
    total = 0
    for site, c in cs.items():
        p = building.puncture(site)
        mu = catalog.cz_index(p.orbit, _threshold(p.sign, c)).mu_cz
        total += mu if p.sign == 1 else -mu
    return total


def fredholm_index(catalog: Catalog, building: Building,
                   constraints: ConstraintMap | None = None) -> int:
    c1 = sum(c.rel_c1 for c in building.components)
    return -euler_char(building) + 2 * c1 + cz_total(catalog, building, constraints)


def puncture_parities(catalog: Catalog, building: Building,
                      constraints: ConstraintMap | None = None
                      ) -> tuple[tuple[Site, ...], tuple[Site, ...]]:
    """External punctures partitioned by constrained parity (even, odd)."""
    cs = resolve_constraints(building, constraints)
    gamma0, gamma1 = [], []
    for site in sorted(cs):
        p = building.puncture(site)
        parity = catalog.cz_index(p.orbit, _threshold(p.sign, cs[site])).parity
        (gamma0 if parity == 0 else gamma1).append(site)
    return tuple(gamma0), tuple(gamma1)


def normal_chern(catalog: Catalog, building: Building,
                 constraints: ConstraintMap | None = None) -> int:
    cs = resolve_constraints(building, constraints)
    c1 = sum(c.rel_c1 for c in building.components)
    alpha_sum = 0
    for site, c in cs.items():
        p = building.puncture(site)
        if p.sign == 1:
            alpha_sum += catalog.alpha(p.orbit, _threshold(1, c), "minus")
        else:
            alpha_sum -= catalog.alpha(p.orbit, _threshold(-1, c), "plus")
    cn = c1 - euler_char(building) + alpha_sum
    if is_connected(building):
        ind = fredholm_index(catalog, building, constraints)
        genus = arithmetic_genus(building)
        gamma0, _ = puncture_parities(catalog, building, constraints)
        if 2 * cn != ind - 2 + 2 * genus + len(gamma0):
            raise InternalCheckError(
                f"normal Chern number {cn} violates 2c_N = ind - 2 + 2g + #even "
                f"(ind={ind}, g={genus}, #even={len(gamma0)})"
            )
    return cn


@dataclass(frozen=True)
class DefectReport:
    """Asymptotic defects of a nontrivial component under given constraints."""

    per_puncture: tuple[tuple[Site, int], ...]
    total: int
    wind_pi: int  # supplied or implied by c_N - total defect


def defect(catalog: Catalog, building: Building, comp_id: str,
           constraints: ConstraintMap | None = None) -> DefectReport | None:
    """Per-puncture |extremal winding - controlling winding| for one component.

    The component is taken with its induced constraints (breaking punctures
    at zero).  Trivial and constant components have no defect; returns None.
    When the component declares wind_pi, wind_pi + total defect must equal its
    normal Chern number; otherwise the implied wind_pi must be nonnegative.
    """
    comp = building.component(comp_id)
    if comp.kind != "nontrivial":
        return None
    piece, induced = detach_component(building, comp_id)
    if constraints:
        external = set(building.external_sites())
        for site, value in constraints.items():
            if site in induced and site in external:
                induced[site] = float(value)
    missing = [site for site in piece.external_sites()
               if piece.puncture(site).controlling_winding is None]
    if missing:
        raise IncompleteInputError(
            f"component {comp_id!r} lacks controlling windings at {missing}",
            fields=[f"{site[0]}.punctures[{site[1]}].controlling_winding" for site in missing],
        )
    per = []
    total = 0
    for site in piece.external_sites():
        p = piece.puncture(site)
        c = induced[site]
        if p.sign == 1:
            extremal = catalog.alpha(p.orbit, _threshold(1, c), "minus")
        else:
            extremal = catalog.alpha(p.orbit, _threshold(-1, c), "plus")
        d = abs(extremal - p.controlling_winding)
        per.append((site, d))
        total += d
    cn = normal_chern(catalog, piece, induced)
    if comp.wind_pi is not None:
        if comp.wind_pi + total != cn:
            raise InconsistentDataError(
                f"component {comp_id!r}: wind_pi {comp.wind_pi} + defect {total} "
                f"!= c_N {cn}"
            )
        wind_pi = comp.wind_pi
    else:
        wind_pi = cn - total
        if wind_pi < 0:
            raise InconsistentDataError(
                f"component {comp_id!r}: defect {total} exceeds c_N {cn}, "
                "forcing wind_pi < 0"
            )
    return DefectReport(per_puncture=tuple(per), total=total, wind_pi=wind_pi)


@dataclass(frozen=True)
class ComponentReport:
    component: str
    induced_constraints: tuple[tuple[Site, float], ...]
    index: int
    c_n: int
    defect_total: int | None
    wind_pi_consistent: bool


@dataclass(frozen=True)
class AdditivityReport:
    index_total: int
    index_component_sum: int
    c_n_total: int
    c_n_component_sum: int
    breaking_parity_sum: int
    nodal_points: int

    @property
    def index_ok(self) -> bool:
        return self.index_total == self.index_component_sum + self.nodal_points

    @property
    def c_n_ok(self) -> bool:
        return self.c_n_total == (
            self.c_n_component_sum + self.breaking_parity_sum + self.nodal_points
        )


def component_reports(catalog: Catalog, building: Building,
                      constraints: ConstraintMap | None = None) -> list[ComponentReport]:
    cs = resolve_constraints(building, constraints)
    out = []
    for comp in sorted(building.components, key=lambda c: c.id):
        piece, induced = detach_component(building, comp.id)
        for site in induced:
            if site in cs:
                induced[site] = cs[site]
        ind = fredholm_index(catalog, piece, induced)
        cn = normal_chern(catalog, piece, induced)
        defect_total = None
        consistent = True
        if comp.kind == "nontrivial":
            try:
                report = defect(catalog, building, comp.id, constraints)
                defect_total = report.total
            except IncompleteInputError:
                pass
            except InconsistentDataError:
                consistent = False
        out.append(
            ComponentReport(
                component=comp.id,
                induced_constraints=tuple(sorted(induced.items())),
                index=ind,
                c_n=cn,
                defect_total=defect_total,
                wind_pi_consistent=consistent,
            )
        )
    return out


def verify_additivity(catalog: Catalog, building: Building,
                      constraints: ConstraintMap | None = None) -> AdditivityReport:
    """Check index and c_N additivity over components exactly; mismatches are
    internal errors (these are theorems, not data checks)."""
    reports = component_reports(catalog, building, constraints)
    parity_sum = 0
    for pos_site, _ in building.breaking_pairs:
        parity_sum += catalog.parity(building.puncture(pos_site).orbit)
    report = AdditivityReport(
        index_total=fredholm_index(catalog, building, constraints),
        index_component_sum=sum(r.index for r in reports),
        c_n_total=normal_chern(catalog, building, constraints),
        c_n_component_sum=sum(r.c_n for r in reports),
        breaking_parity_sum=parity_sum,
        nodal_points=2 * len(building.nodal_pairs),
    )
    if not report.index_ok:
        raise InternalCheckError(
            f"index additivity failed: {report.index_total} != "
            f"{report.index_component_sum} + {report.nodal_points}"
        )
    if not report.c_n_ok:
        raise InternalCheckError(
            f"c_N additivity failed: {report.c_n_total} != "
            f"{report.c_n_component_sum} + {report.breaking_parity_sum} "
            f"+ {report.nodal_points}"
        )
    return report


@dataclass(frozen=True)
class IndexReport:
    """Everything the `index` CLI subcommand prints."""

    chi: int
    genus: int | None
    c1_total: int
    mu_total: int
    index: int
    c_n: int
    gamma0: tuple[Site, ...]
    gamma1: tuple[Site, ...]
    per_component: tuple[ComponentReport, ...]


def index_report(catalog: Catalog, building: Building,
                 constraints: ConstraintMap | None = None) -> IndexReport:
    gamma0, gamma1 = puncture_parities(catalog, building, constraints)
    return IndexReport(
        chi=euler_char(building),
        genus=arithmetic_genus(building) if is_connected(building) else None,
        c1_total=sum(c.rel_c1 for c in building.components),
        mu_total=cz_total(catalog, building, constraints),
        index=fredholm_index(catalog, building, constraints),
        c_n=normal_chern(catalog, building, constraints),
        gamma0=gamma0,
        gamma1=gamma1,
        per_component=tuple(component_reports(catalog, building, constraints)),
    )
