"""Regenerate the JSON fixtures under fixtures/ from first principles.

Run from the repository root:  python3 tools/make_fixtures.py

The shipped fixtures are byte-for-byte the canonical emission of the
serializers in hbcalc.cli, so the round-trip tests can compare exact bytes.
"""

import math
import pathlib
import sys

import numpy as np

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from hbcalc.buildings import Building, Component, Puncture
from hbcalc.cli import (
    _dump_json,
    building_to_data,
    catalog_to_data,
)
from hbcalc.orbits import Catalog, OrbitRef, SimpleOrbit
from hbcalc.spectral import FlowLoop

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "fixtures"


def rotation_loop(theta: float, n: int = 33) -> FlowLoop:
    """Constant rotation coefficients: spectrum 2*pi*m - theta, winding m."""
    return FlowLoop.constant(theta * np.eye(2), n=n)


def hyperbolic_loop(a: float = 1.0, n: int = 33) -> FlowLoop:
    """Constant diag(a, -a): even hyperbolic orbit with mu = 0."""
    return FlowLoop.constant(np.diag([a, -a]), n=n)


def rotating_axis_loop(half_turns: int, a: float = 0.7, n: int = 33) -> FlowLoop:
    """Hyperbolic stretch whose axis makes `half_turns` half-turns per period.

    The linearized flow is R(pi h t) exp(t diag(a, -a)); odd half-turn counts
    give odd hyperbolic orbits (negative monodromy eigenvalues, mu = h) and
    even counts give even hyperbolic orbits with shifted windings (mu = h).
    """
    ts = np.arange(n) / n
    phase = 2 * math.pi * half_turns * ts
    s = np.zeros((n, 2, 2))
    s[:, 0, 0] = math.pi * half_turns + a * np.sin(phase)
    s[:, 0, 1] = -a * np.cos(phase)
    s[:, 1, 0] = -a * np.cos(phase)
    s[:, 1, 1] = math.pi * half_turns - a * np.sin(phase)
    return FlowLoop(s)


def demo_catalog() -> Catalog:
    return Catalog([
        SimpleOrbit("hyp_even", 1.0, hyperbolic_loop()),
        SimpleOrbit("rot_m", 1.0, rotation_loop(-math.pi / 2)),
        SimpleOrbit("rot_p", 1.0, rotation_loop(math.pi / 2)),
    ])


def fixture_catalog() -> Catalog:
    return Catalog([
        SimpleOrbit("hyp2", 1.0, rotating_axis_loop(2)),
        SimpleOrbit("hyp_even", 1.0, hyperbolic_loop()),
        SimpleOrbit("hyp_odd", 1.0, rotating_axis_loop(1)),
        SimpleOrbit("rot3", 1.0, rotation_loop(5 * math.pi / 2)),
        SimpleOrbit("rot_m", 1.0, rotation_loop(-math.pi / 2)),
        SimpleOrbit("rot_p", 1.0, rotation_loop(math.pi / 2)),
    ])


def table_catalog() -> dict:
    # analytic rotation spectrum 2*pi*m - pi/2 (cover 1) and 2*pi*m - pi
    # (cover 2), listed as complete winding classes
    def entries(theta, count=2):
        return [
            [2 * math.pi * m - theta, m, 2] for m in range(-count, count + 1)
        ]

    return {
        "format": 1,
        "orbits": [
            {
                "id": "rot_tab",
                "period": 1.0,
                "model": {
                    "type": "table",
                    "covers": {"1": entries(math.pi / 2), "2": entries(math.pi)},
                },
                "hyperbolic": False,
            }
        ],
    }


def trivial_cylinder_building() -> Building:
    orbit = OrbitRef("hyp_even", 1)
    return Building(
        components=(
            Component(
                "cyl",
                0,
                (Puncture(1, orbit), Puncture(-1, orbit)),
                kind="trivial",
            ),
        )
    )


def figure3_building() -> Building:
    """Two index-1 nicely embedded components joined along an even simple
    breaking orbit, with flanking trivial cylinders over the odd ends."""
    rp, rm, he = OrbitRef("rot_p"), OrbitRef("rot_m"), OrbitRef("hyp_even")

    def tcyl(cid, orbit):
        return Component(cid, 0, (Puncture(1, orbit), Puncture(-1, orbit)), kind="trivial")

    return Building(
        components=(
            tcyl("cyl_top", rp),
            Component(
                "main_top",
                0,
                (
                    Puncture(1, rp, controlling_winding=0),
                    Puncture(-1, he, controlling_winding=0),
                ),
                kind="nontrivial",
                wind_pi=0,
                image_class="west",
            ),
            Component(
                "main_bot",
                0,
                (
                    Puncture(1, he, controlling_winding=0),
                    Puncture(-1, rm, controlling_winding=0),
                ),
                kind="nontrivial",
                wind_pi=0,
                image_class="east",
            ),
            tcyl("cyl_bot", rm),
        ),
        breaking_pairs=(
            (("main_top", 0), ("cyl_top", 1)),
            (("main_bot", 0), ("main_top", 1)),
            (("cyl_bot", 0), ("main_bot", 1)),
        ),
    )


def oddbreak_building() -> Building:
    """Mutant of the broken-pair configuration whose breaking orbit is odd;
    component data stays self-consistent (c_N = 0, extremal windings)."""
    h2, rp, he = OrbitRef("hyp2"), OrbitRef("rot_p"), OrbitRef("hyp_even")
    return Building(
        components=(
            Component(
                "main_top",
                0,
                (
                    Puncture(1, h2, controlling_winding=1),
                    Puncture(-1, rp, controlling_winding=1),
                ),
                kind="nontrivial",
                wind_pi=0,
                image_class="west",
            ),
            Component(
                "main_bot",
                0,
                (
                    Puncture(1, rp, controlling_winding=0),
                    Puncture(-1, he, controlling_winding=0),
                ),
                kind="nontrivial",
                wind_pi=0,
                image_class="east",
            ),
        ),
        breaking_pairs=((("main_bot", 0), ("main_top", 1)),),
    )


def demo_asymptotics() -> dict:
    puncture = {"constraint": 0.0, "orbit": {"k": 1, "simple": "rot_p"}, "sign": "+"}
    return {"format": 1, "punctures": [puncture, dict(puncture)], "rel_c1": 0}


def main() -> None:
    FIXTURES.mkdir(exist_ok=True)
    files = {
        "catalog_demo.json": catalog_to_data(demo_catalog()),
        "catalog_fixture.json": catalog_to_data(fixture_catalog()),
        "catalog_table.json": table_catalog(),
        "building_cylinder.json": building_to_data(trivial_cylinder_building()),
        "building_figure3.json": building_to_data(figure3_building()),
        "building_fig3_oddbreak.json": building_to_data(oddbreak_building()),
        "asymptotics_demo.json": demo_asymptotics(),
    }
    for name, payload in sorted(files.items()):
        path = FIXTURES / name
        path.write_text(_dump_json(payload), encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
