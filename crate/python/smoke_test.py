#!/usr/bin/env python3
"""Smoke test for the nilrad_py extension module.

Builds nothing itself: it loads the cdylib from target/release or
target/debug (run `cargo build -p nilrad-py` first, or install the module
with maturin and let the plain import win).
"""

import shutil
import sys
import tempfile
from fractions import Fraction
from pathlib import Path


def load_module():
    try:
        import nilrad_py  # an installed wheel takes precedence

        return nilrad_py
    except ImportError:
        pass
    root = Path(__file__).resolve().parent.parent
    for profile in ("release", "debug"):
        built = root / "target" / profile / "libnilrad_py.so"
        if built.exists():
            stage = Path(tempfile.mkdtemp(prefix="nilrad-py-"))
            shutil.copy2(built, stage / "nilrad_py.so")
            sys.path.insert(0, str(stage))
            import nilrad_py

            return nilrad_py
    sys.exit("nilrad_py not found; run `cargo build -p nilrad-py` first")


def frac(s):
    return Fraction(s)


def main():
    m = load_module()

    # Constructing a law by hand: the 3-dimensional Heisenberg algebra.
    h3 = m.Law(3)
    h3.set(1, 2, 3, 1)
    assert h3.dim == 3
    assert h3.support() == [(1, 2, 3)]
    assert h3.bracket([1, 0, 0], [0, 1, 0]) == ["0", "0", "1"]
    assert h3.is_jacobi()
    assert h3.descending_central_series() == [3, 1, 0]
    report = m.classify(h3, name="heisenberg")
    assert report["verdict"] == "EN", report
    assert report["evidence"] == "convex-solution", report

    # Serialization round-trips.
    again = m.Law.parse(h3.serialize())
    assert again.serialize() == h3.serialize()

    # Catalog access and the full pipeline on a soliton-backed entry.
    assert "1.17" in m.catalog_names()
    law117 = m.Law.catalog("1.17")
    assert law117.dim == 7 and len(law117.support()) == 9
    report = m.classify_catalog("1.17")
    assert report["verdict"] == "EN"
    assert report["evidence"] == "soliton-metric"
    assert report["soliton"]["cExact"] == "-65/94"
    assert report["dimDer"] == 11

    pre = m.pre_einstein_derivation(law117)
    assert pre["scale"] == "19/65"
    assert pre["diag"] == ["1", "1", "2", "3", "3", "4", "5"]
    assert pre["min"] == "65/94"
    assert pre["eigenvalueType"] == "(1<2<3<4<5; 2,1,2,1,1)"

    # A parametric family: Einstein on the special orbit, not at 0 or 1.
    curve = m.Law.catalog("3.1(i)")
    assert curve.param == "L"
    for value, verdict in [(2, "EN"), ("1/2", "EN"), (-1, "EN"), (0, "not-EN"), (1, "not-EN")]:
        report = m.classify_catalog("3.1(i)", param=value)
        assert report["verdict"] == verdict, (value, report["verdict"])
    at2 = curve.instantiate(2)
    g = m.gram(at2)
    assert g[0] == ["3", "1", "1", "1", "1", "-1"]
    assert m.nice(at2)["einstein"] is True

    # The nice verdict is basis-independent under relabeling and rescaling.
    moved = at2.permuted([2, 0, 1, 4, 3, 6, 5]).rescaled([1, -2, "1/3", 1, 5, 1, "7/2"])
    assert m.nice(moved)["einstein"] is True

    # Exact moment map: its trace is minus the squared norm.
    mm = m.moment_map_matrix(law117)
    trace = sum(frac(mm[i][i]) for i in range(7))
    assert trace == -frac(m.norm_squared(law117))

    # A degeneration that jumps the derivation dimension settles 2.2.
    cert = m.degeneration(m.Law.catalog("2.2"))
    assert cert is not None
    assert cert["original"]["dimDer"] == 15
    assert cert["limit"]["dimDer"] == 17

    # The bundled irrational representative satisfies the soliton equation.
    fixture = m.catalog_fixture("1.17")
    assert fixture is not None
    verdict = m.soliton_check(fixture)
    assert verdict["soliton"] is True
    assert verdict["route"] == "exact-diagonal"
    assert abs(verdict["c"] + 65 / 94) < 1e-10

    # Polynomial system export.
    system = m.soliton_system([1, 1, 2, 3, 3, 4, 5])
    assert "# jacobi" in system and "= -23/47" in system

    # Catalog summary table.
    rows = m.table()
    assert len(rows) > 100
    computed = [r for r in rows if r["source"] == "computed"]
    assert computed and all(r["flags"] == [] for r in computed)

    # Errors surface as exceptions.
    try:
        m.Law.catalog("no-such-entry")
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError for an unknown entry")

    print("smoke test: OK")


if __name__ == "__main__":
    main()
