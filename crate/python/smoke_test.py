#!/usr/bin/env python3
"""Smoke test for the tsquad_py extension module.

Build the module first:

    cargo build -p tsquad-python            # or --release

then run this script from anywhere inside the repository.
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path


def locate_extension() -> Path:
    root = Path(__file__).resolve().parent.parent
    names = ["libtsquad_py.so", "libtsquad_py.dylib", "tsquad_py.dll"]
    for profile in ("release", "debug"):
        for name in names:
            cand = root / "target" / profile / name
            if cand.exists():
                return cand
    sys.exit("extension not found; run `cargo build -p tsquad-python` first")


def import_module():
    built = locate_extension()
    staging = Path(tempfile.mkdtemp(prefix="tsquad_py_"))
    suffix = ".pyd" if built.suffix == ".dll" else ".so"
    shutil.copy2(built, staging / f"tsquad_py{suffix}")
    sys.path.insert(0, str(staging))
    import tsquad_py

    return tsquad_py


def main() -> None:
    ts = import_module()

    # jump operators on the closure of {2^-k} within [0, 1]
    q = ts.TimeScale.qscale(2.0)
    assert q.sigma(0.5) == 1.0
    assert q.rho(0.5) == 0.25
    assert q.sigma(0.0) == 0.0, "the accumulation point is right-dense"
    assert q.contains(2.0 ** -20)
    assert not q.contains(0.3)

    # verified enclosure reproduces the closed form 3/7 on the q-scale
    r = ts.integrate("t", "t^2", q, 0.0, 1.0, kind="delta", tol=1e-9)
    want_d, want_n = ts.qscale_oracle(2.0)
    assert math.isclose(want_d, 3.0 / 7.0)
    assert r.lower <= want_d <= r.upper
    assert r.width() < 1e-9
    assert not r.exact

    rn = ts.integrate("t", "t^2", q, 0.0, 1.0, kind="nabla", tol=1e-9)
    assert rn.lower <= want_n <= rn.upper
    assert math.isclose(rn.value / r.value, 2.0, rel_tol=1e-7)

    # exact finite sums on an integer grid
    z = ts.TimeScale.uniform(0.0, 3.0, 1.0)
    d = ts.integrate("t", "t^2", z, 0.0, 3.0, kind="delta")
    n = ts.integrate("t", "t^2", z, 0.0, 3.0, kind="nabla")
    assert d.value == 13.0 and d.exact
    assert n.value == 22.0 and n.exact

    # one-step closed form and identity residuals
    assert ts.single_step("t", "t^2", z, 2.0, kind="delta") == 2.0 * (9.0 - 4.0)
    res, budget = ts.transition_residual("t", "t^2", z, 0.0, 3.0, kind="delta")
    assert res == 0.0 and budget == 0.0
    res, _ = ts.by_parts_residual("t", "t^2", z, 0.0, 3.0, kind="nabla")
    assert res == 0.0
    res, _ = ts.substitution_check(
        "t", "t", "t^2", ts.TimeScale.points([1.0, 2.0, 3.0, 4.0]), 1.0, 4.0
    )
    assert res == 0.0

    # expressions and scale grammar round-trip
    e = ts.Expr("t^3 + 2*t")
    assert e.eval(2.0) == 12.0
    assert e.differentiate().eval(1.0) == 5.0
    u = ts.TimeScale("union(points(-1); interval(0, 1))")
    assert u.rho(0.0) == -1.0 and u.sigma(0.25) == 0.25

    # errors surface as Python exceptions
    try:
        ts.integrate("t", "-t", z, 0.0, 3.0)
    except ValueError as exc:
        assert "increasing" in str(exc)
    else:
        raise AssertionError("decreasing integrator must be rejected")

    print("smoke test passed")


if __name__ == "__main__":
    main()
