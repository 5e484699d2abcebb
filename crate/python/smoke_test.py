#!/usr/bin/env python3
"""Smoke test for the witnesslab_py extension module.

Build the module first:

    cargo build -p witnesslab-py --release

then run this script from the repository root:

    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path


def import_extension():
    root = Path(__file__).resolve().parent.parent
    candidates = [
        root / "target" / "release" / "libwitnesslab_py.so",
        root / "target" / "debug" / "libwitnesslab_py.so",
        root / "target" / "release" / "libwitnesslab_py.dylib",
        root / "target" / "debug" / "libwitnesslab_py.dylib",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit("extension not built; run: cargo build -p witnesslab-py --release")
    stage = Path(tempfile.mkdtemp(prefix="witnesslab-py-"))
    shutil.copy2(built, stage / "witnesslab_py.so")
    sys.path.insert(0, str(stage))
    import witnesslab_py

    return witnesslab_py


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    wl = import_extension()
    print(f"witnesslab_py {wl.__version__}")

    # Two-qubit witness: spectrum {2, 1, 0}, one symmetric Kraus operator.
    w = wl.Witness("dist:2,2")
    approx(w.l_max(), 2.0)
    spectrum = w.spectrum()
    assert [m for _, m in spectrum] == [9, 6, 1], spectrum
    for (value, _), expect in zip(spectrum, [2.0, 1.0, 0.0]):
        approx(value, expect)
    assert w.kraus_counts() == (1, 1)

    # Bell state: concurrence 1/2 (projector) and 1/sqrt(2) (gap).
    h = 1 / math.sqrt(2)
    bell = [h, 0, 0, h]
    approx(w.concurrence(bell), 0.5)
    approx(wl.Witness("dist:2,2", "gap").concurrence(bell), h)

    # Product state: zero.
    approx(w.concurrence([0, 1, 0, 0]), 0.0)

    # Werner state at p = 1: bound 1/2 (half the Wootters value).
    p = 1.0
    psi_minus = [0, h, -h, 0]
    rho = [
        p * psi_minus[i] * psi_minus[j] + (1 - p) / 4 * (i == j)
        for i in range(4)
        for j in range(4)
    ]
    bound, y, singulars = w.mixed_bound(rho)
    approx(bound, 0.5)
    assert y == [1.0]
    roof = w.convex_roof_upper(rho, trials=2000, seed=1)
    assert roof >= bound - 1e-7, (roof, bound)
    approx(roof, 0.5, tol=5e-3)

    # Canonical forms.
    form, coeffs, nonent = wl.canonical_coefficients("dist:2,2", bell)
    assert form == "schmidt" and not nonent
    approx(coeffs[0], h)
    approx(coeffs[1], h)

    # Fermionic single Slater determinant: nonentangled.
    n = 4
    wmat = [0.0] * (n * n)
    wmat[0 * n + 1] = 0.5
    wmat[1 * n + 0] = -0.5
    form, coeffs, nonent = wl.canonical_coefficients("fermion:4", wmat)
    assert form == "slater" and nonent
    approx(coeffs[0], 0.5)

    # Bosonic witness spectrum {3, 1, 0} at n = 2.
    wb = wl.Witness("boson:2")
    for (value, _), expect in zip(wb.spectrum(), [3.0, 1.0, 0.0]):
        approx(value, expect)

    assert wl.composite_dim("dist:2,3,2") == 12
    assert wl.composite_dim("fermion:4") == 6

    print("smoke test: OK")


if __name__ == "__main__":
    main()
