#!/usr/bin/env python3
"""Smoke test for the spindimer_py extension module.

Builds nothing itself: run `cargo build -p spindimer-py --release` first
(or `--profile dev`); the script finds the cdylib under target/ and
imports it from a scratch directory.
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        REPO / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libspindimer_py.so", "spindimer_py.dll", "libspindimer_py.dylib")
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit(
            "spindimer_py cdylib not found; run `cargo build -p spindimer-py --release` first"
        )
    scratch = Path(tempfile.mkdtemp(prefix="spindimer_py_"))
    shutil.copy2(built, scratch / "spindimer_py.so")
    sys.path.insert(0, str(scratch))
    import spindimer_py

    return spindimer_py


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def main():
    sd = load_module()
    checks = 0

    def check(name, ok):
        nonlocal checks
        checks += 1
        print(f"  {'ok' if ok else 'FAIL'}  {name}")
        if not ok:
            sys.exit(f"smoke test failed at: {name}")

    print("spindimer_py smoke test")

    # Families and supports.
    fams = sd.families()
    check("fifteen families", len(fams) == 15 and "zz" in fams and "0x" in fams)
    sup = sd.support("zz")
    check("zz support septet", len(sup) == 7 and "xy" in sup and "z0" in sup)

    # A zero-field XYZ Hamiltonian with a z-axis antisymmetric coupling.
    c = sd.Couplings(jx=-1.0, jy=-1.5, jz=-2.0, dz=1.8)
    h = c.hamiltonian()
    check("X-pattern entry J_x + J_y + 2iD_z", close(h[1][2].real, -2.5) and close(h[1][2].imag, 3.6))
    check("classified as the X family", sd.classify(h) == ["zz"])
    check("reduction label", sd.reduction("xy") == ("H⊗Y", "zz"))

    params, residual = c.project("zz")
    check("projection keeps all couplings", close(params["xy"], 1.8) and residual.jx == 0.0)

    # Spectra: block route equals the generic solver.
    s_fast = sd.family_spectrum(h, "zz")
    s_generic = sd.spectrum(h)
    check(
        "block spectrum matches Jacobi",
        all(close(a, b, 1e-12) for a, b in zip(s_fast, s_generic)),
    )

    # Thermal state sanity.
    rho = sd.gibbs(h, 0.5)
    trace = sum(rho[i][i].real for i in range(4))
    check("gibbs trace one", close(trace, 1.0, 1e-12))
    z = sd.partition_function(h, 0.5)
    check("partition function positive", z > 0.0)

    # Correlations on a nearly pure singlet (isotropic J at low T).
    iso = sd.Couplings(jx=1.0, jy=1.0, jz=1.0)
    rho_singlet = sd.gibbs(iso.hamiltonian(), 0.05)
    check("singlet concurrence", sd.concurrence(rho_singlet) > 0.99)
    sep, min_eig = sd.ppt_separable(rho_singlet)
    check("singlet is NPT", not sep and min_eig < -0.4)
    check("singlet discord", close(sd.discord(rho_singlet, "second"), 1.0, 1e-2))

    # Full report on the thermal X state.
    report = sd.correlation_report(rho)
    check(
        "report fields",
        0.0 <= report["concurrence"] <= 1.0
        and report["discord_first"]["winner"] in ("zero", "interior", "pi_half"),
    )
    check(
        "discord sides agree at zero field",
        close(report["discord_first"]["value"], report["discord_second"]["value"], 1e-8),
    )

    # Fast path against the dense oracle.
    q_fast = sd.discord(rho, "second")
    q_slow = sd.discord_oracle(rho, "second", 121)
    check("discord matches oracle", close(q_fast, q_slow, 1e-6))

    # Maximally mixed state: everything vanishes.
    eye4 = [[complex(0.25 if i == j else 0.0) for j in range(4)] for i in range(4)]
    check("mixed-state entropy", close(sd.von_neumann_entropy(eye4), 2.0, 1e-12))
    check("mixed-state deficit", sd.work_deficit(eye4, "first") < 1e-9)

    print(f"all {checks} checks passed")


if __name__ == "__main__":
    main()
