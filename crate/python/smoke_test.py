#!/usr/bin/env python3
"""Smoke test for the bnsd_py extension module.

Build the module first, then run this script with the same interpreter
pyo3 linked against:

    cargo build --release -p bnsd-py
    python3 python/smoke_test.py

The script copies the built cdylib next to a temp directory under the
name Python expects, imports it, and exercises every exported call.
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        REPO / "target" / "release" / "libbnsd_py.so",
        REPO / "target" / "debug" / "libbnsd_py.so",
        REPO / "target" / "release" / "libbnsd_py.dylib",
        REPO / "target" / "debug" / "libbnsd_py.dylib",
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit("no built extension found; run `cargo build --release -p bnsd-py` first")
    newest = max(built, key=lambda p: p.stat().st_mtime)
    stage = Path(tempfile.mkdtemp(prefix="bnsd_py_"))
    shutil.copy2(newest, stage / "bnsd_py.so")
    sys.path.insert(0, str(stage))
    import bnsd_py

    return bnsd_py


CHECKS = 0


def check(name, ok, detail=""):
    global CHECKS
    CHECKS += 1
    if not ok:
        sys.exit(f"FAIL: {name} {detail}")
    print(f"PASS: {name}")


def main():
    m = load_module()
    root2 = math.sqrt(2.0)
    t_star_family = math.log(2.0) / 3.0

    ghz = m.ghz_state()
    check("GHZ coherence weight", abs(ghz.coherence_weight() - 0.5) < 1e-15)
    check("GHZ relative phase", abs(ghz.relative_phase()) < 1e-15)

    names = m.operator_names()
    check(
        "operator catalog",
        len(names) == 10 and "svetlichny" in names and "chsh-bipartition" in names,
        f"got {names}",
    )

    v = m.optimized_max("svetlichny", ghz, 1.0, 0.0)
    check("GHZ optimized |<S>| = 4*sqrt(2)", abs(v - 4.0 * root2) < 1e-12, f"got {v}")

    signed = m.expectation_value("svetlichny", ghz, 1.0, 0.0, theta_b=-math.pi / 4)
    check("signed <S> at the optimal angle", abs(signed + 4.0 * root2) < 1e-12, f"got {signed}")

    chsh = m.expectation_value("chsh-bipartition", ghz, 1.0, 0.0, theta_bc=math.pi / 4)
    check("signed bipartition CHSH", abs(chsh + 2.0 * root2) < 1e-12, f"got {chsh}")

    angle, beta, value = m.optimal_settings("svetlichny", ghz, 1.0, 0.0)
    check(
        "analytic optimizer settings",
        abs(angle + math.pi / 4) < 1e-12 and abs(beta + math.pi / 4) < 1e-12
        and abs(value + 4.0 * root2) < 1e-12,
        f"got {(angle, beta, value)}",
    )

    report = m.critical_time_report("p5", ghz, 1.0)
    check(
        "P5 death time ln(2)/3",
        abs(report["analytic_t"] - t_star_family) < 1e-10
        and abs(report["numeric_t"] - t_star_family) < 1e-8
        and not report["never_violated"],
        f"got {report}",
    )

    before = m.nonlocality_verdict(ghz, 1.0, 0.0)
    middle = m.nonlocality_verdict(ghz, 1.0, 0.18)
    after = m.nonlocality_verdict(ghz, 1.0, 0.5)
    check("verdict at t=0", all(before.values()), f"got {before}")
    check(
        "verdict between the death times",
        not middle["genuinely_tripartite"] and middle["generic"],
        f"got {middle}",
    )
    check("verdict after all deaths", not any(after.values()), f"got {after}")

    ch = m.DephasingChannel(1.0, t_star_family)
    check("channel gamma", abs(ch.gamma() - 2.0 ** (-1.0 / 3.0)) < 1e-15)
    check(
        "Kraus completeness",
        abs(ch.gamma() ** 2 + ch.omega() ** 2 - 1.0) < 1e-15,
    )
    rho = ch.apply(ghz)
    rho0 = ghz.density_matrix()
    check("corner coherence decays as gamma^3", abs(abs(rho[0][7]) - 0.25) < 1e-15)
    check(
        "populations untouched",
        all(rho[i][i] == rho0[i][i] for i in range(8)),
    )

    v = m.optimized_max_matrix("svetlichny", ghz.density_matrix())
    check("matrix-path optimizer agrees", abs(v - 4.0 * root2) < 1e-9, f"got {v}")

    w = m.w_density_matrix()
    best, grad = m.optimize_bloch_value("svetlichny", w, seed=2)
    check(
        "W-state Bloch maximum",
        abs(best - 4.35464843161) < 1e-6 and grad < 1e-7,
        f"got value {best}, gradient {grad}",
    )

    rho_after = m.DephasingChannel(1.0, t_star_family + 1e-6).apply(ghz)
    rho_before = m.DephasingChannel(1.0, t_star_family - 1e-6).apply(ghz)
    _, _, local_after = m.wwzb_locality(rho_after, theta_b=0.0)
    excess, count, local_before = m.wwzb_locality(rho_before, theta_b=0.0)
    check("WWZB family satisfied just past ln(2)/3", local_after)
    check(
        "WWZB family violated just before ln(2)/3",
        not local_before and count >= 1 and excess > 0.0,
        f"got excess {excess}, count {count}",
    )

    check("WWZB orbit sizes", m.wwzb_class_sizes() == [16, 128, 48, 48, 16])

    zero = m.zero_state()
    check("product state never violates", m.optimized_max("svetlichny", zero, 1.0, 0.0) == 0.0)
    try:
        zero.relative_phase()
        check("phase of a zero coherence raises", False)
    except ValueError:
        check("phase of a zero coherence raises", True)

    s = m.GenericState.normalized(3 + 0j, 0j, 0j, 0j, 4 + 0j)
    check("normalized constructor", abs(s.coherence_weight() - 0.48) < 1e-15)

    print(f"all {CHECKS} checks passed")


if __name__ == "__main__":
    main()
