"""Smoke test for the eacap_py extension module.

Build the extension first, then run this script:

    cargo build --release -p eacap-py
    python3 python/smoke_test.py

The script copies the built cdylib into a temporary directory under an
importable name, imports it, and exercises the main surface.
"""

import pathlib
import shutil
import sys
import tempfile


def load_module():
    root = pathlib.Path(__file__).resolve().parents[1]
    names = ("libeacap_py.so", "libeacap_py.dylib", "eacap_py.dll")
    candidates = [root / "target" / profile / name
                  for profile in ("release", "debug") for name in names]
    src = next((c for c in candidates if c.exists()), None)
    if src is None:
        sys.exit("extension not found; run: cargo build --release -p eacap-py")
    tmp = tempfile.mkdtemp(prefix="eacap_py_")
    suffix = ".pyd" if src.suffix == ".dll" else ".so"
    shutil.copy2(src, pathlib.Path(tmp) / ("eacap_py" + suffix))
    sys.path.insert(0, tmp)
    import eacap_py
    return eacap_py


def approx(a, b, tol):
    assert abs(a - b) <= tol, f"{a} vs {b} (tol {tol})"


def main():
    m = load_module()

    # closed-form anchor at the ball center
    approx(m.i_center_closed(0.2), 1.501955000, 1e-9)
    approx(m.i_center_closed(0.0), 2.0, 0.0)

    # 1-D optimizer against the reference sweep
    w3, cap = m.optimize_w3(0.2)
    approx(w3, 0.036918238, 1e-4)
    approx(cap, 1.503488311, 1e-6)

    # channel construction and application
    ch = m.Channel.amplitude_damping(0.2)
    assert ch.name == "amplitude_damping"
    assert ch.completeness_residual() <= 1e-12
    assert len(ch.kraus()) == 2
    out = ch.apply((0.0, 0.0, -1.0))
    approx(out[0], 0.0, 1e-12)
    approx(out[1], 0.0, 1e-12)
    approx(out[2], 2 * 0.2 - 1.0, 1e-12)  # eta + (1-eta)*w3 at w3 = -1

    # matrix pipeline agrees with the closed form
    info = m.mutual_information(ch, (0.1, -0.2, 0.3))
    closed = m.mutual_information_ad_closed(0.2, (0.1, -0.2, 0.3))
    approx(info.i, closed, 1e-12)
    approx(info.i, info.s_in + info.s_out - info.s_exchange, 1e-12)

    # sweep record invariants
    rec = m.capacity_record(0.8)
    approx(rec.gap, rec.capacity - rec.i_center, 1e-12)
    assert rec.gap >= 0.0

    # entropy of an explicit matrix
    approx(m.von_neumann_entropy([[0.5 + 0j, 0j], [0j, 0.5 + 0j]]), 1.0, 1e-12)

    # covariant channel: brute-force optimum at the ball center
    dep = m.Channel.depolarizing(0.5)
    w_opt, _ = m.capacity_grid_oracle(dep, grid_n=21)
    assert max(abs(x) for x in w_opt) <= 1e-6

    # invalid inputs surface as ValueError
    try:
        m.Channel.amplitude_damping(1.5)
    except ValueError:
        pass
    else:
        raise AssertionError("eta = 1.5 must be rejected")

    # self-check suites
    groups = m.verify()
    failed = [name for name, passed, _ in groups if not passed]
    assert not failed, f"verify groups failed: {failed}"

    print(f"all smoke checks passed ({len(groups)} verify groups clean)")


if __name__ == "__main__":
    main()
