"""Build the pynlft extension with cargo, import it, and exercise the main calls.

Usage: python3 python/smoke_test.py
"""

import cmath
import math
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build():
    subprocess.run(["cargo", "build", "--release", "-p", "nlft-py"], cwd=ROOT, check=True)
    lib = ROOT / "target" / "release" / "libpynlft.so"
    dest = Path(tempfile.mkdtemp()) / "pynlft.so"
    shutil.copy(lib, dest)
    sys.path.insert(0, str(dest.parent))


def main():
    build()
    import pynlft

    s = math.sqrt(2 * math.pi)
    mu = pynlft.Measure.lebesgue_plus_atom(1 / s, 0.0, s)
    mu_t = mu.periodize(math.pi)
    assert mu_t.half_period == math.pi

    # Hamiltonian steps against the closed form, both routes.
    moments = mu_t.trig_moments(31)
    t = math.pi
    for steps in (pynlft.toeplitz_h11(moments, t, 32), pynlft.opuc_h11(moments, t, 32)):
        for n, h in enumerate(steps):
            exact = s * t * t / ((n * math.pi + t) * (n * math.pi + t + math.pi))
            assert abs(h / exact - 1) < 1e-8, (n, h, exact)

    pot = pynlft.inverse_nlft(mu_t, 200)
    z = 0.3 + 1j
    tm = pot.forward(z)
    assert abs(tm.schur() - mu_t.schur(z, 1e-12)) < 1e-6
    assert pynlft.roundtrip(mu, math.pi, 200) < 1e-6

    beta = 1.0
    leb = pynlft.Measure.lebesgue_plus_atom(1.0, 0.0, beta * math.pi)
    assert abs(leb.schur(z, 1e-12) - beta * 1j / (2 * z + beta * 1j)) < 1e-9

    step = pynlft.StepPotential([0.0, 1.0, 1.5], [0.3, -0.2])
    tm = step.forward(0.7)
    assert abs(abs(tm.a) ** 2 - abs(tm.b) ** 2 - 1) < 1e-12

    rows = pynlft.figure1(mu, 8 * math.pi, 64)
    worst = max(abs(c - f) for (tn, c, f) in rows if tn <= 3)
    assert worst <= 0.05, worst

    try:
        pynlft.Measure.from_json('{"ac": {"kind": "none"}, "atoms": [{"x": 0, "mass": -1}], "period": null}')
    except ValueError as e:
        assert "atoms[0].mass" in str(e)
    else:
        raise AssertionError("negative mass accepted")

    d = pynlft.DiscretePotential(0.5, [0.1, 0.2], origin_mass=0.05)
    assert d.masses == [0.1, 0.2] and cmath.isfinite(d.forward(1j).b)
    print("smoke test passed")


if __name__ == "__main__":
    main()
