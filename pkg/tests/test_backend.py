import json
import os
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]


def _probe(env_value):
    env = dict(os.environ)
    env["DAMPEDQHO_DISABLE_NUMBA"] = env_value
    code = (
        "import json, dampedqho\n"
        "from dampedqho.model import PhysParams, OrderingScheme\n"
        "from dampedqho.operators import FockBasis\n"
        "from dampedqho.analysis import numeric_spectrum\n"
        "p = PhysParams()\n"
        "ev = numeric_spectrum(FockBasis(48, 1.0), p, OrderingScheme.YP).lowest(4)\n"
        "print(dampedqho.backend_name()); print(json.dumps([[z.real, z.imag] for z in ev.tolist()]))\n"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout
    name, values = out.splitlines()
    return name, [complex(*pair) for pair in json.loads(values)]


def test_env_flag_selects_numpy_path_with_same_results():
    name_off, ev_off = _probe("1")
    name_on, ev_on = _probe("")
    assert name_off == "numpy"
    assert name_on in ("numba", "numpy")
    assert max(abs(a - b) for a, b in zip(ev_on, ev_off)) < 1e-10


def test_benchmark_smoke(capsys):
    sys.path.insert(0, str(ROOT / "benchmarks"))
    try:
        import bench_kernels

        bench_kernels.main(["--sizes", "8", "--repeat", "1"])
    finally:
        sys.path.pop(0)
    assert "hermitian" in capsys.readouterr().out
