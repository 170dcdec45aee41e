from crashsim import _kernels
from crashsim.benchmark import run_benchmark


def test_benchmark_backends_agree():
    out = run_benchmark(duration=20.0, seed=3, repeat=1)
    assert out["events"] > 0
    assert set(out["seconds"]) == set(_kernels.available_backends())
    if "compiled" in out["seconds"]:
        assert out["identical_output"] is True
