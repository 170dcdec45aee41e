"""Backend benchmark: times the injection sweep on both kernel backends
and verifies they produce identical events.

    python -m crashsim.benchmark [--duration 60] [--seed 3] [--repeat 3]
"""

from __future__ import annotations

import argparse
import json
import time

from . import _kernels
from .injection import inject_all
from .model import InjectionParams, Scenario, StaticGeometry
from .scenarios import opposing_flow


def build_benchmark_scenario(duration: float = 60.0, seed: int = 3) -> Scenario:
    """Opposing flow plus roadside furniture so every contact kind is hot."""
    base = opposing_flow(seed=seed, duration=duration)
    geometry = StaticGeometry(
        barriers=(
            ((0.0, 8.0), (200.0, 8.0)),
            ((0.0, -8.0), (200.0, -8.0)),
        ),
        obstacles=tuple((float(x), -6.0, 0.3) for x in range(0, 201, 10)),
    )
    return Scenario(trajectories=base.trajectories, geometry=geometry)


def run_benchmark(duration: float, seed: int, repeat: int) -> dict:
    scenario = build_benchmark_scenario(duration, seed)
    params = InjectionParams()
    results = {}
    events_by_backend = {}
    for name in _kernels.available_backends():
        with _kernels.use(name):
            best = float("inf")
            for _ in range(repeat):
                start = time.perf_counter()
                events = inject_all(scenario, params)
                best = min(best, time.perf_counter() - start)
        results[name] = best
        events_by_backend[name] = events
    out = {
        "vehicles": len(scenario.trajectories),
        "events": len(events_by_backend[next(iter(events_by_backend))]),
        "seconds": results,
    }
    if len(events_by_backend) == 2:
        pure_ev = events_by_backend["pure"]
        comp_ev = events_by_backend["compiled"]
        out["identical_output"] = pure_ev == comp_ev
        out["speedup"] = results["pure"] / results["compiled"]
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--duration", type=float, default=60.0)
    parser.add_argument("--seed", type=int, default=3)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    out = run_benchmark(args.duration, args.seed, args.repeat)
    print(json.dumps(out, indent=2, sort_keys=True))
    if out.get("identical_output") is False:
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
