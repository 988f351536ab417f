"""Cross-check nets against the direct interpreter on random skillsets.

    python3 scripts/random_equivalence.py --seeds 1000 --max-resources 4
"""
import argparse
import statistics
import time

from skinet.builder import BuildOptions, build_net
from skinet.checks import check_safe
from skinet.generate import random_skillset
from skinet.oracle import check_equivalence, explore_direct
from skinet.statespace import explore

OPTIONS = {
    "default": BuildOptions(),
    "no-exit-places": BuildOptions(keep_exit_places=False),
    "no-events": BuildOptions(include_events=False),
    "strict-moves": BuildOptions(strict_resource_moves=True),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=200)
    ap.add_argument("--start", type=int, default=0)
    ap.add_argument("--max-resources", type=int, default=3)
    ap.add_argument("--max-states", type=int, default=3)
    ap.add_argument("--max-skills", type=int, default=3)
    ap.add_argument("--max-events", type=int, default=3)
    args = ap.parse_args()

    for label, options in OPTIONS.items():
        t0 = time.perf_counter()
        sizes, failures = [], []
        for seed in range(args.start, args.start + args.seeds):
            ss = random_skillset(seed, args.max_resources, args.max_states,
                                 args.max_skills, args.max_events)
            net = build_net(ss, options)
            graph = explore(net, strict_safety=False)
            sizes.append(len(graph.states))
            if not check_safe(ss, net, graph).passed:
                failures.append((seed, "unsafe"))
            result = check_equivalence(explore_direct(ss, options), graph, ss)
            if not result:
                failures.append((seed, result.mismatch))
        print(f"{label:<15} seeds={args.seeds} states mean={statistics.mean(sizes):.1f} "
              f"max={max(sizes)} failures={len(failures)} ({time.perf_counter() - t0:.1f} s)")
        for seed, why in failures[:5]:
            print(f"  seed {seed}: {why}")


if __name__ == "__main__":
    main()
