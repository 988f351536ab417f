"""Run every check on the robot skillset and on its repaired variant.

    python3 scripts/reproduce_spot.py [--no-events] [--no-exit-places]
"""
import argparse
import time
from pathlib import Path

from skinet.builder import BuildOptions, build_net
from skinet.checks import check_dead, check_deadset, check_deadskill, check_live, check_safe
from skinet.parser import parse_skillset
from skinet.statespace import explore

SKILLSETS = Path(__file__).resolve().parents[1] / "skillsets"


def run(path: Path, options: BuildOptions):
    ss = parse_skillset(path.read_text())
    t0 = time.perf_counter()
    net = build_net(ss, options)
    graph = explore(net, strict_safety=False)
    results = [check_dead(graph), check_live(net, graph), check_safe(ss, net, graph)]
    results += [check_deadskill(graph, s.name) for s in ss.skills]
    results.append(check_deadset(graph))
    elapsed = time.perf_counter() - t0
    print(f"{path.name}: {len(net.places)} places, {len(net.transitions)} transitions, "
          f"{len(graph.states)} states, {len(graph.edges)} edges ({elapsed:.2f} s)")
    for r in results:
        subjects = ", ".join(f.subject for f in r.findings[:4])
        more = f" (+{len(r.findings) - 4})" if len(r.findings) > 4 else ""
        print(f"  {r.name:<9} {r.verdict:<4} {subjects}{more}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--no-events", action="store_true")
    ap.add_argument("--no-exit-places", action="store_true")
    args = ap.parse_args()
    options = BuildOptions(include_events=not args.no_events, keep_exit_places=not args.no_exit_places)
    for name in ("spot", "spot_fixed"):
        run(SKILLSETS / f"{name}.skillset", options)


if __name__ == "__main__":
    main()
