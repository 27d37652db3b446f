#!/usr/bin/env python3
"""Drive the full verification battery through the CLI and collect reports.

Writes one JSON report per suite into reports/ (created next to this script's
repository root) and prints a one-line outcome per suite.  Exits nonzero if
any suite fails.  Runtime is a few minutes; progress streams to stderr.
"""

import pathlib
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
REPORTS = ROOT / "reports"

BATTERY = [
    # shift-family commutativity
    ["verify", "theorem1", "--algebra", "gl:2", "--max-power", "4"],
    ["verify", "theorem1", "--algebra", "gl:3", "--max-power", "4"],
    ["verify", "theorem1", "--algebra", "gl:3", "--A", "diag:1,1,0", "--max-power", "4"],
    ["verify", "theorem1", "--algebra", "gl:3", "--A", "symbolic", "--max-power", "3"],
    ["verify", "theorem2", "--algebra", "so:3", "--max-power", "3"],
    ["verify", "theorem2", "--algebra", "so:4", "--max-power", "3"],
    ["verify", "theorem2", "--algebra", "so:5", "--max-power", "3"],
    ["verify", "theorem2", "--algebra", "sp:1", "--max-power", "3"],
    ["verify", "theorem2", "--algebra", "sp:2", "--max-power", "3"],
    ["verify", "theorem2", "--algebra", "so:4", "--A", "symbolic", "--max-power", "3"],
    ["verify", "theorem2", "--algebra", "sp:2", "--A", "symbolic", "--max-power", "3"],
    # centralizer / tensoriality / centrality
    ["verify", "centralizer", "--algebra", "gl:3", "--max-power", "3"],
    ["verify", "centralizer", "--algebra", "gl:3", "--A", "diag:1,1,0", "--max-power", "3"],
    ["verify", "centralizer", "--algebra", "so:4", "--max-power", "3"],
    ["verify", "tensorial", "--algebra", "gl:2", "--max-power", "3"],
    ["verify", "tensorial", "--algebra", "so:3", "--max-power", "3"],
    ["verify", "casimir-central", "--algebra", "gl:3", "--max-power", "4"],
    ["verify", "casimir-central", "--algebra", "so:4", "--max-power", "4"],
    # identity suites
    ["verify", "prop1", "--algebra", "gl:2", "--max-power", "3"],
    ["verify", "prop1", "--algebra", "gl:3", "--max-power", "3"],
    ["verify", "prop2", "--algebra", "gl:3", "--max-power", "3"],
    ["verify", "prop3", "--algebra", "so:3", "--max-power", "3"],
    ["verify", "prop3", "--algebra", "sp:1", "--max-power", "3"],
    ["verify", "prop4", "--algebra", "so:3", "--max-power", "3"],
    ["verify", "prop4", "--algebra", "so:4", "--max-power", "3"],
    ["verify", "prop4", "--algebra", "sp:1", "--max-power", "3"],
    ["verify", "prop5", "--algebra", "so:3", "--max-power", "3"],
    ["verify", "prop5", "--algebra", "so:4", "--max-power", "3"],
    ["verify", "prop5", "--algebra", "sp:1", "--max-power", "3"],
    # chains
    ["chain", "--file", str(ROOT / "scripts/chains/gl3.json")],
    ["chain", "--file", str(ROOT / "scripts/chains/gl4.json")],
    ["chain", "--file", str(ROOT / "scripts/chains/so4.json")],
    ["chain", "--file", str(ROOT / "scripts/chains/so5.json")],
    ["chain", "--file", str(ROOT / "scripts/chains/sp2.json")],
    # classical side
    ["classical", "lemma2", "--algebra", "gl:4", "--A", "diag:1,2,0,0", "--points", "5"],
    ["classical", "lemma2", "--algebra", "so:5", "--points", "5"],
    ["classical", "duality", "--algebra", "gl:2", "--M", "2", "--k", "1", "--seeds", "5"],
    ["classical", "duality", "--algebra", "gl:3", "--M", "3", "--k", "1", "--seeds", "5"],
    ["classical", "tangent", "--algebra", "gl:3", "--A", "diag:1,1,0"],
    ["classical", "tangent", "--algebra", "gl:3", "--A", "diag:1,2,0"],
    ["expand", "--algebra", "gl:2", "--M", "2", "--A", "diag:1,2"],
    ["rank", "--algebra", "gl:2", "--A", "diag:1,2"],
]


def main() -> int:
    REPORTS.mkdir(exist_ok=True)
    worst = 0
    for idx, args in enumerate(BATTERY):
        name = f"{idx:02d}_" + "_".join(
            a.replace(":", "").replace("/", "-") for a in args if not a.startswith("--")
        )[:60]
        out = REPORTS / f"{name}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "envshift", *args, "--out", str(out)],
            stdout=subprocess.DEVNULL,
            stderr=subprocess.DEVNULL,
        )
        status = {0: "PASS", 1: "FAIL"}.get(proc.returncode, "ERROR")
        print(f"{status}  envshift {' '.join(args)}")
        worst = max(worst, proc.returncode)
    print(f"reports written to {REPORTS}")
    return worst


if __name__ == "__main__":
    sys.exit(main())
