"""Run every catalogued example through the CLI and collect the artifacts.

    python scripts/reproduce_examples.py [--outdir artifacts]
"""
import argparse
import sys
import time
from pathlib import Path

from hqsf_surfaces.catalog import ROTATION_EXAMPLES, SURFACE_EXAMPLES
from hqsf_surfaces.cli import main


def run(outdir: Path) -> int:
    outdir.mkdir(parents=True, exist_ok=True)
    names = sorted(SURFACE_EXAMPLES, key=lambda s: int(s[2:])) + \
        sorted(ROTATION_EXAMPLES, key=lambda s: int(s[2:]))
    failed = []
    for name in names:
        t0 = time.perf_counter()
        code = main(["examples", name, "--outdir", str(outdir),
                     "--report-json", str(outdir / f"{name}_report.json")])
        print(f"== {name}: exit {code} in {time.perf_counter() - t0:.1f} s\n")
        if code:
            failed.append(name)
    print("failed: " + (", ".join(failed) if failed else "none"))
    return 1 if failed else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--outdir", type=Path, default=Path("artifacts"))
    sys.exit(run(ap.parse_args().outdir))
