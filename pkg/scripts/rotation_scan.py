"""Count profile singularities of the rotation examples for several intervals.

Prints axis crossings and singular profile points for the constructive
profile of each example and, for comparison, its printed profile.

    python scripts/rotation_scan.py [--n 4000] [--half-widths 1,2,3,5]
"""
import argparse
import warnings

from hqsf_surfaces.catalog import ROTATION_EXAMPLES
from hqsf_surfaces.rotation import RadialField, scan_profile, singularity_scan


def counts(events) -> tuple[int, int]:
    axis = sum(e.kind == "axis_crossing" for e in events)
    return axis, sum(e.kind == "profile_singular" for e in events)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4000)
    ap.add_argument("--half-widths", default="1,2,3,5")
    args = ap.parse_args()
    widths = [float(w) for w in args.half_widths.split(",")]
    warnings.simplefilter("ignore")

    print(f"{'example':8} {'source':12} " + " ".join(f"[-{w:g},{w:g}]".rjust(10) for w in widths))
    print(f"{'':8} {'':12} " + " ".join("axis/sing".rjust(10) for _ in widths))
    for name in sorted(ROTATION_EXAMPLES, key=lambda s: int(s[2:])):
        ex = ROTATION_EXAMPLES[name]
        rf = RadialField(ex.params)
        rows = {"constructive": [], "printed": []}
        for w in widths:
            rows["constructive"].append(counts(singularity_scan(rf, (-w, w), args.n)))
            rows["printed"].append(counts(scan_profile(ex.printed_sample, (-w, w), args.n)))
        for source, cells in rows.items():
            print(f"{name:8} {source:12} " + " ".join(f"{a}/{s}".rjust(10) for a, s in cells))


if __name__ == "__main__":
    main()
