"""Run verify_all over a parameter grid and write the JSON report.

    python3 scripts/run_sweep.py --r-max 2 --generic 20 --out sweep.json
"""

import argparse
import dataclasses
import json
import time

from jpineiro.verify import SweepConfig, reports_to_json, summarize, sweep


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for f in dataclasses.fields(SweepConfig):
        parser.add_argument(f"--{f.name.replace('_', '-')}", type=int, default=f.default)
    parser.add_argument("--out", help="write the full JSON report here")
    args = parser.parse_args()
    config = SweepConfig(**{f.name: getattr(args, f.name) for f in dataclasses.fields(SweepConfig)})

    start = time.perf_counter()
    reports = sweep(config)
    elapsed = time.perf_counter() - start
    summary = summarize(reports)
    print(json.dumps({"config": dataclasses.asdict(config), "elapsed_seconds": round(elapsed, 2), **summary}, indent=1))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(reports_to_json(reports))


if __name__ == "__main__":
    main()
