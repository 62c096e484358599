"""Reproduce the complete isomorphism classifications for orders pq and 2p^2.

For each supported parameter set this script builds the explicit family
representatives, enumerates every left cancellative left semi-brace of the
matching order by brute force over Cayley tables, reduces the survivors to
isomorphism classes, and checks that the two lists match one to one.

Run from the repository root after installing the package:

    python3 scripts/reproduce_classifications.py
    python3 scripts/reproduce_classifications.py --fast
    python3 scripts/reproduce_classifications.py --jobs 4 --cache .cache

The --fast flag drops the order 10 case, whose exhaustive sweep dominates
the runtime.  Exit status is 0 when every classification verifies.
"""

import argparse
import sys
import time

from semibrace.classify import verify_classification

# (theorem tag, p, q).  q is None for the order 2p^2 classification.
DEFAULT_CASES = [
    ("pq-noncongruent", 2, 2),
    ("pq-congruent", 3, 2),
    ("pq-noncongruent", 3, 3),
    ("pq-congruent", 5, 2),
    ("pq-noncongruent", 5, 3),
    ("2p2", 3, None),
    ("2p2", 5, None),
]

# Order 10 triggers the generic cross-check, which enumerates all Cayley
# table pairs on 10 points and takes a minute or two on one core.
SLOW_CASES = {("pq-congruent", 5, 2)}


def run_case(theorem, p, q, jobs, cache_dir):
    label = f"{theorem} p={p}" + (f" q={q}" if q is not None else "")
    start = time.time()
    try:
        report = verify_classification(theorem, p, q=q, jobs=jobs, cache_dir=cache_dir)
    except Exception as err:
        print(f"{label:30s} ERROR {err}")
        return False
    elapsed = time.time() - start
    status = "ok" if report.ok else "FAILED"
    extra = " generic" if report.generic_checked else ""
    print(
        f"{label:30s} {status:6s} n={report.n:3d}"
        f" families={len(report.family_labels):2d}"
        f" census={report.census_count:2d}{extra}  {elapsed:6.1f}s"
    )
    for problem in report.problems:
        print(f"    problem: {problem}")
    return report.ok


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--fast", action="store_true", help="skip the slow order 10 sweep")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for the sweeps")
    parser.add_argument("--cache", default=None, help="directory for cached census files")
    args = parser.parse_args(argv)

    cases = [c for c in DEFAULT_CASES if not (args.fast and c in SLOW_CASES)]
    print(f"verifying {len(cases)} classification cases")
    results = [run_case(t, p, q, args.jobs, args.cache) for t, p, q in cases]
    failed = results.count(False)
    if failed:
        print(f"{failed} case(s) FAILED")
        return 1
    print("all classifications verified")
    return 0


if __name__ == "__main__":
    sys.exit(main())
