#!/usr/bin/env python3
"""Sweep the built-in generators and shipped instances through every check.

Prints one line per instance: validation verdict, E2 dimensions on the
interesting antidiagonals, the monodromy/weight comparison per abutment
degree, and, for threefolds, the full structure suite.  Exits nonzero if
anything fails.
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from wsscheck import (  # noqa: E402
    build_e2,
    check_wmc,
    compare_monodromy_vs_weight,
    gen_chain,
    gen_ngon,
    gen_smooth,
    instances,
    to_weight_complex,
    validate,
)
from wsscheck.lefschetz import run_threefold_suite  # noqa: E402


def inspect(name, datum):
    t0 = time.time()
    report = validate(datum)
    if not report.ok:
        print(f"{name}: VALIDATION FAILED {report.failed_axioms}")
        return False
    e2 = build_e2(to_weight_complex(datum))
    verdict = check_wmc(e2)
    agree = all(
        compare_monodromy_vs_weight(e2, w) == verdict.at_w(w)
        for w in range(0, 2 * datum.n + 1)
    )
    ok = verdict.overall and agree
    extra = ""
    if datum.n == 3:
        suite = run_threefold_suite(datum)
        ok = ok and suite.ok
        extra = f" suite={'pass' if suite.ok else 'FAIL'}"
    dims = {k: v for k, v in sorted(e2.dims.items()) if v}
    print(
        f"{name}: wmc={'pass' if verdict.overall else 'FAIL'} "
        f"agree={agree}{extra} e2={dims} ({time.time() - t0:.2f}s)"
    )
    return ok


def main():
    ok = True
    for n in range(3, 13):
        ok &= inspect(f"ngon({n})", gen_ngon(n))
    for n in range(2, 6):
        ok &= inspect(f"chain({n})", gen_chain(n))
    ok &= inspect("smooth(3)", gen_smooth(3, (1, 0, 1, 0, 1, 0, 1)))
    for name in instances.toy_names():
        ok &= inspect(name, instances.load_toy(name))
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
