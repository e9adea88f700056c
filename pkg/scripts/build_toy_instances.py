#!/usr/bin/env python3
"""Regenerate the shipped toy threefold instances under src/wsscheck/data/.

Each instance is produced by an audited constructor in wsscheck.instances:
the point blow-up of a constant projective-space family, and products of
curve degenerations with the projective plane.  Run after changing any
constructor; the test suite asserts the files and builders stay in sync.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from wsscheck import instances, strata  # noqa: E402


def main():
    out_dir = instances.data_dir()
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in instances.toy_names():
        datum = instances.build_toy(name)
        report = strata.validate(datum)
        if not report.ok:
            raise SystemExit(f"{name} fails validation: {report.failed_axioms}")
        path = out_dir / f"{name}.json"
        strata.save(datum, path)
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
