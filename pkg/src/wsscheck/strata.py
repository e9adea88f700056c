"""Cohomological data of the special fiber of a semistable degeneration.

A ``SemistableDatum`` records, for each level j >= 1, the cohomology of the
disjoint union of j-fold intersections of the components of the special
fiber (a smooth proper variety of dimension n - j + 1), its Poincare
pairings and Lefschetz operators, together with restriction maps (level
j -> j+1, degree-preserving) and Gysin maps (level j -> j-1, degree +2).

``validate`` checks the seven axioms the downstream machinery relies on:

  1. rho-squared        composite restrictions vanish
  2. tau-squared        composite Gysin maps vanish
  3. anticommute        tau o rho + rho o tau = 0 on levels >= 2
  4. adjunction         <rho(a), b> = <a, tau(b)> for complementary degrees
  5. lefschetz-commute  L commutes with rho and tau (and L(1) = ample class)
  6. hard-lefschetz     L^i : H^{d-i} -> H^{d+i} invertible per level
  7. poincare           pairings nondegenerate; middle pairings symmetric

Levels with no intersections are encoded by omission; maps into or out of a
missing level are the zero maps.  The anticommutation axiom is only imposed
for source levels >= 2: for level-1 classes the Gysin-after-restriction
composite never contributes to any differential (the summand it would feed
falls outside the allowed index range), and it is genuinely nonzero on, for
example, a cycle of curves.

File format (version \"wss-1\"): levels are 0-based on disk and 1-based in
memory; matrices are {rows, cols, entries} with row-major rational strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import SchemaError, ValidationGateError
from .ratlin import RatMatrix, as_rat, rank, rat_str


@dataclass(frozen=True, eq=True)
class StratumLevel:
    level: int
    components: int
    cohomology_dims: tuple
    pairings: dict = field(compare=True)          # degree s -> H^s x H^{2d-s} matrix
    lefschetz: dict = field(compare=True)         # degree s -> L : H^s -> H^{s+2}
    component_blocks: dict = field(compare=True)  # degree s -> component index per basis vector


@dataclass(frozen=True, eq=True)
class TransferMaps:
    restriction: dict  # (level j, degree s) -> H^s(X^(j)) -> H^s(X^(j+1))
    gysin: dict        # (level j, degree s) -> H^s(X^(j)) -> H^{s+2}(X^(j-1))


@dataclass(frozen=True, eq=True)
class SemistableDatum:
    n: int
    m: int
    levels: dict       # level j -> StratumLevel
    transfers: TransferMaps
    ample_class: tuple

    # -- shape helpers ----------------------------------------------------

    @property
    def max_level(self):
        return max(self.levels) if self.levels else 0

    def level_dim(self, j):
        return self.n - j + 1

    def h(self, j, s):
        lvl = self.levels.get(j)
        if lvl is None or s < 0 or s >= len(lvl.cohomology_dims):
            return 0
        return lvl.cohomology_dims[s]

    def restriction_map(self, j, s):
        m = self.transfers.restriction.get((j, s))
        if m is None:
            return RatMatrix.zeros(self.h(j + 1, s), self.h(j, s))
        return m

    def gysin_map(self, j, s):
        m = self.transfers.gysin.get((j, s))
        if m is None:
            return RatMatrix.zeros(self.h(j - 1, s + 2), self.h(j, s))
        return m

    def lefschetz_map(self, j, s):
        lvl = self.levels.get(j)
        m = lvl.lefschetz.get(s) if lvl else None
        if m is None:
            return RatMatrix.zeros(self.h(j, s + 2), self.h(j, s))
        return m

    def pairing(self, j, s):
        lvl = self.levels.get(j)
        m = lvl.pairings.get(s) if lvl else None
        if m is None:
            dual = 2 * self.level_dim(j) - s
            return RatMatrix.zeros(self.h(j, s), self.h(j, dual))
        return m


# -- structural checks (raise before any axiom runs) ------------------------


def _check_structure(datum: SemistableDatum):
    if datum.n < 1:
        raise SchemaError("relative dimension n must be >= 1")
    lv = sorted(datum.levels)
    if lv != list(range(1, len(lv) + 1)):
        raise SchemaError(f"levels must be contiguous from 1, got {lv}")
    if not lv:
        raise SchemaError("at least one level is required")
    if datum.levels[1].components != datum.m:
        raise SchemaError("m must equal the component count of level 1")
    for j, lvl in datum.levels.items():
        d = datum.level_dim(j)
        if d < 0:
            raise SchemaError(f"level {j} exceeds relative dimension")
        if lvl.level != j:
            raise SchemaError(f"level key {j} disagrees with stored level {lvl.level}")
        if len(lvl.cohomology_dims) != 2 * d + 1:
            raise SchemaError(
                f"level {j}: cohomology profile must have length {2 * d + 1}"
            )
        if any(x < 0 for x in lvl.cohomology_dims):
            raise SchemaError(f"level {j}: negative cohomology dimension")
        if lvl.components < 1:
            raise SchemaError(f"level {j}: components must be >= 1")
        for s, mat in lvl.pairings.items():
            want = (datum.h(j, s), datum.h(j, 2 * d - s))
            if mat.shape != want:
                raise SchemaError(
                    f"level {j} pairing degree {s}: shape {mat.shape} != {want}"
                )
        for s, mat in lvl.lefschetz.items():
            want = (datum.h(j, s + 2), datum.h(j, s))
            if mat.shape != want:
                raise SchemaError(
                    f"level {j} lefschetz degree {s}: shape {mat.shape} != {want}"
                )
        for s, blocks in lvl.component_blocks.items():
            if len(blocks) != datum.h(j, s):
                raise SchemaError(
                    f"level {j} component_blocks degree {s}: wrong length"
                )
            if any(not (0 <= b < lvl.components) for b in blocks):
                raise SchemaError(
                    f"level {j} component_blocks degree {s}: index out of range"
                )
        for s in range(0, 2 * d + 1):
            if (
                datum.h(j, s) > 0
                and datum.h(j, 2 * d - s) > 0
                and s not in lvl.pairings
            ):
                raise SchemaError(f"level {j}: missing pairing block for degree {s}")
    for (j, s), mat in datum.transfers.restriction.items():
        want = (datum.h(j + 1, s), datum.h(j, s))
        if mat.shape != want:
            raise SchemaError(
                f"restriction (level {j}, degree {s}): shape {mat.shape} != {want}"
            )
    for (j, s), mat in datum.transfers.gysin.items():
        want = (datum.h(j - 1, s + 2), datum.h(j, s))
        if mat.shape != want:
            raise SchemaError(
                f"gysin (level {j}, degree {s}): shape {mat.shape} != {want}"
            )
    if len(datum.ample_class) != datum.h(1, 2):
        raise SchemaError("ample_class length must equal dim H^2 of level 1")


# -- axiom validation ---------------------------------------------------------

AXIOMS = (
    "rho-squared",
    "tau-squared",
    "anticommute",
    "adjunction",
    "lefschetz-commute",
    "hard-lefschetz",
    "poincare",
)


@dataclass(frozen=True)
class AxiomCheck:
    axiom: str
    ok: bool
    failures: tuple  # of dicts {level, degree, detail}

    def to_json_dict(self):
        return {"axiom": self.axiom, "ok": self.ok, "failures": list(self.failures)}


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    @property
    def failed_axioms(self):
        return tuple(c.axiom for c in self.checks if not c.ok)

    def to_json_dict(self):
        return {
            "ok": self.ok,
            "checks": [c.to_json_dict() for c in self.checks],
        }


def _fail(failures, j, s, detail):
    failures.append({"level": j, "degree": s, "detail": detail})


def _check_rho_squared(datum):
    failures = []
    for j in sorted(datum.levels):
        d = datum.level_dim(j)
        for s in range(0, 2 * d + 1):
            if datum.h(j, s) == 0:
                continue
            comp = datum.restriction_map(j + 1, s) @ datum.restriction_map(j, s)
            if not comp.is_zero():
                _fail(failures, j, s, "restriction composed with restriction is nonzero")
    return AxiomCheck("rho-squared", not failures, tuple(failures))


def _check_tau_squared(datum):
    failures = []
    for j in sorted(datum.levels):
        d = datum.level_dim(j)
        for s in range(0, 2 * d + 1):
            if datum.h(j, s) == 0:
                continue
            comp = datum.gysin_map(j - 1, s + 2) @ datum.gysin_map(j, s)
            if not comp.is_zero():
                _fail(failures, j, s, "gysin composed with gysin is nonzero")
    return AxiomCheck("tau-squared", not failures, tuple(failures))


def _check_anticommute(datum):
    failures = []
    for j in sorted(datum.levels):
        if j < 2:
            continue
        d = datum.level_dim(j)
        for s in range(0, 2 * d + 1):
            if datum.h(j, s) == 0:
                continue
            a = datum.gysin_map(j + 1, s) @ datum.restriction_map(j, s)
            b = datum.restriction_map(j - 1, s + 2) @ datum.gysin_map(j, s)
            if not (a + b).is_zero():
                _fail(failures, j, s, "tau o rho + rho o tau is nonzero")
    return AxiomCheck("anticommute", not failures, tuple(failures))


def _check_adjunction(datum):
    failures = []
    for j in sorted(datum.levels):
        if j + 1 not in datum.levels:
            continue
        d_next = datum.level_dim(j + 1)
        for s in range(0, 2 * d_next + 1):
            sdual = 2 * d_next - s
            if datum.h(j, s) == 0 or datum.h(j + 1, sdual) == 0:
                continue
            lhs = datum.restriction_map(j, s).transpose() @ datum.pairing(j + 1, s)
            rhs = datum.pairing(j, s) @ datum.gysin_map(j + 1, sdual)
            if lhs != rhs:
                _fail(failures, j, s, "<rho(a), b> != <a, tau(b)>")
    return AxiomCheck("adjunction", not failures, tuple(failures))


def _check_lefschetz_commute(datum):
    failures = []
    for j in sorted(datum.levels):
        d = datum.level_dim(j)
        for s in range(0, 2 * d + 1):
            if j + 1 in datum.levels and datum.h(j, s) > 0:
                lhs = datum.lefschetz_map(j + 1, s) @ datum.restriction_map(j, s)
                rhs = datum.restriction_map(j, s + 2) @ datum.lefschetz_map(j, s)
                if lhs != rhs:
                    _fail(failures, j, s, "L does not commute with restriction")
            if j - 1 in datum.levels and datum.h(j, s) > 0:
                lhs = datum.lefschetz_map(j - 1, s + 2) @ datum.gysin_map(j, s)
                rhs = datum.gysin_map(j, s + 2) @ datum.lefschetz_map(j, s)
                if lhs != rhs:
                    _fail(failures, j, s, "L does not commute with gysin")
    # declared consistency: L applied to the unit of level 1 is the ample class
    h0 = datum.h(1, 0)
    if h0 > 0 and datum.h(1, 2) > 0:
        got = datum.lefschetz_map(1, 0).apply((1,) * h0)
        want = tuple(as_rat(x) for x in datum.ample_class)
        if tuple(got) != want:
            _fail(failures, 1, 0, "L(1) differs from the declared ample class")
    return AxiomCheck("lefschetz-commute", not failures, tuple(failures))


def _check_hard_lefschetz(datum):
    failures = []
    for j in sorted(datum.levels):
        d = datum.level_dim(j)
        for i in range(1, d + 1):
            lo, hi = d - i, d + i
            if datum.h(j, lo) != datum.h(j, hi):
                _fail(failures, j, lo, f"h^{lo} != h^{hi}, L^{i} cannot be invertible")
                continue
            if datum.h(j, lo) == 0:
                continue
            comp = RatMatrix.identity(datum.h(j, lo))
            for s in range(lo, hi, 2):
                comp = datum.lefschetz_map(j, s) @ comp
            if rank(comp) != datum.h(j, lo):
                _fail(failures, j, lo, f"L^{i} : H^{lo} -> H^{hi} is not invertible")
    return AxiomCheck("hard-lefschetz", not failures, tuple(failures))


def _check_poincare(datum):
    failures = []
    for j in sorted(datum.levels):
        d = datum.level_dim(j)
        for s in range(0, 2 * d + 1):
            hs, hd = datum.h(j, s), datum.h(j, 2 * d - s)
            if hs == 0 and hd == 0:
                continue
            p = datum.pairing(j, s)
            if hs != hd or rank(p) != hs:
                _fail(failures, j, s, "pairing is degenerate")
        if d % 2 == 0 and datum.h(j, d) > 0:
            p = datum.pairing(j, d)
            if p != p.transpose():
                _fail(failures, j, d, "middle-degree pairing is not symmetric")
    return AxiomCheck("poincare", not failures, tuple(failures))


_AXIOM_CHECKS = {
    "rho-squared": _check_rho_squared,
    "tau-squared": _check_tau_squared,
    "anticommute": _check_anticommute,
    "adjunction": _check_adjunction,
    "lefschetz-commute": _check_lefschetz_commute,
    "hard-lefschetz": _check_hard_lefschetz,
    "poincare": _check_poincare,
}


def validate(datum: SemistableDatum, fail_fast: bool = False) -> ValidationReport:
    """Run the seven axiom checks; structural defects raise SchemaError first."""
    _check_structure(datum)
    checks = []
    for name in AXIOMS:
        result = _AXIOM_CHECKS[name](datum)
        checks.append(result)
        if fail_fast and not result.ok:
            break
    return ValidationReport(tuple(checks))


def require_valid(datum: SemistableDatum) -> ValidationReport:
    report = validate(datum)
    if not report.ok:
        raise ValidationGateError(
            f"datum fails axioms: {', '.join(report.failed_axioms)}", report
        )
    return report


# -- serialization ------------------------------------------------------------

SCHEMA_VERSION = "wss-1"


def _mat_to_json(m: RatMatrix):
    return m.to_json_dict()


def _mat_from_json(d, where):
    try:
        return RatMatrix.from_json_dict(d)
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"{where}: malformed matrix ({exc})") from exc
    except ZeroDivisionError as exc:
        raise SchemaError(f"{where}: rational with zero denominator") from exc
    except ValueError as exc:
        raise SchemaError(f"{where}: unparseable rational ({exc})") from exc


def datum_to_json_dict(datum: SemistableDatum):
    levels = []
    for j in sorted(datum.levels):
        lvl = datum.levels[j]
        levels.append(
            {
                "level": j - 1,  # 0-based on disk
                "components": lvl.components,
                "cohomology": [
                    {"degree": s, "dim": h}
                    for s, h in enumerate(lvl.cohomology_dims)
                ],
                "pairings": {
                    str(s): _mat_to_json(m) for s, m in sorted(lvl.pairings.items())
                },
                "lefschetz": {
                    str(s): _mat_to_json(m) for s, m in sorted(lvl.lefschetz.items())
                },
                "component_blocks": {
                    str(s): list(b) for s, b in sorted(lvl.component_blocks.items())
                },
            }
        )
    return {
        "schema": SCHEMA_VERSION,
        "n": datum.n,
        "m": datum.m,
        "levels": levels,
        "restriction": [
            {"level": j - 1, "degree": s, "matrix": _mat_to_json(m)}
            for (j, s), m in sorted(datum.transfers.restriction.items())
        ],
        "gysin": [
            {"level": j - 1, "degree": s, "matrix": _mat_to_json(m)}
            for (j, s), m in sorted(datum.transfers.gysin.items())
        ],
        "ample_class": [rat_str(x) for x in datum.ample_class],
    }


def datum_from_json_dict(doc) -> SemistableDatum:
    if not isinstance(doc, dict):
        raise SchemaError("instance document must be a JSON object")
    if doc.get("schema") != SCHEMA_VERSION:
        raise SchemaError(
            f"schema version mismatch: expected {SCHEMA_VERSION!r}, "
            f"got {doc.get('schema')!r}"
        )
    for key in ("n", "m", "levels", "restriction", "gysin", "ample_class"):
        if key not in doc:
            raise SchemaError(f"missing top-level field {key!r}")
    levels = {}
    for entry in doc["levels"]:
        where = f"levels[{entry.get('level')}]"
        try:
            j = int(entry["level"]) + 1
            components = int(entry["components"])
            coh = entry["cohomology"]
            dims = {int(c["degree"]): int(c["dim"]) for c in coh}
            profile = tuple(dims.get(s, 0) for s in range(max(dims) + 1)) if dims else ()
            pairings = {
                int(s): _mat_from_json(m, f"{where}.pairings[{s}]")
                for s, m in entry.get("pairings", {}).items()
            }
            lefschetz = {
                int(s): _mat_from_json(m, f"{where}.lefschetz[{s}]")
                for s, m in entry.get("lefschetz", {}).items()
            }
            blocks = {
                int(s): tuple(int(b) for b in v)
                for s, v in entry.get("component_blocks", {}).items()
            }
        except SchemaError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"{where}: {exc}") from exc
        levels[j] = StratumLevel(
            level=j,
            components=components,
            cohomology_dims=profile,
            pairings=pairings,
            lefschetz=lefschetz,
            component_blocks=blocks,
        )
    restriction = {}
    for entry in doc["restriction"]:
        where = f"restriction[level={entry.get('level')}, degree={entry.get('degree')}]"
        restriction[(int(entry["level"]) + 1, int(entry["degree"]))] = _mat_from_json(
            entry["matrix"], where
        )
    gysin = {}
    for entry in doc["gysin"]:
        where = f"gysin[level={entry.get('level')}, degree={entry.get('degree')}]"
        gysin[(int(entry["level"]) + 1, int(entry["degree"]))] = _mat_from_json(
            entry["matrix"], where
        )
    try:
        ample = tuple(as_rat(x) for x in doc["ample_class"])
    except ZeroDivisionError as exc:
        raise SchemaError("ample_class: rational with zero denominator") from exc
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"ample_class: {exc}") from exc
    datum = SemistableDatum(
        n=int(doc["n"]),
        m=int(doc["m"]),
        levels=levels,
        transfers=TransferMaps(restriction=restriction, gysin=gysin),
        ample_class=ample,
    )
    _check_structure(datum)
    return datum


def save(datum: SemistableDatum, path):
    Path(path).write_text(
        json.dumps(datum_to_json_dict(datum), sort_keys=True, indent=1) + "\n"
    )


def load(path) -> SemistableDatum:
    p = Path(path)
    try:
        doc = json.loads(p.read_text())
    except FileNotFoundError:
        raise SchemaError(f"no such instance file: {p}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{p}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return datum_from_json_dict(doc)


def to_weight_complex(datum: SemistableDatum, w_range=None):
    """Validated E1 page with differentials, monodromy blocks and pairings."""
    from . import specseq  # late import: specseq depends on this module

    return specseq.install_n(specseq.build_e1(datum, w_range=w_range))
