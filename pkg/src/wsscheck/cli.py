"""Command-line front end.

Exit codes: 0 all requested checks pass, 1 a mathematical check failed,
2 input/schema/usage problems, 3 internal consistency failure (two
independent code paths disagree).  Reports are emitted with sorted keys and
canonical rational strings, so identical inputs produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    ConventionViolation,
    EngineError,
    InstanceInconsistency,
    InternalConsistencyError,
    InvalidProfile,
    MutationNotApplicable,
    ParameterError,
    PreconditionError,
    SchemaError,
    ValidationGateError,
)
from . import instances, lefschetz, specseq, strata

OUT_DIR_ENV = "WSSCHECK_OUT_DIR"

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_INTERNAL = 3


@dataclass
class RunConfig:
    command: str
    instance_path: str = ""
    output_path: str = ""
    format: str = "json"
    w_filter: tuple = ()
    strictness: str = "collect-all"
    tensor_power: int = 1
    gen_kind: str = ""
    gen_n: int = 0
    gen_betti: tuple = ()
    gen_name: str = ""


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def _load_instance(config):
    if not config.instance_path:
        raise ParameterError("--instance PATH is required for this command")
    return strata.load(config.instance_path)


def _build_pages(datum, tensor_power):
    page = strata.to_weight_complex(datum)
    if tensor_power > 1:
        page = specseq.tensor_power(page, tensor_power)
    e2 = specseq.build_e2(page)
    return page, e2


def _validate_text(report):
    lines = []
    for check in report.checks:
        status = "ok" if check.ok else "FAIL"
        lines.append(f"axiom {check.axiom}: {status}")
        for f in check.failures:
            lines.append(
                f"    level {f['level']}, degree {f['degree']}: {f['detail']}"
            )
    lines.append("overall: " + ("pass" if report.ok else "fail"))
    return "\n".join(lines) + "\n"


def _wmc_text(verdict):
    lines = []
    for e in verdict.entries:
        if e.r == 0:
            continue
        status = "iso" if e.iso else "FAIL"
        lines.append(
            f"(r={e.r}, w={e.w}): dims {e.dim_source} -> {e.dim_target}, "
            f"rank {e.rank}: {status}"
        )
    lines.append("overall: " + ("pass" if verdict.overall else "fail"))
    return "\n".join(lines) + "\n"


def _threefold_text(report):
    lines = []
    for check in report.checks:
        lines.append(f"{check.name}: " + ("pass" if check.ok else "FAIL"))
    lines.append("overall: " + ("pass" if report.ok else "fail"))
    return "\n".join(lines) + "\n"


def run(config: RunConfig):
    """Execute one command; returns (exit_code, output_text)."""
    fail_fast = config.strictness == "fail-fast"
    if config.command == "validate":
        datum = _load_instance(config)
        report = strata.validate(datum, fail_fast=fail_fast)
        out = _dump(report.to_json_dict()) if config.format == "json" else _validate_text(report)
        return (EXIT_PASS if report.ok else EXIT_CHECK_FAILED), out

    if config.command == "pages":
        datum = _load_instance(config)
        page, e2 = _build_pages(datum, config.tensor_power)
        verdict = specseq.check_wmc(e2, w_filter=config.w_filter or None)
        if config.format == "json":
            out = _dump(specseq.page_json_dict(page, e2, verdict))
        else:
            out = (
                specseq.render_e1_grid(page)
                + "\n\n"
                + specseq.render_e2_grid(e2)
                + "\n"
            )
        return EXIT_PASS, out

    if config.command == "check-wmc":
        datum = _load_instance(config)
        _, e2 = _build_pages(datum, config.tensor_power)
        verdict = specseq.check_wmc(e2, w_filter=config.w_filter or None)
        agreement = {}
        for w in sorted({e.w for e in verdict.entries}):
            via_filtration = specseq.compare_monodromy_vs_weight(e2, w)
            if via_filtration != verdict.at_w(w):
                raise InternalConsistencyError(
                    f"filtration comparison disagrees with rank checks at w={w}"
                )
            agreement[str(w)] = via_filtration
        doc = verdict.to_json_dict()
        doc["filtration_agreement"] = agreement
        out = _dump(doc) if config.format == "json" else _wmc_text(verdict)
        return (EXIT_PASS if verdict.overall else EXIT_CHECK_FAILED), out

    if config.command == "check-threefold":
        datum = _load_instance(config)
        if datum.n != 3:
            raise PreconditionError(
                f"check-threefold needs relative dimension 3, got {datum.n}"
            )
        vreport = strata.validate(datum, fail_fast=fail_fast)
        if not vreport.ok:
            out = (
                _dump({"validate": vreport.to_json_dict()})
                if config.format == "json"
                else _validate_text(vreport)
            )
            return EXIT_CHECK_FAILED, out
        report = lefschetz.run_threefold_suite(datum, fail_fast=fail_fast)
        out = _dump(report.to_json_dict()) if config.format == "json" else _threefold_text(report)
        return (EXIT_PASS if report.ok else EXIT_CHECK_FAILED), out

    if config.command == "gen":
        if config.gen_kind == "toy":
            datum = instances.build_toy(config.gen_name)
        else:
            spec = instances.GeneratorSpec(
                kind=config.gen_kind, n=config.gen_n, betti=config.gen_betti
            )
            datum = instances.generate(spec)
        out = _dump(strata.datum_to_json_dict(datum))
        return EXIT_PASS, out

    if config.command == "report":
        datum = _load_instance(config)
        vreport = strata.validate(datum)
        doc = {"instance": config.instance_path, "validate": vreport.to_json_dict()}
        code = EXIT_PASS if vreport.ok else EXIT_CHECK_FAILED
        if vreport.ok:
            page, e2 = _build_pages(datum, config.tensor_power)
            verdict = specseq.check_wmc(e2, w_filter=config.w_filter or None)
            doc["pages"] = specseq.page_json_dict(page, e2, verdict)
            agreement = {}
            for w in sorted({e.w for e in verdict.entries}):
                via_filtration = specseq.compare_monodromy_vs_weight(e2, w)
                if via_filtration != verdict.at_w(w):
                    raise InternalConsistencyError(
                        f"filtration comparison disagrees with rank checks at w={w}"
                    )
                agreement[str(w)] = via_filtration
            doc["filtration_agreement"] = agreement
            if datum.n == 3:
                treport = lefschetz.run_threefold_suite(datum)
                doc["threefold"] = treport.to_json_dict()
                if not treport.ok:
                    code = EXIT_CHECK_FAILED
            if not verdict.overall:
                code = EXIT_CHECK_FAILED
        return code, _dump(doc)

    raise ParameterError(f"unknown command {config.command!r}")


def _parser():
    p = argparse.ArgumentParser(
        prog="wsscheck",
        description="Exact checks on weight spectral sequences of semistable degenerations",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, instance=True):
        if instance:
            sp.add_argument("--instance", required=True, help="instance JSON path")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--out", default="", help="output path (default: stdout)")
        sp.add_argument(
            "--w", default="", help="comma-separated abutment degrees to check"
        )
        sp.add_argument(
            "--strict",
            choices=("fail-fast", "collect-all"),
            default="collect-all",
        )
        sp.add_argument(
            "--tensor-power",
            type=int,
            default=1,
            help="check the k-fold tensor power of the instance page",
        )

    for name in ("validate", "pages", "check-wmc", "check-threefold", "report"):
        add_common(sub.add_parser(name))

    g = sub.add_parser("gen", help="emit a generated instance as JSON")
    g.add_argument("kind", choices=("smooth", "ngon", "chain", "toy"))
    g.add_argument("--n", type=int, default=0, help="size parameter / dimension")
    g.add_argument("--betti", default="", help="comma-separated Betti numbers (smooth)")
    g.add_argument("--name", default="", help="toy instance name (toy)")
    g.add_argument("--format", choices=("json",), default="json")
    g.add_argument("--out", default="")

    return p


def _config_from_args(args) -> RunConfig:
    w_filter = ()
    if getattr(args, "w", ""):
        try:
            w_filter = tuple(int(x) for x in args.w.split(",") if x.strip() != "")
        except ValueError:
            raise ParameterError(f"bad --w value {args.w!r}")
    betti = ()
    if getattr(args, "betti", ""):
        try:
            betti = tuple(int(x) for x in args.betti.split(","))
        except ValueError:
            raise ParameterError(f"bad --betti value {args.betti!r}")
    return RunConfig(
        command=args.command,
        instance_path=getattr(args, "instance", ""),
        output_path=getattr(args, "out", ""),
        format=getattr(args, "format", "json"),
        w_filter=w_filter,
        strictness=getattr(args, "strict", "collect-all"),
        tensor_power=getattr(args, "tensor_power", 1),
        gen_kind=getattr(args, "kind", ""),
        gen_n=getattr(args, "n", 0),
        gen_betti=betti,
        gen_name=getattr(args, "name", ""),
    )


def _write_output(config: RunConfig, text: str):
    if not config.output_path:
        sys.stdout.write(text)
        return
    out = Path(config.output_path)
    base = os.environ.get(OUT_DIR_ENV, "")
    if base and not out.is_absolute():
        out = Path(base) / out
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        config = _config_from_args(args)
        code, text = run(config)
        _write_output(config, text)
    except (SchemaError, ParameterError, PreconditionError, InvalidProfile,
            ValidationGateError, InstanceInconsistency, ConventionViolation,
            MutationNotApplicable) as exc:
        sys.stderr.write(f"error: {exc}\n")
        code = EXIT_INPUT_ERROR
    except InternalConsistencyError as exc:
        sys.stderr.write(f"internal consistency error: {exc}\n")
        code = EXIT_INTERNAL
    except EngineError as exc:
        sys.stderr.write(f"error: {exc}\n")
        code = EXIT_INPUT_ERROR
    if argv is None:
        sys.exit(code)
    return code
