"""Command-line interface: ``contactkit <command> --catalog ID | --manifest PATH``.

Exit status is 0 when every check passes (skips count as passes), 1 when a
check fails and 2 on input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .catalog import UnknownEntryError, load_entry
from .connections import difference_tensor
from .contact import (NotLegendrianError, RankMismatchError, classify_distribution,
                      h_report, legendrian_report, validate_contact_metric)
from .manifest import ManifestError, dumps, export_entry, export_structure, load
from .reports import FAIL, AxiomReport, Check
from .symplectic import (DarbouxError, FlatnessError, SymplecticStructure, check_hess_axioms,
                         check_lemma_a1, kahler_from_flat_bilagrangian, lagrangian_report,
                         validate_symplectic)
from .theorems import (check_bilegendrian_axioms, check_coincidence_theorem,
                       check_connection_identities, check_metric_equivalences,
                       check_tanno_axioms, check_tilde_theorem)

SCHEMA_VERSION = 1
COMMANDS = ("validate", "classify", "connection", "check", "compare", "export")
CONTACT_SUITES = ("tanno", "bilegendrian", "metric-equiv", "coincidence", "tilde-theorem",
                  "identities")
SUITES = CONTACT_SUITES + ("appendix",)
CONNECTIONS = ("lc", "tw", "tilde", "bl")
TRUNCATED = "...[truncated]"


class InputError(Exception):
    """Bad command-line input; maps to exit status 2."""


# ---------------------------------------------------------------------------
# subjects

class Subject:
    def __init__(self, structure, label, entry=None, doc=None):
        self.structure = structure
        self.label = label
        self.entry = entry
        self.doc = doc

    @property
    def symplectic(self) -> bool:
        return isinstance(self.structure, SymplecticStructure)


def resolve_subject(catalog: str | None, manifest: str | None) -> Subject:
    if bool(catalog) == bool(manifest):
        raise InputError("give exactly one of --catalog or --manifest")
    if catalog:
        try:
            entry = load_entry(catalog)
        except UnknownEntryError as exc:
            raise InputError(f"unknown catalog entry {exc.args[0]!r}") from None
        except ValueError as exc:
            raise InputError(str(exc)) from None
        return Subject(entry.structure, entry.label, entry=entry)
    try:
        S, doc = load(manifest)
    except OSError as exc:
        raise InputError(f"cannot read manifest: {exc.strerror}") from None
    except ManifestError as exc:
        raise InputError(f"manifest schema violation at {exc}") from None
    except ValueError as exc:
        raise InputError(f"manifest rejected: {exc}") from None
    return Subject(S, doc.get("name", manifest), doc=doc)


# ---------------------------------------------------------------------------
# report assembly

def _truncate(text, limit):
    if text is None or limit is None or len(text) <= limit:
        return text
    return text[:limit] + TRUNCATED


def check_dict(c: Check, prefix: str, flags: dict, limit) -> dict:
    out = {"name": f"{prefix}{c.name}", "verdict": c.verdict}
    if c.witness is not None:
        out["witness"] = _truncate(c.witness, limit)
    if c.detail is not None:
        out["detail"] = c.detail
    if flags:
        out["hypothesis_flags"] = dict(sorted(flags.items()))
    return out


class Report:
    def __init__(self, command: str, subject: str, limit=None):
        self.command = command
        self.subject = subject
        self.limit = limit
        self.checks = []
        self.notes = []
        self.data = {}
        self.provenance = None
        self.timing = None

    def extend(self, rep: AxiomReport, prefix: str = ""):
        for c in rep.checks:
            self.checks.append(check_dict(c, prefix, rep.flags, self.limit))
        self.notes.extend(f"{prefix}{n}" for n in rep.notes)

    @property
    def exit(self) -> int:
        return 1 if any(c["verdict"] == FAIL for c in self.checks) else 0

    def to_dict(self) -> dict:
        out = {"schema_version": SCHEMA_VERSION, "engine_version": __version__,
               "command": self.command, "subject": self.subject, "checks": self.checks}
        if self.data:
            out["data"] = self.data
        if self.notes:
            out["notes"] = self.notes
        if self.provenance:
            out["provenance"] = self.provenance
        if self.timing is not None:
            out["timing_seconds"] = self.timing
        out["exit"] = self.exit
        return out


def emit_report(report: dict, fmt: str = "json") -> str:
    """Serialise deterministically as JSON or as a plain-text table."""
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    lines = [f"{report['command']}  {report['subject']}"]
    width = max((len(c["name"]) for c in report["checks"]), default=0)
    for c in report["checks"]:
        line = f"  {c['verdict'].upper():4}  {c['name']:<{width}}"
        if "witness" in c:
            line += f"  witness: {c['witness']}"
        elif c["verdict"] == "skip" and "detail" in c:
            line += f"  ({c['detail']})"
        lines.append(line.rstrip())
    for key, value in sorted(report.get("data", {}).items()):
        lines.append(f"  {key}:")
        if value == {}:
            lines.append("    (all zero)")
        elif isinstance(value, dict):
            for k, v in value.items():
                lines.append(f"    {k}: {v if not isinstance(v, dict) else json.dumps(v, sort_keys=True)}")
        else:
            lines.append(f"    {value}")
    for n in report.get("notes", []):
        lines.append(f"  note: {n}")
    lines.append(f"exit {report['exit']}")
    return "\n".join(lines) + "\n"


def _provenance(subject: Subject):
    if subject.entry is None:
        return None
    return {k: {"value": v.value, "tag": v.tag} for k, v in sorted(subject.entry.expected.items())}


# ---------------------------------------------------------------------------
# commands

def _connection(subject: Subject, kind: str):
    S = subject.structure
    if kind not in CONNECTIONS:
        raise InputError(f"unknown connection {kind!r}; expected one of {', '.join(CONNECTIONS)}")
    if subject.symplectic:
        if kind == "bl":
            return S.connection
        if kind == "lc":
            from .connections import FrameConnection, levi_civita_table
            if S.g is not None:
                g = S.to_frame_metric(S.g)
            else:
                try:
                    g = kahler_from_flat_bilagrangian(S)[1]
                except (FlatnessError, DarbouxError) as exc:
                    raise InputError(str(exc)) from None
            return FrameConnection(S.fbasis, levi_civita_table(S.fbasis, g), "levi-civita")
        raise InputError(f"connection {kind!r} needs a contact structure")
    return S.geometry().connection(kind)


def cmd_validate(subject: Subject, args, report: Report):
    S = subject.structure
    if subject.symplectic:
        report.extend(validate_symplectic(S), "symplectic: ")
        report.extend(lagrangian_report(S, S.F), "F: ")
        report.extend(lagrangian_report(S, S.G), "G: ")
        return
    report.extend(validate_contact_metric(S), "contact metric: ")
    report.extend(h_report(S), "h: ")
    for name, D in (("L", S.L), ("Q", S.Q)):
        try:
            report.extend(legendrian_report(S, D), f"{name}: ")
        except RankMismatchError as exc:
            report.checks.append({"name": f"{name}: rank", "verdict": FAIL, "witness": str(exc)})


def cmd_classify(subject: Subject, args, report: Report):
    if subject.symplectic:
        raise InputError("classify needs a contact structure")
    S = subject.structure
    out = {}
    for name, D in (("L", S.L), ("Q", S.Q)):
        try:
            res = classify_distribution(S, D)
        except (NotLegendrianError, RankMismatchError) as exc:
            report.checks.append({"name": f"{name}: Legendrian", "verdict": FAIL,
                                  "witness": str(exc)})
            continue
        report.checks.append({"name": f"{name}: Legendrian", "verdict": "pass"})
        d = res.to_dict()
        d["pang_matrix"] = [[_truncate(x, report.limit) for x in row] for row in d["pang_matrix"]]
        out[name] = d
    report.data["classification"] = out


def cmd_connection(subject: Subject, args, report: Report):
    kinds = args.connection or ["bl"]
    for kind in kinds:
        C = _connection(subject, kind)
        report.data[f"connection {kind}"] = {k: _truncate(v, report.limit)
                                             for k, v in C.table().items()}


def _suite(subject: Subject, suite: str, args, report: Report):
    S = subject.structure
    if suite not in SUITES:
        raise InputError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
    if subject.symplectic != (suite == "appendix"):
        raise InputError(f"suite {suite!r} does not apply to a "
                         f"{'symplectic' if subject.symplectic else 'contact'} structure")
    if suite == "appendix":
        report.extend(check_hess_axioms(S.connection, S), "appendix: ")
        try:
            _, _, rep = kahler_from_flat_bilagrangian(S)
            report.extend(rep, "appendix: ")
        except (FlatnessError, DarbouxError) as exc:
            report.checks.append({"name": "appendix: Kaehler construction", "verdict": "skip",
                                  "detail": str(exc)})
        if S.J is not None and S.g is not None:
            report.extend(check_lemma_a1(S), "appendix (given J, g): ")
        return
    G = S.geometry()
    if suite in ("tanno", "bilegendrian"):
        kinds = args.connection or ["tw" if suite == "tanno" else "bl"]
        checker = check_tanno_axioms if suite == "tanno" else check_bilegendrian_axioms
        for kind in kinds:
            report.extend(checker(G.connection(kind), G), f"{suite}[{kind}]: ")
        return
    fn = {"metric-equiv": check_metric_equivalences, "coincidence": check_coincidence_theorem,
          "tilde-theorem": check_tilde_theorem, "identities": check_connection_identities}[suite]
    report.extend(fn(S), f"{suite}: ")


def cmd_check(subject: Subject, args, report: Report):
    suites = args.suite
    if not suites and subject.doc is not None:
        suites = subject.doc.get("checks") or None
    if not suites:
        suites = ["appendix"] if subject.symplectic else list(CONTACT_SUITES)
    for suite in suites:
        _suite(subject, suite, args, report)


def cmd_compare(subject: Subject, args, report: Report):
    kinds = args.connection or []
    if len(kinds) != 2:
        raise InputError("compare needs exactly two --connection values")
    A, B = (_connection(subject, k) for k in kinds)
    D = difference_tensor(A, B)
    nonzero = D.nonzero()
    name = f"{kinds[0]} = {kinds[1]}"
    if nonzero:
        first = next(iter(nonzero.items()))
        report.checks.append({"name": name, "verdict": FAIL,
                              "witness": _truncate(f"{first[0]} = {first[1]}", report.limit),
                              "detail": f"{len(nonzero)} nonzero component(s)"})
    else:
        report.checks.append({"name": name, "verdict": "pass"})
    report.data["difference"] = {k: _truncate(v, report.limit) for k, v in nonzero.items()}


HANDLERS = {"validate": cmd_validate, "classify": cmd_classify, "connection": cmd_connection,
            "check": cmd_check, "compare": cmd_compare}


def run_command(command: str, catalog=None, manifest=None, suite=None, connection=None,
                max_witness_len=None, timing=False) -> tuple:
    """Run one command and return ``(report_dict, exit_code)``.

    ``export`` returns the manifest document instead of a report.
    """
    args = argparse.Namespace(suite=list(suite or []), connection=list(connection or []))
    if command not in COMMANDS:
        raise InputError(f"unknown command {command!r}")
    subject = resolve_subject(catalog, manifest)
    if command == "export":
        if subject.entry is not None:
            return export_entry(subject.entry, checks=args.suite), 0
        return export_structure(subject.structure, name=subject.label, checks=args.suite), 0
    report = Report(command, subject.label, max_witness_len)
    report.provenance = _provenance(subject)
    start = time.perf_counter()
    HANDLERS[command](subject, args, report)
    if timing:
        report.timing = round(time.perf_counter() - start, 3)
    out = report.to_dict()
    return out, out["exit"]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="contactkit",
        description="Exact connections and axiom checks on contact metric and symplectic charts.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--catalog", metavar="ID", help="built-in entry, e.g. r2n1, r2n1(n=2), s3")
    p.add_argument("--manifest", metavar="PATH", help="JSON manifest file")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--suite", action="append", metavar="NAME",
                   help=f"check suite ({', '.join(SUITES)}); repeatable")
    p.add_argument("--connection", action="append", metavar="KIND",
                   help=f"connection ({', '.join(CONNECTIONS)}); repeatable")
    p.add_argument("--max-witness-len", type=int, default=400, metavar="N",
                   help="truncate witnesses longer than N characters")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing")
    p.add_argument("--output", metavar="PATH", help="write the document here instead of stdout")
    p.add_argument("--version", action="version", version=f"contactkit {__version__}")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.max_witness_len is not None and args.max_witness_len < 1:
        parser.error("--max-witness-len must be positive")
    try:
        doc, code = run_command(args.command, args.catalog, args.manifest, args.suite,
                                args.connection, args.max_witness_len, args.timing)
    except InputError as exc:
        print(f"contactkit: error: {exc}", file=sys.stderr)
        return 2
    text = dumps(doc) if args.command == "export" else emit_report(doc, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
