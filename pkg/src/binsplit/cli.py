"""Command-line front end: ``binsplit <command> ...``.

Exit codes: 0 success (or every check passed), 1 a check or predicate
failed, 2 usage error, unknown fixture or a tripped resource guard.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, TextIO

from . import __version__
from .catalog import CatalogEntry, load_catalog, validate_entry
from .errors import BinsplitError, LabelError, ResourceError
from .matroid import BinaryMatroid, has_minor, is_isomorphic, parse_matroid
from .multigraph import Multigraph, circuit_matroid, parse_graph
from .obstructions import (
    MAX_SEARCH_ELEMENTS,
    TRIVIAL_RULES,
    ObstructionReport,
    classify_splittings,
    search_forbidden_minors,
)
from .quotients import EXCLUDE_MODES, graphic_quotients, realization_count
from .splitting import split, split_with_element
from .verification import VERIFIERS, Check
from .verification import run as run_checks


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunManifest:
    command: str
    inputs: tuple[str, ...]
    tool_version: str
    digest: str
    seed: str = "none"

    def line(self) -> str:
        return (
            f"MANIFEST command={self.command} inputs={','.join(self.inputs) or '-'} "
            f"seed={self.seed} tool-version={self.tool_version} sha256={self.digest}"
        )


# --- output helpers -----------------------------------------------------------------


class Out:
    def __init__(self, fmt: str):
        self.fmt = fmt
        self.buf = io.StringIO()

    def text(self, line: str = "") -> None:
        if self.fmt == "text":
            self.buf.write(line + "\n")

    def record(self, rec: dict[str, str]) -> None:
        if self.fmt == "records":
            self.buf.write(" ".join(f"{k}={v}" for k, v in rec.items()) + "\n")

    def both(self, line: str, rec: dict[str, str]) -> None:
        self.text(line)
        self.record(rec)


# --- loading inputs ----------------------------------------------------------------------


def _parse_any(text: str, origin: str) -> tuple[str, BinaryMatroid, Multigraph | None]:
    first = next((ln.split("#", 1)[0].strip() for ln in text.splitlines() if ln.split("#", 1)[0].strip()), "")
    if first.startswith("graph"):
        name, G = parse_graph(text)
        return name, circuit_matroid(G), G
    if first.startswith("matroid"):
        name, M = parse_matroid(text)
        return name, M, None
    raise UsageError(f"{origin}: not a matroid or graph file")


def load_input(
    ref: str, catalog: dict[str, CatalogEntry], stdin: TextIO
) -> tuple[str, BinaryMatroid, Multigraph | None]:
    """Resolve ``-`` (stdin), a file path, or a catalog name."""
    if ref == "-":
        return _parse_any(stdin.read(), "stdin")
    if ref in catalog:
        e = catalog[ref]
        return e.name, e.matroid, e.graph
    path = Path(ref)
    if path.is_file():
        return _parse_any(path.read_text(), ref)
    raise LabelError(f"unknown fixture or file {ref!r}")


def _labels(spec: str | None) -> list[str]:
    if not spec:
        return []
    return [x for x in (p.strip() for p in spec.split(",")) if x]


# --- commands -----------------------------------------------------------------------------


def cmd_catalog(args, catalog, out: Out, stdin) -> int:
    if args.action == "list":
        for name, e in sorted(catalog.items()):
            M = e.matroid
            rec = {
                "name": name,
                "kind": e.kind,
                "elements": str(len(M)),
                "rank": str(M.rank),
                "validations": str(len(e.validations)),
                "status": "ok",
            }
            out.both(f"{name:16} {e.kind:8} elements={len(M):<3} rank={M.rank:<2} validations={len(e.validations)} ok", rec)
        out.text(f"total {len(catalog)}")
        return 0
    if not args.name:
        raise UsageError("catalog show needs a name")
    if args.name not in catalog:
        raise LabelError(f"no catalog entry named {args.name!r}")
    e = catalog[args.name]
    if e.provenance:
        out.text(f"# {e.provenance}")
    out.text(e.text().rstrip("\n"))
    for pred, expected, actual in validate_entry(e, catalog):
        status = "ok" if expected == actual else "FAILED"
        out.both(
            f"# validation {pred} = {expected!r} {status}",
            {"name": e.name, "predicate": pred, "expected": repr(expected), "status": status},
        )
    return 0


def cmd_split(args, catalog, out: Out, stdin) -> int:
    name, M, _ = load_input(args.subject, catalog, stdin)
    T = _labels(args.t)
    result = split_with_element(M, T, args.with_element) if args.with_element else split(M, T)
    label = f"{name}_T"
    out.text(result.to_text(label).rstrip("\n"))
    out.record({"name": label, "elements": ",".join(result.elements), "rank": str(result.rank), "rows": ",".join(result.rep.row_strings()) or "-"})
    return 0


def cmd_quotients(args, catalog, out: Out, stdin) -> int:
    name, F, _ = load_input(args.base, catalog, stdin)
    X = load_input(args.exclude, catalog, stdin)[1] if args.exclude else None
    results = graphic_quotients(F, X, exclude_mode=args.exclude_mode, catalog=catalog)
    j = 0
    for i, r in enumerate(results, 1):
        for gname in r.realization_names or (None,):
            j += 1
            label = gname or "unnamed"
            out.both(
                f"quotient {j} class={i} column={r.column_string()} elements={len(r.quotient)} "
                f"rank={r.quotient.rank} graph={label}",
                {
                    "quotient": str(j),
                    "class": str(i),
                    "base": name,
                    "column": r.column_string(),
                    "elements": str(len(r.quotient)),
                    "rank": str(r.quotient.rank),
                    "graph": label,
                },
            )
    total_graphs = realization_count(results)
    out.both(
        f"total classes={len(results)} graphs={total_graphs}",
        {"base": name, "classes": str(len(results)), "graphs": str(total_graphs)},
    )
    return 0


def _report_lines(rep: ObstructionReport, out: Out) -> None:
    rec = rep.as_record()
    out.record(rec)
    out.text(
        f"{rep.subject} k={rep.t_size} {rep.classification} T={rec['T']} culprit={rec['f_member']} "
        f"elements={rec['elements']} rank={rec['rank']}"
    )
    if rep.f_witness is not None:
        w = rep.f_witness.as_record()
        out.text(f"  witness deleted={w['deleted'] or '-'} contracted={w['contracted'] or '-'}")
    if rep.minimality is not None:
        out.text("  " + " ".join(f"{k}={v}" for k, v in rep.minimality.as_record().items()))
    if rep.graph is not None:
        out.text("  edges " + " ".join(f"{lab}:{u}-{v}" for lab, u, v in rep.graph.edges))


def cmd_classify(args, catalog, out: Out, stdin) -> int:
    name, M, G = load_input(args.subject, catalog, stdin)
    _report_lines(classify_splittings(M, args.k, name, graph=G), out)
    return 0


def cmd_search(args, catalog, out: Out, stdin) -> int:
    if args.max_elements > 10:
        print(f"warning: max-elements {args.max_elements} may take a long time", file=sys.stderr)
    res = search_forbidden_minors(args.k, args.max_elements, trivial_rule=args.trivial_rule)
    for rep in res.reports:
        _report_lines(rep, out)
    for rep in res.skipped_trivial:
        _report_lines(rep, out)
    out.both(
        f"total classes={len(res.reports)} trivial_skipped={len(res.skipped_trivial)} "
        f"graphs_examined={res.graphs_examined}",
        {
            "k": str(args.k),
            "max_elements": str(args.max_elements),
            "classes": str(len(res.reports)),
            "trivial_skipped": str(len(res.skipped_trivial)),
            "graphs_examined": str(res.graphs_examined),
        },
    )
    return 0


def cmd_verify(args, catalog, out: Out, stdin) -> int:
    kwargs = {}
    if args.max_elements is not None:
        if args.id not in ("thm-1.2", "thm-1.4"):
            raise UsageError("--max-elements applies to thm-1.2 and thm-1.4 only")
        kwargs["max_elements"] = args.max_elements
    checks: list[Check] = run_checks(args.id, args.fixtures, **kwargs)
    for c in checks:
        out.both(c.line(), c.as_record())
    return 0 if all(c.passed for c in checks) else 1


def cmd_iso(args, catalog, out: Out, stdin) -> int:
    an, A, _ = load_input(args.first, catalog, stdin)
    bn, B, _ = load_input(args.second, catalog, stdin)
    bij = is_isomorphic(A, B)
    mapping = ",".join(f"{x}->{y}" for x, y in sorted(bij.items())) if bij else "-"
    verdict = "isomorphic" if bij is not None else "not-isomorphic"
    out.both(f"{verdict} {an} {bn}" + (f" map={mapping}" if bij else ""), {"first": an, "second": bn, "verdict": verdict, "map": mapping})
    return 0 if bij is not None else 1


def cmd_has_minor(args, catalog, out: Out, stdin) -> int:
    hn, H, _ = load_input(args.host, catalog, stdin)
    pn, P, _ = load_input(args.pattern, catalog, stdin)
    w = has_minor(H, P)
    if w is None:
        out.both(f"absent {pn} in {hn}", {"host": hn, "pattern": pn, "verdict": "absent"})
        return 1
    rec = {"host": hn, "pattern": pn, "verdict": "present", **w.as_record()}
    out.both(
        f"present {pn} in {hn} deleted={rec['deleted'] or '-'} contracted={rec['contracted'] or '-'}",
        rec,
    )
    return 0


COMMANDS = {
    "catalog": cmd_catalog,
    "split": cmd_split,
    "quotients": cmd_quotients,
    "classify": cmd_classify,
    "search": cmd_search,
    "verify": cmd_verify,
    "iso": cmd_iso,
    "has-minor": cmd_has_minor,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "records"), default="text")
    common.add_argument("--fixtures", help="fixture directory (overrides MATROID_FIXTURES)")
    common.add_argument("--manifest", action="store_true", help="append a run manifest line")

    p = argparse.ArgumentParser(prog="binsplit", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", parents=[common], help="list or show fixtures")
    c.add_argument("action", choices=("list", "show"))
    c.add_argument("name", nargs="?")

    s = sub.add_parser("split", parents=[common], help="split a matroid at a set T")
    s.add_argument("subject", help="fixture name, file path or '-'")
    s.add_argument("--t", required=True, help="comma-separated labels")
    s.add_argument("--with-element", metavar="LABEL")

    q = sub.add_parser("quotients", parents=[common], help="graphic quotients over binary lifts")
    q.add_argument("base")
    q.add_argument("--exclude", metavar="FIXTURE")
    q.add_argument("--exclude-mode", choices=EXCLUDE_MODES, default="extension")

    k = sub.add_parser("classify", parents=[common], help="classify all k-splits")
    k.add_argument("subject")
    k.add_argument("--k", type=int, choices=(1, 2, 3), required=True)

    r = sub.add_parser("search", parents=[common], help="search for minor-minimal obstructions")
    r.add_argument("--k", type=int, choices=(2, 3), required=True)
    r.add_argument("--max-elements", type=int, default=10)
    r.add_argument("--trivial-rule", choices=TRIVIAL_RULES, default="inherited")

    v = sub.add_parser("verify", parents=[common], help="run named checks")
    v.add_argument("id", choices=[*VERIFIERS, "all"])
    v.add_argument("--max-elements", type=int, help="also run the search up to this size")

    i = sub.add_parser("iso", parents=[common], help="matroid isomorphism test")
    i.add_argument("first")
    i.add_argument("second")

    h = sub.add_parser("has-minor", parents=[common], help="minor containment test")
    h.add_argument("host")
    h.add_argument("pattern")
    return p


def main(argv: Sequence[str] | None = None, stdin: TextIO | None = None, stdout: TextIO | None = None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    out = Out(args.format)
    try:
        if args.command == "search" and args.max_elements > MAX_SEARCH_ELEMENTS:
            raise ResourceError(f"max-elements {args.max_elements} exceeds the guard of {MAX_SEARCH_ELEMENTS}")
        catalog = load_catalog(args.fixtures)
        code = COMMANDS[args.command](args, catalog, out, stdin)
    except (UsageError, BinsplitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = out.buf.getvalue()
    stdout.write(text)
    if args.manifest:
        inputs = tuple(
            str(getattr(args, a))
            for a in ("subject", "base", "exclude", "first", "second", "host", "pattern", "name", "id", "t", "k", "max_elements")
            if getattr(args, a, None) is not None
        )
        digest = hashlib.sha256(text.encode()).hexdigest()
        stdout.write(RunManifest(args.command, inputs, __version__, digest).line() + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
