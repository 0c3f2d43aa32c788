from __future__ import annotations

import argparse
from dataclasses import dataclass
import json
import logging
import os
import sys
from typing import Callable, List, Optional, Sequence, Tuple

import sympy

from src.app.classify.cross_check import cross_check
from src.app.classify.lists import classify_family, classify_shifted, classify_staircase
from src.app.classify.reduction import tau_finiteness_via_tits
from src.app.classify.verdicts import RepTypeVerdict
from src.app.config.settings import Settings, get_settings
from src.app.errors import InvalidInputError, TauWorkbenchError
from src.app.quiver.algebra import BoundQuiverAlgebra
from src.app.quiver.families import named_family, parse_family, shifted_staircase, staircase
from src.app.quiver.partitions import parse_partition, parse_shifted_partition
from src.app.quiver.quiver_format import emit_quiver_text, read_quiver_text
from src.app.storage.export import write_json, write_text
from src.app.storage.result_cache import ResultCache, cache_key
from src.app.tau.enumeration import counts_to_json, enumerate_hasse, family_table, hasse_to_json
from src.app.tau.recurrences import RECURRENCE_FAMILIES, CountsOracle, verify_recurrences
from src.app.tits.form import evaluate, gram_matrix_text, tits_form
from src.app.tits.search import is_weakly_positive


logger = logging.getLogger(__name__)

SOURCES = ("family", "staircase", "shifted", "quiver")


@dataclass(frozen=True)
class JobSpec:
    """One CLI invocation: the command, exactly one algebra source and the run settings."""

    command: str
    source: str
    source_text: str
    settings: Settings
    output_format: str

    @property
    def label(self) -> str:
        return f"{self.source} {self.source_text}"


def _job(args: argparse.Namespace) -> JobSpec:
    given = [(s, getattr(args, s)) for s in SOURCES if getattr(args, s) is not None]
    if len(given) != 1:
        raise InvalidInputError("give exactly one of --family, --staircase, --shifted, --quiver")
    if args.prime is not None and not sympy.isprime(args.prime):
        raise InvalidInputError(f"--prime {args.prime} is not a prime")
    if args.cap is not None and args.cap < 1:
        raise InvalidInputError("--cap must be >= 1")
    settings = get_settings().with_overrides(
        field_prime=args.prime,
        node_cap=args.cap,
        cache_dir=args.cache_dir,
        workers=args.workers,
    )
    source, text = given[0]
    return JobSpec(args.command, source, text, settings, args.format)


def _family_range(text: str) -> Optional[Tuple[str, int, int]]:
    """``"lambda:4..7"`` as ``("lambda", 4, 7)``; ``None`` for a single family."""
    name, _, raw = text.partition(":")
    if ".." not in raw:
        return None
    lo, _, hi = raw.partition("..")
    try:
        first, last = int(lo), int(hi)
    except ValueError:
        raise InvalidInputError(f"bad family range {text!r}") from None
    if first > last:
        raise InvalidInputError(f"empty family range {text!r}")
    return name.strip().lower(), first, last


def load_algebra(job: JobSpec) -> BoundQuiverAlgebra:
    if job.source == "family":
        name, params = parse_family(job.source_text)
        return named_family(name, params)
    if job.source == "staircase":
        return staircase(parse_partition(job.source_text))
    if job.source == "shifted":
        return shifted_staircase(parse_shifted_partition(job.source_text))
    try:
        with open(job.source_text, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise InvalidInputError(f"cannot read quiver file {job.source_text}: {e}") from e
    return read_quiver_text(text)


def _dump(document: object) -> str:
    return json.dumps(document, sort_keys=True, indent=2)


def _cached(job: JobSpec, algebra: BoundQuiverAlgebra, operation: str, render: Callable[[], str]) -> str:
    cache = ResultCache(job.settings.cache_dir)
    key = cache_key(algebra, job.settings.field_prime, f"{operation}|{job.output_format}|{job.label}")
    hit = cache.get(key)
    if hit is not None:
        logger.info("cache hit for %s %s", job.command, job.label)
        return hit
    output = render()
    cache.set(key, output)
    return output


# construct


def cmd_construct(job: JobSpec, emit_quiver: str | None = None) -> str:
    algebra = load_algebra(job)
    if emit_quiver:
        write_text(emit_quiver, emit_quiver_text(algebra))
        logger.info("wrote quiver text to %s", emit_quiver)
    quiver = algebra.quiver
    if job.output_format == "json":
        return _dump({
            "vertices": quiver.n,
            "arrows": [[a.id, a.source, a.target] for a in quiver.arrows],
            "relations": [str(r) for r in algebra.relations],
            "dimension": algebra.dimension,
            "labels": list(quiver.labels),
        })
    lines = [
        f"{quiver.n} vertices, {len(quiver.arrows)} arrows, {len(algebra.relations)} relations",
        f"dimension {algebra.dimension}",
        "arrows:",
    ]
    lines.extend(f"  {a.id}: {a.source} -> {a.target}" for a in quiver.arrows)
    if len(algebra.relations):
        lines.append("relations:")
        lines.extend(f"  {r}" for r in algebra.relations)
    return "\n".join(lines)


# tits


def _parse_vector(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace("/", ",").split(",") if x.strip()]
    except ValueError:
        raise InvalidInputError(f"bad vector {text!r}") from None


def cmd_tits(job: JobSpec, eval_vector: str | None = None) -> str:
    algebra = load_algebra(job)
    q = tits_form(algebra)
    if eval_vector is not None:
        v = _parse_vector(eval_vector)
        value = evaluate(q, v)
        if job.output_format == "json":
            return _dump({"vector": v, "value": value})
        return str(value)

    def render() -> str:
        result = is_weakly_positive(q, job.settings.positivity_bound, job.settings.search_cap)
        if job.output_format == "json":
            return _dump({"gram2": [list(r) for r in q.gram2], "positivity": result.to_dict()})
        lines = [gram_matrix_text(q), result.status]
        if result.certificate is not None:
            cert = result.certificate
            lines.append(f"certificate {','.join(str(x) for x in cert)} (q = {evaluate(q, cert)})")
        if not q.minimality_verified:
            lines.append("relation minimality not verified")
        return "\n".join(lines)

    return _cached(job, algebra, "tits", render)


# enumerate


def _recursion_json(report) -> dict:
    return {
        "family": report.family,
        "n_max": report.n_max,
        "all_hold": report.all_hold,
        "checks": [
            {"name": c.name, "n": c.n, "s": c.s, "lhs": c.lhs, "rhs": c.rhs, "holds": c.holds}
            for c in report.checks
        ],
    }


def _single_family(job: JobSpec) -> Optional[Tuple[str, int]]:
    if job.source != "family":
        return None
    name, params = parse_family(job.source_text)
    return (name, params[0]) if len(params) == 1 else None


def cmd_enumerate(job: JobSpec, verify: bool = False, hasse_out: str | None = None) -> str:
    s = job.settings
    oracle = CountsOracle(s.field_prime, s.node_cap, s.workers)
    span = _family_range(job.source_text) if job.source == "family" else None
    single = None if span is not None else _single_family(job)
    if span is not None:
        family, first, last = span
        algebra = named_family(family, (last,))
    else:
        algebra = load_algebra(job)
        family, first, last = (single[0], single[1], single[1]) if single else ("", 0, 0)
    if hasse_out and span is not None:
        raise InvalidInputError("--hasse-out needs a single algebra, not a family range")
    if verify and family not in RECURRENCE_FAMILIES:
        raise InvalidInputError(
            f"--verify-recursions needs --family with one of {', '.join(RECURRENCE_FAMILIES)}"
        )
    as_json = job.output_format == "json"

    computed: dict = {}

    def diagram_and_table():
        if "run" not in computed:
            if single is not None:
                computed["run"] = (oracle.diagram(family, last), oracle.table(family, last))
            else:
                computed["run"] = enumerate_hasse(algebra, s.node_cap, s.field_prime, s.workers)
        return computed["run"]

    def render() -> str:
        doc: dict = {}
        text = ""
        if span is not None:
            rows = [(n, oracle.table(family, n)) for n in range(first, last + 1)]
            doc = {"family": family, "rows": [{"n": n, **counts_to_json(t)} for n, t in rows]}
            text = family_table(rows)
        else:
            diagram, table = diagram_and_table()
            doc = hasse_to_json(diagram) if as_json else {}
            text = table.row()
        if verify:
            report = verify_recurrences(family, last, oracle)
            doc["recursions"] = _recursion_json(report)
            text = text + "\n" + report.render()
        return _dump(doc) if as_json else text

    output = _cached(job, algebra, "enumerate" + ("+verify" if verify else ""), render)
    if hasse_out:
        write_json(hasse_out, hasse_to_json(diagram_and_table()[0]))
        logger.info("wrote Hasse diagram to %s", hasse_out)
    return output


# classify


def _listed_verdict(job: JobSpec, algebra: BoundQuiverAlgebra) -> RepTypeVerdict:
    if job.source == "staircase":
        return classify_staircase(parse_partition(job.source_text))
    if job.source == "shifted":
        return classify_shifted(parse_shifted_partition(job.source_text))
    if job.source == "family":
        name, params = parse_family(job.source_text)
        return classify_family(name, params)
    subject = os.path.basename(job.source_text)
    return tau_finiteness_via_tits(algebra, "separation", job.settings.positivity_bound, subject, job.settings.field_prime)


def _verdict_lines(v: RepTypeVerdict, indent: str = "") -> List[str]:
    lines = [f"{indent}{v.subject}: {v.summary()}" if indent else v.summary()]
    for e in v.evidence:
        for c in e.certificates:
            lines.append(f"{indent}  certificate: {','.join(str(x) for x in c)}")
        if e.note:
            lines.append(f"{indent}  note: {e.note}")
        for child in e.children:
            lines.extend(_verdict_lines(child, indent + "  "))
    return lines


def cmd_classify(job: JobSpec, check: bool = False) -> str:
    algebra = load_algebra(job)
    s = job.settings

    def render() -> str:
        listed = _listed_verdict(job, algebra)
        report = cross_check(listed, algebra, s.node_cap, s.field_prime, s.workers) if check else None
        if job.output_format == "json":
            doc = listed.to_dict()
            if report is not None:
                doc["cross_check"] = {
                    "tits": report.tits.to_dict(),
                    "counts": counts_to_json(report.counts) if report.counts is not None else None,
                    "enumeration_note": report.enumeration_note,
                    "agrees": report.agrees,
                }
            return _dump(doc)
        lines = _verdict_lines(listed)
        if report is not None:
            lines.extend(report.lines())
        return "\n".join(lines)

    return _cached(job, algebra, "classify" + ("+check" if check else ""), render)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_argument_group("algebra source (exactly one)")
    source.add_argument("--family", metavar="NAME:PARAMS", help="named family, e.g. lambda:4 or grid:2,4")
    source.add_argument("--staircase", metavar="PARTS", help="partition, e.g. 3,3,2 or 2^2,1^3")
    source.add_argument("--shifted", metavar="PARTS", help="strict partition, e.g. 4,3,2,1")
    source.add_argument("--quiver", metavar="PATH", help="text quiver file")
    common.add_argument("--prime", type=int, help="working prime (default TAU_FIELD_PRIME)")
    common.add_argument("--cap", type=int, help="node cap for enumeration (default TAU_NODE_CAP)")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--cache-dir", help="result cache directory (default TAU_CACHE_DIR)")
    common.add_argument("--workers", type=int, help="worker threads for enumeration")

    parser = argparse.ArgumentParser(prog="tau-workbench", description="tau-tilting workbench for bound quiver algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build an algebra and print its presentation")
    p.add_argument("--emit-quiver", metavar="PATH", help="write the text quiver format to PATH")
    p = sub.add_parser("tits", parents=[common], help="Tits form and weak positivity")
    p.add_argument("--eval", metavar="V", help="evaluate q at a comma-separated vector")
    p = sub.add_parser("enumerate", parents=[common], help="support tau-tilting pairs by left mutation")
    p.add_argument("--verify-recursions", action="store_true", help="check the family's recursion identities")
    p.add_argument("--hasse-out", metavar="PATH", help="write the Hasse diagram as JSON to PATH")
    p = sub.add_parser("classify", parents=[common], help="tau-finiteness and representation type")
    p.add_argument("--cross-check", action="store_true", help="also run the Tits route and enumeration")
    return parser


def run(args: argparse.Namespace) -> str:
    job = _job(args)
    logger.debug("job %s on %s", job.command, job.label)
    if job.command == "construct":
        return cmd_construct(job, args.emit_quiver)
    if job.command == "tits":
        return cmd_tits(job, args.eval)
    if job.command == "enumerate":
        return cmd_enumerate(job, args.verify_recursions, args.hasse_out)
    return cmd_classify(job, args.cross_check)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=get_settings().log_level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        output = run(args)
    except TauWorkbenchError as e:
        print(str(e), file=sys.stderr)
        return e.exit_code
    print(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
