"""Command-line entry point.

Exit codes: 0 success, 2 hypothesis violation or failed verification,
3 parse/validation error, 4 inconclusive randomized search, 1 anything else
(including corpus expectation mismatches).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import corpus
from .certificate import LinearizationCertificate, verify_certificate
from .documents import dumps, parse_instance
from .errors import HypothesisViolation, Inconclusive, ParseError, ValidationError

log = logging.getLogger("skewfield")

EXIT_OK, EXIT_UNEXPECTED, EXIT_VIOLATION, EXIT_PARSE, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, HypothesisViolation):
        return EXIT_VIOLATION
    if isinstance(exc, (ParseError, ValidationError)):
        return EXIT_PARSE
    if isinstance(exc, Inconclusive):
        return EXIT_INCONCLUSIVE
    return EXIT_UNEXPECTED


def load_instance(ref: str):
    """A path to an instance document, or the name of a corpus entry."""
    path = Path(ref)
    if path.is_file():
        return parse_instance(path.read_text(encoding="utf-8"))
    try:
        return corpus.load(ref)
    except KeyError:
        raise ParseError(f"no such file or corpus entry: {ref}", ref) from None


def emit(doc, out: str | None):
    text = dumps(doc)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_verb(args) -> int:
    M = load_instance(args.instance)
    doc, _ = corpus.run_verb(args.verb, M, seed=args.seed)
    emit(doc, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    M = load_instance(args.instance)
    try:
        raw = json.loads(Path(args.cert).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{args.cert} line {exc.lineno}") from exc
    if isinstance(raw, dict) and raw.get("kind") == "one-sided":
        raw = raw.get("certificate")
    cert = LinearizationCertificate.from_json(raw)
    res = verify_certificate(M, cert)
    emit({"kind": "verification", "ok": res.ok, "failed_check": res.failed_check, "detail": res.detail}, args.out)
    return EXIT_OK if res.ok else EXIT_VIOLATION


def _run_one(job):
    name, verb, expected, seed = job
    matched, observed = corpus.run_expectation(name, verb, expected, seed)
    return name, verb, matched, observed


def cmd_corpus(args) -> int:
    entries = corpus.manifest()
    if args.action == "list":
        for name, e in entries.items():
            verbs = ", ".join(r["verb"] for r in e.runs)
            print(f"{name}\t{verbs}")
        return EXIT_OK
    if args.action == "show":
        if not args.names:
            raise ParseError("corpus show needs an entry name")
        for name in args.names:
            if name not in entries:
                raise ParseError(f"no corpus entry {name}", name)
            e = entries[name]
            sys.stdout.write(dumps({"name": name, "runs": list(e.runs), "provenance": e.provenance, "instance": json.loads(corpus._read(e.file))}))
        return EXIT_OK
    names = sorted(entries) if args.all or not args.names else sorted(args.names)
    for name in names:
        if name not in entries:
            raise ParseError(f"no corpus entry {name}", name)
    jobs = [(name, r["verb"], r["expected"], args.seed) for name in names for r in entries[name].runs]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    failures = 0
    for name, verb, matched, observed in sorted(results, key=lambda r: (r[0], r[1])):
        status = "PASS" if matched else "FAIL"
        failures += not matched
        print(f"{status}  {name:<28} {verb:<20} {json.dumps(observed, sort_keys=True)}")
    print(f"{len(results) - failures}/{len(results)} expectations met")
    return EXIT_OK if failures == 0 else EXIT_UNEXPECTED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="skewfield", description="Exact skew-field linearisation of irreducible matrix actions.")
    parser.add_argument("--verbose", "-v", action="store_true")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, instance=True):
        if instance:
            p.add_argument("instance", help="instance document path or corpus entry name")
        p.add_argument("--out", help="write the result document here instead of stdout")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized steps")

    for verb, help_text in (
        ("centralize", "commutant of the S generators (or G if S is empty)"),
        ("irreducible", "irreducibility verdict with a witness submodule"),
        ("delta", "minimal rank of a nonzero element of <S>"),
        ("linearize", "full pipeline; prints a certificate"),
        ("corollary-one-sided", "T = C(S) is a skew-field"),
        ("corollary-group", "linearise an irreducible group action"),
        ("corollary-np", "commutative ring normalised by an irreducible group"),
    ):
        p = sub.add_parser(verb, help=help_text)
        common(p)
        p.set_defaults(func=cmd_verb)
    p = sub.add_parser("verify", help="re-check a certificate against its instance")
    common(p)
    p.add_argument("--cert", required=True, help="certificate document")
    p.set_defaults(func=cmd_verify)
    p = sub.add_parser("corpus", help="built-in example corpus")
    p.add_argument("action", choices=("list", "run", "show"))
    p.add_argument("names", nargs="*")
    p.add_argument("--all", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except HypothesisViolation as exc:
        doc = corpus.violation_json(exc)
        if getattr(args, "out", None):
            emit(doc, args.out)
        else:
            sys.stdout.write(dumps(doc))
        print(f"hypothesis violation {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except Exception as exc:  # noqa: BLE001 - every error class maps to an exit code
        code = exit_code_for(exc)
        if code == EXIT_UNEXPECTED:
            log.exception("unexpected error")
        print(f"error: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
