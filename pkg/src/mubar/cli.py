"""Command-line entry point.

Inputs are JSON documents, read from a file, from stdin (``-i -``) or
given inline (``-i '{"strands": 2, "word": [1, 1]}'``).  Recognized shapes:

* braid: ``{"strands": m, "word": [1, -2, ...]}``
* longitudes: ``{"m": m, "longitudes": ["X1^-1 X2", ...]}``
* string-link diagram: ``{"m": m, "crossings": [...], "events": [...]}``
* PD code: ``{"components": m, "crossings": [[a, b, c, d, "+"], ...]}``

Exit codes: 0 success, 1 a factorization mismatch was found, 2 the input
could not be parsed, 3 a precondition of the requested computation fails.
"""
from __future__ import annotations

import argparse
import itertools
import json
import logging
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .diagrams import (CrossingLimitError, DiagramError, LinkDiagram, StringLinkDiagram,
                       braid_closure, close_knot, close_link, conway_skein,
                       verify_factorization)
from .factor import (SCHEMA, HypothesisError, gamma, gamma_checks, rational_form, report)
from .milnor import LinkingData, LongitudeError, mu_table
from .words import Braid, Word, WordError, nilpotent_longitudes, normalize_longitude

log = logging.getLogger("mubar")

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3


class ParseError(ValueError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass
class Job:
    """Parsed input: exactly one of the fields below is set."""

    kind: str
    braid: Braid | None = None
    diagram: StringLinkDiagram | None = None
    longitudes: list[Word] | None = None
    link: LinkDiagram | None = None
    notes: list[str] = field(default_factory=list)

    def string_link(self) -> StringLinkDiagram:
        if self.diagram is not None:
            return self.diagram
        if self.braid is not None:
            if not self.braid.is_pure:
                raise PreconditionError("the braid is not pure, so it is not a string link")
            return StringLinkDiagram.from_braid(self.braid)
        raise PreconditionError(f"a {self.kind} input carries no string-link diagram")

    def longitude_words(self, q: int) -> list[Word]:
        if self.longitudes is not None:
            return self.longitudes
        if self.link is not None:
            raise PreconditionError("a closed link diagram has no string-link longitudes")
        return nilpotent_longitudes(self.string_link().wirtinger(), q)


def read_payload(source: str) -> dict:
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith("{"):
        text = source
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {source}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("input must be a JSON object")
    return data


def parse_job(data: dict) -> Job:
    try:
        if "word" in data:
            return Job("braid", braid=Braid.from_json(data))
        if "longitudes" in data:
            m = int(data["m"])
            words = [Word.parse(s) for s in data["longitudes"]]
            if len(words) != m:
                raise ParseError(f"expected {m} longitudes, got {len(words)}")
            notes = []
            for i, w in enumerate(words, 1):
                if w.max_index() > m:
                    raise ParseError(f"longitude {w} uses a generator beyond {m}")
                if w.exponent_sum():
                    words[i - 1] = normalize_longitude(w, i)
                    notes.append(f"longitude {i} normalized by x{i}^{-w.exponent_sum()}")
            for n in notes:
                log.info(n)
            return Job("longitudes", longitudes=words, notes=notes)
        if "events" in data:
            return Job("string-link", diagram=StringLinkDiagram.from_json(data))
        if "crossings" in data:
            return Job("pd", link=LinkDiagram.from_pd(data))
    except (WordError, DiagramError, KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"{type(exc).__name__}: {exc}") from exc
    raise ParseError("unrecognized input: expected a braid, longitudes, "
                     "string-link diagram or PD code")


# ---------------------------------------------------------------------------
# Commands; each returns (report, exit code)


def cmd_mu(job: Job, q: int) -> tuple[dict, int]:
    table = mu_table(job.longitude_words(q), q)
    return {"schema": SCHEMA, "command": "mu", **table.to_json(), "notes": job.notes}, EXIT_OK


def _gamma_parts(job: Job, q: int):
    words = job.longitude_words(q)
    table = mu_table(words, q)
    lk = LinkingData.from_longitudes(words)
    return table, lk, gamma(table)


def cmd_gamma(job: Job, q: int) -> tuple[dict, int]:
    table, lk, g = _gamma_parts(job, q)
    checks = gamma_checks(g, lk) if lk.split and table.m > 1 else None
    out = report(g, checks, {"command": "gamma", "m": table.m, "q": g.q,
                             "linking": lk.to_json(), "notes": job.notes + g.notes})
    return out, EXIT_OK


def cmd_phi(job: Job, q: int) -> tuple[dict, int]:
    table, _, g = _gamma_parts(job, q)
    return {"schema": SCHEMA, "command": "phi", "m": table.m, "q": g.phi_u.q,
            "phi_u": g.phi_u.to_json(), "rational": rational_form(g.phi_u),
            "notes": job.notes}, EXIT_OK


def cmd_conway(job: Job, q: int, max_crossings: int | None) -> tuple[dict, int]:
    out = {"schema": SCHEMA, "command": "conway"}
    if job.link is not None:
        out["nabla"] = conway_skein(job.link, max_crossings).to_json()
    elif job.braid is not None and not job.braid.is_pure:
        out["nabla"] = conway_skein(braid_closure(job.braid), max_crossings).to_json()
    else:
        d = job.string_link()
        out["nabla_L"] = conway_skein(close_link(d), max_crossings).to_json()
        out["nabla_K"] = conway_skein(close_knot(d), max_crossings).to_json()
    return out, EXIT_OK


def cmd_verify(job: Job, q: int, max_crossings: int | None) -> tuple[dict, int]:
    r = verify_factorization(job.string_link(), q, max_crossings)
    out = {**r.to_json(), "command": "verify"}
    return out, EXIT_OK if r.passed else EXIT_MISMATCH


def corpus_words(strands: int, max_letters: int):
    """Freely reduced pure braid words, by strand count, length, then letters."""
    for m in range(2, strands + 1):
        letters = sorted(k * s for k in range(1, m) for s in (1, -1))
        for n in range(max_letters + 1):
            for w in itertools.product(letters, repeat=n):
                if any(w[i] == -w[i + 1] for i in range(n - 1)):
                    continue
                b = Braid(m, w)
                if b.is_pure:
                    yield b


def _corpus_item(args: tuple[int, Braid, int, int | None]) -> dict:
    ident, b, q, max_crossings = args
    r = verify_factorization(StringLinkDiagram.from_braid(b), q, max_crossings)
    return {"id": ident, "strands": b.strands, "word": list(b.word), "pass": r.passed,
            "mismatch_degrees": r.mismatches, "unit_exponent": r.unit,
            "unit_gamma_matches": r.unit_gamma_matches}


def cmd_corpus(strands: int, max_letters: int, q: int, seed: int | None, sample: int | None,
               max_crossings: int | None, jobs: int = 1) -> tuple[dict, int]:
    if strands < 2 or max_letters < 0:
        raise PreconditionError("need --strands >= 2 and --max-letters >= 0")
    items = list(enumerate(corpus_words(strands, max_letters)))
    if sample is not None and sample < len(items):
        items = sorted(random.Random(seed).sample(items, sample))
    work = [(i, b, q, max_crossings) for i, b in items]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            rows = list(pool.map(_corpus_item, work, chunksize=8))
    else:
        rows = [_corpus_item(w) for w in work]
    rows.sort(key=lambda r: r["id"])
    failed = [r["id"] for r in rows if not r["pass"]]
    out = {"schema": SCHEMA, "command": "corpus", "strands": strands,
           "max_letters": max_letters, "q": q, "seed": seed, "sample": sample,
           "total": len(rows), "passed": len(rows) - len(failed), "failed": len(failed),
           "failed_ids": failed,
           "unit_gamma_matches": sum(r["unit_gamma_matches"] for r in rows),
           "items": rows}
    return out, EXIT_MISMATCH if failed else EXIT_OK


# ---------------------------------------------------------------------------
# Rendering


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list))
                                                         for x in (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_flat(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                lines.append(f"{pad}- " + ", ".join(f"{k}={_flat(x)}" for k, x in v.items()))
            else:
                lines.append(f"{pad}- {_flat(v)}")
    else:
        lines.append(pad + _flat(obj))
    return "\n".join(lines)


def _flat(v) -> str:
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_flat(x)}" for k, x in v.items()) + "}"
    return json.dumps(v, separators=(",", ":"))


def emit(out: dict, fmt: str) -> str:
    if fmt == "text":
        return render_text(out) + "\n"
    return json.dumps(out, indent=2) + "\n"


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mubar", description=__doc__.split("\n\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-q", "--order", type=int, default=6,
                        help="truncation order q (>= 2)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--max-crossings", type=int, default=None,
                        help="skein crossing cap (default $MUBAR_MAX_CROSSINGS or 18)")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in (("mu", "mu-bar table"), ("gamma", "Gamma series and checks"),
                        ("phi", "Phi series in u"), ("conway", "Conway polynomials"),
                        ("verify", "check the Conway factorization")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("-i", "--input", required=True,
                       help="JSON file, '-' for stdin, or an inline JSON object")
    c = sub.add_parser("corpus", parents=[common], help="verify every pure braid within bounds")
    c.add_argument("--strands", type=int, default=3)
    c.add_argument("--max-letters", type=int, default=4)
    c.add_argument("--seed", type=int, default=None)
    c.add_argument("--sample", type=int, default=None,
                   help="verify a random subset of this size (uses --seed)")
    c.add_argument("--jobs", type=int, default=1)
    return p


def run(argv: list[str] | None = None) -> tuple[str, int]:
    """Run the command line and return (output, exit code)."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="mubar: %(message)s", stream=sys.stderr)
    q, mc = args.order, args.max_crossings
    try:
        if q < 2:
            raise PreconditionError("the order q must be at least 2")
        if args.command == "corpus":
            out, code = cmd_corpus(args.strands, args.max_letters, q, args.seed, args.sample,
                                   mc, args.jobs)
        else:
            job = parse_job(read_payload(args.input))
            if args.command == "mu":
                out, code = cmd_mu(job, q)
            elif args.command == "gamma":
                out, code = cmd_gamma(job, q)
            elif args.command == "phi":
                out, code = cmd_phi(job, q)
            elif args.command == "conway":
                out, code = cmd_conway(job, q, mc)
            else:
                out, code = cmd_verify(job, q, mc)
    except ParseError as exc:
        return _error("parse", str(exc), args.format), EXIT_PARSE
    except (PreconditionError, HypothesisError, LongitudeError, CrossingLimitError,
            DiagramError, WordError) as exc:
        return _error("precondition", str(exc), args.format), EXIT_PRECONDITION
    return emit(out, args.format), code


def _error(kind: str, message: str, fmt: str) -> str:
    return emit({"schema": SCHEMA, "error": kind, "message": message}, fmt)


def main(argv: list[str] | None = None) -> int:
    text, code = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
