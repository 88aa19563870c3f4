"""Command-line interface: ``gen``, ``batch``, ``verify``, ``analyze``, ``laws``.

Exit codes: 0 success, 1 not-equivalent verdict, 2 usage or parse error,
3 generation failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import shutil
import sys
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from eqgen import lawbook
from eqgen.analyze import DEFAULT_MAX_DEPTH, TooManyVariables, classify_pair, counterexample, format_histogram
from eqgen.generator import GenParams, Question, RetryExhausted, generate_set
from eqgen.parser import ParseError, parse
from eqgen.render import LATEX, PLAIN, render, render_question
from eqgen.seedstream import md5_hex, seed_text

EXIT_OK, EXIT_NOT_EQUIVALENT, EXIT_USAGE, EXIT_GENERATION = 0, 1, 2, 3
FORMATS = ("text", "latex", "json")
MANIFEST = "manifest.json"


class UsageError(Exception):
    """Bad configuration or input; reported with exit code 2."""


@dataclass(frozen=True)
class RunConfig:
    params: GenParams = field(default_factory=GenParams)
    assignment_tag: str = ""
    count: int = 1
    format: str = "text"
    full_parens: bool = False

    def __post_init__(self) -> None:
        if self.count < 1:
            raise ValueError(f"count must be at least 1, got {self.count}")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}")

    def to_dict(self) -> dict:
        out = self.params.to_dict()
        out.update(
            assignment_tag=self.assignment_tag,
            count=self.count,
            format=self.format,
            full_parens=self.full_parens,
        )
        return out

    @classmethod
    def from_dict(cls, data: dict) -> RunConfig:
        data = dict(data)
        run = {k: data.pop(k) for k in ("assignment_tag", "count", "format", "full_parens") if k in data}
        return cls(GenParams.from_dict(data), **run)


@dataclass(frozen=True)
class RosterEntry:
    student_id: str
    display_name: str | None = None


# -- configuration ------------------------------------------------------------

_FLAG_KEYS = {
    "m": "m",
    "p0": "p0",
    "pc": "p_c",
    "stride": "stride",
    "tag": "assignment_tag",
    "count": "count",
    "format": "format",
}


def load_config(args: argparse.Namespace) -> RunConfig:
    """Config file values overridden by any flags given on the command line."""
    data: dict = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise UsageError("config file must hold a JSON object")
    for flag, key in _FLAG_KEYS.items():
        value = getattr(args, flag)
        if value is not None:
            data[key] = value
    if args.full_parens:
        data["full_parens"] = True
    if args.swap_sides:
        data["swap_sides"] = True
    try:
        return RunConfig.from_dict(data)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid configuration: {exc}") from exc


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


# -- output documents ---------------------------------------------------------


def _student_record(student_id: str, seed: str, questions: list[Question], cfg: RunConfig) -> dict:
    return {
        "student_id": student_id,
        "seed": md5_hex(seed),
        "questions": [
            {
                "index": q.question_index,
                "lhs": render(q.lhs, PLAIN, cfg.full_parens),
                "rhs": render(q.rhs, PLAIN, cfg.full_parens),
                "laws_used": list(q.laws_used),
            }
            for q in questions
        ],
    }


def json_document(cfg: RunConfig, students: list[dict]) -> str:
    doc = {"assignment": cfg.assignment_tag, "params": cfg.params.to_dict(), "students": students}
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def text_document(questions: list[Question], cfg: RunConfig) -> str:
    style = LATEX if cfg.format == "latex" else PLAIN
    return "".join(render_question(q, style, cfg.full_parens) + "\n" for q in questions)


def seed_for(student_id: str, tag: str) -> str:
    # without a tag the id itself is the seed text
    return seed_text(student_id, tag) if tag else student_id


# -- commands -----------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    cfg = load_config(args)
    seed = seed_for(args.info, cfg.assignment_tag)
    questions = generate_set(seed, cfg.count, cfg.params)
    if cfg.format == "json":
        sys.stdout.write(json_document(cfg, [_student_record(args.info, seed, questions, cfg)]))
    else:
        sys.stdout.write(text_document(questions, cfg))
    return EXIT_OK


def read_roster(path: str) -> list[RosterEntry]:
    """Headerless or headered (``student_id[,display_name]``) UTF-8 CSV."""
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            rows = [row for row in csv.reader(fh) if any(cell.strip() for cell in row)]
    except OSError as exc:
        raise UsageError(f"cannot read roster {path}: {exc}") from exc
    if rows and rows[0] and rows[0][0].strip().lower() == "student_id":
        rows = rows[1:]
    entries, seen = [], set()
    for n, row in enumerate(rows, 1):
        sid = row[0].strip()
        if not sid:
            raise UsageError(f"roster row {n}: empty student_id")
        if "\n" in sid or "\r" in sid:
            raise UsageError(f"roster row {n}: student_id contains a newline")
        if sid in seen:
            raise UsageError(f"roster row {n}: duplicate student_id {sid!r}")
        seen.add(sid)
        name = row[1].strip() if len(row) > 1 and row[1].strip() else None
        entries.append(RosterEntry(sid, name))
    if not entries:
        raise UsageError("roster is empty")
    return entries


def _file_stem(student_id: str) -> str:
    return re.sub(r"[^A-Za-z0-9._-]", "_", student_id)


def cmd_batch(args: argparse.Namespace) -> int:
    cfg = load_config(args)
    if not args.roster or not args.out:
        raise UsageError("batch needs --roster and --out")
    roster = read_roster(args.roster)
    out = Path(args.out)
    if out.exists() and (not out.is_dir() or any(out.iterdir())):
        raise UsageError(f"output path {out} exists and is not an empty directory")
    if cfg.format != "json":
        stems = Counter(_file_stem(e.student_id) for e in roster)
        clash = [s for s, k in stems.items() if k > 1]
        if clash:
            raise UsageError(f"student ids map to the same file name: {', '.join(clash)}")

    # everything is generated before anything touches the disk
    records, files = [], {}
    ext = "tex" if cfg.format == "latex" else "txt"
    for entry in roster:
        seed = seed_for(entry.student_id, cfg.assignment_tag)
        questions = generate_set(seed, cfg.count, cfg.params)
        records.append(_student_record(entry.student_id, seed, questions, cfg))
        if cfg.format != "json":
            files[f"{_file_stem(entry.student_id)}.{ext}"] = text_document(questions, cfg)
    if cfg.format == "json":
        files["questions.json"] = json_document(cfg, records)
    manifest = {
        "config": cfg.to_dict(),
        "roster": [e.student_id for e in roster],
        "files": sorted(files),
    }
    files[MANIFEST] = json.dumps(manifest, ensure_ascii=False, indent=2) + "\n"

    out.parent.mkdir(parents=True, exist_ok=True)
    tmp = Path(tempfile.mkdtemp(prefix=".batch-", dir=out.parent))
    try:
        for name, text in files.items():
            (tmp / name).write_text(text, encoding="utf-8")
        if out.exists():
            out.rmdir()
        os.replace(tmp, out)
    except BaseException:
        shutil.rmtree(tmp, ignore_errors=True)
        raise
    print(f"wrote {len(roster)} student set(s) to {out}")
    return EXIT_OK


def _parse_or_usage(text: str, label: str):
    try:
        return parse(text)
    except ParseError as exc:
        raise UsageError(f"{label}: syntax error at position {exc.position}: {exc.message}") from exc
    except ValueError as exc:
        raise UsageError(f"{label}: {exc}") from exc


def cmd_verify(args: argparse.Namespace) -> int:
    lhs = _parse_or_usage(args.lhs, "lhs")
    rhs = _parse_or_usage(args.rhs, "rhs")
    try:
        witness = counterexample(lhs, rhs)
    except TooManyVariables as exc:
        raise UsageError(str(exc)) from exc
    if witness is None:
        print("EQUIVALENT")
        return EXIT_OK
    assignment = ",".join(f"{k}={'true' if v else 'false'}" for k, v in witness.items())
    print("NOT EQUIVALENT")
    print(f"witness: {assignment}")
    return EXIT_NOT_EQUIVALENT


_SHOW_THAT = re.compile(r"^Show that (.*) ≡ (.*)\.$")


def split_question_line(line: str) -> tuple[str, str] | None:
    """``lhs == rhs`` (or a rendered ``Show that lhs ≡ rhs.``); None for blanks and comments."""
    line = line.strip()
    if not line or line.startswith("#"):
        return None
    match = _SHOW_THAT.match(line)
    if match:
        return match.group(1), match.group(2)
    if line.count("==") != 1:
        raise ValueError("expected exactly one '==' separator")
    lhs, rhs = line.split("==")
    return lhs, rhs


def cmd_analyze(args: argparse.Namespace) -> int:
    if args.input == "-":
        lines = sys.stdin.read().splitlines()
    else:
        try:
            lines = Path(args.input).read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from exc
    hist: Counter = Counter()
    errors = 0
    for n, line in enumerate(lines, 1):
        try:
            sides = split_question_line(line)
            if sides is None:
                continue
            lhs, rhs = (parse(s) for s in sides)
            hist[classify_pair(lhs, rhs, args.max_depth)] += 1
        except ParseError as exc:
            errors += 1
            print(f"line {n}: syntax error at position {exc.position}: {exc.message}", file=sys.stderr)
        except ValueError as exc:
            errors += 1
            print(f"line {n}: {exc}", file=sys.stderr)
    print(format_histogram(hist, args.max_depth, errors))
    return EXIT_OK if hist or not errors else EXIT_USAGE


def cmd_laws(args: argparse.Namespace) -> int:
    rows = [(x.name, x.category.value, f"{render(x.lhs)} ≡ {render(x.rhs)}") for x in lawbook.catalog()]
    w0 = max(len(r[0]) for r in rows)
    w1 = max(len(r[1]) for r in rows)
    for name, cat, text in rows:
        print(f"{name:<{w0}}  {cat:<{w1}}  {text}")
    return EXIT_OK


# -- argument parsing ---------------------------------------------------------


def _add_generation_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file of run settings; flags override it")
    p.add_argument("--count", type=int, help="questions per student (default 1)")
    p.add_argument("--m", type=int, help="expansion depth cap (default 5)")
    p.add_argument("--p0", type=_fraction, help="initial guarantee probability (default 1/4)")
    p.add_argument("--pc", type=_fraction, help="guarantee increment per structural step (default 1/8)")
    p.add_argument("--stride", type=int, help="digest stride, odd (default 7)")
    p.add_argument("--tag", help="assignment tag mixed into every seed")
    p.add_argument("--format", choices=FORMATS, help="output format (default text)")
    p.add_argument("--full-parens", action="store_true", help="parenthesize every binary subterm")
    p.add_argument("--swap-sides", action="store_true", help="let the stream pick which side is expanded")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eqgen", description="Generate and analyze propositional equivalence questions.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="print questions for one seed")
    gen.add_argument("--info", required=True, help="student information used as the seed")
    _add_generation_flags(gen)
    gen.set_defaults(func=cmd_gen)

    batch = sub.add_parser("batch", help="write question sets for a roster")
    batch.add_argument("--roster", required=True, help="CSV of student_id[,display_name]")
    batch.add_argument("--out", required=True, help="output directory (created; must not hold files)")
    _add_generation_flags(batch)
    batch.set_defaults(func=cmd_batch)

    verify = sub.add_parser("verify", help="check two formulas for equivalence")
    verify.add_argument("lhs")
    verify.add_argument("rhs")
    verify.set_defaults(func=cmd_verify)

    analyze = sub.add_parser("analyze", help="histogram of law-step distances")
    analyze.add_argument("input", help="file with one 'lhs == rhs' per line, or - for stdin")
    analyze.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    analyze.set_defaults(func=cmd_analyze)

    laws = sub.add_parser("laws", help="list the equivalence laws")
    laws.set_defaults(func=cmd_laws)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RetryExhausted as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return EXIT_GENERATION


if __name__ == "__main__":
    sys.exit(main())
