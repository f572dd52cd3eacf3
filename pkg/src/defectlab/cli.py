"""Command-line front end: ``defectlab <subcommand> [input flags] [--format json|tsv|pretty]``.

Exit codes: 0 success, 1 usage or parse error, 2 analysis precondition
failure (the report still carries an ``errors`` entry describing it).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, complexity, eertree, fixtures, morphisms, returns, sidegraph
from .errors import DefectLabError, DomainMismatchError
from .words import (
    Morphism,
    Word,
    WordSpec,
    closure_level,
    generate_prefix,
    palindromic_closure,
)

DEFAULT_SCHEDULE = (256, 1024, 4096)
FORMATS = ("json", "tsv", "pretty")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _int_list(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _add_common(p: argparse.ArgumentParser, word_input: bool = True) -> None:
    p.add_argument("--format", choices=FORMATS, default="pretty")
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")
    if not word_input:
        return
    g = p.add_argument_group("word input (pick one)")
    g.add_argument("--literal", help="finite word, comma-separated if tokens are multi-character")
    g.add_argument("--periodic", metavar="PERIOD")
    g.add_argument("--fixed-point", metavar="RULES", help="fixed point of a prolongable morphism")
    g.add_argument("--start", help="starting letter for --fixed-point")
    g.add_argument("--closure-level", nargs="?", const=-1, type=int, metavar="I",
                   help="palindromic-closure sequence (level chosen from the length if omitted)")
    g.add_argument("--spec", type=Path, help="WordSpec JSON file, or a previous JSON report")
    g.add_argument("--fixture", help="built-in fixture name")
    g.add_argument("--image", metavar="RULES", help="apply this morphism to the word given above")
    p.add_argument("--length", type=_positive, help="single window length")
    p.add_argument("--schedule", type=_int_list, help="increasing window lengths, e.g. 256,1024,4096")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="defectlab", description="Palindromic defect analysis of infinite-word prefixes.")
    parser.add_argument("--version", action="version", version=f"defectlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("defect", help="windowed defect, oddities, K and H")
    _add_common(p)
    p.add_argument("--h-form", choices=("prefix", "factor"), default="prefix")

    p = sub.add_parser("complexity", help="factor and palindromic complexity")
    _add_common(p)
    p.add_argument("--n-max", type=int)

    p = sub.add_parser("eq1", help="residual C(n+1)-C(n)+2-P(n)-P(n+1) and the N estimate")
    _add_common(p)
    p.add_argument("--n-max", type=int)

    p = sub.add_parser("oddities", help="non-palindromic complete returns of palindromes")
    _add_common(p)
    p.add_argument("--p-max", type=int)

    p = sub.add_parser("returns", help="complete returns of a factor and the recurrence function")
    _add_common(p)
    p.add_argument("--factor", required=True)
    p.add_argument("--n-max", type=int, help="also report R(n) for n <= N")

    p = sub.add_parser("sidegraph", help="graph of special factors of length n")
    _add_common(p)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--dot", type=Path, help="write Graphviz DOT here")

    p = sub.add_parser("morphism-class", help="class P, P_ret and standard special P tests")
    _add_common(p, word_input=False)
    p.add_argument("--rules", help="e.g. 0=0100,1=01011,2=010111")
    p.add_argument("--fixture", help="built-in morphism fixture name")
    p.add_argument("--depth", type=_positive, default=3)

    p = sub.add_parser("derive", help="derived word over complete return words of a long palindromic prefix")
    _add_common(p)

    p = sub.add_parser("closure", help="palindromic closure of a word, or the closure sequence v_i")
    _add_common(p, word_input=False)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--literal")
    g.add_argument("--closure-level", type=int, metavar="I")
    p.add_argument("--show", action="store_true", help="include the word itself")

    p = sub.add_parser("demo", help="check every built-in fixture")
    _add_common(p, word_input=False)
    p.add_argument("--fixture", help="only this fixture")
    return parser


# ---------------------------------------------------------------- input


def _resolve_input(args) -> tuple[WordSpec, list[int], str]:
    """(spec at the largest window, schedule, provenance of the window lengths)."""
    sources = [k for k in ("literal", "periodic", "fixed_point", "closure_level", "spec", "fixture")
               if getattr(args, k) is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --literal, --periodic, --fixed-point, "
                         "--closure-level, --spec, --fixture")
    if args.length is not None and args.schedule is not None:
        raise UsageError("--length and --schedule are mutually exclusive")
    src = sources[0]
    schedule = None
    provenance = "default-schedule"
    try:
        if src == "literal":
            spec = WordSpec.literal(args.literal)
            provenance = "literal"
            schedule = [spec.length]
        elif src == "periodic":
            spec = WordSpec.periodic(args.periodic, 1)
        elif src == "fixed_point":
            spec = WordSpec.fixed_point(Morphism.parse(args.fixed_point), 1, args.start)
        elif src == "closure_level":
            spec = WordSpec.closure_sequence(1, None if args.closure_level < 0 else args.closure_level)
            if spec.level is not None:
                schedule = [len(closure_level(spec.level))]
                provenance = "closure-level"
        elif src == "fixture":
            fx = fixtures.load_fixture(args.fixture)
            if fx.spec is None:
                raise UsageError(f"fixture {args.fixture!r} is a morphism; use morphism-class")
            spec = fx.spec
            schedule = [spec.length]
            provenance = "fixture"
        else:
            obj = json.loads(args.spec.read_text(encoding="utf-8"))
            if "request" in obj:
                req = obj["request"]
                spec = WordSpec.from_json(req["input"])
                schedule = req["schedule"]
                provenance = req["window_source"]
            else:
                spec = WordSpec.from_json(obj)
                schedule = [spec.length]
                provenance = "spec-file"
    except (KeyError, json.JSONDecodeError, OSError) as exc:
        raise UsageError(f"cannot read input: {exc}") from None
    if args.image is not None:
        spec = WordSpec.morphic_image(spec, Morphism.parse(args.image), spec.length)
    if args.length is not None:
        schedule, provenance = [args.length], "flag:--length"
    elif args.schedule is not None:
        schedule, provenance = args.schedule, "flag:--schedule"
    elif schedule is None:
        schedule = list(DEFAULT_SCHEDULE)
    if any(b <= a for a, b in zip(schedule, schedule[1:])) or schedule[0] < 1:
        raise UsageError(f"schedule must be positive and increasing, got {schedule}")
    return spec.with_length(schedule[-1]), list(schedule), provenance


def _fmt(s: str, w: Word) -> str:
    """Internal text of a factor of ``w`` in the user's token notation."""
    a = w.alphabet if isinstance(w, Word) else None
    if a is None or a.single_char:
        return s
    return ",".join(a.token(c) for c in s)


# ---------------------------------------------------------------- analyses


def _defect(args, spec, schedule):
    rep = eertree.windowed_defect(spec, schedule)
    w = generate_prefix(spec)
    idx = eertree.build_index(w)
    odd = returns.oddities(w, index=idx)
    out = rep.to_json()
    out.update(
        oddities=len(odd),
        oddity_pairs=[[_fmt(a, w), _fmt(b, w)] for a, b in odd.pairs],
        K=returns.estimate_K(w, idx),
        H=eertree.estimate_H(idx, form=args.h_form),
        H_form=args.h_form,
    )
    return out


def _complexity(args, spec, schedule):
    w = generate_prefix(spec)
    n_max = min(args.n_max if args.n_max is not None else 20, len(w))
    return {
        "n_max": n_max,
        "factor_complexity": complexity.factor_complexity(w, n_max),
        "palindromic_complexity": eertree.palindromic_complexity(w, n_max),
        "trusted_n_max": complexity.trusted_n_max(w),
    }


def _eq1(args, spec, schedule):
    w = generate_prefix(spec)
    trusted = complexity.trusted_n_max(w)
    n_max = args.n_max if args.n_max is not None else trusted
    prof = complexity.eq1_profile(w, n_max)
    return {
        "n_max": n_max,
        "trusted_n_max": trusted,
        "nonzero": {str(r.n): r.residual for r in prof if r.residual},
        "N": complexity.find_N(w, n_max, prof),
    }


def _oddities(args, spec, schedule):
    w = generate_prefix(spec)
    idx = eertree.build_index(w)
    odd = returns.oddities(w, args.p_max, idx)
    return {
        "count": len(odd),
        "pairs": [[_fmt(a, w), _fmt(b, w)] for a, b in odd.pairs],
        "witnesses": [_fmt(odd.witnesses[p], w) for p in odd.pairs],
        "K": returns.estimate_K(w, idx),
        "p_max": args.p_max,
    }


def _returns(args, spec, schedule):
    w = generate_prefix(spec)
    f = Word.parse(args.factor, w.alphabet) if w.alphabet else args.factor
    rep = returns.complete_returns(w, f)
    out = {
        "factor": args.factor,
        "occurrences": len(returns.occurrences(w, f)),
        "complete_returns": {_fmt(k, w): v for k, v in sorted(rep.complete_returns.items())},
        "return_words": {_fmt(k, w): v for k, v in sorted(rep.return_words.items())},
        "censored_tail": rep.censored_tail,
    }
    if args.n_max is not None:
        out["recurrence"] = returns.recurrence_lengths(w, args.n_max)
    return out


def _sidegraph(args, spec, schedule):
    w = generate_prefix(spec)
    g = sidegraph.build_sidegraph(w, args.n)
    if args.dot is not None:
        args.dot.write_text(g.to_dot(), encoding="utf-8")
    out = g.to_json()
    out["residual"] = complexity.eq1_profile(w, args.n)[-1].residual if args.n + 1 <= len(w) else None
    return out


def _parse_morphism(args) -> Morphism:
    if (args.rules is None) == (args.fixture is None):
        raise UsageError("give exactly one of --rules, --fixture")
    if args.fixture is not None:
        fx = fixtures.load_fixture(args.fixture)
        if fx.morphism is None:
            raise UsageError(f"fixture {args.fixture!r} is a word, not a morphism")
        return fx.morphism
    return Morphism.parse(args.rules)


def _morphism_class(args, m: Morphism):
    out = {}
    wp = morphisms.check_class_P(m)
    out["P"] = wp.to_json() if wp else None
    wr = morphisms.check_class_Pret(m)
    out["P_ret"] = wr.to_json() if wr else None
    ws = morphisms.check_standard_special_P(m, depth=args.depth)
    out["standard_special_P"] = ws.to_json() if ws else None
    if wr is not None:
        conj, sigma, wit = morphisms.pret_to_P(m, wr.p)
        out["conjugate_in_P"] = {"conjugacy": conj.to_json(), "rules": sigma.rules(), "witness": wit.to_json()}
    try:
        out["primitive"] = morphisms.is_primitive(m)
    except DomainMismatchError:
        out["primitive"] = None  # not an endomorphism
    out["classes"] = [name for name, w in (("P", wp), ("P_ret", wr), ("standard-special-P", ws)) if w]
    return out


def _derive(args, spec, schedule):
    w = generate_prefix(spec)
    return morphisms.derive_rich_preimage(w).to_json()


def _closure(args):
    if args.literal is not None:
        w = _usage(Word.parse, args.literal)
        c = palindromic_closure(w)
        return {"input": w.format(), "closure": c.format(), "length": len(c)}
    v = closure_level(args.closure_level)
    out = {"level": args.closure_level, "length": len(v), "rich": eertree.is_rich(v)}
    if args.show:
        out["word"] = v.format()
    return out


def _demo(args):
    names = [args.fixture] if args.fixture else fixtures.fixture_names()
    rows = []
    for name in names:
        for r in fixtures.check_fixture(name):
            rows.append({"fixture": r.fixture, "analysis": r.analysis, "source": r.source,
                         "expected": r.expected, "observed": r.observed, "passed": r.passed})
    return {"checks": rows, "passed": sum(r["passed"] for r in rows), "total": len(rows)}


WORD_ANALYSES = {
    "defect": _defect,
    "complexity": _complexity,
    "eq1": _eq1,
    "oddities": _oddities,
    "returns": _returns,
    "sidegraph": _sidegraph,
    "derive": _derive,
}


# ---------------------------------------------------------------- output


def _flatten(prefix: str, obj, out: list):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}.{i}", v, out)
    else:
        out.append((prefix, json.dumps(obj, ensure_ascii=False) if not isinstance(obj, str) else obj))


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    if report["command"] == "demo" and "checks" in report["results"]:
        rows = report["results"]["checks"]
        if fmt == "tsv":
            lines = ["fixture\tanalysis\tsource\texpected\tobserved\tstatus"]
            for r in rows:
                lines.append("\t".join([r["fixture"], r["analysis"], r["source"],
                                        json.dumps(r["expected"]), json.dumps(r["observed"]),
                                        "pass" if r["passed"] else "FAIL"]))
            return "\n".join(lines) + "\n"
        w1 = max(len(r["fixture"]) for r in rows)
        w2 = max(len(r["analysis"]) for r in rows)
        lines = [f"{'fixture':<{w1}}  {'analysis':<{w2}}  {'source':<10}  status"]
        for r in rows:
            status = "pass" if r["passed"] else f"FAIL (expected {r['expected']!r}, got {r['observed']!r})"
            lines.append(f"{r['fixture']:<{w1}}  {r['analysis']:<{w2}}  {r['source']:<10}  {status}")
        res = report["results"]
        lines.append(f"{res['passed']}/{res['total']} checks passed")
        return "\n".join(lines) + "\n"
    flat: list = []
    _flatten("", {"results": report["results"], "errors": report["errors"]}, flat)
    if fmt == "tsv":
        return "key\tvalue\n" + "".join(f"{k}\t{v}\n" for k, v in flat)
    width = max((len(k) for k, _ in flat), default=0)
    head = f"defectlab {report['version']} {report['command']}"
    return head + "\n" + "".join(f"{k:<{width}}  {v}\n" for k, v in flat)


def run(argv: list[str] | None = None) -> tuple[dict, int]:
    """Parse ``argv`` and run the analysis; returns ``(report, exit_code)``."""
    return execute(build_parser().parse_args(argv))


def _usage(fn, *a):
    """Run an input-parsing step, turning plain ValueErrors into usage errors."""
    try:
        return fn(*a)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    except DefectLabError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def execute(args) -> tuple[dict, int]:
    report: dict = {"tool": "defectlab", "version": __version__, "command": args.command,
                    "request": {}, "results": {}, "errors": []}
    code = 0
    try:
        if args.command in WORD_ANALYSES:
            spec, schedule, provenance = _usage(_resolve_input, args)
            report["request"] = {"input": spec.to_json(), "schedule": schedule, "window_source": provenance}
            report["results"] = WORD_ANALYSES[args.command](args, spec, schedule)
        elif args.command == "morphism-class":
            m = _usage(_parse_morphism, args)
            report["request"] = {"rules": m.to_json()["rules"], "depth": args.depth}
            report["results"] = _morphism_class(args, m)
        elif args.command == "closure":
            report["request"] = {"literal": args.literal, "level": args.closure_level}
            report["results"] = _closure(args)
        else:
            report["request"] = {"fixture": args.fixture}
            if args.fixture is not None:
                _usage(fixtures.load_fixture, args.fixture)
            report["results"] = _demo(args)
            if report["results"]["passed"] != report["results"]["total"]:
                code = 2
    except UsageError as exc:
        print(f"defectlab: error: {exc}", file=sys.stderr)
        raise SystemExit(1) from None
    except (DefectLabError, ValueError, KeyError) as exc:
        report["errors"].append({"analysis": args.command, "type": type(exc).__name__, "message": str(exc)})
        code = 2
    return report, code


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    report, code = execute(args)
    text = render(report, args.format)
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    for e in report["errors"]:
        print(f"defectlab: {e['type']}: {e['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
