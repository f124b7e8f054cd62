"""Command line entry point: ``spacewb <command> ...``.

Every command prints a short human report followed by a JSON block between
``--- json`` and ``--- end`` so that scripts can diff results. Exit codes:
0 success, 1 property failure, 2 usage or parse error.
"""

import argparse
import json
import os
import sys

from . import checks
from .compiler import (DEFAULT_FLOOR, compile_embedding, compile_simple, emit_presentation,
                       load_presentation, multiplied_word, multiply)
from .composition import compose_with_adder
from .errors import WorkbenchError
from .machine import (format_machine, load_machine, make_input_config, parse_machine,
                      validate_machine)
from .oracle import accepting_computation, bfs_machine_space, group_space, s_accepting_search
from .rewriting import format_trace, parse_trace, validate_trace, witness_from_computation
from .smachine import (config_to_word, format_smachine, from_turing, load_smachine,
                       parse_smachine, replay)
from .transforms import (enforce_s10, normalize_one_letter, pad_space, prepare_for_s_machine,
                         symmetrize)
from .words import parse_word

OUT_DIR_ENV = "SPACEWB_OUT_DIR"

STAGES = ("s10", "pad", "sym", "one-letter", "full", "s-of-m", "compose-adder")


class UsageError(Exception):
    pass


def _emit(text, data):
    print(text)
    print("--- json")
    print(json.dumps(data, indent=2, sort_keys=True, default=str))
    print("--- end")


def _out_path(args, name):
    if getattr(args, "output", None):
        return args.output
    d = args.out_dir or os.environ.get(OUT_DIR_ENV)
    if not d:
        return None
    os.makedirs(d, exist_ok=True)
    return os.path.join(d, name)


def _write(args, default_name, text):
    path = _out_path(args, default_name)
    if path is None:
        sys.stdout.write(text)
        return None
    with open(path, "w") as fh:
        fh.write(text)
    return path


def _read(path):
    with open(path) as fh:
        return fh.read()


def _kind_of(path, text):
    if path.endswith(".smach") or text.lstrip().startswith("smachine"):
        return "smachine"
    if path.endswith(".pres") or text.lstrip().startswith(("gen ", "rel ")):
        return "presentation"
    return "machine"


def _stem(path):
    return os.path.splitext(os.path.basename(path))[0]


# ---------------------------------------------------------------- commands

def cmd_validate(args):
    text = _read(args.file)
    kind = _kind_of(args.file, text)
    problems = []
    if kind == "machine":
        problems = validate_machine(parse_machine(text, args.file))
    elif kind == "smachine":
        parse_smachine(text, args.file)
    else:
        from .compiler import parse_presentation
        parse_presentation(text, args.file)
    ok = not problems
    _emit(f"{args.file}: {kind} {'ok' if ok else 'invalid'}" +
          "".join(f"\n  {p}" for p in problems),
          {"file": args.file, "kind": kind, "valid": ok, "problems": problems})
    return 0 if ok else 1


def transform(m, stage):
    """Apply one pipeline stage; returns a Machine or an SMachine."""
    if stage == "s10":
        return enforce_s10(m)
    if stage == "pad":
        return pad_space(m)
    if stage == "sym":
        return symmetrize(m)
    if stage == "one-letter":
        return normalize_one_letter(m)
    if stage == "full":
        return prepare_for_s_machine(m)
    if stage == "s-of-m":
        return from_turing(m)
    if stage == "compose-adder":
        return compose_with_adder(m).machine
    raise UsageError(f"unknown stage {stage!r}")


def cmd_transform(args):
    m = load_machine(args.file)
    out = transform(m, args.stage)
    if args.stage in ("s-of-m", "compose-adder"):
        text = format_smachine(out) + "\n"
        ext = ".smach"
    else:
        text = format_machine(out) + "\n"
        ext = ".mach"
    path = _write(args, f"{_stem(args.file)}.{args.stage}{ext}", text)
    if path is not None:
        _emit(f"wrote {args.stage} stage to {path}", {"stage": args.stage, "output": path})
    return 0


def cmd_compile(args):
    s = load_smachine(args.file)
    build = compile_embedding if args.mode == "embedding" else compile_simple
    p = build(s, args.L, args.floor)
    path = _write(args, f"{_stem(args.file)}.L{args.L}.{args.mode}.pres", emit_presentation(p))
    counts = p.counts()
    data = {"mode": args.mode, "L": args.L, "generators": len(p.generators),
            "relators": len(p.relators), "by_kind": counts, "output": path}
    msg = (f"{len(p.generators)} generators, {len(p.relators)} relators "
           f"({', '.join(f'{k} {v}' for k, v in sorted(counts.items()))})")
    if path is not None:
        _emit(msg + f"\nwrote {path}", data)
    else:
        print(msg, file=sys.stderr)
    return 0


def cmd_space(args):
    p = load_presentation(args.file)
    word = parse_word(args.word)
    known = set(p.generators)
    for x in word:
        if x.replace("^-1", "") not in known:
            raise UsageError(f"letter {x} is not a generator")
    r = group_space(p, word, args.space_cap, step_cap=args.step_cap,
                    canonical=not args.raw, prune=not args.raw, state_cap=args.state_cap)
    _emit(f"{r.status}: value {r.value} ({r.detail}); {r.expanded} states expanded",
          {"status": r.status, "value": r.value, "expanded": r.expanded,
           "detail": r.detail, "bounds": r.bounds})
    return 0


def cmd_machine_space(args):
    m = load_machine(args.file)
    u = parse_word(args.input)
    r = bfs_machine_space(m, make_input_config(m, u), args.space_cap, args.step_cap)
    _emit(f"{r.status}: value {r.value} ({r.detail}); {r.expanded} configurations expanded",
          {"status": r.status, "value": r.value, "expanded": r.expanded, "detail": r.detail})
    return 0


KNOBS = {
    "umax": int, "max_len": int, "max_letters": int, "max_a": int, "k_max": int,
    "n_max": int, "slack": int, "space_cap": int, "L": int, "smoke_L": int,
    "trace_len": int, "full_len": int,
}


def _knobs(args):
    kw = {}
    for k in KNOBS:
        v = getattr(args, k, None)
        if v is not None:
            kw[k] = v
    if args.fixtures:
        kw["names"] = tuple(args.fixtures)
    return kw


def cmd_check(args):
    if args.suite not in checks.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(checks.SUITES)}")
    try:
        r = checks.run_suite(args.suite, **_knobs(args))
    except TypeError as e:
        raise UsageError(f"{args.suite}: {e}")
    lines = [r.summary()] + [f"  {f}" for f in r.failures]
    _emit("\n".join(lines), r.as_dict())
    return 0 if r.passed else 1


def cmd_trace(args):
    if args.action == "check":
        p = load_presentation(args.file)
        t = parse_trace(_read(args.trace), args.trace)
        rep = validate_trace(p, t)
        _emit(f"trace {'valid' if rep.valid else 'invalid'}; space {rep.space}"
              + ("" if rep.valid else f"; move {rep.failed_at}: {rep.reason}"),
              {"valid": rep.valid, "space": rep.space, "failed_at": rep.failed_at,
               "reason": rep.reason})
        return 0 if rep.valid else 1
    # build: accepted input of an S-machine (or a machine file) -> witness trace
    text = _read(args.file)
    u = parse_word(args.input)
    if _kind_of(args.file, text) == "smachine":
        s = parse_smachine(text, args.file)
        c = s_accepting_search(s, s.input_word(u), args.space_cap, args.step_cap)
    else:
        M = prepare_for_s_machine(parse_machine(text, args.file))
        s = from_turing(M)
        got = accepting_computation(M, make_input_config(M, u), args.space_cap, args.step_cap)
        c = None if got is None else replay(s, config_to_word(M, got[0][0]), got[1])
    if c is None:
        _emit("input not accepted within the caps", {"accepted": False})
        return 1
    mm = multiply(s, args.L, args.floor)
    p = compile_simple(s, args.L, args.floor)
    big = replay(mm.machine, multiplied_word(mm, c.words[0]), c.history)
    w = witness_from_computation(p, mm, big)
    path = _write(args, f"{_stem(args.file)}.L{args.L}.trace", format_trace(w.trace))
    data = {"accepted": True, "space": w.space, "max_word": w.max_word, "c1": w.c1,
            "bound": 2 * w.max_word + w.c1, "moves": len(w.trace.moves), "output": path}
    msg = (f"witness: {len(w.trace.moves)} moves, space {w.space} "
           f"<= 2*{w.max_word} + {w.c1}")
    if path is not None:
        _emit(msg + f"\nwrote {path}", data)
    else:
        print(msg, file=sys.stderr)
    return 0


# ---------------------------------------------------------------- parser

def build_parser():
    ap = argparse.ArgumentParser(prog="spacewb", description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", help=f"directory for output files (or ${OUT_DIR_ENV})")
    ap.add_argument("--seed", type=int, default=0, help="accepted for uniformity; unused")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and check a machine, S-machine or presentation")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("transform", help="apply a pipeline stage to a machine file")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group(required=True)
    for st in STAGES:
        g.add_argument(f"--{st}", dest="stage", action="store_const", const=st)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("compile", help="compile an S-machine into a presentation")
    p.add_argument("file")
    p.add_argument("--L", type=int, required=True)
    p.add_argument("--mode", choices=("simple", "embedding"), default="simple")
    p.add_argument("--floor", type=int, default=DEFAULT_FLOOR)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("space", help="least space of a rewriting of a word to ()")
    p.add_argument("file")
    p.add_argument("word", help="letters separated by spaces; '1' is the empty word")
    p.add_argument("--space-cap", type=int, default=8)
    p.add_argument("--step-cap", type=int, default=None)
    p.add_argument("--state-cap", type=int, default=2_000_000)
    p.add_argument("--raw", action="store_true", help="no canonical states and no pruning")
    p.set_defaults(func=cmd_space)

    p = sub.add_parser("machine-space", help="least space of an accepting computation")
    p.add_argument("file")
    p.add_argument("input", help="letters separated by spaces; '1' is the empty word")
    p.add_argument("--space-cap", type=int, default=12)
    p.add_argument("--step-cap", type=int, default=None)
    p.set_defaults(func=cmd_machine_space)

    p = sub.add_parser("check", help="run a property suite")
    p.add_argument("suite")
    p.add_argument("--fixture", dest="fixtures", action="append")
    for k, typ in KNOBS.items():
        p.add_argument("--" + k.replace("_", "-"), dest=k, type=typ)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("trace", help="build or check a rewriting trace")
    p.add_argument("action", choices=("build", "check"))
    p.add_argument("file", help="machine or S-machine (build), presentation (check)")
    p.add_argument("arg", help="input word (build) or trace file (check)")
    p.add_argument("--L", type=int, default=DEFAULT_FLOOR)
    p.add_argument("--floor", type=int, default=DEFAULT_FLOOR)
    p.add_argument("--space-cap", type=int, default=20)
    p.add_argument("--step-cap", type=int, default=60)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_trace)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "trace":
        args.input = args.trace = args.arg
    try:
        return args.func(args)
    except (UsageError, WorkbenchError, OSError) as e:
        print(f"spacewb: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
