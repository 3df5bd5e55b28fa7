"""Command-line entry point: ``bgkit <group> <action> [options]``.

Exit status: 0 found/certified, 2 not found within caps, 1 bad input.
Default caps can be overridden with ``BGKIT_MAX_COSETS``, ``BGKIT_MAX_LEN``,
``BGKIT_MAX_STATES``, ``BGKIT_MAX_VERTICES`` and ``BGKIT_MAX_DEPTH``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import filling, pachner, presentations, tower, triviality
from .words import AlphabetError, X, Word, build_v, commutator, format_word, parse

EXIT_OK, EXIT_INPUT, EXIT_CAPPED = 0, 1, 2

CAP_DEFAULTS = {
    "max_cosets": 10 ** 6,
    "max_len": 32,
    "max_states": 10 ** 6,
    "max_vertices": 10,
    "max_depth": 12,
}


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    caps: dict = field(default_factory=dict)
    seed: int = 0
    format: str = "json"
    inputs: dict = field(default_factory=dict)
    output: Optional[str] = None
    threads: int = 1


def _cap(name: str) -> int:
    env = os.environ.get("BGKIT_" + name.upper())
    if env is None:
        return CAP_DEFAULTS[name]
    try:
        value = int(env)
    except ValueError:
        raise InputError(f"BGKIT_{name.upper()} must be an integer") from None
    return value


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


CAP_FLAGS = {
    "max_cosets": "--max-cosets",
    "max_len": "--max-len",
    "max_states": "--max-states",
    "max_vertices": "--max-vertices",
    "max_depth": "--max-depth",
}


def _add_caps(p: argparse.ArgumentParser, *names: str) -> None:
    for name in names:
        p.add_argument(CAP_FLAGS[name], dest=name, type=_positive, default=None)


def _add_presentation_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--n", type=_positive, help="use the balanced presentation P_n")
    src.add_argument("--file", help="presentation file (gens:/rel: lines)")
    src.add_argument("--bg", action="store_true", help="use the Baumslag-Gersten group")


GLOBAL_DEFAULTS = {"format": None, "seed": 0, "threads": 1, "out": None, "timing": False}


def _common() -> argparse.ArgumentParser:
    # accepted before or after the subcommand; SUPPRESS keeps a leaf from
    # overwriting a value given at the top level
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--format", choices=["json", "csv", "text"], default=argparse.SUPPRESS)
    c.add_argument("--seed", type=_nonneg, default=argparse.SUPPRESS)
    c.add_argument("--threads", type=_positive, default=argparse.SUPPRESS,
                   help="accepted for compatibility; searches run single-threaded")
    c.add_argument("--out", default=argparse.SUPPRESS, help="write the main output to this path")
    c.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                   help="include wall time (breaks byte-for-byte reruns)")
    return c


class _Sub:
    def __init__(self, subparsers, common):
        self.subparsers = subparsers
        self.common = common

    def add_parser(self, name, **kw):
        return self.subparsers.add_parser(name, parents=[self.common], **kw)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="bgkit", description=__doc__, parents=[common],
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    groups = ap.add_subparsers(dest="group", required=True)

    present = _Sub(groups.add_parser("present").add_subparsers(dest="action", required=True), common)
    p = present.add_parser("gen")
    p.add_argument("--n", type=_positive, default=None)
    p.add_argument("--bg", action="store_true")
    p = present.add_parser("verify-trivial")
    _add_presentation_source(p)
    _add_caps(p, "max_cosets")
    p = present.add_parser("ac-search")
    _add_presentation_source(p)
    _add_caps(p, "max_depth", "max_len", "max_states")
    p = present.add_parser("power-check")
    p.add_argument("--m", type=_nonneg, required=True)
    _add_caps(p, "max_len", "max_states")

    dehn = _Sub(groups.add_parser("dehn").add_subparsers(dest="action", required=True), common)
    p = dehn.add_parser("probe")
    _add_presentation_source(p)
    w = p.add_mutually_exclusive_group(required=True)
    w.add_argument("--word")
    w.add_argument("--w-n", type=_positive, help="probe w_n = [v_n, x]")
    _add_caps(p, "max_len", "max_states")

    fill = _Sub(groups.add_parser("fill").add_subparsers(dest="action", required=True), common)
    p = fill.add_parser("length")
    _add_presentation_source(p)
    p.add_argument("--loop", required=True)
    _add_caps(p, "max_len", "max_states")
    p = fill.add_parser("ratio")
    _add_presentation_source(p)
    p.add_argument("--max-loop-len", type=_positive, default=4)
    _add_caps(p, "max_len", "max_states")
    p = fill.add_parser("growth")
    p.add_argument("--n-list", default="1,2,3")
    _add_caps(p, "max_len", "max_states")

    tri = _Sub(groups.add_parser("tri").add_subparsers(dest="action", required=True), common)
    p = tri.add_parser("gen")
    p.add_argument("kind", choices=["boundary"])
    p.add_argument("--dim", type=_positive, required=True)
    p = tri.add_parser("validate")
    p.add_argument("file")
    p.add_argument("--level", choices=["pseudomanifold", "links"], default="pseudomanifold")
    _add_caps(p, "max_states")
    p = tri.add_parser("moves")
    p.add_argument("file")
    _add_caps(p, "max_vertices")
    p = tri.add_parser("apply")
    p.add_argument("file")
    p.add_argument("--index", type=_nonneg, help="index into the 'tri moves' listing")
    p.add_argument("--A", help="comma-separated face A")
    p.add_argument("--B", help="comma-separated simplex B")
    _add_caps(p, "max_vertices")
    p = tri.add_parser("bfs")
    p.add_argument("a")
    p.add_argument("b")
    _add_caps(p, "max_vertices", "max_states")
    p = tri.add_parser("walk")
    p.add_argument("file")
    p.add_argument("--steps", type=_nonneg, required=True)
    _add_caps(p, "max_vertices")

    tw = _Sub(groups.add_parser("tower").add_subparsers(dest="action", required=True), common)
    p = tw.add_parser("eval")
    p.add_argument("--m", type=_nonneg, required=True)
    p = tw.add_parser("cmp")
    p.add_argument("a", help="integer or E(m)")
    p.add_argument("b", help="integer or E(m)")
    return ap


# -- helpers ------------------------------------------------------------------------

def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _presentation(args) -> presentations.Presentation:
    if getattr(args, "file", None):
        return presentations.loads(_read(args.file))
    if getattr(args, "n", None):
        return presentations.build_Pn(args.n)
    return presentations.baumslag_gersten()


def _tower_arg(text: str) -> tower.TowerValue:
    s = text.strip()
    if s.startswith("E(") and s.endswith(")"):
        return tower.E(int(s[2:-1]))
    return tower.make(int(s))


def _word_json(w: Word, alphabet) -> str:
    return format_word(w, alphabet) if len(w) <= 4096 else f"<{len(w)} letters>"


# -- command bodies: return (exit code, payload dict, text rendering) ----------------

def cmd_present(args, caps):
    if args.action == "gen":
        p = presentations.baumslag_gersten() if args.bg or args.n is None else presentations.build_Pn(args.n)
        text = presentations.dumps(p)
        payload = {"presentation": text, "relator_lengths": [len(r) for r in p.relators],
                   "balanced": p.balanced}
        return EXIT_OK, payload, text
    p = _presentation(args)
    if args.action == "verify-trivial":
        try:
            res = triviality.coset_enumerate(p, caps["max_cosets"])
        except triviality.CosetOverflow as exc:
            return EXIT_CAPPED, {"order": None, "overflow": exc.stats}, f"overflow: {exc.stats}\n"
        payload = {"order": res.order, "trivial": res.order == 1, "cosets_defined": res.defined,
                   "max_live": res.max_live, "_seconds": res.seconds}
        return EXIT_OK, payload, f"order {res.order}\n"
    if args.action == "ac-search":
        target = presentations.trivial_presentation(p.alphabet)
        res = presentations.ac_search(p, target, caps["max_depth"], caps["max_len"], caps["max_states"])
        payload = {"found": res.found, "depth": res.depth, "explored": res.explored,
                   "moves": [str(m) for m in res.moves] if res.found else None}
        if not res.found:
            return EXIT_CAPPED, payload, "not found within bounds\n"
        return EXIT_OK, payload, "".join(str(m) + "\n" for m in res.moves)
    if args.action == "power-check":
        res = triviality.power_check(args.m, caps["max_len"], caps["max_states"])
        return _dehn_payload(res, presentations.baumslag_gersten())
    raise InputError(args.action)


def _dehn_payload(res: triviality.DehnProbeResult, p):
    payload = {
        "word": _word_json(res.word, p.alphabet),
        "word_length": len(res.word),
        "applications": res.applications,
        "capped": res.capped,
        "states_explored": res.explored,
        "certificate": [asdict(c) for c in res.certificate],
        "_seconds": res.seconds,
    }
    if res.applications is None:
        return EXIT_CAPPED, payload, f"capped after {res.explored} states\n"
    return EXIT_OK, payload, f"applications {res.applications}\n"


def cmd_dehn(args, caps):
    p = _presentation(args)
    if args.word is not None:
        w = parse(args.word, p.alphabet)
    else:
        w = commutator(build_v(args.w_n), Word.gen(X))
    res = triviality.dehn_probe(p, w, caps["max_len"], caps["max_states"])
    return _dehn_payload(res, p)


def cmd_fill(args, caps):
    if args.action == "growth":
        try:
            ns = [int(s) for s in args.n_list.split(",") if s.strip()]
        except ValueError:
            raise InputError("--n-list must be comma-separated integers") from None
        rows = filling.growth_probe(ns, caps["max_len"], caps["max_states"])
        code = EXIT_OK if not any(r.capped for r in rows) else EXIT_CAPPED
        return code, {"rows": [asdict(r) for r in rows]}, filling.growth_csv(rows)
    x = filling.presentation_complex(_presentation(args))
    if args.action == "length":
        loop = x.parse_loop(args.loop)
        res = filling.filling_length(loop, x, caps["max_len"], caps["max_states"])
        payload = {"loop": x.format_loop(res.loop), "length": len(res.loop), "fl": res.fl,
                   "lower_bound": res.lower_bound, "states_explored": res.explored,
                   "capped": res.capped, "path": [x.format_loop(s) for s in res.path]}
        if res.fl is None:
            return EXIT_CAPPED, payload, f"fl > {res.lower_bound - 1} (searched)\n"
        return EXIT_OK, payload, f"fl {res.fl}\n"
    if args.action == "ratio":
        res = filling.Fl_ratio(x, args.max_loop_len, caps["max_len"], caps["max_states"])
        payload = {"ratio": str(res.ratio), "witness": x.format_loop(res.witness or ()),
                   "loops": res.loops, "partial": res.partial}
        return (EXIT_CAPPED if res.partial else EXIT_OK), payload, f"{res.ratio}\n"
    raise InputError(args.action)


def _load_tri(path: str) -> pachner.Triangulation:
    return pachner.loads(_read(path))


def _face(text: str):
    try:
        return tuple(sorted(int(v) for v in text.split(",")))
    except ValueError:
        raise InputError(f"bad face {text!r}") from None


def cmd_tri(args, caps):
    if args.action == "gen":
        t = pachner.boundary_of_simplex(args.dim + 1)
        return EXIT_OK, t.to_json(), pachner.dumps(t)
    if args.action == "validate":
        t = _load_tri(args.file)
        rep = pachner.validate(t, args.level, caps["max_states"])
        text = "ok\n" if rep.ok else "".join(f"{k}: {list(f)}\n" for k, f in rep.violations)
        return (EXIT_OK if rep.ok else EXIT_INPUT), rep.to_json(), text
    if args.action == "moves":
        t = _load_tri(args.file)
        moves = pachner.enumerate_moves(t, caps["max_vertices"])
        payload = {"moves": [{"A": list(m.A), "B": list(m.B), "removed": m.removed, "added": m.added}
                             for m in moves]}
        return EXIT_OK, payload, "".join(f"{i}: {m}\n" for i, m in enumerate(moves))
    if args.action == "apply":
        t = _load_tri(args.file)
        if args.index is not None:
            moves = pachner.enumerate_moves(t, caps["max_vertices"])
            if args.index >= len(moves):
                raise InputError(f"move index {args.index} out of range ({len(moves)} moves)")
            m = moves[args.index]
        elif args.A and args.B:
            m = pachner.BistellarMove(_face(args.A), _face(args.B))
        else:
            raise InputError("give --index or both --A and --B")
        out = pachner.apply_move(t, m)
        payload = out.to_json()
        payload["move"] = {"A": list(m.A), "B": list(m.B)}
        return EXIT_OK, payload, pachner.dumps(out)
    if args.action == "bfs":
        a, b = _load_tri(args.a), _load_tri(args.b)
        res = pachner.bfs_distance(a, b, caps["max_vertices"], caps["max_states"])
        payload = {"distance": res.distance, "explored": res.explored, "radius": res.radius,
                   "capped": res.capped}
        if res.distance is None:
            return EXIT_CAPPED, payload, f"unknown, >= {res.radius}\n"
        return EXIT_OK, payload, f"{res.distance}\n"
    if args.action == "walk":
        t = _load_tri(args.file)
        res = pachner.random_walk(t, args.steps, args.seed, caps["max_vertices"])
        payload = {
            "final": res.final.to_json(),
            "trace": [{"move": str(s.move), "f_vector": list(s.f_vector), "euler": s.euler} for s in res.steps],
        }
        text = "".join(" ".join(map(str, s.f_vector)) + "\n" for s in res.steps)
        return EXIT_OK, payload, text
    raise InputError(args.action)


def cmd_tower(args, caps):
    if args.action == "eval":
        v = tower.E(args.m)
        payload = {"m": args.m, "exact": v.is_exact, "value": str(v)}
        return EXIT_OK, payload, str(v) + "\n"
    a, b = _tower_arg(args.a), _tower_arg(args.b)
    c = tower.compare(a, b)
    word = {-1: "less", 0: "equal", 1: "greater"}[c]
    return EXIT_OK, {"a": args.a, "b": args.b, "ordering": word}, word + "\n"


COMMANDS = {"present": cmd_present, "dehn": cmd_dehn, "fill": cmd_fill, "tri": cmd_tri, "tower": cmd_tower}

CAPS_USED = {
    ("present", "verify-trivial"): ["max_cosets"],
    ("present", "ac-search"): ["max_depth", "max_len", "max_states"],
    ("present", "power-check"): ["max_len", "max_states"],
    ("dehn", "probe"): ["max_len", "max_states"],
    ("fill", "length"): ["max_len", "max_states"],
    ("fill", "ratio"): ["max_len", "max_states"],
    ("fill", "growth"): ["max_len", "max_states"],
    ("tri", "validate"): ["max_states"],
    ("tri", "moves"): ["max_vertices"],
    ("tri", "apply"): ["max_vertices"],
    ("tri", "bfs"): ["max_vertices", "max_states"],
    ("tri", "walk"): ["max_vertices"],
}

# tighter defaults where the generic ones would make a command crawl
COMMAND_DEFAULTS = {
    ("present", "ac-search"): {"max_len": 16},
    ("present", "power-check"): {"max_len": 24},
    ("fill", "length"): {"max_len": 16, "max_states": 10 ** 5},
    ("fill", "ratio"): {"max_len": 16, "max_states": 10 ** 5},
    ("fill", "growth"): {"max_len": 14, "max_states": 2 * 10 ** 4},
    ("tri", "validate"): {"max_states": 2000},
    ("tri", "bfs"): {"max_states": 10 ** 5},
}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    for k, v in GLOBAL_DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    key = (args.group, args.action)
    try:
        caps = {}
        for name in CAPS_USED.get(key, []):
            value = getattr(args, name, None)
            if value is None:
                env = os.environ.get("BGKIT_" + name.upper())
                value = _cap(name) if env is not None else COMMAND_DEFAULTS.get(key, {}).get(name, _cap(name))
            if value <= 0:
                raise InputError(f"{name} must be positive")
            caps[name] = value
        fmt = args.format or ("text" if args.action == "gen" else "json")
        inputs = {k: v for k, v in vars(args).items()
                  if k not in ("group", "action", "format", "seed", "threads", "out", "timing")
                  and k not in CAP_FLAGS}
        config = RunConfig(f"{args.group} {args.action}", caps, args.seed, fmt, inputs, args.out, args.threads)
        start = time.perf_counter()
        code, payload, text = COMMANDS[args.group](args, caps)
    except (InputError, AlphabetError, presentations.PresentationError, pachner.TriangulationError,
            filling.ComplexError, ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.timing:
        payload["wall_time"] = time.perf_counter() - start
    payload = {k: v for k, v in payload.items() if not k.startswith("_") or args.timing}
    if fmt == "json":
        record = {"config": asdict(config), "status": {0: "ok", 2: "capped"}.get(code, "error"), **payload}
        out = json.dumps(record, sort_keys=True) + "\n"
    elif fmt == "csv" and key == ("fill", "growth"):
        out = text
    elif fmt == "csv":
        print("error: csv output is only available for 'fill growth'", file=sys.stderr)
        return EXIT_INPUT
    else:
        out = text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        stdout.write(out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
