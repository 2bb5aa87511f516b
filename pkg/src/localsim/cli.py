"""Command-line front end.

The executable parses element literals against a chosen germ structure,
dispatches to the library, and reports either human-readable text or
line-delimited records (one JSON object per line, keys sorted), so runs
with the same configuration are byte-identical.  Exit status 0 means
success, 1 a usage or domain error, 2 a failed property check; scripts can
therefore use the tool directly as an oracle.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Sequence

from .elements import (
    CanonicalElement,
    apply,
    compose,
    format_element,
    identity,
    invert,
    is_in_F,
    is_in_T,
    max_partition,
    parse_element,
)
from .errors import LocalSimError
from .structure import SelfSimilarGroup, parse_automaton, symmetric_group, trivial_group
from .walls import integer_line_instance, parse_walls_file, walls_to_zipper
from .zipper import (
    EmbeddingClass,
    cocycle_identity_defect,
    nowalls_demo,
    properness_audit,
    separating_walls,
    symdiff,
    wall_separation,
    zipper_length,
)


class _Parser(argparse.ArgumentParser):
    # usage errors are domain errors here, so exit 1 rather than argparse's 2
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


@dataclass(frozen=True)
class RunConfig:
    """Everything a run depends on; equal configs give identical output."""

    alphabet: int | None
    hstruct: str
    command: str
    arguments: tuple[str, ...]
    options: tuple[tuple[str, object], ...]
    output: str = "text"
    seed: int = 0

    def opt(self, name: str, default=None):
        for k, v in self.options:
            if k == name:
                return v
        return default


class _Emitter:
    def __init__(self, mode: str):
        self.mode = mode

    def record(self, rec: dict, text: str):
        if self.mode == "records":
            print(json.dumps(rec, sort_keys=True, separators=(",", ":")))
        else:
            print(text)


def _resolve_input(name: str) -> str:
    """Read a data file from the filesystem, else the packaged fixtures."""
    p = Path(name)
    if p.is_file():
        return p.read_text()
    packaged = resources.files("localsim").joinpath("fixtures", p.name)
    if packaged.is_file():
        return packaged.read_text()
    raise LocalSimError(f"no such file: {name}")


def _build_group(config: RunConfig) -> SelfSimilarGroup:
    name = config.hstruct
    if name == "trivial":
        return trivial_group(config.alphabet or 2)
    if name == "symmetric":
        return symmetric_group(config.alphabet or 2)
    group = parse_automaton(_resolve_input(name), name=Path(name).stem)
    if config.alphabet is not None and group.alphabet.size != config.alphabet:
        raise LocalSimError(
            f"--alphabet {config.alphabet} disagrees with the file's alphabet of size {group.alphabet.size}"
        )
    violations = group.validate()
    if violations:
        lines = "; ".join(str(v) for v in violations)
        raise LocalSimError(f"structure {name} fails validation: {lines}")
    return group


def _class_literal(e: EmbeddingClass) -> str:
    return format_element(CanonicalElement(e.table))


def parse_gens_file(text: str, group: SelfSimilarGroup) -> list[tuple[str, CanonicalElement]]:
    """Read `name = literal` lines, '#' starting comments."""
    out = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise LocalSimError(f"generators file line {ln}: expected `name = literal`")
        name, lit = (part.strip() for part in line.split("=", 1))
        out.append((name, parse_element(lit, group)))
    return out


# -- command bodies; each returns the exit status ------------------------------


def _cmd_hstruct(config: RunConfig, group, emit: _Emitter) -> int:
    target = config.opt("file") or config.hstruct
    if target == "trivial":
        group = trivial_group(config.alphabet or 2)
    elif target == "symmetric":
        group = symmetric_group(config.alphabet or 2)
    else:
        group = parse_automaton(_resolve_input(target), name=Path(target).stem)
    violations = group.validate()
    rec = {
        "cmd": "hstruct-validate",
        "name": group.name or target,
        "alphabet": group.alphabet.size,
        "elements": group.size,
        "violations": [v.axiom for v in violations],
        "ok": not violations,
    }
    if violations:
        body = "\n".join(str(v) for v in violations)
        emit.record(rec, body)
        return 2
    emit.record(rec, f"ok: {group.size} elements over {group.alphabet.size} letters, all axioms hold")
    return 0


def _element_out(cmd: str, g: CanonicalElement, emit: _Emitter) -> int:
    lit = format_element(g)
    emit.record({"cmd": cmd, "element": lit, "leaves": len(g.rows)}, lit)
    return 0


def _cmd_canon(config, group, emit) -> int:
    return _element_out("canon", parse_element(config.arguments[0], group), emit)


def _cmd_compose(config, group, emit) -> int:
    g = parse_element(config.arguments[0], group)
    h = parse_element(config.arguments[1], group)
    return _element_out("compose", compose(g, h), emit)


def _cmd_inverse(config, group, emit) -> int:
    return _element_out("inverse", invert(parse_element(config.arguments[0], group)), emit)


def _cmd_apply(config, group, emit) -> int:
    g = parse_element(config.arguments[0], group)
    x = group.alphabet.parse_point(config.arguments[1])
    out = group.alphabet.format_point(apply(g, x))
    emit.record({"cmd": "apply", "point": out}, out)
    return 0


def _cmd_maxpart(config, group, emit) -> int:
    code = max_partition(parse_element(config.arguments[0], group))
    balls = [group.alphabet.format_word(w) for w in code.words]
    emit.record({"cmd": "maxpart", "balls": balls, "size": len(balls)}, " ".join(balls))
    return 0


def _cmd_member(config, group, emit) -> int:
    g = parse_element(config.arguments[0], group)
    which = config.opt("group")
    ans = is_in_F(g) if which == "F" else is_in_T(g)
    emit.record({"cmd": "member", "group": which, "member": ans}, "true" if ans else "false")
    return 0


def _cmd_zipper_length(config, group, emit) -> int:
    n = zipper_length(parse_element(config.arguments[0], group))
    emit.record({"cmd": "zipper-length", "length": n}, str(n))
    return 0


def _cmd_symdiff(config, group, emit) -> int:
    diff = symdiff(parse_element(config.arguments[0], group))
    for e, sign in diff.items():
        lit = _class_literal(e)
        emit.record({"cmd": "symdiff", "sign": sign, "class": lit}, f"{sign:+d} {lit}")
    emit.record({"cmd": "symdiff-total", "length": len(diff)}, f"length {len(diff)}")
    return 0


def _cmd_cocycle_check(config, group, emit) -> int:
    g1 = parse_element(config.arguments[0], group)
    g2 = parse_element(config.arguments[1], group)
    defect = cocycle_identity_defect(g1, g2)
    emit.record({"cmd": "cocycle-check", "defect": defect, "ok": defect == 0}, f"defect {defect}")
    return 0 if defect == 0 else 2


def _cmd_walls(config, group, emit) -> int:
    g1 = parse_element(config.arguments[0], group)
    g2 = parse_element(config.arguments[1], group)
    sep = wall_separation(g1, g2)
    emit.record({"cmd": "walls", "separation": sep}, f"separation {sep}")
    if config.opt("list"):
        for e, side in separating_walls(g1, g2):
            lit = _class_literal(e)
            emit.record({"cmd": "wall", "side": side, "class": lit}, f"{side:+d} {lit}")
    return 0


def _cmd_audit(config, group, emit) -> int:
    gens = parse_gens_file(_resolve_input(config.opt("gens")), group)
    report = properness_audit(
        group,
        [g for _, g in gens],
        radius=config.opt("radius"),
        threshold=config.opt("threshold"),
    )
    for row in report.rows:
        emit.record(
            {"cmd": "audit", "radius": row.radius, "ball": row.ball_size, "within": row.within_threshold},
            f"radius {row.radius} ball {row.ball_size} within {row.within_threshold}",
        )
    emit.record(
        {"cmd": "audit-summary", "threshold": report.threshold, "stabilized": report.stabilized},
        f"stabilized {'true' if report.stabilized else 'false'}",
    )
    return 0


def _cmd_nowalls(config, group, emit) -> int:
    rep = nowalls_demo(group, config.opt("count"))
    rec = {
        "cmd": "nowalls",
        "witnesses": len(rep.witnesses),
        "first_in_all": all(rep.first_in_translates),
        "second_in_none": not any(rep.second_in_translates),
        "covering": format_element(rep.covering_element),
        "ok": rep.ok,
    }
    text = (
        f"witnesses {len(rep.witnesses)}\n"
        f"first-in-all {'true' if rec['first_in_all'] else 'false'}\n"
        f"second-in-none {'true' if rec['second_in_none'] else 'false'}\n"
        f"covering {rec['covering']}\n"
        f"ok {'true' if rep.ok else 'false'}"
    )
    emit.record(rec, text)
    return 0 if rep.ok else 2


def _cmd_walls2zipper(config, group, emit) -> int:
    zline = config.opt("zline")
    if zline is not None:
        instance = integer_line_instance(zline)
    else:
        target = config.opt("file")
        if target is None:
            raise LocalSimError("walls2zipper needs a file or --zline K")
        instance = parse_walls_file(_resolve_input(target))
    result = walls_to_zipper(instance)
    for r in result.reports:
        preserves = "-" if r.preserves_walls is None else ("true" if r.preserves_walls else "false")
        emit.record(
            {
                "cmd": "walls2zipper",
                "move": r.name,
                "image": r.image,
                "separating": r.separating,
                "symdiff": r.symdiff_size,
                "match": r.sizes_match,
                "preserves_walls": r.preserves_walls,
            },
            f"move {r.name} image {r.image} separating {r.separating} "
            f"symdiff {r.symdiff_size} match {'true' if r.sizes_match else 'false'} preserves {preserves}",
        )
    ok = result.ok()
    emit.record({"cmd": "walls2zipper-summary", "ok": ok}, f"ok {'true' if ok else 'false'}")
    return 0 if ok else 2


_NEEDS_GROUP = {
    "canon",
    "compose",
    "inverse",
    "apply",
    "maxpart",
    "member",
    "zipper-length",
    "symdiff",
    "cocycle-check",
    "walls",
    "audit",
    "nowalls",
}

_BODIES: dict[str, Callable] = {
    "hstruct": _cmd_hstruct,
    "canon": _cmd_canon,
    "compose": _cmd_compose,
    "inverse": _cmd_inverse,
    "apply": _cmd_apply,
    "maxpart": _cmd_maxpart,
    "member": _cmd_member,
    "zipper-length": _cmd_zipper_length,
    "symdiff": _cmd_symdiff,
    "cocycle-check": _cmd_cocycle_check,
    "walls": _cmd_walls,
    "audit": _cmd_audit,
    "nowalls": _cmd_nowalls,
    "walls2zipper": _cmd_walls2zipper,
}


def _build_parser() -> _Parser:
    parser = _Parser(prog="localsim", description="local similarities on the boundary of the rooted tree")
    parser.add_argument("--alphabet", type=int, default=None, metavar="D", help="alphabet size (default 2)")
    parser.add_argument(
        "--hstruct",
        default="trivial",
        metavar="NAME",
        help="germ structure: trivial, symmetric, or an automaton file",
    )
    parser.add_argument("--seed", type=int, default=0, metavar="N", help="random seed recorded in the config")
    parser.add_argument("--format", choices=["text", "records"], default="text", help="output mode")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("hstruct", help="inspect a germ structure")
    p.add_argument("action", choices=["validate"])
    p.add_argument("file", nargs="?", default=None)

    for name, n_args, names in (
        ("canon", 1, ["element"]),
        ("compose", 2, ["left", "right"]),
        ("inverse", 1, ["element"]),
        ("maxpart", 1, ["element"]),
        ("zipper-length", 1, ["element"]),
        ("symdiff", 1, ["element"]),
        ("cocycle-check", 2, ["left", "right"]),
    ):
        p = sub.add_parser(name)
        for arg in names:
            p.add_argument(arg)

    p = sub.add_parser("apply")
    p.add_argument("element")
    p.add_argument("point")

    p = sub.add_parser("member")
    p.add_argument("element")
    p.add_argument("--group", choices=["F", "T"], required=True)

    p = sub.add_parser("walls")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--list", action="store_true")

    p = sub.add_parser("audit")
    p.add_argument("--gens", required=True, metavar="FILE")
    p.add_argument("--radius", type=int, required=True, metavar="K")
    p.add_argument("--threshold", type=int, required=True, metavar="R")

    p = sub.add_parser("nowalls")
    p.add_argument("--count", type=int, default=3, metavar="K")

    p = sub.add_parser("walls2zipper")
    p.add_argument("file", nargs="?", default=None)
    p.add_argument("--zline", type=int, default=None, metavar="K")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    arguments = []
    options = []
    for key in ("element", "left", "right", "point"):
        if getattr(args, key, None) is not None:
            arguments.append(getattr(args, key))
    for key in ("action", "file", "group", "list", "gens", "radius", "threshold", "count", "zline"):
        if getattr(args, key, None) is not None:
            options.append((key, getattr(args, key)))
    return RunConfig(
        alphabet=args.alphabet,
        hstruct=args.hstruct,
        command=args.command,
        arguments=tuple(arguments),
        options=tuple(options),
        output=args.format,
        seed=args.seed,
    )


def run(config: RunConfig) -> int:
    """Execute one configured command; never raises on domain errors."""
    if config.alphabet is not None and config.alphabet < 2:
        print("error: --alphabet must be at least 2", file=sys.stderr)
        return 1
    emit = _Emitter(config.output)
    body = _BODIES[config.command]
    try:
        group = _build_group(config) if config.command in _NEEDS_GROUP else None
        return body(config, group, emit)
    except LocalSimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    return run(_config_from_args(args))


def main_entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    main_entry()
