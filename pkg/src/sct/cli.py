"""Command-line front end: `sct <verb> ...`.

Exit status is 0 on success, 1 when a verification finds a counterexample
(the offending theory is printed as JSON) and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .characters import CharacterTable, character_table
from .constructions import (
    act,
    delta_product,
    factors_over,
    make_extension,
    make_subgroup,
    deflated_sct,
    restricted_sct,
    star_product,
)
from .core import InvalidTheoryError, Sct, sct_from_json, sct_M, sct_m
from .dihedral import classify, dihedral_table, verify_classification
from .groups import (
    UnrecognizedGroupError,
    automorphism_group,
    dihedral_tau,
    group_from_descriptor,
    make_cyclic,
    rotation_subgroup,
    unit_automorphism,
)
from .lattice import (
    EnumerationGuardError,
    check_cyclic_classification,
    enumerate_scts,
    max_classes,
    meet,
    meet_is_partial_refinement,
)

FORMATS = {
    "enumerate": ("text", "json"),
    "lattice": ("text", "json", "dot"),
    "classify": ("text", "json", "dot"),
    "verify": ("text", "json"),
    "star": ("text", "json"),
    "delta": ("text", "json"),
    "act": ("text", "json"),
    "factor": ("text", "json"),
    "restrict": ("text", "json"),
    "deflate": ("text", "json"),
    "table": ("text", "json"),
    "meet-search": ("text", "json"),
}


class UsageError(Exception):
    pass


class VerificationFailure(Exception):
    def __init__(self, message: str, theories: list[Sct]):
        super().__init__(message)
        self.theories = theories


@dataclass
class RunConfig:
    verb: str
    args: argparse.Namespace
    fmt: str = "text"
    output: Path | None = None
    threads: int = 1
    max_classes: int = field(default_factory=max_classes)

    def __post_init__(self):
        if self.verb not in FORMATS:
            raise UsageError(f"unknown verb {self.verb!r}")
        if self.fmt not in FORMATS[self.verb]:
            raise UsageError(f"{self.verb} does not support --format {self.fmt}")


# -- argument helpers -------------------------------------------------------------

def _group(spec: str):
    try:
        return group_from_descriptor(spec)
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad group descriptor {spec!r}: {exc}") from exc


def _n_range(text: str) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise UsageError(f"bad range {text!r}, expected e.g. 3..10") from None
    if a > b:
        raise UsageError(f"empty range {text!r}")
    return list(range(a, b + 1))


def _theory(text: str, table: CharacterTable | None = None) -> Sct:
    """A theory from inline JSON, a JSON file, or the keywords m / M."""
    if text in ("m", "M"):
        if table is None:
            raise UsageError("the keywords m / M need a group from context")
        return sct_m(table) if text == "m" else sct_M(table)
    path = Path(text)
    raw = path.read_text() if not text.lstrip().startswith("{") and path.exists() else text
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InvalidTheoryError(f"malformed Sct JSON: {exc}") from exc
    S = sct_from_json(data)
    if table is not None and S.table != table:
        raise UsageError(f"theory lives on {S.group.name}, expected {table.group.name}")
    return S


def _automorphism(G, spec: str):
    if spec == "tau":
        return dihedral_tau(G)
    if spec.startswith("unit:"):
        return unit_automorphism(G, int(spec[5:]))
    auts = automorphism_group(G)
    try:
        return auts[int(spec)]
    except (ValueError, IndexError):
        raise UsageError(f"automorphism must be tau, unit:j or an index below {len(auts)}") from None


def _enumerate(table: CharacterTable, cfg: RunConfig):
    return enumerate_scts(table, workers=cfg.threads, limit=cfg.max_classes)


def _render_theory(S: Sct, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(S.to_json(), sort_keys=True)
    chars = " | ".join(" ".join(b) for b in S.char_blocks())
    return f"{S.group.name}: classes {S.compact()}  ;  chars {chars}"


# -- verbs --------------------------------------------------------------------------

def cmd_enumerate(cfg: RunConfig) -> str:
    table = character_table(_group(cfg.args.group))
    L = _enumerate(table, cfg)
    if cfg.fmt == "json":
        return json.dumps([S.to_json() for S in L], sort_keys=True)
    lines = [f"{len(L)} supercharacter theories of {table.group.name}"]
    lines += [f"{i:4d}  {S.compact()}" for i, S in enumerate(L)]
    return "\n".join(lines)


def cmd_lattice(cfg: RunConfig) -> str:
    L = _enumerate(character_table(_group(cfg.args.group)), cfg)
    if cfg.fmt == "dot":
        return L.to_dot()
    if cfg.fmt == "json":
        return json.dumps(L.to_json(), sort_keys=True)
    lines = [f"{len(L)} theories, {len(L.cover_edges)} cover relations"]
    lines += [f"{i:4d}  {S.compact()}" for i, S in enumerate(L)]
    lines += [f"  {i} < {j}" for i, j in L.cover_edges]
    return "\n".join(lines)


def cmd_classify(cfg: RunConfig) -> str:
    n = cfg.args.n
    tagged = classify(n, extended=cfg.args.extended)
    if cfg.fmt == "json":
        return json.dumps([{"tag": str(tag), "theory": S.to_json()} for S, tag in tagged], sort_keys=True)
    if cfg.fmt == "dot":
        lines = ["digraph classify {", "  node [shape=box];"]
        for i, (S, tag) in enumerate(tagged):
            label = f"{tag}\\n{S.compact()}".replace('"', '\\"')
            lines.append(f'  n{i} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines)
    lines = [f"{len(tagged)} theories of D_{2 * n}"]
    lines += [f"{str(tag):10s} {S.compact()}" for S, tag in tagged]
    return "\n".join(lines)


def cmd_verify(cfg: RunConfig) -> str:
    ns = _n_range(cfg.args.n_range)
    lines, results, bad = [], [], []
    for n in ns:
        if cfg.args.family == "cyclic":
            table = character_table(make_cyclic(n))
            report = check_cyclic_classification(_enumerate(table, cfg))
            failures = [report.theories[i] for i in report.unmatched]
            line = (f"n={n}: {'PASS' if report.ok else 'FAIL'} theories={len(report.theories)} "
                    f"forms={report.form_counts()}")
        else:
            report = verify_classification(n, extended=cfg.args.extended,
                                           lattice=_enumerate(dihedral_table(n), cfg))
            failures = [S for v in report.failures.values() for S in v]
            line = report.summary()
        lines.append(line)
        results.append({"n": n, "ok": report.ok, "failures": [S.to_json() for S in failures]})
        bad.extend(failures)
    text = json.dumps(results, sort_keys=True) if cfg.fmt == "json" else "\n".join(lines)
    if bad:
        raise VerificationFailure(text, bad)
    return text


def _rotation_d(G, d: int) -> frozenset[int]:
    if G.family not in ("cyclic", "dihedral"):
        raise UsageError("subgroups are given as <r^d> and need a cyclic or dihedral group")
    try:
        return rotation_subgroup(G, d)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def cmd_star(cfg: RunConfig) -> str:
    table = character_table(_group(cfg.args.group))
    ext = make_extension(table, _rotation_d(table.group, cfg.args.d))
    S = _theory(cfg.args.inner, ext.sub_table)
    T = _theory(cfg.args.outer, ext.quo_table)
    return _render_theory(star_product(S, T, ext), cfg.fmt)


def cmd_delta(cfg: RunConfig) -> str:
    table = character_table(_group(cfg.args.group))
    G = table.group
    N, M = _rotation_d(G, cfg.args.N), _rotation_d(G, cfg.args.M)
    S = _theory(cfg.args.inner, make_subgroup(table, M).sub_table)
    T = _theory(cfg.args.outer, make_extension(table, N).quo_table)
    return _render_theory(delta_product(S, T, table, N, M), cfg.fmt)


def cmd_act(cfg: RunConfig) -> str:
    S = _theory(cfg.args.theory)
    return _render_theory(act(_automorphism(S.group, cfg.args.aut), S), cfg.fmt)


def cmd_factor(cfg: RunConfig) -> str:
    S = _theory(cfg.args.theory)
    pair = factors_over(S, _rotation_d(S.group, cfg.args.d))
    if pair is None:
        if cfg.fmt == "json":
            return json.dumps({"factors": False})
        return f"{S.compact()} does not factor over <r^{cfg.args.d}>"
    if cfg.fmt == "json":
        return json.dumps({"factors": True, "inner": pair[0].to_json(), "outer": pair[1].to_json()},
                          sort_keys=True)
    return "\n".join(["inner " + _render_theory(pair[0], "text"), "outer " + _render_theory(pair[1], "text")])


def cmd_restrict(cfg: RunConfig) -> str:
    S = _theory(cfg.args.theory)
    sub = make_subgroup(S.table, _rotation_d(S.group, cfg.args.d))
    return _render_theory(restricted_sct(S, sub), cfg.fmt)


def cmd_deflate(cfg: RunConfig) -> str:
    S = _theory(cfg.args.theory)
    ext = make_extension(S.table, _rotation_d(S.group, cfg.args.d))
    return _render_theory(deflated_sct(S, ext), cfg.fmt)


def cmd_table(cfg: RunConfig) -> str:
    table = character_table(_group(cfg.args.group))
    if cfg.fmt == "json":
        return json.dumps(table.to_json(), sort_keys=True)
    return table.to_text()


def _search_groups(max_order: int) -> list[str]:
    out = []
    for n in range(1, max_order + 1):
        out.append(f"cyclic:{n}")
    for n in range(1, max_order // 2 + 1):
        out.append(f"dihedral:{n}")
    return out


def cmd_meet_search(cfg: RunConfig) -> str:
    """Look for pairs whose meet equals the mutual refinement in exactly one component."""
    found, lines = [], []
    for spec in _search_groups(cfg.args.max_order):
        table = character_table(_group(spec))
        if len(table.classes) > cfg.max_classes:
            lines.append(f"{table.group.name}: skipped ({len(table.classes)} classes)")
            continue
        L = _enumerate(table, cfg)
        hits = 0
        for i, S in enumerate(L):
            for T in L.theories[i + 1:]:
                if meet_is_partial_refinement(S, T, L):
                    hits += 1
                    if len(found) < cfg.args.limit:
                        found.append({"S": S.to_json(), "T": T.to_json(), "meet": meet(S, T, L).to_json()})
        lines.append(f"{table.group.name}: {hits} witness pairs among {len(L)} theories")
    if cfg.fmt == "json":
        return json.dumps({"witnesses": found}, sort_keys=True)
    for w in found:
        lines.append(json.dumps(w, sort_keys=True))
    return "\n".join(lines)


COMMANDS = {
    "enumerate": cmd_enumerate,
    "lattice": cmd_lattice,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "star": cmd_star,
    "delta": cmd_delta,
    "act": cmd_act,
    "factor": cmd_factor,
    "restrict": cmd_restrict,
    "deflate": cmd_deflate,
    "table": cmd_table,
    "meet-search": cmd_meet_search,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sct", description="Supercharacter theories of cyclic and dihedral groups.")
    common = _Parser(add_help=False)
    common.add_argument("--format", default="text")
    common.add_argument("--output", type=Path)
    common.add_argument("--threads", type=int, default=1)
    sub = p.add_subparsers(dest="verb", parser_class=_Parser)
    group_help = "e.g. dihedral:6, cyclic:12, product:cyclic:2*cyclic:3"

    for verb in ("enumerate", "lattice", "table"):
        sp = sub.add_parser(verb, parents=[common])
        sp.add_argument("--group", required=True, help=group_help)

    sp = sub.add_parser("classify", parents=[common])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--extended", action="store_true", help="allow n up to 12")
    sp.add_argument("--json", dest="format", action="store_const", const="json")
    sp.add_argument("--dot", dest="format", action="store_const", const="dot")

    sp = sub.add_parser("verify", parents=[common])
    sp.add_argument("--n-range", default="3..10")
    sp.add_argument("--family", choices=("dihedral", "cyclic"), default="dihedral")
    sp.add_argument("--extended", action="store_true", help="allow dihedral n up to 12")

    sp = sub.add_parser("star", parents=[common])
    sp.add_argument("--group", required=True, help=group_help)
    sp.add_argument("--d", type=int, required=True, help="N = <r^d>")
    sp.add_argument("--inner", required=True, help="theory of N: JSON, a JSON file, m or M")
    sp.add_argument("--outer", required=True, help="theory of G/N: JSON, a JSON file, m or M")

    sp = sub.add_parser("delta", parents=[common])
    sp.add_argument("--group", required=True, help=group_help)
    sp.add_argument("--N", type=int, required=True, help="N = <r^N>")
    sp.add_argument("--M", type=int, required=True, help="M = <r^M>")
    sp.add_argument("--inner", required=True, help="theory of M")
    sp.add_argument("--outer", required=True, help="theory of G/N")

    sp = sub.add_parser("act", parents=[common])
    sp.add_argument("--theory", required=True)
    sp.add_argument("--aut", default="tau", help="tau, unit:j, or an index into Aut(G)")

    for verb in ("factor", "restrict", "deflate"):
        sp = sub.add_parser(verb, parents=[common])
        sp.add_argument("--theory", required=True)
        sp.add_argument("--d", type=int, required=True, help="N = <r^d>")

    sp = sub.add_parser("meet-search", parents=[common])
    sp.add_argument("--max-order", type=int, default=12)
    sp.add_argument("--limit", type=int, default=5, help="witness pairs to print")
    return p


def run(cfg: RunConfig) -> str:
    return COMMANDS[cfg.verb](cfg)


def _emit(text: str, output: Path | None):
    if output is None:
        print(text)
    else:
        output.write_text(text + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.verb is None:
            raise UsageError("missing verb; choose one of " + ", ".join(FORMATS))
        cfg = RunConfig(args.verb, args, fmt=args.format or "text", output=args.output,
                        threads=max(1, args.threads))
        _emit(run(cfg), cfg.output)
        return 0
    except VerificationFailure as fail:
        _emit(str(fail), getattr(args, "output", None))
        for S in fail.theories:
            print(json.dumps(S.to_json(), sort_keys=True))
        return 1
    except (UsageError, EnumerationGuardError, InvalidTheoryError, UnrecognizedGroupError,
            OSError, ValueError) as exc:
        print(f"sct: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
