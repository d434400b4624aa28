"""Command line frontend: ``gridforge <verb> [inputs] [options]``.

Exit status is 0 on success, 1 on a domain error (the error class name is
printed) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import braids, invariants, moves, paths, simplify
from .errors import GridforgeError
from .gridcore import parse_grid, render_ascii, serialize_grid


def _read(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    if "=" in source:  # inline text
        return source.replace("\\n", "\n")
    raise FileNotFoundError(source)


def _grid(source: str):
    return parse_grid(_read(source))


def _braid(source: str):
    return braids.parse_braid(_read(source))


def _bool(v: bool) -> str:
    return "true" if v else "false"


def cmd_validate(args) -> str:
    d = _grid(args.grid)
    return f"ok n={d.n} components={d.num_components}"


def cmd_render(args) -> str:
    return render_ascii(_grid(args.grid))


def cmd_invariants(args) -> str:
    d = _grid(args.grid)
    tb, tbbar = invariants.tb_pair(d)
    return (f"tb={tb} tbbar={tbbar} c={d.n} writhe={invariants.writhe(d)} "
            f"cusps={invariants.cusp_count(d)} ok={_bool(tb + tbbar == -d.n)}")


def cmd_moves(args) -> str:
    d = _grid(args.grid)
    return "\n".join(m.text() for m in moves.enumerate_moves(d))


def cmd_apply(args) -> str:
    d = _grid(args.grid)
    seq = moves.parse_moves(_read(args.moves))
    return serialize_grid(moves.apply_moves(d, seq))


def cmd_simplify(args) -> str:
    return simplify.simplify_unknot(_grid(args.grid), args.budget).text()


def cmd_find_destab(args) -> str:
    d = _grid(args.grid)
    return simplify.find_elementary_simplification(d, args.type, args.budget).text()


def cmd_to_braid(args) -> str:
    return braids.serialize_braid(braids.braid_from_grid(_grid(args.grid)))


def cmd_from_braid(args) -> str:
    return serialize_grid(braids.grid_from_braid(_braid(args.braid)))


def cmd_jones(args) -> str:
    return braids.jones_check(_braid(args.min), _braid(args.other)).text()


def cmd_bypass_check(args) -> str:
    theta = paths.parse_theta(_read(args.theta))
    r = {}
    for p in (theta.beta, theta.gamma):
        for v in p.vertices:
            r[v] = None
    seeds = theta.delta_points()
    from .gridcore import orient_points
    coloured = orient_points(list(r) + list(seeds), seeds=seeds)
    return paths.check_bypass(coloured, theta.alpha, theta.beta).text()


def cmd_scramble(args) -> str:
    d = _grid(args.grid)
    return serialize_grid(simplify.scramble(d, args.stabs, args.flats, args.seed))


def cmd_bw_chain(args) -> str:
    steps = braids.birman_wrinkle_decompose(_braid(args.beta1), _braid(args.beta2), args.sign)
    lines = []
    for st in steps:
        word = " ".join(map(str, st.word.letters))
        lines.append(f"{st.kind} n={st.word.strands} {word}".rstrip())
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gridforge", description="Grid diagram toolkit.")
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, func, *inputs, budget=False, seed=False, type_=False):
        sp = sub.add_parser(name)
        for inp in inputs:
            sp.add_argument(inp)
        if budget:
            sp.add_argument("--budget", type=int, default=simplify.DEFAULT_BUDGET)
        if seed:
            sp.add_argument("--seed", type=int, required=True)
        if type_:
            sp.add_argument("--type", choices=("I", "II"), default=None)
        sp.add_argument("--out", default=None)
        sp.set_defaults(func=func)
        return sp

    add("validate", cmd_validate, "grid")
    add("render", cmd_render, "grid")
    add("invariants", cmd_invariants, "grid")
    add("moves", cmd_moves, "grid")
    add("apply", cmd_apply, "grid", "moves")
    add("simplify", cmd_simplify, "grid", budget=True)
    add("find-destab", cmd_find_destab, "grid", budget=True, type_=True)
    add("to-braid", cmd_to_braid, "grid")
    add("from-braid", cmd_from_braid, "braid")
    jp = add("jones", cmd_jones)
    jp.add_argument("--min", required=True)
    jp.add_argument("--other", required=True)
    add("bypass-check", cmd_bypass_check, "theta")
    sp = add("scramble", cmd_scramble, "grid", seed=True)
    sp.add_argument("--stabs", type=int, default=4)
    sp.add_argument("--flats", type=int, default=20)
    bw = add("bw-chain", cmd_bw_chain, "beta1", "beta2")
    bw.add_argument("--sign", choices=("+", "-"), default="+")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = args.func(args)
    except GridforgeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: cannot read {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)
    return 0


run = main

if __name__ == "__main__":
    sys.exit(main())
