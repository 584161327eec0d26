"""``gridhom`` command line.

JSON results go to stdout, diagnostics to stderr.  Exit status is 0 on
success, 1 for domain errors (bad grid, not a knot, size cap, ...) and 2 for
usage errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from typing import Sequence

from . import braids, complexes, diagonal, homology, unknotting
from .config import RunConfig
from .errors import GridhomError, ParseError, SizeCapExceeded, ValidationError
from .grid import (GridDiagram, component_count, connected_sum, is_diagonal, load_grid,
                   require_knot, to_sigma)
from .planar import fox_alexander_grid, from_grid

log = logging.getLogger("gridhom")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("engine")
    g.add_argument("--max-full-enum", type=int, default=10, metavar="N",
                   help="largest grid size enumerated in full (default 10)")
    g.add_argument("--strata", default=None, help="Alexander gradings, e.g. g,g-1,g-2 or 3,2")
    g.add_argument("--budget-mb", type=float, default=6000.0, help="state-storage budget in MB")
    g.add_argument("--threads", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--format", dest="fmt", choices=("json", "table"), default="json")
    g.add_argument("--assert-minimal", action="store_true",
                   help="treat the grid as a minimal diagonal diagram")
    g.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    p = _Parser(prog="gridhom", description="Grid homology of knots and diagonal-knot analysis.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", parents=[common], help="check a grid file")
    s.add_argument("grid")
    s = sub.add_parser("info", parents=[common], help="basic facts about a grid")
    s.add_argument("grid")
    s = sub.add_parser("homology", parents=[common], help="grid homology by Alexander stratum")
    s.add_argument("grid")
    s.add_argument("--flavor", choices=("hat", "tilde"), default="hat")
    s = sub.add_parser("alexander", parents=[common], help="Alexander polynomial")
    s.add_argument("grid")
    s.add_argument("--method", choices=("euler", "homology", "fox"), default="euler")
    s = sub.add_parser("diagonal-report", parents=[common], help="top strata, m-count, tangles")
    s.add_argument("grid")
    s = sub.add_parser("braid2grid", parents=[common], help="grid of a braid closure")
    s.add_argument("--word")
    s.add_argument("--strands", type=int, default=None)
    s.add_argument("--family", help="block sizes m1,m2,... of the three-strand family")
    s.add_argument("--twists", type=int, default=0)
    s = sub.add_parser("connect-sum", parents=[common], help="diagonal connected sum")
    s.add_argument("grid1")
    s.add_argument("grid2")
    s = sub.add_parser("unknot", parents=[common], help="crossing exchanges down to the unknot")
    s.add_argument("grid")
    s.add_argument("--strict", action="store_true", help="fail on any case-table mismatch")
    s = sub.add_parser("aux", help="auxiliary chain complexes")
    aux = s.add_subparsers(dest="aux_command", required=True, parser_class=_Parser)
    a = aux.add_parser("partition", parents=[common])
    a.add_argument("N", type=int)
    a = aux.add_parser("planar", parents=[common])
    a.add_argument("efile", nargs="?")
    a.add_argument("--random", type=int, metavar="L", help="random planar grid of size L (uses --seed)")
    return p


# ---------------------------------------------------------------- helpers

def _poly_json(P) -> dict:
    off, coeffs = P.to_list()
    return {"offset": off, "coeffs": coeffs}


def _load(path: str) -> GridDiagram:
    try:
        return load_grid(path)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}", "path") from None


def _cmd_validate(args, cfg: RunConfig):
    G = _load(args.grid)
    return {"valid": True, "size": G.n, "components": component_count(G), "diagonal": is_diagonal(G)}


def _cmd_info(args, cfg: RunConfig):
    G = _load(args.grid)
    comps = component_count(G)
    out = {"size": G.n, "components": comps, "diagonal": is_diagonal(G)}
    if out["diagonal"]:
        out["sigma"] = to_sigma(G)
    if comps == 1:
        D = from_grid(G)
        out["crossings"] = len(D.crossings)
        out["writhe"] = D.writhe()
        out["alexander"] = _poly_json(fox_alexander_grid(G))
        if out["diagonal"] or G.n <= cfg.max_full_enum:
            out["genus"] = homology.genus(G, cfg.engine())
        out["max_alexander"] = homology.max_alexander(G)
    return out


def _cmd_homology(args, cfg: RunConfig):
    G = _load(args.grid)
    require_knot(G)
    eng = cfg.engine()
    strata = None
    if cfg.strata is not None:
        strata = cfg.resolve_strata(homology.genus(G, eng))
    elif G.n > cfg.max_full_enum:
        raise SizeCapExceeded(f"size {G.n} exceeds --max-full-enum {cfg.max_full_enum}; pass --strata")
    H = (homology.hat_homology if args.flavor == "hat" else homology.tilde_homology)(G, strata, eng)
    if strata is None:
        strata = sorted(H.alexander_values(), reverse=True)
    return [{"stratum": s, "dims": [[m, v] for m, v in sorted(H.stratum(s).items(), reverse=True)],
             "flavor": args.flavor} for s in strata]


def _cmd_alexander(args, cfg: RunConfig):
    G = _load(args.grid)
    require_knot(G)
    if args.method == "fox":
        P = fox_alexander_grid(G)
    else:
        P = homology.alexander_poly(G, args.method, cfg.engine())
    return _poly_json(P)


def _cmd_report(args, cfg: RunConfig):
    G = _load(args.grid)
    return diagonal.diagonal_report(G, cfg.engine(), cfg.assert_minimal)


def _cmd_braid(args, cfg: RunConfig):
    if (args.word is None) == (args.family is None):
        raise UsageError("braid2grid needs exactly one of --word and --family")
    if args.word is not None:
        w = braids.parse_word(args.word, args.strands)
        G = braids.braid_closure_grid(w)
    else:
        try:
            ms = [int(v) for v in args.family.split(",") if v.strip()]
        except ValueError:
            raise UsageError(f"--family: expected comma-separated integers, got {args.family!r}") from None
        G = braids.diagonal_family_grid(ms, args.twists)
    return G.to_dict()


def _cmd_sum(args, cfg: RunConfig):
    return connected_sum(_load(args.grid1), _load(args.grid2)).to_dict()


def _cmd_unknot(args, cfg: RunConfig):
    G = _load(args.grid)
    res = unknotting.unknotting_sequence(G, strict=args.strict)
    return {
        "genus": res.initial_alexander.max_exp(),
        "length": len(res),
        "initial_alexander": _poly_json(res.initial_alexander),
        "r1_removed": res.initial_r1,
        "simplified": [H.n for H in res.simplified_from] + ([res.grid.n] if res.simplified_from else []),
        "used_fallback": res.used_fallback,
        "steps": [s.to_json() for s in res.steps],
    }


def _random_planar(l: int, seed: int) -> complexes.PlanarGrid:
    if l < 1:
        raise ValidationError("--random needs a positive size", "random")
    rng = random.Random(seed)
    free = [(c, r) for c in range(l) for r in range(l) if c + r != l - 1]
    k = rng.randint(0, len(free))
    return complexes.PlanarGrid(l, frozenset(rng.sample(free, k)))


def _cmd_aux(args, cfg: RunConfig):
    if args.aux_command == "partition":
        C = complexes.partition_complex(args.N)
        return {"N": args.N, "dims": {str(k): v for k, v in C.dims().items()},
                "homology": {str(k): v for k, v in C.homology().items()}}
    if (args.efile is None) == (args.random is None):
        raise UsageError("aux planar needs an E-file or --random L")
    if args.efile is not None:
        try:
            with open(args.efile, encoding="utf-8") as fh:
                E = complexes.parse_planar(fh.read())
        except OSError as exc:
            raise ParseError(f"cannot read {args.efile}: {exc.strerror}", "path") from None
    else:
        E = _random_planar(args.random, cfg.seed)
    out = {"E": E.to_json()}
    out.update(complexes.planar_report(E))
    return out


_DISPATCH = {
    "validate": _cmd_validate,
    "info": _cmd_info,
    "homology": _cmd_homology,
    "alexander": _cmd_alexander,
    "diagonal-report": _cmd_report,
    "braid2grid": _cmd_braid,
    "connect-sum": _cmd_sum,
    "unknot": _cmd_unknot,
    "aux": _cmd_aux,
}


# ---------------------------------------------------------------- output

def _table(obj, indent: str = "") -> list[str]:
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{indent}{k}:")
                lines += _table(v, indent + "  ")
            else:
                lines.append(f"{indent}{k}: {json.dumps(v)}")
        return lines
    if isinstance(obj, list):
        lines = []
        for item in obj:
            if isinstance(item, dict):
                lines += _table(item, indent)
                lines.append("")
            else:
                lines.append(f"{indent}- {json.dumps(item)}")
        return lines
    return [f"{indent}{json.dumps(obj)}"]


def _flat(v) -> bool:
    items = v.values() if isinstance(v, dict) else v
    return all(not isinstance(i, (dict, list)) or (isinstance(i, list) and all(
        not isinstance(j, (dict, list)) for j in i)) for i in items)


def _homology_table(rows: list[dict]) -> list[str]:
    ms = sorted({m for r in rows for m, _ in r["dims"]}, reverse=True)
    if not ms:
        return ["(zero)"]
    head = "A \\ M " + " ".join(f"{m:>4}" for m in ms)
    lines = [f"flavor: {rows[0]['flavor']}", head]
    for r in rows:
        d = dict((m, v) for m, v in r["dims"])
        lines.append(f"{r['stratum']:>6} " + " ".join(f"{d.get(m, 0) or '.':>4}" for m in ms))
    return lines


def emit(result, fmt: str, command: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(result, separators=(",", ":")) + "\n")
        return
    if command == "homology" and result:
        lines = _homology_table(result)
    else:
        lines = _table(result)
    stream.write("\n".join(lines).rstrip() + "\n")


# ---------------------------------------------------------------- entry points

def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(f"gridhom: usage error: {exc}\n")
        return 2
    except SystemExit as exc:           # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=stderr, format="%(levelname)s %(name)s: %(message)s", force=True)
    try:
        cfg = RunConfig(command=args.command,
                        inputs=[v for k, v in sorted(vars(args).items()) if k.startswith("grid") and v],
                        max_full_enum=args.max_full_enum, budget_mb=args.budget_mb,
                        threads=args.threads, seed=args.seed, fmt=args.fmt, strata=args.strata,
                        assert_minimal=args.assert_minimal)
    except ValidationError as exc:
        stderr.write(f"gridhom: usage error: {exc} (--{exc.field.replace('_', '-')})\n")
        return 2
    try:
        result = _DISPATCH[args.command](args, cfg)
    except UsageError as exc:
        stderr.write(f"gridhom: usage error: {exc}\n")
        return 2
    except GridhomError as exc:
        stdout.write(json.dumps(exc.payload(), separators=(",", ":")) + "\n")
        stderr.write(f"gridhom: {type(exc).__name__}: {exc}\n")
        return 1
    emit(result, cfg.fmt, args.command, stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
