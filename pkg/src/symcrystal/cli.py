"""Command-line front end: ``symcrystal {crystal,act,verify,global,straighten}``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import crystal, globalbasis, uqminus, verify
from .multiseg import (
    Weight,
    enumerate_theta_restricted,
    multisegment_to_json,
    parse_multisegment,
    theta_weight,
)
from .vtheta import (
    ThetaVector,
    apply_E,
    apply_F,
    apply_T,
    in_lattice,
    mod_root_E,
    mod_root_F,
    phi,
    vector_from_json,
    vector_to_json,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    content_bound: int = 6
    index_bound: int = 7
    seed: int = 0
    output_format: str = "table"
    fuel: int = uqminus.DEFAULT_FUEL

    def __post_init__(self):
        if self.content_bound < 0:
            raise UsageError("--content-bound must be nonnegative")
        if self.index_bound < 1 or self.index_bound % 2 == 0:
            raise UsageError("--index-bound must be a positive odd integer")
        if self.fuel <= 0:
            raise UsageError("--fuel must be positive")


_OPS = {
    "F": apply_F,
    "E": apply_E,
    "T": apply_T,
    "Ftilde": mod_root_F,
    "Etilde": mod_root_E,
}


def parse_word(text: str) -> List[Tuple[str, int]]:
    """``"F:-1,E:1"`` -> ``[("F", -1), ("E", 1)]``; the empty string is the empty word."""
    out = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        tag, sep, idx = part.partition(":")
        tag = tag.strip()
        if not sep or tag not in _OPS:
            raise UsageError(f"bad operator {part!r}; expected TAG:index with TAG in {sorted(_OPS)}")
        try:
            k = int(idx)
        except ValueError:
            raise UsageError(f"bad index in {part!r}") from None
        if k % 2 == 0:
            raise UsageError(f"index {k} is not odd")
        out.append((tag, k))
    return out


def apply_tagged(word: Sequence[Tuple[str, int]], v: ThetaVector) -> ThetaVector:
    for tag, k in word:
        v = _OPS[tag](k, v)
    return v


def parse_weight(text: str) -> Weight:
    """A theta-weight, either as ``"1:-1,-1:-1"`` or as the weight of a multisegment ``"[-1,1]"``."""
    t = text.strip()
    if "[" in t or t in ("0", "∅"):
        return theta_weight(parse_multisegment(t))
    coeffs = {}
    for part in filter(None, (p.strip() for p in t.split(","))):
        k, sep, c = part.partition(":")
        if not sep:
            raise UsageError(f"bad weight term {part!r}; expected index:coefficient")
        try:
            coeffs[int(k)] = coeffs.get(int(k), 0) + int(c)
        except ValueError:
            raise UsageError(f"bad weight term {part!r}") from None
    return Weight(coeffs)


def parse_bounds(text: str) -> Tuple[int, int]:
    try:
        c, b = (int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad --bounds {text!r}; expected content,index") from None
    return c, b


# verbs ---------------------------------------------------------------------------


def cmd_crystal(cfg: RunConfig, out) -> int:
    verts, edges = crystal.crystal_graph(cfg.content_bound, cfg.index_bound)
    out.write(crystal.graph_to_json(verts, edges) if cfg.output_format == "json" else crystal.graph_to_dot(verts, edges))
    return EXIT_OK


def cmd_act(cfg: RunConfig, word_text: str, input_path: Optional[str], out) -> int:
    word = parse_word(word_text)
    if input_path:
        with open(input_path) if input_path != "-" else sys.stdin as fh:
            try:
                v = vector_from_json(fh.read())
            except (KeyError, TypeError, json.JSONDecodeError) as exc:
                raise UsageError(f"cannot read vector: {exc}") from None
    else:
        v = phi()
    w = apply_tagged(word, v)
    lattice = in_lattice(w)
    if cfg.output_format == "json":
        data = vector_to_json(w)
        data["in_lattice"] = lattice
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(("0" if not w else str(w)) + "\n")
        out.write(f"in lattice: {'yes' if lattice else 'no'}\n")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, suites: Sequence[str], out) -> int:
    results = [verify.run_suite(s, cfg.content_bound, cfg.index_bound, cfg.seed) for s in suites]
    if cfg.output_format == "json":
        out.write(json.dumps({"content_bound": cfg.content_bound, "index_bound": cfg.index_bound,
                              "seed": cfg.seed, "suites": [r.to_json() for r in results]}, indent=2) + "\n")
    else:
        for r in results:
            out.write(f"{'PASS' if r.ok else 'FAIL'}  {r.suite:<20} {r.checked:>8} checks  {r.failed} failed  {r.seconds:.1f}s\n")
            for name, n in sorted(r.counts.items()):
                out.write(f"      {name:<40} {n}\n")
            for w in r.witnesses:
                out.write(f"      ! {w['invariant']}: {w['witness']}\n")
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


def cmd_global(cfg: RunConfig, weight_text: Optional[str], check: bool, out) -> int:
    if weight_text:
        weights = [parse_weight(weight_text)]
    else:
        ms = enumerate_theta_restricted(cfg.content_bound, cfg.index_bound)
        weights = sorted({theta_weight(m) for m in ms}, key=lambda w: w.items)
    rows, failures = [], []
    for mu in weights:
        for g in globalbasis.lower_global_block(mu):
            rows.append(g)
            if check:
                reason = globalbasis.check_lower(g)
                if reason:
                    failures.append(f"{g.top}: {reason}")
    if cfg.output_format == "json":
        out.write(json.dumps([
            {"m": multisegment_to_json(g.top), "text": str(g.top),
             "coords": [{"multisegment": multisegment_to_json(n), "coeff": str(c)} for n, c in g.coords.items()]}
            for g in rows], indent=2) + "\n")
    else:
        for g in rows:
            out.write(f"G({g.top}) = {g.vector()}\n")
        span = max((g.degree_span() for g in rows), default=0)
        out.write(f"{len(rows)} elements, largest coefficient degree {span}\n")
    if check:
        out.write(("bar-invariance check: ok\n" if not failures else
                   "bar-invariance check FAILED:\n" + "".join(f"  {f}\n" for f in failures)))
    return EXIT_FAIL if failures else EXIT_OK


def cmd_straighten(cfg: RunConfig, text: str, out) -> int:
    x = uqminus.parse_product(text)
    if cfg.output_format == "json":
        out.write(json.dumps([{"multisegment": multisegment_to_json(m), "coeff": str(c)} for m, c in x.items()], indent=2) + "\n")
    else:
        out.write(str(x) + "\n")
    return EXIT_OK


# argument parsing -------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--content-bound", type=int, default=6, help="largest number of boxes (default 6)")
    common.add_argument("--index-bound", type=int, default=7, help="indices lie in [-b, b] (odd, default 7)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--fuel", type=int, default=uqminus.DEFAULT_FUEL, help="rewrite-step budget for straightening")
    common.add_argument("--format", dest="output_format", choices=["json", "dot", "table"], default=None)

    p = argparse.ArgumentParser(prog="symcrystal", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    sub.add_parser("crystal", parents=[common], help="crystal graph of theta-restricted multisegments")

    a = sub.add_parser("act", parents=[common], help="apply a word of operators to a vector")
    a.add_argument("word", help='operators applied left to right, e.g. "F:-1,Ftilde:1,E:1"')
    a.add_argument("--input", help="JSON vector file ('-' for stdin); default phi")

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", action="append", choices=list(verify.SUITES) + ["all"],
                   help="suite to run (repeatable; default all)")

    g = sub.add_parser("global", parents=[common], help="lower global basis")
    g.add_argument("--weight", help='theta-weight "k:c,..." or a multisegment "[-1,1]"; default every weight in bounds')
    g.add_argument("--bounds", help="content,index (overrides the bound flags)")
    g.add_argument("--check", action="store_true", help="re-verify bar invariance")

    s = sub.add_parser("straighten", parents=[common], help='normal form of a product like "<1,3>^(2) * <-1,1>"')
    s.add_argument("product")
    return p


_DEFAULT_FORMAT = {"crystal": "dot", "act": "table", "verify": "table", "global": "table", "straighten": "table"}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cb, ib = args.content_bound, args.index_bound
        if getattr(args, "bounds", None):
            cb, ib = parse_bounds(args.bounds)
        cfg = RunConfig(cb, ib, args.seed, args.output_format or _DEFAULT_FORMAT[args.verb], args.fuel)
        if cfg.output_format == "dot" and args.verb != "crystal":
            raise UsageError("--format dot only applies to the crystal verb")
        uqminus.set_fuel(cfg.fuel)
        if args.verb == "crystal":
            return cmd_crystal(cfg, out)
        if args.verb == "act":
            return cmd_act(cfg, args.word, args.input, out)
        if args.verb == "verify":
            suites = list(verify.SUITES) if not args.suite or "all" in args.suite else args.suite
            return cmd_verify(cfg, suites, out)
        if args.verb == "global":
            return cmd_global(cfg, args.weight, args.check, out)
        return cmd_straighten(cfg, args.product, out)
    except (UsageError, ValueError) as exc:
        sys.stderr.write(f"symcrystal: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"symcrystal: {exc}\n")
        return EXIT_FAIL
    except uqminus.FuelExhausted as exc:
        sys.stderr.write(f"symcrystal: out of fuel: {exc}\n")
        return EXIT_FAIL
    except globalbasis.ConsistencyError as exc:
        sys.stderr.write(f"symcrystal: consistency failure: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
