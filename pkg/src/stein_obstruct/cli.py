"""Command-line front end.

Exit codes: 0 a verdict or report was produced, 1 a violation or
contradiction was found, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

from . import __version__
from .ahss import omega7_su
from .cache import ENV_VAR, MatrixCache
from .cohomology import MAX_RANK, all_bit_vectors
from .errors import SteinObstructError
from .fillability import (
    HomotopySphereDescriptor,
    ObstructionDescriptor,
    SevenManifoldDescriptor,
    Status,
    check_obstructions,
    classify_seven,
    classify_sphere,
    subcritical_normal_form,
    subcritical_propagate,
)
from .homology import homology, kunneth_check
from .quaternion import samelson_check
from .thom import DEFAULT_TOP_INDEX, LineBundleClass, build_chain_complex

SCHEMA = "stein-obstruct/1"

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

log = logging.getLogger("stein_obstruct")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    max_rank: int = 5
    top_index: int = DEFAULT_TOP_INDEX
    cache_dir: Optional[str] = None
    output_format: str = "json"
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.max_rank <= MAX_RANK:
            raise UsageError(f"max rank must lie in [0, {MAX_RANK}]")
        if self.top_index < 4:
            raise UsageError("top index must be at least 4")
        # The environment variable takes precedence over --cache-dir.
        env = os.environ.get(ENV_VAR)
        if env:
            self.cache_dir = env

    def cache(self) -> Optional[MatrixCache]:
        return MatrixCache(self.cache_dir) if self.cache_dir else None


def _bundle(rank: int, bits: str) -> LineBundleClass:
    try:
        bundle = LineBundleClass.from_bits(bits)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if bundle.rank != rank:
        raise UsageError(f"--w2 has {bundle.rank} bits but --rank is {rank}")
    if rank > MAX_RANK:
        raise UsageError(f"rank must be at most {MAX_RANK}")
    return bundle


def _parse_c1(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--c1 must be comma-separated integers, got {text!r}") from None


def _read_json(path: str) -> dict:
    if path == "-":
        raw, name = sys.stdin.read(), "<stdin>"
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                raw = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc.strerror}") from None
        name = path
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        lines = raw.splitlines()
        context = lines[exc.lineno - 1] if 0 < exc.lineno <= len(lines) else ""
        pointer = " " * (exc.colno - 1) + "^"
        raise UsageError(
            f"{name}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}\n    {context}\n    {pointer}"
        ) from None
    if not isinstance(data, dict):
        raise UsageError(f"{name}: expected a JSON object at the top level")
    return data


def _emit(cfg: RunConfig, payload: dict, text_lines: Sequence[str]) -> None:
    if cfg.output_format == "json":
        doc = {"schema": SCHEMA, "command": cfg.command, **payload}
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        print("\n".join(text_lines))


def _verdict_lines(v) -> List[str]:
    out = [f"verdict: {v.status.value}" + (f" ({v.description})" if v.description else "")]
    for c in v.certificate:
        out.append(f"  - {c['rule']}: {c['text']}")
    return out


# commands


def cmd_homology(args, cfg: RunConfig) -> int:
    bundle = _bundle(args.rank, args.w2)
    top = args.top if args.top is not None else cfg.top_index
    if top < 4:
        raise UsageError("--top must be at least 4")
    c = build_chain_complex(bundle, top, cfg.cache())
    h = homology(c)
    text = [
        f"C(r={bundle.rank}, w2={bundle.bits() or '-'}), top index {top}",
        "  i  " + " ".join(f"{i:>5d}" for i in range(len(h.dims))),
        "dim  " + " ".join(f"{d:>5d}" for d in h.dims),
        "H_i  " + " ".join("    -" if i in h.truncated_indices else f"{x:>5d}" for i, x in enumerate(h.homology)),
    ]
    for i in h.truncated_indices:
        text.append(f"(- index {i} is truncated: ker d_{i} has dim {h.homology[i]}, the incoming image is not computed)")
    _emit(cfg, {"rank": bundle.rank, "w2": bundle.bits(), "top_index": top, **h.as_dict()}, text)
    return EXIT_OK


def cmd_omega7(args, cfg: RunConfig) -> int:
    bundle = _bundle(args.rank, args.w2)
    rep = omega7_su(bundle)
    text = [f"Omega^SU_7(K(Z^{rep.rank},2); w2={bundle.bits() or '-'})"]
    for (p, q), e in sorted(rep.e2.items()):
        text.append(f"  E2[{p},{q}] = H_{e.homology_degree}(T; Omega_{q}) : dim {e.dimension}  ({e.reason})")
    text.append(f"  E3[6,1] dim = {rep.e3_61}")
    text.append(f"  conclusion: {rep.conclusion if rep.conclusion is not None else 'unresolved'}")
    _emit(cfg, {"report": rep.as_dict()}, text)
    return EXIT_OK


def _sweep_one(job):
    bits, top, cache_dir = job
    bundle = LineBundleClass(bits)
    cache = MatrixCache(cache_dir) if cache_dir else None
    h = homology(build_chain_complex(bundle, top, cache))
    return {"rank": bundle.rank, "w2": bundle.bits(), "h3": h.homology[3], "homology": list(h.homology)}


def cmd_sweep(args, cfg: RunConfig) -> int:
    max_rank = args.max_rank if args.max_rank is not None else cfg.max_rank
    if not 1 <= max_rank <= MAX_RANK:
        raise UsageError(f"--max-rank must lie in [1, {MAX_RANK}]")
    cfg.max_rank = max_rank
    jobs = [(w, cfg.top_index, cfg.cache_dir) for r in range(1, max_rank + 1) for w in all_bit_vectors(r)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_sweep_one, jobs, chunksize=8))
    else:
        results = [_sweep_one(j) for j in jobs]
    bad = [r for r in results if r["h3"]]
    text = [f"{r['rank']}  {r['w2']:<6}  H_3 = {r['h3']}" for r in results]
    text.append(f"{len(results)} bundles, H_3 = 0 for all: {not bad}")
    _emit(cfg, {"max_rank": max_rank, "top_index": cfg.top_index, "bundles": results,
                "count": len(results), "all_h3_zero": not bad}, text)
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_classify_seven(args, cfg: RunConfig) -> int:
    c1 = _parse_c1(args.c1)
    try:
        desc = SevenManifoldDescriptor(
            args.b2, c1, simply_connected=not args.not_simply_connected, pi2_torsion_free=not args.pi2_torsion
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    v = classify_seven(desc)
    payload = {"descriptor": {"b2": desc.b2, "c1": list(desc.c1), "c1_mod2": [c % 2 for c in desc.c1],
                              "simply_connected": desc.simply_connected,
                              "pi2_torsion_free": desc.pi2_torsion_free},
               "verdict": v.as_dict()}
    _emit(cfg, payload, _verdict_lines(v))
    return EXIT_OK


def cmd_classify_sphere(args, cfg: RunConfig) -> int:
    desc = HomotopySphereDescriptor(args.q, in_bP=args.bp, cokerJ_nontrivial=args.cokerj,
                                    alpha_one=True if args.alpha1 else None)
    v = classify_sphere(desc)
    payload = {"descriptor": {"q": desc.q, "dimension": desc.dimension, "in_bP": desc.in_bP,
                              "cokerJ_nontrivial": desc.cokerJ_nontrivial, "alpha_one": bool(desc.alpha_one)},
               "verdict": v.as_dict()}
    _emit(cfg, payload, _verdict_lines(v))
    return EXIT_OK


def cmd_obstructions(args, cfg: RunConfig) -> int:
    data = _read_json(args.file)
    try:
        desc = ObstructionDescriptor.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, SteinObstructError):
            raise
        raise UsageError(f"bad obstruction descriptor: {exc}") from None
    res = check_obstructions(desc)
    _emit(cfg, res.as_dict(), _verdict_lines(res.verdict))
    return EXIT_VIOLATION if res.violations else EXIT_OK


def cmd_propagate(args, cfg: RunConfig) -> int:
    data = _read_json(args.file)
    flags = data.get("flags", data)
    genus = bool(args.genus_positive or data.get("genus_positive", False))
    flags = {k: v for k, v in flags.items() if k not in ("schema", "genus_positive")}
    try:
        res = subcritical_propagate(flags, genus)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = [f"{k}: {'unknown' if v is None else v}" for k, v in res.flags.items()]
    text += [f"contradiction: {c}" for c in res.contradictions]
    _emit(cfg, {"genus_positive": genus, **res.as_dict()}, text)
    return EXIT_OK if res.consistent else EXIT_VIOLATION


def cmd_normal_form(args, cfg: RunConfig) -> int:
    form = subcritical_normal_form(args.dim, args.spin, args.r, args.s)
    _emit(cfg, {"dim": args.dim, "spin": args.spin, "r": args.r, "s": args.s, "normal_form": form}, [form])
    return EXIT_OK


def cmd_kunneth(args, cfg: RunConfig) -> int:
    if args.rank < 2 or args.rank > MAX_RANK:
        raise UsageError(f"--rank must lie in [2, {MAX_RANK}]")
    if args.w2_last not in (0, 1):
        raise UsageError("--w2-last must be 0 or 1")
    rep = kunneth_check(args.rank, args.w2_last, cfg.top_index)
    text = [f"direct dims   {rep.dims_direct}", f"tensor dims   {rep.dims_tensor}",
            f"direct H      {rep.homology_direct}", f"tensor H      {rep.homology_tensor}",
            f"isomorphism   {'ok' if rep.isomorphism_ok else 'FAILED'}"] + rep.mismatches
    _emit(cfg, {"report": rep.as_dict()}, text)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_samelson(args, cfg: RunConfig) -> int:
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    seed = args.seed if args.seed is not None else cfg.seed
    rep = samelson_check(args.samples, seed)
    text = [f"symbolic basis check: {'ok' if rep.symbolic_ok else 'FAILED'}",
            f"{rep.samples} exact samples, {rep.discrepancies} discrepancies"]
    _emit(cfg, {"report": rep.as_dict()}, text)
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def cmd_selftest(args, cfg: RunConfig) -> int:
    from .acceptance import run_all

    results = run_all()
    if cfg.output_format == "json":
        _emit(cfg, {"criteria": [r.__dict__ for r in results], "passed": all(r.passed for r in results)}, [])
    else:
        for r in results:
            print(r.line())
        print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VIOLATION


# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--cache-dir", default=argparse.SUPPRESS)
    common.add_argument("--top-index", type=int, default=argparse.SUPPRESS)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    p = _Parser(prog="stein-obstruct", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, required=True)

    s = sub.add_parser("homology", parents=[common], help="dims and homology of the mod-2 chain complex")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--w2", required=True, help="bit string, e.g. 1011")
    s.add_argument("--top", type=int)
    s.set_defaults(func=cmd_homology)

    s = sub.add_parser("omega7", parents=[common], help="AHSS 7-line report")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--w2", required=True)
    s.set_defaults(func=cmd_omega7)

    s = sub.add_parser("sweep", parents=[common], help="check H_3 = 0 for every w2 up to a rank")
    s.add_argument("--max-rank", type=int)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("classify", parents=[common], help="verdicts for 7-manifolds and homotopy spheres")
    csub = s.add_subparsers(dest="kind", parser_class=_Parser, required=True)
    c = csub.add_parser("seven", parents=[common])
    c.add_argument("--b2", type=int, required=True)
    c.add_argument("--c1", default="", help="comma-separated integers")
    c.add_argument("--not-simply-connected", action="store_true")
    c.add_argument("--pi2-torsion", action="store_true", help="pi_2(M) has torsion")
    c.set_defaults(func=cmd_classify_seven)
    c = csub.add_parser("sphere", parents=[common])
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--bp", action="store_true")
    c.add_argument("--cokerj", action="store_true")
    c.add_argument("--alpha1", action="store_true")
    c.set_defaults(func=cmd_classify_sphere)

    s = sub.add_parser("obstructions", parents=[common], help="cohomological obstruction rules (JSON in)")
    s.add_argument("file", help="JSON descriptor, or - for stdin")
    s.set_defaults(func=cmd_obstructions)

    s = sub.add_parser("subcritical", parents=[common], help="subcritical filling logic")
    ssub = s.add_subparsers(dest="kind", parser_class=_Parser, required=True)
    c = ssub.add_parser("propagate", parents=[common])
    c.add_argument("file", help="JSON flags, or - for stdin")
    c.add_argument("--genus-positive", action="store_true")
    c.set_defaults(func=cmd_propagate)
    c = ssub.add_parser("normal-form", parents=[common])
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--spin", action="store_true")
    c.add_argument("-r", type=int, default=0)
    c.add_argument("-s", type=int, default=0)
    c.set_defaults(func=cmd_normal_form)

    s = sub.add_parser("kunneth", parents=[common], help="tensor-product cross-check")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--w2-last", type=int, required=True)
    s.set_defaults(func=cmd_kunneth)

    s = sub.add_parser("samelson", parents=[common], help="commuting quaternion actions")
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_samelson)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    s.set_defaults(func=cmd_selftest)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        command = args.command + (f" {args.kind}" if getattr(args, "kind", None) else "")
        cfg = RunConfig(
            command=command,
            top_index=getattr(args, "top_index", DEFAULT_TOP_INDEX),
            cache_dir=getattr(args, "cache_dir", None),
            output_format=getattr(args, "output_format", "json"),
        )
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SteinObstructError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
