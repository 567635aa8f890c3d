"""Command line front end and the end-to-end certification pipeline.

Exit status: 0 when the requested computation verifies, 2 when a
verification step fails, 1 on bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path as FsPath
from typing import List, Optional

from . import __version__
from .dsl import emit_algebra, load_algebra, load_module
from .embed import (
    SplittingDatum,
    approximation_sequence,
    auto_datum,
    reduce_chain,
    split,
    validate_datum,
)
from .endo import build_endo, gldim, heredity_chain_verify, qh_order, standard_modules
from .errors import (
    CapExceeded,
    NotApplicable,
    NotQuasiHereditaryForOrder,
    NotStringAlgebra,
    RepdimError,
    SummandNotInAddM,
    VerificationFailed,
)
from .gencog import SummandCatalog, build_M, build_M_with_reductions
from .presentation import PresentedAlgebra
from .rep import hom_basis
from .strings import classify, monomial_representation, socle_reduction_step

log = logging.getLogger("repdim")

# Failures of a certificate, as opposed to bad input.
VERIFY_ERRORS = (VerificationFailed, SummandNotInAddM, CapExceeded, NotQuasiHereditaryForOrder)


# ---------------------------------------------------------------------------
# Pipeline


@dataclass
class PipelineReport:
    algebra: PresentedAlgebra
    classification: dict
    reductions: List[str] = dc_field(default_factory=list)
    chain: Optional[dict] = None
    catalog: Optional[dict] = None
    projdims: dict = dc_field(default_factory=dict)
    resolutions: list = dc_field(default_factory=list)
    gldim: Optional[int] = None
    approximations: list = dc_field(default_factory=list)
    qh: Optional[dict] = None
    rep_infinite_assumed: bool = False

    @property
    def verified(self) -> bool:
        return self.gldim is not None and self.gldim <= 3

    @property
    def conclusion(self) -> str:
        if not self.verified:
            return "not certified"
        if self.rep_infinite_assumed and self.classification["c"] > 0:
            return "repdim = 3"
        return "repdim <= 3"

    def as_dict(self):
        return {
            "algebra": {"name": self.algebra.name, "dim": self.algebra.dim, "vertices": list(self.algebra.vertices)},
            "classification": self.classification,
            "socle_reductions": list(self.reductions),
            "chain": self.chain,
            "catalog": self.catalog,
            "projdims": dict(self.projdims),
            "resolutions": self.resolutions,
            "gldim": self.gldim,
            "approximation_sequences": self.approximations,
            "quasi_hereditary": self.qh,
            "verified": self.verified,
            "conclusion": self.conclusion,
        }


def prepare_string_algebra(alg: PresentedAlgebra):
    """Apply socle quotients until the algebra has a monomial (string) presentation.

    Returns ``(string_algebra, reductions)``.
    """
    cls = classify(alg)
    if not cls.special_biserial:
        raise NotApplicable("algebra is not special biserial: " + "; ".join(cls.problems))
    cur, reductions = alg, []
    if not cls.string:
        mono = monomial_representation(alg)
        if mono is not None:
            cur = mono
    while not classify(cur).string:
        red = socle_reduction_step(cur)
        if red is None:
            raise NotApplicable("not a string algebra and no projective-injective module to factor out")
        log.info("socle reduction: %s", red.description)
        reductions.append(red)
        cur = red.algebra
    return cur, reductions


def build_catalog(alg: PresentedAlgebra):
    """Reduction chain plus the catalog of ``M``; returns ``(catalog, chain, reductions)``."""
    inner_alg, reductions = prepare_string_algebra(alg)
    chain = reduce_chain(inner_alg)
    inner = build_M(chain)
    cat = build_M_with_reductions(reductions, inner, alg) if reductions else inner
    return cat, chain, reductions


def shuffled(cat: SummandCatalog, seed: Optional[int]) -> SummandCatalog:
    if seed is None:
        return cat
    order = list(range(len(cat)))
    random.Random(seed).shuffle(order)
    return cat.permuted(order)


def _resolutions(gamma, rep):
    return [
        {
            "label": r.label,
            "projdim": r.projdim,
            "terms": [[gamma.labels[k] for k in t] for t in r.terms],
            "syzygy_dims": r.syzygy_dims,
        }
        for r in rep.resolutions
    ]


def _qh(cat: SummandCatalog, gamma) -> dict:
    order = qh_order(cat)
    if not order.is_strict_partial_order():
        raise VerificationFailed("constructed order is not a strict partial order")
    std = standard_modules(gamma, order)
    out = {
        "order": [list(p) for p in order.pairs()],
        "maximal": [gamma.labels[i] for i in order.maximal(range(gamma.n))],
        "standard_modules": [
            {"label": s.label, "dim": sum(s.dims), "multiplicity": s.multiplicity} for s in std
        ],
    }
    try:
        cert = heredity_chain_verify(gamma, order)
    except NotQuasiHereditaryForOrder as exc:
        out.update(verified=False, failure={"stage": exc.stage, "condition": exc.condition, "message": str(exc)})
        return out
    out.update(verified=True, certificate=cert.as_dict())
    return out


def run_pipeline(alg: PresentedAlgebra, cap: int = 10, assume_rep_infinite: bool = False,
                 shuffle_seed: Optional[int] = None, with_qh: bool = True) -> PipelineReport:
    cls = classify(alg)
    report = PipelineReport(alg, cls.as_dict(), rep_infinite_assumed=assume_rep_infinite)
    cat, chain, reductions = build_catalog(alg)
    report.reductions = [r.description for r in reductions]
    report.chain = chain.as_dict()
    cat = shuffled(cat, shuffle_seed)
    report.catalog = cat.as_dict()
    gamma = build_endo(cat)
    g = gldim(gamma, cap)
    report.projdims = g.projdims
    report.resolutions = _resolutions(gamma, g)
    report.gldim = g.gldim
    if not reductions:
        f = chain.composite()
        for e in cat.entries:
            s = approximation_sequence(f, cat.modules, e.module)
            report.approximations.append({
                "label": e.label,
                "injective": s.injective,
                "hom_m0": s.hom_m0,
                "hom_m1": s.hom_m1,
                "hom_x": s.hom_x,
                "exact": s.exact,
            })
            if not s.exact:
                raise VerificationFailed(f"Hom count fails for the approximation of {e.label}")
    if with_qh:
        # quasi-heredity is only predicted for the radical-embedding catalog
        report.qh = _qh(cat, gamma)
        report.qh["predicted"] = not reductions
    return report


# ---------------------------------------------------------------------------
# Output


def _print_human(title: str, data, out) -> None:
    print(title, file=out)

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v and not _flat(v):
                    print(f"{pad}{k}:", file=out)
                    walk(v, indent + 1)
                else:
                    print(f"{pad}{k}: {_fmt(v)}", file=out)
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)) and not _flat(v):
                    print(f"{pad}-", file=out)
                    walk(v, indent + 1)
                else:
                    print(f"{pad}- {_fmt(v)}", file=out)

    walk(data, 1)


def _flat(v) -> bool:
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in v)


def _fmt(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def _emit(args, title: str, data: dict) -> None:
    if args.json:
        json.dump(data, sys.stdout, indent=2, default=str)
        sys.stdout.write("\n")
    else:
        _print_human(title, data, sys.stdout)


# ---------------------------------------------------------------------------
# Commands


def _algebra_summary(alg: PresentedAlgebra) -> dict:
    return {
        "name": alg.name,
        "dim": alg.dim,
        "vertices": list(alg.vertices),
        "arrows": [f"{a.name}: {a.source} -> {a.target}" for a in alg.quiver.arrows],
        "relations": [str(r) for r in alg.relations],
        "bound": alg.bound,
        "basis": [alg.format_path(p) for p in alg.basis],
    }


def cmd_check(args) -> int:
    alg = load_algebra(args.algebra)
    data = {"algebra": _algebra_summary(alg), "classification": classify(alg).as_dict()}
    _emit(args, "check", data)
    return 0


def cmd_split(args) -> int:
    alg = load_algebra(args.algebra)
    if args.auto or not (args.S1 or args.S2 or args.E1 or args.E2):
        d = auto_datum(alg, args.vertex, args.side)
    else:
        d = SplittingDatum.make(args.vertex, args.S1 or (), args.S2 or (), args.E1 or (), args.E2 or ())
    rep = validate_datum(alg, d)
    b, emb = split(alg, d)
    data = {
        "datum": d.as_dict(),
        "witnesses": [list(w) for w in rep.witnesses],
        "degenerate": emb.degenerate,
        "c_before": classify(alg).c_value,
        "c_after": classify(b).c_value,
        "embedding": emb.as_dict(),
        "split_algebra": _algebra_summary(b),
        "embedding_verified": True,
    }
    if args.out:
        FsPath(args.out).write_text(emit_algebra(b))
    _emit(args, "split", data)
    return 0


def cmd_reduce(args) -> int:
    alg = load_algebra(args.algebra)
    inner, reductions = prepare_string_algebra(alg)
    chain = reduce_chain(inner)
    steps = []
    for k, b in enumerate(chain.algebras):
        step = {"index": k, "c": chain.c_values[k], "algebra": _algebra_summary(b)}
        if k:
            step["datum"] = chain.embeddings[k - 1].datum.as_dict()
        steps.append(step)
        if args.emit_dir:
            d = FsPath(args.emit_dir)
            d.mkdir(parents=True, exist_ok=True)
            (d / f"A{k}.quiv").write_text(emit_algebra(b))
    data = {
        "socle_reductions": [r.description for r in reductions],
        "steps": len(chain),
        "c_values": chain.c_values,
        "terminal_serial_type": classify(chain.terminal).serial_type,
        "algebras": steps,
    }
    _emit(args, "reduce", data)
    return 0


def cmd_gencog(args) -> int:
    alg = load_algebra(args.algebra)
    cat, chain, reductions = build_catalog(alg)
    data = {"socle_reductions": [r.description for r in reductions], "chain_steps": len(chain), **cat.as_dict()}
    _emit(args, "gencog", data)
    return 0


def cmd_gldim(args) -> int:
    alg = load_algebra(args.algebra)
    cat, _, _ = build_catalog(alg)
    cat = shuffled(cat, args.shuffle_catalog)
    gamma = build_endo(cat)
    g = gldim(gamma, args.cap)
    data = {
        "catalog": cat.labels,
        "gamma_dim": gamma.dim,
        "gamma_radical_dim": gamma.radical_dim,
        "projdims": g.projdims,
        "resolutions": _resolutions(gamma, g),
        "gldim": g.gldim,
    }
    _emit(args, "gldim", data)
    return 0 if g.gldim <= 3 else 2


def cmd_qh(args) -> int:
    alg = load_algebra(args.algebra)
    cat, _, reductions = build_catalog(alg)
    gamma = build_endo(cat)
    data = _qh(cat, gamma)
    data["predicted"] = not reductions
    _emit(args, "qh", data)
    return 0 if data["verified"] else 2


def cmd_hom(args) -> int:
    alg = load_algebra(args.algebra)
    x = load_module(args.x, alg)
    y = load_module(args.y, alg)
    h = hom_basis(x, y)
    basis = [{v: [[str(c) for c in row] for row in m.comps[v].tolist()] for v in alg.vertices} for m in h.basis]
    data = {"dim": h.dim, "basis": basis}
    _emit(args, "hom", data)
    return 0


def cmd_repdim_bound(args) -> int:
    alg = load_algebra(args.algebra)
    report = run_pipeline(alg, cap=args.cap, assume_rep_infinite=args.assume_rep_infinite)
    data = report.as_dict()
    _emit(args, "repdim-bound", data)
    if not report.verified:
        return 2
    if report.qh is not None and report.qh["predicted"] and not report.qh["verified"]:
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="repdim", description="Certify repdim <= 3 via radical embeddings.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("algebra", help=".quiv file")
        sp.add_argument("--json", action="store_true", help="machine readable output")
        sp.set_defaults(func=fn)
        return sp

    add("check", cmd_check, "classify the algebra and report c")
    sp = add("split", cmd_split, "split one vertex")
    sp.add_argument("--vertex", required=True)
    sp.add_argument("--auto", action="store_true", help="choose the canonical datum")
    sp.add_argument("--side", choices=["S", "E"], default=None)
    for part in ("S1", "S2", "E1", "E2"):
        sp.add_argument(f"--{part}", nargs="*", default=None, metavar="ARROW")
    sp.add_argument("--out", help="write the split algebra to this .quiv file")
    sp = add("reduce", cmd_reduce, "split until c = 0")
    sp.add_argument("--emit-dir", help="write every algebra of the chain as A<k>.quiv")
    add("gencog", cmd_gencog, "catalog of indecomposable summands of M")
    sp = add("gldim", cmd_gldim, "global dimension of End(M)")
    sp.add_argument("--shuffle-catalog", type=int, metavar="SEED", default=None)
    sp.add_argument("--cap", type=int, default=10)
    add("qh", cmd_qh, "order and heredity chain")
    sp = add("hom", cmd_hom, "basis of Hom(X, Y)")
    sp.add_argument("x", help=".rep file for X")
    sp.add_argument("y", help=".rep file for Y")
    sp = add("repdim-bound", cmd_repdim_bound, "full pipeline")
    sp.add_argument("--cap", type=int, default=10)
    sp.add_argument("--assume-rep-infinite", action="store_true",
                    help="report repdim = 3 when c > 0 (representation-finiteness is not decided)")
    return p


def run_command(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except VERIFY_ERRORS as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 2
    except (RepdimError, NotStringAlgebra, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
