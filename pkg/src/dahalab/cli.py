"""Command-line front end.

Subcommands: ``datum`` (root-system report), ``epoly`` (one nonsymmetric
Macdonald polynomial with spectral data and evaluations), ``verify``
(identity suites), ``quotient`` (radical quotient, Jordan table,
irreducibility, sigma structure; includes the rank-one chain analysis),
``bn-example`` (the B3 zero-radical reducible case study).

Exit codes: 0 success, 1 identity failure, 2 well-formed mathematical
refusal (non-existence, non-stabilization), 3 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import __version__, perfect, verify
from .errors import (
    DahaError,
    NotReachable,
    NotStabilized,
    ParameterOutOfRange,
    TauMinusNotDefined,
    UsageError,
)
from .macdonald import MacdonaldEngine
from .polyrep import PolynomialRep, parse_poly, serialize_poly
from .rootdata import build_root_datum, make_lattice
from .scalars import QtContext, Specialization

EXIT_OK = 0
EXIT_IDENTITY_FAILURE = 1
EXIT_REFUSAL = 2
EXIT_USAGE = 3

CACHE_ENV = "DAHALAB_CACHE_DIR"


@dataclass
class RunConfig:
    type_letter: str
    rank: int
    lattice: str = "P"
    weight: tuple | None = None
    root_of_unity: int | None = None
    k_sht: Fraction | None = None
    k_lng: Fraction | None = None
    degree: int = 4
    output: str = "text"
    cache_dir: str | None = None
    suite: str | None = None
    max_length: int = 4
    radius: int = 3

    def validate(self):
        if self.root_of_unity is not None and self.root_of_unity < 2:
            raise UsageError("root-of-unity order must be at least 2")

    @property
    def mode(self) -> str:
        return "generic" if self.root_of_unity is None else (
            f"root_of_unity_{self.root_of_unity}_k_{self.k_sht}"
            + (f"_{self.k_lng}" if self.k_lng is not None else "")
        )


def build_engine(cfg: RunConfig) -> MacdonaldEngine:
    datum = build_root_datum(cfg.type_letter, cfg.rank)
    lattice = make_lattice(datum, cfg.lattice)
    level = lcm(4, 2 * lattice.m_tilde)
    if cfg.root_of_unity is None:
        ctx = QtContext(level=level)
    else:
        if cfg.k_sht is None:
            raise UsageError("root-of-unity mode requires --k")
        ctx = Specialization(
            level=level,
            q_order=cfg.root_of_unity,
            k_sht=cfg.k_sht,
            k_lng=cfg.k_lng,
            nu_lng=datum.nu_lng,
        )
    return MacdonaldEngine(PolynomialRep(datum, lattice, ctx))


def dump_report(report: dict, cfg: RunConfig, stream=None) -> None:
    stream = stream or sys.stdout
    if cfg.output == "json":
        stream.write(canonical_json(report) + "\n")
    else:
        _render_text(report, stream)


def canonical_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def _render_text(report: dict, stream, indent=0):
    pad = "  " * indent
    if isinstance(report, dict):
        for key in report:
            val = report[key]
            if isinstance(val, (dict, list)) and val and not _is_flat(val):
                stream.write(f"{pad}{key}:\n")
                _render_text(val, stream, indent + 1)
            else:
                stream.write(f"{pad}{key}: {val}\n")
    elif isinstance(report, list):
        for item in report:
            if isinstance(item, (dict, list)):
                _render_text(item, stream, indent)
                stream.write(pad + "-\n")
            else:
                stream.write(f"{pad}- {item}\n")


def _is_flat(val):
    if isinstance(val, list):
        return all(not isinstance(x, (dict, list)) for x in val)
    return False


# ---------------------------------------------------------------------------
# Cache
# ---------------------------------------------------------------------------


def cache_path(cfg: RunConfig, key_parts) -> str | None:
    cache_dir = cfg.cache_dir or os.environ.get(CACHE_ENV)
    if not cache_dir:
        return None
    os.makedirs(cache_dir, exist_ok=True)
    key = "|".join(str(p) for p in key_parts)
    digest = hashlib.sha256(key.encode()).hexdigest()[:32]
    return os.path.join(cache_dir, f"epoly-{digest}.json")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_datum(cfg: RunConfig) -> int:
    datum = build_root_datum(cfg.type_letter, cfg.rank)
    lattice = make_lattice(datum, cfg.lattice)
    report = {
        "report": "datum",
        "version": __version__,
        "datum": datum.summary(),
        "lattice": lattice.describe(),
        "weyl_order": datum.weyl_group_order(),
    }
    dump_report(report, cfg)
    return EXIT_OK


def epoly_report(cfg: RunConfig) -> dict:
    engine = build_engine(cfg)
    rep = engine.rep
    level = rep.ctx.level
    path = cache_path(
        cfg,
        [
            __version__,
            level,
            cfg.type_letter,
            cfg.rank,
            cfg.lattice,
            cfg.mode,
            cfg.weight,
        ],
    )
    cached = None
    if path and os.path.exists(path):
        with open(path) as fh:
            cached = json.load(fh)
    if cached is not None:
        E_poly = parse_poly(rep, cached["poly"])
        chain = tuple(tuple(s) for s in cached["chain"])
    else:
        E = engine.compute_E(cfg.weight)
        E_poly = E.poly
        chain = E.chain
    spectral = engine.spectral_vector(cfg.weight)
    eval_direct = rep.evaluate(E_poly, rep.minus_rho_k_point())
    eval_closed = engine.eval_formula(cfg.weight)
    serialized = serialize_poly(rep, E_poly)
    if path and cached is None:
        with open(path, "w") as fh:
            json.dump(
                {
                    "poly": serialized,
                    "chain": [list(s) for s in chain],
                    "spectral": [
                        [str(e) for e in exps] for exps in spectral.exponents
                    ],
                },
                fh,
                sort_keys=True,
            )
    return {
        "report": "epoly",
        "version": __version__,
        "type": f"{cfg.type_letter}{cfg.rank}",
        "lattice": cfg.lattice,
        "mode": cfg.mode,
        "weight": list(cfg.weight),
        "polynomial": serialized,
        "num_terms": len(E_poly),
        "monic": bool(E_poly.get(tuple(cfg.weight), rep.ctx.zero).is_one),
        "spectral_exponents": [
            [str(e) for e in exps] for exps in spectral.exponents
        ],
        "evaluation_at_minus_rho_k": rep.ctx.serialize(eval_direct),
        "evaluation_formula": rep.ctx.serialize(eval_closed),
        "evaluations_agree": eval_direct == eval_closed,
        "chain": [list(s) for s in chain],
        "cached": cached is not None,
    }


def cmd_epoly(cfg: RunConfig) -> int:
    if cfg.weight is None:
        raise UsageError("epoly requires --weight")
    try:
        report = epoly_report(cfg)
    except NotReachable as exc:
        report = {
            "report": "epoly",
            "version": __version__,
            "type": f"{cfg.type_letter}{cfg.rank}",
            "mode": cfg.mode,
            "weight": list(cfg.weight),
            "error": "NotReachable",
            "detail": str(exc),
        }
        dump_report(report, cfg, stream=sys.stdout)
        return EXIT_REFUSAL
    dump_report(report, cfg)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.suite not in verify.SUITES:
        raise UsageError(
            f"unknown suite {cfg.suite!r}; choose from {sorted(verify.SUITES)}"
        )
    report = verify.SUITES[cfg.suite](
        cfg.type_letter,
        cfg.rank,
        radius=cfg.radius,
        max_length=cfg.max_length,
    )
    report = {"report": "verify", "version": __version__, **report}
    dump_report(report, cfg)
    return EXIT_OK if report["passed"] else EXIT_IDENTITY_FAILURE


def quotient_report(cfg: RunConfig) -> dict:
    if cfg.root_of_unity is None:
        raise UsageError("quotient requires --root-of-unity")
    if (
        cfg.type_letter == "A"
        and cfg.rank == 1
        and cfg.k_sht is not None
        and cfg.k_sht.denominator == 1
    ):
        k = int(cfg.k_sht)
        if not (-Fraction(cfg.root_of_unity, 2) <= k < 0):
            raise ParameterOutOfRange(
                f"integral-k rank-one analysis needs -N/2 <= k < 0, got {k}"
            )
    engine = build_engine(cfg)
    Q = perfect.quotient_module(engine, cfg.degree)
    relations = perfect.quotient_relation_report(Q)
    jordan = perfect.jordan_structure(Q)
    irr = perfect.irreducibility_check(Q)
    try:
        sigma = perfect.sigma_structure(Q)
        sigma_error = None
    except TauMinusNotDefined as exc:
        sigma = None
        sigma_error = str(exc)
    report = {
        "report": "quotient",
        "version": __version__,
        "type": f"{cfg.type_letter}{cfg.rank}",
        "lattice": cfg.lattice,
        "mode": cfg.mode,
        "degree": cfg.degree,
        "dimension": Q.dim,
        "kernel_dim_at_degree": Q.kernel_dim,
        "big_radius": Q.big_radius,
        "relations": relations,
        "jordan": {
            "semisimple_dim": jordan.semisimple_dim(),
            "blocks_of_size_2": jordan.blocks_of_size(2),
            "entries": [
                {
                    "eigenvalue": list(e.eigenvalue),
                    "blocks": list(e.blocks),
                    "dim": e.dim,
                }
                for e in jordan.entries
            ],
        },
        "irreducibility": irr if sigma is not None else {
            "status": "not_tested_tau_minus_undefined",
            "matrix_check": irr,
        },
        "sigma": sigma
        if sigma is not None
        else {"error": "TauMinusNotDefined", "detail": sigma_error},
    }
    if (
        cfg.type_letter == "A"
        and cfg.rank == 1
        and cfg.k_sht is not None
        and cfg.k_sht.denominator == 1
    ):
        report["chain"] = perfect.a1_chain(cfg.root_of_unity, int(cfg.k_sht))
    return report


def cmd_quotient(cfg: RunConfig) -> int:
    try:
        report = quotient_report(cfg)
    except NotStabilized as exc:
        report = {
            "report": "quotient",
            "version": __version__,
            "type": f"{cfg.type_letter}{cfg.rank}",
            "mode": cfg.mode,
            "degree": cfg.degree,
            "error": "NotStabilized",
            "detail": str(exc),
            "suggested_degree": exc.suggested_radius,
        }
        dump_report(report, cfg)
        return EXIT_REFUSAL
    dump_report(report, cfg)
    return EXIT_OK


def cmd_bn_example(cfg: RunConfig, s: int, flag_radius: int, gram_radii) -> int:
    try:
        report = perfect.bn_case_study(
            s, gram_radii=tuple(gram_radii), flag_radius=flag_radius
        )
    except ParameterOutOfRange as exc:
        dump_report(
            {"report": "bn_example", "error": "ParameterOutOfRange", "detail": str(exc)},
            cfg,
        )
        return EXIT_REFUSAL
    report = {"report": "bn_example", "version": __version__, **report}
    dump_report(report, cfg)
    return EXIT_OK


# ---------------------------------------------------------------------------


def _fraction(text: str) -> Fraction:
    return Fraction(text)


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dahalab",
        description="Exact double affine Hecke algebra computations",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, weights=False):
        sp.add_argument("--type", dest="type_letter", default="A")
        sp.add_argument("--rank", type=int, default=1)
        sp.add_argument("--lattice", default="P", choices=["P", "Q"])
        sp.add_argument("--root-of-unity", type=int, default=None)
        sp.add_argument("--k", type=_fraction, default=None)
        sp.add_argument("--k-lng", type=_fraction, default=None)
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--cache-dir", default=None)
        if weights:
            sp.add_argument(
                "--weight",
                required=False,
                help="comma-separated fundamental-weight coordinates",
            )

    sp = sub.add_parser("datum", help="root system report")
    common(sp)
    sp = sub.add_parser("epoly", help="one nonsymmetric Macdonald polynomial")
    common(sp, weights=True)
    sp = sub.add_parser("verify", help="identity suites")
    common(sp)
    sp.add_argument("--suite", required=True)
    sp.add_argument("--max-length", type=int, default=4)
    sp.add_argument("--radius", type=int, default=3)
    sp = sub.add_parser("quotient", help="radical quotient analysis")
    common(sp)
    sp.add_argument("--degree", type=int, default=8)
    sp = sub.add_parser("bn-example", help="B3 zero-radical case study")
    sp.add_argument("--s", type=int, default=1)
    sp.add_argument("--flag-radius", type=int, default=3)
    sp.add_argument("--gram-radii", default="2,3")
    sp.add_argument("--json", action="store_true")
    return p


def config_from_args(args) -> RunConfig:
    weight = None
    if getattr(args, "weight", None) is not None:
        weight = tuple(int(x) for x in str(args.weight).split(","))
    cfg = RunConfig(
        type_letter=getattr(args, "type_letter", "B"),
        rank=getattr(args, "rank", 3),
        lattice=getattr(args, "lattice", "P"),
        weight=weight,
        root_of_unity=getattr(args, "root_of_unity", None),
        k_sht=getattr(args, "k", None),
        k_lng=getattr(args, "k_lng", None),
        degree=getattr(args, "degree", 4),
        output="json" if args.json else "text",
        cache_dir=getattr(args, "cache_dir", None),
        suite=getattr(args, "suite", None),
        max_length=getattr(args, "max_length", 4),
        radius=getattr(args, "radius", 3),
    )
    cfg.validate()
    return cfg


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        if args.command == "bn-example":
            cfg = RunConfig(
                type_letter="B",
                rank=3,
                output="json" if args.json else "text",
            )
            radii = tuple(int(x) for x in args.gram_radii.split(","))
            return cmd_bn_example(cfg, args.s, args.flag_radius, radii)
        cfg = config_from_args(args)
        if args.command == "datum":
            return cmd_datum(cfg)
        if args.command == "epoly":
            return cmd_epoly(cfg)
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "quotient":
            return cmd_quotient(cfg)
        raise UsageError(f"unknown command {args.command}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParameterOutOfRange as exc:
        print(f"parameter out of range: {exc}", file=sys.stderr)
        return EXIT_REFUSAL
    except NotStabilized as exc:
        print(f"not stabilized: {exc}", file=sys.stderr)
        return EXIT_REFUSAL
    except DahaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IDENTITY_FAILURE


if __name__ == "__main__":
    raise SystemExit(main())
