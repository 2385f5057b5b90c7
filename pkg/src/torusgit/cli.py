"""Command-line driver.

Exit codes: 0 success, 1 input error (message names the field), 2 a
verification failed (e.g. the injectivity verdict came out false).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from typing import Optional, Sequence

from . import __version__
from .chambers import chamber_of, enumerate_chambers
from .cohomology import (
    EmptyQuotient,
    NotProjective,
    admissible_span_U,
    hilbert_function,
    hypertoric_system,
    socle_dimensions,
    toric_betti,
    verify_injectivity,
)
from .configuration import ConfigurationError, VectorConfiguration, admissible_sets, flip_set, matroid_h_vector
from .exact import CapacityExceeded, rat_str, rat_vector
from .flipdecomp import Inadmissible, Mismatch, ResidualNSymbol, decomposition_report, flip_decompose
from .polyhedra import FlippedPolytope, PolytopeError, face_numbers, volume
from .stability import (
    is_nice,
    is_semistable,
    is_stable,
    overlap_matrix,
    restrict_character,
    stable_supports,
    support_text,
)
from .svg import DimensionUnsupported, render_svg
from .volpoly import check_translation_invariance, volume_polynomial

SCHEMA_VERSION = 1
SUBCOMMANDS = (
    "chambers", "volume", "volpoly", "betti", "level", "injectivity",
    "flip", "stability", "overlap", "svg", "report",
)


class InputError(ValueError):
    pass


class VerificationFailed(RuntimeError):
    def __init__(self, message: str, payload: dict):
        super().__init__(message)
        self.payload = payload


@dataclass
class RunConfig:
    input: str
    subcommand: str
    chi: Optional[list] = None
    flip: frozenset = frozenset()
    seed: int = 0
    samples: int = 1000
    out: Optional[str] = None
    support: Optional[frozenset] = None


def _parse_list(text: str, field: str, parse):
    try:
        return [parse(x) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{field}: cannot parse {text!r} ({exc})") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, metavar="FILE", help="configuration JSON")
    common.add_argument("--chi", help="comma-separated rationals, e.g. 0,1,1,0 or 1/2,3")
    common.add_argument("--flip", default="", help="comma-separated 1-based indices")
    common.add_argument("--support", help="comma-separated 1-based indices (stability)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=1000)
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="torusgit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _run_config(ns: argparse.Namespace, cfg: VectorConfiguration) -> RunConfig:
    chi = None
    if ns.chi is not None:
        chi = _parse_list(ns.chi, "chi", _rat)
        if len(chi) != cfg.n:
            raise InputError(f"chi: expected {cfg.n} entries, got {len(chi)}")
    flip = flip_set(_parse_list(ns.flip, "flip", int), cfg.n)
    support = None
    if ns.support is not None:
        support = flip_set(_parse_list(ns.support, "support", int), cfg.n)
    if ns.samples < 1:
        raise InputError("samples: must be positive")
    return RunConfig(ns.config, ns.subcommand, chi, flip, ns.seed, ns.samples, ns.out, support)


def _rat(text: str):
    return rat_vector([text])[0]


def _need_chi(rc: RunConfig) -> list:
    if rc.chi is None:
        raise InputError("chi: required for this subcommand")
    return rc.chi


# Subcommands ---------------------------------------------------------------------


def cmd_chambers(cfg, rc):
    return [c.to_json() for c in enumerate_chambers(cfg)]


def cmd_volume(cfg, rc):
    P = FlippedPolytope(cfg, _need_chi(rc), rc.flip)
    vol = volume(P, seed=rc.seed)
    return {
        "volume": rat_str(vol),
        "vertices": [[rat_str(x) for x in v.point] for v in P.vertices()],
    }


def cmd_volpoly(cfg, rc):
    vp = volume_polynomial(cfg, _need_chi(rc), rc.flip, seed=rc.seed)
    return {
        "chamber": vp.chamber.signs_text(),
        "flip": sorted(rc.flip),
        "polynomial": vp.poly.to_text(),
        "coefficients": vp.poly.to_json(),
        "translation_invariant": check_translation_invariance(cfg, vp),
    }


def cmd_betti(cfg, rc):
    S = hypertoric_system(cfg)
    hyper = hilbert_function(S)
    h = matroid_h_vector(cfg)
    out = {"hypertoric_betti": hyper, "matroid_h_vector": h}
    if rc.chi is not None:
        out["toric_betti"] = toric_betti(cfg, chamber_of(cfg, rc.chi))
    if hyper != h:
        raise VerificationFailed("hypertoric Betti numbers differ from the matroid h-vector", out)
    return out


def cmd_level(cfg, rc):
    S = hypertoric_system(cfg)
    socle = socle_dimensions(S)
    U = admissible_span_U(cfg, enumerate_chambers(cfg)[0].representative)
    out = {
        "socle": socle,
        "level": all(x == 0 for x in socle[:-1]),
        "U_dim": len(U),
    }
    if not out["level"] or socle[-1] != len(U):
        raise VerificationFailed("hypertoric quotient is not level", out)
    return out


def cmd_injectivity(cfg, rc):
    verdict = verify_injectivity(cfg).to_json()
    if not verdict["equal"]:
        raise VerificationFailed("injectivity verdict is false", verdict)
    return verdict


def cmd_flip(cfg, rc):
    dec = flip_decompose(cfg, _need_chi(rc), rc.flip)
    out = decomposition_report(dec, rc.samples, rc.seed)
    if not out["indicator_ok"]:
        raise VerificationFailed("indicator identity failed", out)
    return out


def cmd_stability(cfg, rc):
    chi = _need_chi(rc)
    out = {
        "restricted_character": list(restrict_character(cfg, chi)),
        "nice": is_nice(cfg, chi),
        "stable_supports": [support_text(s) for s in stable_supports(cfg, chi)],
    }
    if rc.support is not None:
        out["support"] = support_text(rc.support)
        out["semistable"] = is_semistable(cfg, rc.support, chi)
        out["stable"] = is_stable(cfg, rc.support, chi)
    return out


def cmd_overlap(cfg, rc):
    return overlap_matrix(cfg).to_json()


def cmd_svg(cfg, rc):
    return render_svg(cfg, _need_chi(rc), rc.flip)


def build_report(cfg: VectorConfiguration) -> dict:
    """chambers -> toric Betti per chamber -> hypertoric Betti -> levelness -> injectivity."""
    chambers = enumerate_chambers(cfg)
    rows = []
    toric_ok = True
    for ch in chambers:
        row = ch.to_json()
        try:
            betti = toric_betti(cfg, ch)
        except EmptyQuotient:
            row.update(nonempty=False, toric_betti=None, polytope_h_vector=None)
        else:
            _, h = face_numbers(FlippedPolytope(cfg, ch.representative))
            row.update(nonempty=True, toric_betti=betti, polytope_h_vector=h)
            toric_ok &= betti == h and betti == betti[::-1]
        rows.append(row)
    S = hypertoric_system(cfg)
    hyper = hilbert_function(S)
    h = matroid_h_vector(cfg)
    socle = socle_dimensions(S)
    U = admissible_span_U(cfg, chambers[0].representative)
    level = all(x == 0 for x in socle[:-1])
    verdict = verify_injectivity(cfg)
    checks = {
        "toric_betti_equals_polytope_h": toric_ok,
        "hypertoric_betti_equals_matroid_h": hyper == h,
        "level_with_socle_dim_U": level and socle[-1] == len(U),
        "injectivity": verdict.equal,
    }
    return {
        "schema_version": SCHEMA_VERSION,
        "configuration": cfg.to_json(),
        "chamber_count": len(chambers),
        "chambers": rows,
        "admissible_flip_sets": [sorted(A) for A in admissible_sets(cfg)],
        "hypertoric_betti": hyper,
        "matroid_h_vector": h,
        "socle": socle,
        "level": level,
        "U_dim": len(U),
        "U_basis": [p.to_text() for p in U],
        "injectivity": verdict.to_json(),
        "checks": checks,
    }


def cmd_report(cfg, rc):
    report = build_report(cfg)
    if not all(report["checks"].values()):
        raise VerificationFailed("report checks failed", report)
    return report


COMMANDS = {name: globals()[f"cmd_{name}"] for name in SUBCOMMANDS}


def report_schema() -> dict:
    text = resources.files("torusgit").joinpath("schemas/report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


INPUT_ERRORS = (
    InputError,
    ConfigurationError,
    NotProjective,
    Inadmissible,
    PolytopeError,
    EmptyQuotient,
    DimensionUnsupported,
    CapacityExceeded,
    OSError,
    ValueError,
)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        cfg = VectorConfiguration.load(ns.config)
        rc = _run_config(ns, cfg)
        result = COMMANDS[rc.subcommand](cfg, rc)
    except VerificationFailed as exc:
        _emit(dumps(exc.payload), ns.out)
        print(f"torusgit: verification failed: {exc}", file=sys.stderr)
        return 2
    except (ResidualNSymbol, Mismatch) as exc:
        print(f"torusgit: verification failed: {exc}", file=sys.stderr)
        return 2
    except INPUT_ERRORS as exc:
        print(f"torusgit: error: {exc}", file=sys.stderr)
        return 1
    _emit(result if isinstance(result, str) else dumps(result), rc.out)
    return 0


def main():
    sys.exit(run())
