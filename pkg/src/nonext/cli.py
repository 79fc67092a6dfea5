"""Command-line front end.

    nonext eval --dist u2.json --q 2 --phi tsallis
    nonext sweep --dist d.json --q-range 0.5:1.5:0.01 --format csv
    nonext verify --suite all --dist u4.json --q 1.0 --phi tsallis
    nonext phi-validate --phi havrda_charvat
    nonext reconstruct --dist d.json --q 2 --denominator 1000

Exit status: 0 when every check passes, 1 when any check fails, 2 on bad
input or a kernel error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from . import axioms, entropy
from .distributions import (
    Distribution,
    new_distribution,
    product,
    random_distribution,
    refine,
    split_refinement,
)
from .errors import NonextError, ParseError
from .phi import PhiSpec, builtin_phi, poly_phi, validate_phi, validate_q
from .reconstruction import (
    RATIONAL_ABS_TOL,
    RationalDistribution,
    reconstruct_rational,
    uniqueness_check,
)

DEFAULT_SEED = 42
SUITES = ("additivity", "pseudo", "maximality", "expand", "limit", "symmetry")
KINDS = ("generalized", "tsallis", "normalized", "havrda_charvat", "shannon")


@dataclass
class RunConfig:
    command: str
    dist: Optional[str] = None
    phi: str = "tsallis"
    phi_poly: Optional[list[float]] = None
    q: Optional[float] = None
    q_range: Optional[str] = None
    tol: Optional[float] = None
    seed: int = DEFAULT_SEED
    format: str = "json"
    suite: str = "all"
    kind: str = "generalized"
    denominator: int = 1000
    normalize: bool = False

    def phi_spec(self) -> PhiSpec:
        if self.phi_poly is not None:
            return poly_phi(self.phi_poly)
        return builtin_phi(self.phi)

    def q_values(self) -> list[float]:
        if self.q_range is not None:
            return parse_q_range(self.q_range)
        if self.q is None:
            raise ParseError("one of --q or --q-range is required")
        return [validate_q(self.q)]


class _Failure(Exception):
    """Kernel error tagged with the operation that raised it."""

    def __init__(self, op: str, err: Exception):
        super().__init__(f"error in {op}: {err}")


def parse_q_range(text: str) -> list[float]:
    try:
        lo, hi, step = (float(x) for x in text.split(":"))
    except ValueError:
        raise ParseError(f"--q-range expects LO:HI:STEP, got {text!r}") from None
    if not step > 0 or hi < lo:
        raise ParseError(f"bad q range {text!r}")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [validate_q(round(lo + k * step, 12)) for k in range(count)]


def parse_poly(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"--phi-poly expects comma-separated numbers, got {text!r}") from None


# -- input ------------------------------------------------------------------

def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as f:
            return f.read()
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err}") from None


def load_input(path: str):
    """Parse a JSON object (``p``, ``blocks``, ``a``/``b`` or ``m``) or a one-column CSV."""
    text = _read_text(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = None
    if data is None:
        try:
            rows = [r for r in csv.reader(io.StringIO(text)) if r and r[0].strip()]
            return {"p": [float(r[0]) for r in rows]}
        except ValueError:
            raise ParseError(f"{path}: neither JSON nor a one-column CSV of numbers") from None
    if isinstance(data, list):
        return {"p": data}
    if not isinstance(data, dict) or not ({"p", "blocks", "m"} & data.keys() or {"a", "b"} <= data.keys()):
        raise ParseError(f"{path}: expected an object with 'p', 'blocks', 'a'/'b' or 'm'")
    return data


def _distribution(weights, normalize: bool) -> Distribution:
    if not isinstance(weights, list) or not all(isinstance(x, (int, float)) for x in weights):
        raise ParseError("probability lists must be arrays of numbers")
    return new_distribution(weights, normalize=normalize)


def _shapes(data: dict, cfg: RunConfig, rng: np.random.Generator):
    try:
        return _build_shapes(data, cfg, rng)
    except (TypeError, ValueError) as err:
        if isinstance(err, NonextError):
            raise
        raise ParseError(f"malformed input: {err}") from None


def _build_shapes(data: dict, cfg: RunConfig, rng: np.random.Generator):
    """Return (distribution, refinement, product system) derived from one input.

    Missing shapes are generated from the given one with the seeded rng: a
    plain distribution is split into random sub-outcomes and paired with a
    random partner system.
    """
    if "blocks" in data:
        r = refine(data["blocks"])
        d = r.flatten()
        s = product(d, random_distribution(3, rng))
    elif "a" in data:
        s = product(_distribution(data["a"], cfg.normalize), _distribution(data["b"], cfg.normalize))
        d = s.joint
        r = s.rows()
    elif "m" in data:
        d = RationalDistribution(tuple(data["m"])).to_distribution()
        r = split_refinement(d, rng)
        s = product(d, random_distribution(3, rng))
    else:
        d = _distribution(data["p"], cfg.normalize)
        r = split_refinement(d, rng)
        s = product(d, random_distribution(3, rng))
    return d, r, s


# -- commands -----------------------------------------------------------------

def _entropy_fn(cfg: RunConfig):
    phi = cfg.phi_spec()
    return {
        "generalized": lambda d, q: entropy.generalized_entropy(d, q, phi),
        "tsallis": entropy.tsallis,
        "normalized": entropy.normalized_tsallis,
        "havrda_charvat": entropy.havrda_charvat,
        "shannon": lambda d, q: entropy.shannon(d),
    }[cfg.kind]


def _require_dist(cfg: RunConfig) -> dict:
    if cfg.dist is None:
        raise ParseError(f"{cfg.command} needs --dist")
    return load_input(cfg.dist)


def cmd_eval(cfg: RunConfig) -> dict:
    d, _, _ = _shapes(_require_dist(cfg), cfg, np.random.default_rng(cfg.seed))
    fn = _entropy_fn(cfg)
    rows = [{"q": q, "entropy": _call(cfg.kind, fn, d, q)} for q in cfg.q_values()]
    out = {"results": rows, "passed": all(math.isfinite(r["entropy"]) for r in rows)}
    if len(rows) == 1:
        out["entropy"] = rows[0]["entropy"]
    return out


def continuity_report(qs: Sequence[float], values: Sequence[float]) -> axioms.CheckReport:
    """No non-finite value and no jump at the q = 1 crossing beyond twice the steepest neighbour."""
    finite = all(math.isfinite(v) for v in values)
    monotone_q = all(b > a for a, b in zip(qs, qs[1:]))
    slopes = [abs(values[k + 1] - values[k]) / (qs[k + 1] - qs[k]) for k in range(len(qs) - 1)]
    crossing = [k for k in range(len(qs) - 1) if qs[k] < 1.0 <= qs[k + 1] or qs[k] <= 1.0 < qs[k + 1]]
    others = [s for k, s in enumerate(slopes) if k not in crossing]
    jump, allowed = 0.0, math.inf
    if crossing and others:
        jump = max(abs(values[k + 1] - values[k]) for k in crossing)
        allowed = max(others) * 2.0 * max(qs[k + 1] - qs[k] for k in crossing)
    ok = finite and monotone_q and jump <= allowed
    return axioms.CheckReport(
        "q_continuity", jump, allowed, ok,
        {"points": len(qs), "finite": finite, "q_monotone": monotone_q,
         "crossing_index": crossing[0] if crossing else None},
    )


def cmd_sweep(cfg: RunConfig) -> dict:
    if cfg.q_range is None:
        raise ParseError("sweep needs --q-range LO:HI:STEP")
    d, _, _ = _shapes(_require_dist(cfg), cfg, np.random.default_rng(cfg.seed))
    fn = _entropy_fn(cfg)
    qs = cfg.q_values()
    values = [_call(cfg.kind, fn, d, q) for q in qs]
    cont = continuity_report(qs, values)
    return {
        "results": [{"q": q, "entropy": v} for q, v in zip(qs, values)],
        "continuity": cont.to_dict(),
        "passed": cont.passed,
    }


def cmd_verify(cfg: RunConfig) -> dict:
    data = _require_dist(cfg)
    rng = np.random.default_rng(cfg.seed)
    d, r, s = _shapes(data, cfg, rng)
    phi = cfg.phi_spec()
    suites = SUITES if cfg.suite == "all" else (cfg.suite,)
    kw = {} if cfg.tol is None else {"tol": cfg.tol}
    reports = []
    for q in cfg.q_values():
        for suite in suites:
            if suite == "additivity":
                rep = _call("check_shannon_additivity", axioms.check_shannon_additivity, r, q, phi, **kw)
            elif suite == "pseudo":
                rep = _call("check_pseudoadditivity", axioms.check_pseudoadditivity, s, q, phi, **kw)
            elif suite == "maximality":
                rep = _call("check_maximality", axioms.check_maximality, d, q, phi, **kw)
            elif suite == "expand":
                rep = _call("check_expandability", axioms.check_expandability, d, q, phi, **kw)
            elif suite == "symmetry":
                rep = _call("check_symmetry", axioms.check_symmetry, d, q, phi, seed=cfg.seed, **kw)
            else:
                if any(x.name == "shannon_limit" for x in reports):
                    continue
                rep = _call("check_shannon_limit", axioms.check_shannon_limit, d, phi)
            reports.append(rep)
    return {"results": [x.to_dict() for x in reports], "passed": all(x.passed for x in reports)}


def cmd_phi_validate(cfg: RunConfig) -> dict:
    spec = cfg.phi_spec()
    kw = {} if cfg.tol is None else {"tol": cfg.tol}
    rep = _call("validate_phi", validate_phi, spec, **kw)
    return {"results": [rep.to_dict()], "passed": rep.passed}


def cmd_reconstruct(cfg: RunConfig) -> dict:
    data = _require_dist(cfg)
    phi = cfg.phi_spec()
    reports = []
    for q in cfg.q_values():
        if "m" in data:
            rd = RationalDistribution(tuple(data["m"]))
            rebuilt = _call("reconstruct_rational", reconstruct_rational, rd, q, phi)
            closed = _call("generalized_entropy", entropy.generalized_entropy, rd.to_distribution(), q, phi)
            tol = RATIONAL_ABS_TOL if cfg.tol is None else cfg.tol
            res = abs(rebuilt - closed)
            reports.append(axioms.CheckReport(
                "reconstruction", res, tol, res <= tol,
                {"q": q, "phi": phi.name, "m": list(rd.m), "reconstructed": rebuilt, "closed_form": closed},
            ))
        else:
            d, _, _ = _shapes(data, cfg, np.random.default_rng(cfg.seed))
            reports.append(_call("uniqueness_check", uniqueness_check, d, q, phi, cfg.denominator, seed=cfg.seed))
    return {"results": [x.to_dict() for x in reports], "passed": all(x.passed for x in reports)}


COMMANDS = {
    "eval": cmd_eval,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "phi-validate": cmd_phi_validate,
    "reconstruct": cmd_reconstruct,
}


def _call(op, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (NonextError, ZeroDivisionError, OverflowError) as err:
        raise _Failure(op, err) from err


# -- output -------------------------------------------------------------------

def _clean(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _csv_rows(command: str, report: dict) -> tuple[list[str], list[list]]:
    results = report["results"]
    if command in ("eval", "sweep"):
        return ["q", "entropy"], [[r["q"], r["entropy"]] for r in results]
    if command == "phi-validate":
        rows = []
        for r in results:
            for key in ("condition_i", "condition_ii", "condition_iii", "condition_iv"):
                c = r[key]
                rows.append([r["phi"], key, c["passed"], json.dumps(c["measured"], sort_keys=True)])
        return ["phi", "condition", "passed", "measured"], rows
    header = ["name", "q", "phi", "residual", "tol", "passed", "applicable", "note"]
    rows = [
        [r["name"], r["witness"].get("q", ""), r["witness"].get("phi", ""),
         r["residual"], r["tol"], r["passed"], r["applicable"], r["note"]]
        for r in results
    ]
    return header, rows


def render(cfg: RunConfig, report: dict) -> str:
    report = _clean(report)
    if cfg.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header, rows = _csv_rows(cfg.command, report)
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    return json.dumps(report, indent=2) + "\n"


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute one command; return (exit status, rendered report)."""
    body = COMMANDS[cfg.command](cfg)
    report = {"command": cfg.command, "config": asdict(cfg), **body}
    return (0 if report["passed"] else 1), render(cfg, report)


# -- argument parsing ----------------------------------------------------------

def _seed_default() -> int:
    env = os.environ.get("NONEXT_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise ParseError(f"NONEXT_SEED must be an integer, got {env!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nonext", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_dist=True):
        if needs_dist:
            p.add_argument("--dist", help="input file (JSON or one-column CSV); '-' reads stdin")
            p.add_argument("--normalize", action="store_true", help="rescale input weights to sum to 1")
        group = p.add_mutually_exclusive_group()
        group.add_argument("--phi", default="tsallis", help="builtin phi: tsallis, cubic, havrda_charvat")
        group.add_argument("--phi-poly", type=parse_poly, metavar="COEFFS",
                           help="phi(q) = (q-1)*P(q), P as ascending coefficients c0,c1,...")
        p.add_argument("--tol", type=float)
        p.add_argument("--seed", type=int)
        p.add_argument("--format", choices=("json", "csv"), default="json")

    def q_args(p):
        p.add_argument("--q", type=float)
        p.add_argument("--q-range", metavar="LO:HI:STEP")

    p = sub.add_parser("eval", help="evaluate an entropy")
    common(p)
    q_args(p)
    p.add_argument("--kind", choices=KINDS, default="generalized")

    p = sub.add_parser("sweep", help="entropy over a q grid, with a continuity check")
    common(p)
    q_args(p)
    p.add_argument("--kind", choices=KINDS, default="generalized")

    p = sub.add_parser("verify", help="run axiom checks")
    common(p)
    q_args(p)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")

    p = sub.add_parser("phi-validate", help="check conditions (i)-(iv) on phi")
    common(p, needs_dist=False)

    p = sub.add_parser("reconstruct", help="rebuild the entropy from uniform values")
    common(p)
    q_args(p)
    p.add_argument("--denominator", type=int, default=1000)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    seed = ns.seed if ns.seed is not None else _seed_default()
    keys = ("dist", "phi", "phi_poly", "q", "q_range", "tol", "format",
            "suite", "kind", "denominator", "normalize")
    values = {k: getattr(ns, k) for k in keys if getattr(ns, k, None) is not None}
    return RunConfig(command=ns.command, seed=seed, **values)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        status, text = run(cfg)
    except _Failure as err:
        print(f"nonext {ns.command}: {err}", file=sys.stderr)
        return 2
    except NonextError as err:
        print(f"nonext {ns.command}: {err}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
