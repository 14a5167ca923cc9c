"""``qglue`` command line: parameter sweeps to CSV and the invariant suites.

Grids are written ``start:stop:step`` (inclusive), as comma lists, or as a
single value. Every option can also come from a ``key=value`` file passed
with ``--config``; flags given on the command line win.
"""
from __future__ import annotations

import argparse
import csv
import math
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import asymptotics as asy
from .coherent_info import DEFAULT_CONFIG, OptimizerConfig, q1_amplitude_glued, q1_dephrasure, with_seed
from .nonadditivity import boundary_scan_lambda1, delta2_amplitude, delta2_star_dephrasure
from .qubit_models import g_curve, j_curve, lambda0
from .verify import SUITES, run_suites

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

MODELS = ("amplitude", "dephrasure")
QUANTITIES = ("q1B", "q1C", "delta2", "delta2star", "boundaries", "asym_compare")
TARGETS = ("q1B", "delta2")

HEADERS = {
    "q1": ("p", "lambda", "q1", "argopt_param", "evaluations", "status"),
    "delta2": ("p", "lambda", "delta_lambda", "delta2", "best_ansatz_param", "status"),
    "boundaries": ("p", "lambda0", "lambda1", "status"),
    "asym_compare": ("p", "delta_lambda", "numeric", "asymptote", "log_ratio", "status"),
}

# hard defaults, applied after the config file
DEFAULTS = {
    "model": "amplitude",
    "quantity": "q1B",
    "target": "q1B",
    "output": "-",
    "workers": 0,
    "seed": 0,
    "along_j": False,
}


class GridError(ValueError):
    pass


def parse_grid(text: str, lo: float = 0.0, hi: float = 1.0) -> tuple[float, ...]:
    """Expand a grid string into a sorted tuple of floats inside [lo, hi]."""
    text = str(text).strip()
    if not text:
        raise GridError("empty grid")
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise GridError(f"range {text!r} must be start:stop:step")
        try:
            a, b, s = (float(x) for x in parts)
        except ValueError:
            raise GridError(f"non-numeric range {text!r}") from None
        if not s > 0:
            raise GridError(f"step must be positive in {text!r}")
        if b < a:
            raise GridError(f"stop below start in {text!r}")
        n = int(math.floor((b - a) / s + 1e-9)) + 1
        # rounding keeps 0.1-style steps free of accumulated error
        vals = [round(a + k * s, 12) for k in range(n)]
    else:
        try:
            vals = [float(x) for x in text.split(",") if x.strip()]
        except ValueError:
            raise GridError(f"non-numeric grid {text!r}") from None
    if not vals:
        raise GridError("empty grid")
    for v in vals:
        if not (math.isfinite(v) and lo <= v <= hi):
            raise GridError(f"grid value {v} outside [{lo}, {hi}]")
    return tuple(sorted(set(vals)))


@dataclass(frozen=True)
class SweepRequest:
    model: str
    quantity: str
    p_grid: tuple
    lambda_grid: tuple = ()
    delta_lambda_grid: tuple = ()
    along_j: bool = False
    target: str = "q1B"
    output_path: str = "-"
    workers: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.model not in MODELS:
            raise GridError(f"model must be one of {MODELS}")
        if self.quantity not in QUANTITIES:
            raise GridError(f"quantity must be one of {QUANTITIES}")
        if not self.p_grid:
            raise GridError("p grid is empty")
        if self.workers < 0:
            raise GridError("workers must be >= 0")
        q = self.quantity
        if q in ("delta2", "boundaries") and self.model != "amplitude":
            raise GridError(f"{q} is defined for the amplitude model")
        if q == "delta2star" and self.model != "dephrasure":
            raise GridError("delta2star is defined for the dephrasure model")
        if q == "asym_compare":
            if self.target not in TARGETS:
                raise GridError(f"target must be one of {TARGETS}")
            if self.target == "delta2" and self.model != "amplitude":
                raise GridError("the delta2 asymptote is defined for the amplitude model")
            if not self.delta_lambda_grid:
                raise GridError("asym-compare needs a delta-lambda grid")
        elif q in ("q1B", "q1C", "delta2", "delta2star") and not self.along_j:
            if bool(self.lambda_grid) == bool(self.delta_lambda_grid):
                raise GridError("give exactly one of --lambda or --delta-lambda")
        if self.along_j and q != "delta2star":
            raise GridError("--along-j applies to delta2star only")

    @property
    def header(self) -> tuple:
        return _header(self.quantity)

    def config(self) -> OptimizerConfig:
        return with_seed(DEFAULT_CONFIG, self.seed)

    def tasks(self) -> list["Task"]:
        cfg = self.config()
        mk = lambda p, lam=None, dl=None: Task(self.quantity, self.model, p, lam, dl, self.along_j, self.target, cfg)
        out = []
        for p in self.p_grid:
            if self.quantity == "boundaries" or self.along_j:
                out.append(mk(p))
            elif self.lambda_grid and self.quantity != "asym_compare":
                out.extend(mk(p, lam=lam) for lam in self.lambda_grid)
            else:
                out.extend(mk(p, dl=dl) for dl in self.delta_lambda_grid)
        return out


@dataclass(frozen=True)
class Task:
    """One grid point; picklable so it can cross into a worker process."""

    quantity: str
    model: str
    p: float
    lam: Optional[float]
    delta_lambda: Optional[float]
    along_j: bool
    target: str
    cfg: OptimizerConfig

    def resolve_lambda(self) -> float:
        if self.lam is not None:
            return self.lam
        if self.along_j:
            return j_curve(self.p)
        return _zero_line(self.model, self.p) - self.delta_lambda


def _zero_line(model: str, p: float) -> float:
    """lambda where Q1(B_g) vanishes: lambda0 (amplitude) or g (dephrasure)."""
    return lambda0(p) if model == "amplitude" else g_curve(p)


def _q1(model, p, lam, cfg):
    return (q1_amplitude_glued if model == "amplitude" else q1_dephrasure)(p, lam, cfg)


def _header(quantity: str) -> tuple:
    if quantity in ("q1B", "q1C"):
        return HEADERS["q1"]
    if quantity in ("delta2", "delta2star"):
        return HEADERS["delta2"]
    return HEADERS[quantity]


def _evaluate(t: Task) -> list:
    p, cfg = t.p, t.cfg
    if t.quantity == "boundaries":
        return [p, lambda0(p), boundary_scan_lambda1(p, cfg)]
    if t.quantity == "asym_compare":
        dl = t.delta_lambda
        lam = t.resolve_lambda()
        if t.target == "q1B":
            num = _q1(t.model, p, lam, cfg).q1_B
            ref = asy.q1B_asymptote("ad" if t.model == "amplitude" else "deph", p, dl)
        else:
            num = delta2_amplitude(p, lam, cfg).delta
            ref = asy.delta2_asymptote(p, dl)
        # a non-positive value has no log ratio; that is data, not a failure
        ratio = math.log(num / ref) if num > 0 and ref > 0 else math.nan
        return [p, dl, num, ref, ratio]
    lam = t.resolve_lambda()
    if t.quantity == "q1B":
        r = _q1(t.model, p, lam, cfg)
        return [p, lam, r.q1_B, r.argmax_param, r.evaluations]
    if t.quantity == "q1C":
        r = _q1(t.model, p, lam, cfg)
        return [p, lam, r.q1_C, r.argmin_param, r.evaluations]
    if t.quantity == "delta2":
        r = delta2_amplitude(p, lam, cfg)
    else:
        r = delta2_star_dephrasure(p, lam, cfg)
    return [p, lam, _zero_line(t.model, p) - lam, r.delta, r.best_ansatz.value]


def _second_key(t: Task) -> float:
    if t.quantity == "boundaries":
        return 0.0
    if t.quantity == "asym_compare":
        return t.delta_lambda
    try:
        return t.resolve_lambda()
    except ValueError:
        return math.nan


def compute_point(t: Task) -> tuple[tuple, list]:
    """(sort key, CSV row) for one grid point. Never raises."""
    key = (t.p, _second_key(t))
    try:
        row = _evaluate(t)
    except Exception:  # a bad point must not sink the sweep
        row = [t.p] if t.quantity == "boundaries" else [t.p, key[1]]
        row += [math.nan] * (len(_header(t.quantity)) - 1 - len(row))
        return key, row + ["failed"]
    checked = row[:-1] if t.quantity == "asym_compare" else row
    if not all(math.isfinite(float(v)) for v in checked):
        status = "failed"
    elif not math.isfinite(row[-1]):
        status = "undefined"  # log ratio of a non-positive value
    else:
        status = "ok"
    return key, row + [status]


def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    return "%.17g" % float(v)


def run_sweep(req: SweepRequest) -> int:
    tasks = req.tasks()
    workers = req.workers or os.cpu_count() or 1
    if workers == 1 or len(tasks) == 1:
        results = [compute_point(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            results = list(pool.map(compute_point, tasks))
    results.sort(key=lambda kr: kr[0])
    write_csv(req.output_path, req.header, [r for _, r in results])
    return EXIT_FAILED if any(r[-1] == "failed" for _, r in results) else EXIT_OK


def write_csv(path: str, header: Sequence[str], rows) -> None:
    """Write atomically: a temp file in the target directory, renamed on success."""
    if path == "-":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(header)
        w.writerows([_fmt(v) for v in r] for r in rows)
        return
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(prefix=".qglue-", suffix=".csv", dir=os.path.dirname(target))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows([_fmt(v) for v in r] for r in rows)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# -- argument handling ------------------------------------------------------


def read_config(path: str) -> dict:
    """Parse ``key=value`` lines; ``#`` starts a comment. Dashes in keys become underscores."""
    out = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{n}: expected key=value")
            k, v = line.split("=", 1)
            out[k.strip().replace("-", "_")] = v.strip()
    return out


def _add_common(sp: argparse.ArgumentParser, grids: Sequence[str]) -> None:
    sp.add_argument("--config", help="key=value file; flags take precedence")
    sp.add_argument("--p", dest="p", help="p grid")
    if "lambda" in grids:
        sp.add_argument("--lambda", dest="lam", help="lambda grid")
    if "delta_lambda" in grids:
        sp.add_argument("--delta-lambda", dest="delta_lambda", help="grid of distances below the zero line")
    sp.add_argument("-o", "--output", help="CSV path, '-' for stdout (default)")
    sp.add_argument("-j", "--workers", type=int, help="worker processes (default: all cores)")
    sp.add_argument("--seed", type=int, help="optimizer seed (default 0)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qglue", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="evaluate a quantity over a (p, lambda) grid")
    sw.add_argument("--model", choices=MODELS)
    sw.add_argument("--quantity", choices=QUANTITIES)
    sw.add_argument("--along-j", action="store_true", default=None, help="delta2star on lambda = j(p)")
    sw.add_argument("--target", choices=TARGETS, help="asymptote compared by quantity asym_compare")
    _add_common(sw, ("lambda", "delta_lambda"))

    bd = sub.add_parser("boundaries", help="lambda0 (closed form) and lambda1 (scan) for the amplitude model")
    _add_common(bd, ())

    ac = sub.add_parser("asym-compare", help="numeric values against small delta-lambda asymptotes")
    ac.add_argument("--model", choices=MODELS)
    ac.add_argument("--target", choices=TARGETS)
    _add_common(ac, ("delta_lambda",))

    vf = sub.add_parser("verify", help="run invariant suites")
    vf.add_argument("suites", nargs="*", default=["all"], help=f"'all' or any of {', '.join(SUITES)}")
    return ap


def _merge(args: argparse.Namespace, sp: argparse.ArgumentParser) -> argparse.Namespace:
    conf = read_config(args.config) if getattr(args, "config", None) else {}
    types = {a.dest: a.type for a in sp._actions}
    for k, v in conf.items():
        k = "lam" if k == "lambda" else k
        if k not in types:
            raise ValueError(f"unknown config key {k!r}")
        if getattr(args, k) is None:
            if k == "along_j":
                v = v.lower() in ("1", "true", "yes", "on")
            elif types[k] is not None:
                v = types[k](v)
            setattr(args, k, v)
    for k, v in DEFAULTS.items():
        if getattr(args, k, "missing") is None:
            setattr(args, k, v)
    return args


def _request(args: argparse.Namespace) -> SweepRequest:
    if args.p is None:
        raise GridError("a p grid is required (--p)")
    quantity = {"boundaries": "boundaries", "asym-compare": "asym_compare"}.get(args.command) or args.quantity
    lam = getattr(args, "lam", None)
    dl = getattr(args, "delta_lambda", None)
    return SweepRequest(
        model=getattr(args, "model", None) or "amplitude",
        quantity=quantity,
        p_grid=parse_grid(args.p),
        lambda_grid=parse_grid(lam) if lam is not None else (),
        delta_lambda_grid=parse_grid(dl) if dl is not None else (),
        along_j=bool(getattr(args, "along_j", False)),
        target=getattr(args, "target", None) or "q1B",
        output_path=args.output,
        workers=args.workers,
        seed=args.seed,
    )


def cmd_verify(names: Sequence[str], out=None) -> int:
    out = out or sys.stdout
    names = list(SUITES) if "all" in names else list(names)
    failed = 0
    for suite, c in run_suites(names):
        tag = "PASS" if c.passed else "FAIL"
        failed += not c.passed
        print(f"{tag}  {suite:<14} {c.name:<48} residual={c.residual:.3e}  tol={c.tol:.1e}", file=out)
    print(f"{failed} failed", file=out)
    return EXIT_FAILED if failed else EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.command == "verify":
        unknown = [s for s in args.suites if s != "all" and s not in SUITES]
        if unknown:
            ap.error(f"unknown suite(s): {', '.join(unknown)}")
        return cmd_verify(args.suites)
    sp = ap._subparsers._group_actions[0].choices[args.command]
    try:
        req = _request(_merge(args, sp))
    except (GridError, ValueError, OSError) as exc:
        sp.error(str(exc))
    return run_sweep(req)


if __name__ == "__main__":
    sys.exit(main())
