"""``wkf`` command-line front end.

    wkf <task> <problem-file> [--budget N] [--seed N] [--tol X] [--json] [--quiet]

Tasks: bounds, kbounds, woven, kwoven, cert. Exit status is 0 when the
verdict is true (or the certificate passes), 1 when it is false (or fails),
and 2 on any error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import theorems as th
from .errors import FrameError, ValidationError
from .frames import frame_bounds, kframe_bounds
from .problem import ProblemFile, parse_problem
from .weaving import DEFAULT_BUDGET, kwoven_report, woven_report

TASKS = ("bounds", "kbounds", "woven", "kwoven", "cert")
RESULT_IDS = ("L2.1", "L2.2", "P2.3", "P2.4", "P2.5", "P2.6", "T2.7", "C2.7",
              "T2.8", "C2.9", "T2.10")


def _num(x: float) -> float:
    x = float(x)
    if not np.isfinite(x):
        return None
    return float(f"{x:.12g}")


def _vec(v) -> list:
    return [[_num(z.real), _num(z.imag)] for z in np.asarray(v, dtype=np.complex128)]


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _vec(obj)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    return obj


def _need(problem: ProblemFile, key: str):
    if key not in problem.task:
        raise ValidationError(f"task.{key} is required for this task")
    return problem.task[key]


def _families(problem: ProblemFile, count: int = None):
    names = problem.task.get("families") or []
    if count is not None and len(names) < count:
        raise ValidationError(f"task.families needs {count} name(s), got {len(names)}")
    fams = [problem.family(n) for n in names]
    return fams if count is None else fams[:count]


def _weaving_dict(rep) -> dict:
    return {
        "verdict": rep.verdict,
        "universal_lower": rep.universal_lower,
        "universal_upper": rep.universal_upper,
        "worst_partition": rep.worst_partition.label(),
        "witness": rep.witness,
        "partitions_checked": rep.partitions_checked,
        "exhaustive": rep.exhaustive,
    }


def _cert_dict(cert) -> dict:
    return {
        "result": cert.result_id,
        "verdict": cert.passed,
        "claimed_lower": cert.claimed_lower,
        "claimed_upper": cert.claimed_upper,
        "achieved_lower": cert.achieved_lower,
        "achieved_upper": cert.achieved_upper,
        "details": cert.details,
    }


def _run_cert(problem: ProblemFile, budget: int, seed: int, tol: float):
    rid = _need(problem, "result")
    if rid not in RESULT_IDS:
        raise ValidationError(f"task.result: unknown result {rid!r}; choose from {RESULT_IDS}")
    op = problem.operator
    common = dict(cert_tol=tol)
    if rid == "L2.1":
        (F,) = _families(problem, 1)
        return th.pushforward_frame(F, op(_need(problem, "K")), op(_need(problem, "T")),
                                    **common)[1]
    if rid == "L2.2":
        (F,) = _families(problem, 1)
        return th.pullback_frame(F, op(_need(problem, "T")), op(_need(problem, "K")),
                                 budget=budget, **common)
    F, G = _families(problem, 2)
    sweep = dict(budget=budget, seed=seed, **common)
    if rid == "P2.3":
        return th.woven_pushforward(F, G, op(_need(problem, "K")), op(_need(problem, "T")),
                                    **sweep)
    if rid == "P2.4":
        return th.woven_pullback(F, G, op(_need(problem, "T")), op(_need(problem, "K")),
                                 **sweep)
    if rid in ("P2.5", "P2.6"):
        fn = th.range_equivalence_kstar if rid == "P2.5" else th.range_equivalence_k
        return fn(F, G, op(_need(problem, "K")), problem.task.get("direction", "forward"),
                  **sweep)
    if rid in ("T2.7", "C2.7"):
        alphas = _need(problem, "alphas")
        if rid == "T2.7" and len(alphas) != 3:
            raise ValidationError("task.alphas: T2.7 needs three constants")
        p = th.PerturbationParams(*alphas)
        return th.perturbed_woven_cert(F, G, op(_need(problem, "T")), op(_need(problem, "K")),
                                       p, corollary=(rid == "C2.7"),
                                       probes=problem.task.get("probes", 16), **sweep)
    mode = {"T2.8": "pushforward", "C2.9": "identity", "T2.10": "pullback"}[rid]
    T = None if mode == "identity" else op(_need(problem, "T"))
    return th.erasure_woven_cert(F, G, problem.task.get("erased", []), op(_need(problem, "K")),
                                 T, mode=mode, **sweep)


def run(problem: ProblemFile, task: str, budget: int = None, seed: int = None,
        tol: float = th.CERT_TOL) -> tuple[dict, int]:
    """Execute ``task`` on ``problem``; returns ``(report, exit_code)``."""
    if task not in TASKS:
        raise ValidationError(f"unknown task {task!r}; choose from {TASKS}")
    budget = budget if budget is not None else problem.task.get("budget", DEFAULT_BUDGET)
    seed = seed if seed is not None else problem.task.get("seed", 0)
    report = {"task": task}
    if task == "bounds":
        (F,) = _families(problem, 1)
        b = frame_bounds(F, subspace=problem.subspace())
        report.update(verdict=b.is_frame, lower=b.lower, upper=b.upper,
                      lower_witness=b.lower_witness, upper_witness=b.upper_witness,
                      subspace_dim=b.subspace_dim)
    elif task == "kbounds":
        (F,) = _families(problem, 1)
        b = kframe_bounds(F, problem.operator(_need(problem, "K")), subspace=problem.subspace())
        report.update(verdict=b.is_kframe, lower=b.lower, upper=b.upper, tight=b.is_tight,
                      tight_constant=b.tight_constant, lower_witness=b.lower_witness)
    elif task == "woven":
        rep = woven_report(_families(problem), subspace=problem.subspace(), budget=budget,
                           seed=seed)
        report.update(_weaving_dict(rep))
    elif task == "kwoven":
        rep = kwoven_report(_families(problem), problem.operator(_need(problem, "K")),
                            subspace=problem.subspace(), budget=budget, seed=seed)
        report.update(_weaving_dict(rep))
    else:
        report.update(_cert_dict(_run_cert(problem, budget, seed, tol)))
    code = 0 if report["verdict"] else 1
    report["exit_code"] = code
    return _clean(report), code


def render_human(report: dict, elapsed: float) -> str:
    lines = []
    for key, val in report.items():
        if key == "details":
            for k, v in val.items():
                lines.append(f"  {k}: {json.dumps(v)}")
            continue
        if isinstance(val, list):
            val = json.dumps(val)
        lines.append(f"{key}: {val}")
    lines.append(f"elapsed: {elapsed:.3f} s")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wkf", description="Frame, K-frame and weaving bounds.")
    ap.add_argument("task", choices=TASKS)
    ap.add_argument("problem", help="problem file (JSON), or - for stdin")
    ap.add_argument("--budget", type=int, default=None,
                    help=f"partition budget (default {DEFAULT_BUDGET})")
    ap.add_argument("--seed", type=int, default=None, help="seed for sampling (default 0)")
    ap.add_argument("--tol", type=float, default=th.CERT_TOL,
                    help="relative slack for certificate comparisons")
    ap.add_argument("--json", action="store_true", help="machine-readable report")
    ap.add_argument("--quiet", action="store_true", help="no output; exit status only")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        if args.problem == "-":
            text = sys.stdin.read()
        else:
            with open(args.problem, "rb") as fh:
                text = fh.read()
        problem = parse_problem(text)
        report, code = run(problem, args.task, args.budget, args.seed, args.tol)
    except (FrameError, OSError, IndexError) as exc:
        if not args.quiet:
            print(f"wkf: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if not args.quiet:
        if args.json:
            sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
        else:
            sys.stdout.write(render_human(report, time.perf_counter() - start))
    return code


if __name__ == "__main__":
    sys.exit(main())
