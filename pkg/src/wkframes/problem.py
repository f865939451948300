"""Problem files: a small JSON dialect for families, operators and a task.

Example::

    {
      "dim": 2,
      "frames": {"F": [[1, 0], [0, 1]], "G": [[0, 1], [1, 0]]},
      "operators": {"K": [[1, 0], [0, 0]]},
      "task": {"families": ["F", "G"], "K": "K", "budget": 1024}
    }

Vectors are lists of scalars; matrices are row-major lists of rows. A scalar
is either a bare real number or a ``[re, im]`` pair.

Recognised task keys: ``families`` (list of frame names), ``K`` and ``T``
(operator names), ``subspace`` (an operator name, meaning its range, or the
name followed by ``*`` for the range of its adjoint), ``result`` (certificate
id), ``direction``, ``erased`` (0-based indices), ``alphas``, ``budget``,
``seed``, ``probes``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParseError, ValidationError
from .frames import FrameFamily
from .linalg import MAX_DIM

TASK_KEYS = {"name", "families", "K", "T", "subspace", "result", "direction", "erased",
             "alphas", "budget", "seed", "probes"}


@dataclass
class ProblemFile:
    dim: int
    frames: dict = field(default_factory=dict)
    operators: dict = field(default_factory=dict)
    task: dict = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, ProblemFile):
            return NotImplemented
        return (self.dim == other.dim and self.task == other.task
                and self.frames.keys() == other.frames.keys()
                and all(self.frames[k] == other.frames[k] for k in self.frames)
                and self.operators.keys() == other.operators.keys()
                and all(np.array_equal(self.operators[k], other.operators[k])
                        for k in self.operators))

    def family(self, name: str) -> FrameFamily:
        return self.frames[name]

    def operator(self, name: str) -> np.ndarray:
        return self.operators[name]

    def subspace(self):
        sel = self.task.get("subspace")
        if sel is None:
            return None
        if sel.endswith("*"):
            return np.conj(self.operators[sel[:-1]].T)
        return self.operators[sel]


def _scalar(x, path: str) -> complex:
    if isinstance(x, bool):
        raise ValidationError(f"{path}: expected a number, got a boolean")
    if isinstance(x, (int, float)):
        z = complex(float(x), 0.0)
    elif (isinstance(x, list) and len(x) == 2
          and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in x)):
        z = complex(float(x[0]), float(x[1]))
    else:
        raise ValidationError(f"{path}: expected a number or [re, im], got {x!r}")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValidationError(f"{path}: non-finite value")
    return z


def _vector(v, path: str) -> list:
    if not isinstance(v, list):
        raise ValidationError(f"{path}: expected a list of scalars")
    return [_scalar(x, f"{path}[{i}]") for i, x in enumerate(v)]


def _matrix(rows, path: str) -> np.ndarray:
    if not isinstance(rows, list) or not rows:
        raise ValidationError(f"{path}: expected a non-empty list of rows")
    out = [_vector(r, f"{path}[{i}]") for i, r in enumerate(rows)]
    widths = {len(r) for r in out}
    if len(widths) != 1 or 0 in widths:
        raise ValidationError(f"{path}: rows have unequal or zero length")
    M = np.array(out, dtype=np.complex128)
    if max(M.shape) > MAX_DIM:
        raise ValidationError(f"{path}: shape {M.shape} exceeds the cap {MAX_DIM}")
    return M


def _name(x, kind: str, table: dict, path: str) -> str:
    if not isinstance(x, str) or x not in table:
        raise ValidationError(f"{path}: undefined {kind} {x!r}")
    return x


def _validate_task(task, frames, operators) -> dict:
    if not isinstance(task, dict):
        raise ValidationError("task: expected an object")
    unknown = set(task) - TASK_KEYS
    if unknown:
        raise ValidationError(f"task: unknown keys {sorted(unknown)}")
    t = dict(task)
    fams = t.get("families", [])
    if not isinstance(fams, list):
        raise ValidationError("task.families: expected a list of names")
    for i, f in enumerate(fams):
        _name(f, "frame", frames, f"task.families[{i}]")
    for key in ("K", "T"):
        if key in t:
            _name(t[key], "operator", operators, f"task.{key}")
    if "subspace" in t:
        sel = t["subspace"]
        if not isinstance(sel, str):
            raise ValidationError("task.subspace: expected an operator name")
        _name(sel.rstrip("*"), "operator", operators, "task.subspace")
    for key in ("budget", "seed", "probes"):
        if key in t and (not isinstance(t[key], int) or isinstance(t[key], bool)):
            raise ValidationError(f"task.{key}: expected an integer")
    if "erased" in t:
        er = t["erased"]
        if not isinstance(er, list) or not all(isinstance(j, int) for j in er):
            raise ValidationError("task.erased: expected a list of integers")
    if "alphas" in t:
        al = t["alphas"]
        if (not isinstance(al, list) or not 2 <= len(al) <= 3
                or not all(isinstance(a, (int, float)) for a in al)):
            raise ValidationError("task.alphas: expected two or three numbers")
        t["alphas"] = [float(a) for a in al]
    return t


def parse_problem(text) -> ProblemFile:
    """Parse and validate a problem file (``str`` or ``bytes``)."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    dim = doc.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or not 1 <= dim <= MAX_DIM:
        raise ValidationError(f"dim: expected an integer in [1, {MAX_DIM}], got {dim!r}")

    frames = {}
    for name, vecs in (doc.get("frames") or {}).items():
        path = f"frames.{name}"
        if not isinstance(vecs, list):
            raise ValidationError(f"{path}: expected a list of vectors")
        rows = [_vector(v, f"{path}[{i}]") for i, v in enumerate(vecs)]
        for i, r in enumerate(rows):
            if len(r) != dim:
                raise ValidationError(f"{path}[{i}]: length {len(r)}, expected dim {dim}")
        frames[name] = FrameFamily(np.array(rows, dtype=np.complex128).reshape(len(rows), dim),
                                   dim=dim)

    operators = {name: _matrix(rows, f"operators.{name}")
                 for name, rows in (doc.get("operators") or {}).items()}
    task = _validate_task(doc.get("task") or {}, frames, operators)
    return ProblemFile(dim, frames, operators, task)


def _emit_scalar(z: complex):
    z = complex(z)
    return z.real if z.imag == 0.0 else [z.real, z.imag]


def problem_to_dict(p: ProblemFile) -> dict:
    return {
        "dim": p.dim,
        "frames": {k: [[_emit_scalar(x) for x in v] for v in F.vectors]
                   for k, F in p.frames.items()},
        "operators": {k: [[_emit_scalar(x) for x in row] for row in M]
                      for k, M in p.operators.items()},
        "task": p.task,
    }


def dump_problem(p: ProblemFile) -> str:
    return json.dumps(problem_to_dict(p), indent=2, sort_keys=True) + "\n"
