"""Command-line front end.

Exit status is 0 on success, 1 on invalid input and 2 when an internal
consistency check fails (for example a boundary that does not square to
zero, which usually means the input homomorphism was not a valid datum).
"""

from __future__ import annotations

import argparse
import random
import sys
from math import prod
from dataclasses import dataclass, field
from pathlib import Path

from . import io
from .abelian import FgAbelianGroup
from .corpus import resolve_seed
from .errors import InvariantViolation, ValidationError
from .fiber import PutnamComplex, putnam_complex, solenoid_preset
from .graphs import (
    bowen_franks,
    complete_graph,
    cycle_graph,
    dimension_group,
    fold_hom,
    full_shift,
    random_graph,
)
from .limits import limit_invariants
from .linalg import IntMatrix, cokernel_invariants, smith_normal_form
from .pipeline import (
    kunneth_crosscheck,
    kunneth_predict,
    odometer_homology,
    odometer_level_tower,
    ruelle_report,
    spectral_sheet,
    stable_homology,
    tor_corrections,
)

COMMANDS = ("snf", "bf", "dimgroup", "putnam", "ruelle", "sheet", "kunneth", "odometer", "tower", "presets")
PRESET_NAMES = ("full_shift", "cycle", "complete", "fold", "solenoid", "odometer", "random")


@dataclass
class JobSpec:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    preset: str | None = None
    m: int | None = None
    m2: int | None = None
    n_max: int | None = None
    levels: int = 2
    name: str | None = None
    params: list[int] = field(default_factory=list)
    out: str | None = None
    fmt: str = "json"
    seed: int | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}")
        if self.fmt not in ("json", "table"):
            raise ValidationError("format must be json or table")
        if self.n_max is not None and self.n_max < 0:
            raise ValidationError("--n-max must be non-negative")
        need = {"snf": ["matrix"], "bf": ["graph"], "dimgroup": ["graph"],
                "odometer": ["matrix"], "tower": ["matrix"]}.get(self.command, [])
        for key in need:
            if key not in self.inputs:
                raise ValidationError(f"{self.command} needs --{key}")
        if self.command in ("putnam", "ruelle", "sheet"):
            sources = [k for k in ("hom", "complex") if k in self.inputs] + (["preset"] if self.preset else [])
            if len(sources) != 1:
                raise ValidationError(f"{self.command} needs exactly one of --hom, --complex, --preset")
        if self.preset is not None:
            if self.preset != "solenoid":
                raise ValidationError(f"unknown preset {self.preset!r}")
            if self.m is None:
                raise ValidationError("--preset solenoid needs --m")
        if self.command == "kunneth":
            homs = "hom" in self.inputs and "hom2" in self.inputs
            if not homs and not (self.preset and self.m2 is not None):
                raise ValidationError("kunneth needs --hom and --hom2, or --preset solenoid --m M --m2 M2")
        if self.command == "tower" and self.levels < 1:
            raise ValidationError("--levels must be at least 1")
        if self.command == "presets":
            if self.name not in PRESET_NAMES:
                raise ValidationError(f"--name must be one of {', '.join(PRESET_NAMES)}")


# -- example generators --------------------------------------------------------


def generate_example(name: str, params: list[int], seed: int | None = None) -> dict:
    """Schema-valid JSON document for a named example."""

    def one(default=None, lo=1):
        if not params:
            if default is None:
                raise ValidationError(f"{name} needs a parameter")
            return default
        if params[0] < lo:
            raise ValidationError(f"{name} needs a parameter >= {lo}")
        return params[0]

    if name == "full_shift":
        return io.graph_to_json(full_shift(one(2)))
    if name == "cycle":
        return io.graph_to_json(cycle_graph(one(3)))
    if name == "complete":
        return io.graph_to_json(complete_graph(one(3)))
    if name == "fold":
        return io.hom_to_json(fold_hom(full_shift(one(2))))
    if name == "solenoid":
        return io.complex_to_json(solenoid_preset(one(2, lo=2)))
    if name == "odometer":
        diag = params or [2]
        if abs(prod(diag)) < 2:
            raise ValidationError("odometer needs |det| >= 2")
        return io.matrix_to_json(IntMatrix.diagonal(diag))
    if name == "random":
        return io.graph_to_json(random_graph(random.Random(resolve_seed(seed))))
    raise ValidationError(f"unknown example {name!r}")


# -- command bodies -----------------------------------------------------------


def _complex_from(job: JobSpec) -> PutnamComplex:
    if job.preset:
        return solenoid_preset(job.m)
    if "complex" in job.inputs:
        return io.complex_from_json(io.load_json(job.inputs["complex"]))
    return putnam_complex(io.hom_from_json(io.load_json(job.inputs["hom"])), job.n_max)


def _sheet_report(H) -> dict:
    sheet = spectral_sheet(H)
    rows = [{"q": q, "entries": [sheet.entry(p, q).display() for p in range(len(H))]} for q in range(sheet.rows)]
    return {"rows": rows, "rank_bound_K0": sheet.rank_bound_K0, "rank_bound_K1": sheet.rank_bound_K1}


def _ruelle_json(P: PutnamComplex) -> dict:
    R = ruelle_report(P)
    return {
        "C_homology": [io.group_report(g) for g in R.C_homology],
        "Cprime_homology": [io.group_report(g) for g in R.Cprime_homology],
        "segments": [{"p": s.p, "status": s.status, "sequence": s.describe(),
                      "value": None if s.value is None else io.group_report(s.value)} for s in R.les_segments],
        "determined": {str(p): str(v) for p, v in R.determined.items()},
        "extensions": [R.extension_statement(0), R.extension_statement(1)],
        "split_k_groups": [None if g is None else str(g) for g in (R.split_k_group(0), R.split_k_group(1))],
        "hyperhomology_crosscheck": [h.display() for h in R.hyperhomology],
    }


def execute(job: JobSpec) -> dict:
    job.validate()
    c = job.command
    out: dict = {"schema": io.SCHEMA, "command": c}
    if c == "snf":
        M = io.matrix_from_json(io.load_json(job.inputs["matrix"]))
        snf = smith_normal_form(M)
        free, tors = cokernel_invariants(M)
        out.update(factors=[str(f) for f in snf.factors], rank=snf.rank,
                   cokernel=io.group_report(FgAbelianGroup.from_invariants(free, tors)))
    elif c == "bf":
        G = io.graph_from_json(io.load_json(job.inputs["graph"]))
        bf, ker = bowen_franks(G)
        out.update(bowen_franks=io.group_report(bf), kernel=io.group_report(ker),
                   strongly_connected=G.is_strongly_connected())
    elif c == "dimgroup":
        G = io.graph_from_json(io.load_json(job.inputs["graph"]))
        out.update(limit=io.limit_report(limit_invariants(dimension_group(G))))
    elif c in ("putnam", "ruelle", "sheet"):
        P = _complex_from(job)
        out["complex"] = {"ranks": list(P.ranks), "provenance": P.provenance}
        H = stable_homology(P)
        if c == "putnam":
            out["stable_homology"] = [io.limit_report(h) for h in H]
            out["spectral_sheet"] = _sheet_report(H)
            out["ruelle"] = _ruelle_json(P)
        elif c == "sheet":
            out["spectral_sheet"] = _sheet_report(H)
        else:
            out["ruelle"] = _ruelle_json(P)
    elif c == "kunneth":
        if "hom" in job.inputs:
            p1 = io.hom_from_json(io.load_json(job.inputs["hom"]))
            p2 = io.hom_from_json(io.load_json(job.inputs["hom2"]))
            check = kunneth_crosscheck(p1, p2, job.n_max)
            out.update(predicted=[h.display() for h in check.predicted],
                       computed=[h.display() for h in check.computed],
                       per_degree=["PASS" if ok else "FAIL" for ok in check.per_degree],
                       passed=check.passed)
        else:
            H1 = stable_homology(solenoid_preset(job.m))
            H2 = stable_homology(solenoid_preset(job.m2))
            out.update(predicted=[io.limit_report(h) for h in kunneth_predict(H1, H2)],
                       tor_corrections=[h.display() for h in tor_corrections(H1, H2)])
    elif c == "odometer":
        B = io.matrix_from_json(io.load_json(job.inputs["matrix"]))
        out["homology"] = [io.limit_report(h) for h in odometer_homology(B)]
    elif c == "tower":
        B = io.matrix_from_json(io.load_json(job.inputs["matrix"]))
        T = odometer_level_tower(B, job.levels)
        out["levels"] = [{"level": L.level, "cosets": len(L.cosets.cosets),
                          "homology": [str(h) for h in L.homology]} for L in T.levels]
        out["step_maps"] = [[io.matrix_to_json(m) for m in row] for row in T.step_maps]
        out["matches_exterior_powers"] = T.matches_exterior_powers()
    elif c == "presets":
        doc = generate_example(job.name, job.params, job.seed)
        if job.out:
            path = Path(job.out)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(io.dumps(doc) + "\n")
            out["written"] = str(path)
        else:
            out["document"] = doc
    return out


def render_table(report: dict) -> str:
    lines = []

    def walk(prefix, value):
        if isinstance(value, dict) and "display" in value:
            lines.append(f"{prefix}: {value['display']}")
        elif isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}.{k}" if prefix else k, v)
        elif isinstance(value, list) and value and all(isinstance(v, (dict, list)) for v in value):
            for k, v in enumerate(value):
                walk(f"{prefix}[{k}]", v)
        else:
            lines.append(f"{prefix}: {value}")

    for key, value in report.items():
        if key in ("schema", "command"):
            continue
        walk(key, value)
    return "\n".join(lines)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="smalehom", description="Exact homology invariants of SFT factor maps.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--matrix")
    p.add_argument("--graph")
    p.add_argument("--hom")
    p.add_argument("--hom2")
    p.add_argument("--complex")
    p.add_argument("--preset")
    p.add_argument("--m", type=int)
    p.add_argument("--m2", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--levels", type=int, default=2)
    p.add_argument("--name")
    p.add_argument("--param", type=int, nargs="*", default=[])
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--seed", type=int)
    return p


def parse_job(argv: list[str] | None = None) -> JobSpec:
    a = build_parser().parse_args(argv)
    inputs = {k: getattr(a, k) for k in ("matrix", "graph", "hom", "hom2", "complex") if getattr(a, k)}
    return JobSpec(a.command, inputs, a.preset, a.m, a.m2, a.n_max, a.levels, a.name, a.param, a.out,
                   a.format, a.seed)


def run(job: JobSpec, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        report = execute(job)
    except ValidationError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    except InvariantViolation as exc:
        where = f" (degree {exc.degree})" if getattr(exc, "degree", None) is not None else ""
        print(f"invariant violation{where}: {exc}", file=stderr)
        return 2
    text = io.dumps(report) if job.fmt == "json" else render_table(report)
    print(text, file=stdout)
    return 0


def main(argv: list[str] | None = None) -> int:
    return run(parse_job(argv))


if __name__ == "__main__":
    raise SystemExit(main())
