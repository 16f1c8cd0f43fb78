"""End-to-end pipelines that check the two reduction claims on concrete instances.

A pipeline builds the reduction graph, draws it along the instance layout,
certifies and triangulates it with the clause/variable protected set, then
compares the exact (power) domination number of the triangulation against
the SAT verdict. The threshold is n, the number of variables.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from planedom.embed import natural_embedding
from planedom.instance import (
    Clause,
    GenerationError,
    GenParams,
    Pm3SatInstance,
    encode,
    enumerate_family,
    generate,
    make_instance,
    solve_sat,
)
from planedom.planegraph import PlaneGraph, graph_to_json
from planedom.reductions import Kind, Reduction, build, necessity_sets
from planedom.solvers import (
    find_two_step_witness,
    is_dominating,
    min_dominating,
    min_power_dominating,
    two_step_saturation,
)
from planedom.triangulate import certify, triangulate_with_log, verify_triangulation


def u3() -> Pm3SatInstance:
    """All three pairs of three variables, once positive and once negative."""
    pairs = [(0, 1), (1, 2), (0, 2)]
    clauses = [Clause(i, "pos", p) for i, p in enumerate(pairs)]
    clauses += [Clause(3 + i, "neg", p) for i, p in enumerate(pairs)]
    return make_instance(3, clauses)


def u3_minus(polarity: str = "neg", pair: tuple[int, int] = (1, 2)) -> Pm3SatInstance:
    inst = u3()
    cid = next(c.id for c in inst.clauses if c.polarity == polarity and c.vars == pair)
    return inst.without_clause(cid)


class PipelineError(RuntimeError):
    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"{stage}: {type(cause).__name__}: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class PipelineResult:
    kind: Kind
    instance: str
    n: int
    vertices: int
    edges: int
    protected: int
    edges_after: int
    certified: bool
    triangulated: bool
    fallback: bool
    satisfiable: bool
    value: Optional[int]          # exact optimum if it is at most n + 1
    lower_bound: int
    witness: tuple[str, ...]
    assignment_witness: bool      # the set read off a satisfying assignment works
    two_step: Optional[bool]      # pdom only, satisfiable only
    timings: dict[str, float] = field(default_factory=dict, compare=False)
    graphs: dict[str, PlaneGraph] = field(default_factory=dict, compare=False, repr=False)

    @property
    def at_most_n(self) -> bool:
        return self.value is not None and self.value <= self.n

    @property
    def claim_holds(self) -> bool:
        return self.at_most_n == self.satisfiable

    @property
    def lower_bound_holds(self) -> bool:
        return self.lower_bound >= self.n

    @property
    def ok(self) -> bool:
        return (
            self.certified
            and self.triangulated
            and self.claim_holds
            and self.lower_bound_holds
            and (not self.satisfiable or self.assignment_witness)
            and self.two_step is not False
        )

    def record(self) -> dict:
        """Deterministic fields only (no timings, no graphs)."""
        return {
            "kind": self.kind,
            "instance": self.instance,
            "V": self.vertices,
            "E": self.edges,
            "Z": self.protected,
            "E_after": self.edges_after,
            "certified": self.certified,
            "triangulated": self.triangulated,
            "fallback": self.fallback,
            "sat": self.satisfiable,
            "value": self.value,
            "lower_bound": self.lower_bound,
            "witness": list(self.witness),
            "assignment_witness": self.assignment_witness,
            "two_step": self.two_step,
            "claim": self.claim_holds,
            "ok": self.ok,
        }

    def lines(self) -> list[str]:
        value = str(self.value) if self.value is not None else f">={self.lower_bound}"
        out = [
            f"kind={self.kind}",
            f"instance={self.instance}",
            f"vertices={self.vertices}",
            f"edges={self.edges}",
            f"protected={self.protected}",
            f"edges_after={self.edges_after}",
            f"certified={str(self.certified).lower()}",
            f"triangulated={str(self.triangulated).lower()}",
            f"fallback={str(self.fallback).lower()}",
            f"sat={str(self.satisfiable).lower()}",
            f"{'gamma' if self.kind == 'dom' else 'gamma_p'}={value}",
            f"witness={','.join(self.witness)}",
        ]
        if self.two_step is not None:
            out.append(f"two_step={str(self.two_step).lower()}")
        out += [
            f"lower_bound_holds={str(self.lower_bound_holds).lower()}",
            f"claim={'holds' if self.claim_holds else 'FAILS'}",
        ]
        return out


def _stage(name: str, timings: dict[str, float], fn, *args, **kw):
    t0 = time.perf_counter()
    try:
        return fn(*args, **kw)
    except Exception as exc:  # noqa: BLE001 - rewrapped with the stage name
        raise PipelineError(name, exc) from exc
    finally:
        timings[name] = time.perf_counter() - t0


def _assignment_set(r: Reduction, a) -> list[int]:
    return [r.literal(i, bool(val)) for i, val in enumerate(a)]


def run_pipeline(kind: Kind, inst: Pm3SatInstance, confirm_strict: bool = True) -> PipelineResult:
    """Run one reduction end to end.

    The solver is called with budget n. When nothing of size at most n
    exists and ``confirm_strict`` is set, it is called again with budget
    n + 1 to pin the exact value where cheap.
    """
    timings: dict[str, float] = {}
    r = _stage("reduce", timings, build, kind, inst)
    E = _stage("embed", timings, natural_embedding, inst, r)
    rep = _stage("certify", timings, certify, E, r.protected)
    if not rep.passed:
        raise PipelineError("certify", ValueError(rep.summary()))
    T, log = _stage("triangulate", timings, triangulate_with_log, E, r.protected)
    vrep = _stage("verify", timings, verify_triangulation, E, T, r.protected)
    a = _stage("sat", timings, solve_sat, inst)

    n = inst.n
    if kind == "dom":
        def solve(b):
            return min_dominating(T, budget=b)
    else:
        nec = _stage("necessity", timings, necessity_sets, T, r.blocked)

        def solve(b):
            return min_power_dominating(T, budget=b, necessity=nec)

    res = _stage("solve", timings, solve, n)
    if res.exceeded and confirm_strict:
        res = _stage("solve_strict", timings, solve, n + 1)

    assignment_ok = False
    two_step = None
    if a is not None:
        S = _assignment_set(r, a)
        if kind == "dom":
            assignment_ok = is_dominating(T, S)
        else:
            assignment_ok = two_step_saturation(T, S)
            two_step = res.witness is not None and (
                two_step_saturation(T, res.witness)
                or _stage("two_step", timings, find_two_step_witness, T, res.size, nec) is not None
            )

    return PipelineResult(
        kind=kind,
        instance=inst.describe(),
        n=n,
        vertices=r.graph.n,
        edges=r.graph.num_edges,
        protected=len(r.protected),
        edges_after=T.num_edges,
        certified=rep.passed,
        triangulated=vrep.passed,
        fallback=log.used_fallback,
        satisfiable=a is not None,
        value=res.size,
        lower_bound=res.lower_bound,
        witness=tuple(T.labels[v] for v in sorted(res.witness or ())),
        assignment_witness=assignment_ok,
        two_step=two_step,
        timings=timings,
        graphs={"reduction": r.graph, "embedded": E, "triangulated": T},
    )


def run_dom_pipeline(inst: Pm3SatInstance, confirm_strict: bool = True) -> PipelineResult:
    return run_pipeline("dom", inst, confirm_strict)


def run_pdom_pipeline(inst: Pm3SatInstance, confirm_strict: bool = True) -> PipelineResult:
    return run_pipeline("pdom", inst, confirm_strict)


# -- batches -------------------------------------------------------------------


@dataclass(frozen=True)
class BatchParams:
    max_n: int = 4
    max_m: int = 4
    min_n: int = 1
    max_clause_size: int = 3
    polarity_mix: float = 0.5
    pdom_max_n: Optional[int] = None  # skip power domination above this n
    confirm_strict: bool = False


@dataclass
class BatchSummary:
    count: int = 0
    sat: int = 0
    unsat: int = 0
    runs: dict[str, int] = field(default_factory=dict)
    claims_held: dict[str, int] = field(default_factory=dict)
    fallback: int = 0
    failures: list[str] = field(default_factory=list)
    records: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def digest(self) -> str:
        blob = json.dumps(self.records, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()

    def lines(self) -> list[str]:
        out = [f"count={self.count}", f"sat={self.sat}", f"unsat={self.unsat}"]
        for k in sorted(self.runs):
            out.append(f"{k}_runs={self.runs[k]}")
            out.append(f"{k}_claims_held={self.claims_held.get(k, 0)}")
        out += [f"fallback={self.fallback}", f"failures={len(self.failures)}", f"digest={self.digest()}"]
        out += [f"failure={f}" for f in self.failures]
        return out

    def text(self) -> str:
        return "\n".join(self.lines()) + "\n"


def _dump(replay_dir: Path, tag: str, inst: Pm3SatInstance, result: Optional[PipelineResult]) -> None:
    replay_dir.mkdir(parents=True, exist_ok=True)
    (replay_dir / f"{tag}.instance.json").write_text(encode(inst))
    if result is not None:
        for name, g in result.graphs.items():
            (replay_dir / f"{tag}.{name}.json").write_text(graph_to_json(g))


def verify_instances(
    instances: Iterable[Pm3SatInstance],
    params: BatchParams = BatchParams(),
    replay_dir: Optional[Path] = None,
) -> BatchSummary:
    """Run both pipelines on every instance and aggregate the verdicts."""
    summary = BatchSummary()
    for idx, inst in enumerate(instances):
        summary.count += 1
        kinds: list[Kind] = ["dom"]
        if params.pdom_max_n is None or inst.n <= params.pdom_max_n:
            kinds.append("pdom")
        for kind in kinds:
            summary.runs[kind] = summary.runs.get(kind, 0) + 1
            tag = f"{idx:05d}-{kind}"
            try:
                res = run_pipeline(kind, inst, params.confirm_strict)
            except PipelineError as exc:
                summary.failures.append(f"{tag} stage={exc.stage} {inst.describe()}")
                summary.records.append({"kind": kind, "instance": inst.describe(), "error": exc.stage})
                if replay_dir is not None:
                    _dump(Path(replay_dir), tag, inst, None)
                continue
            summary.records.append(res.record())
            summary.fallback += res.fallback
            if res.claim_holds:
                summary.claims_held[kind] = summary.claims_held.get(kind, 0) + 1
            if kind == "dom":
                summary.sat += res.satisfiable
                summary.unsat += not res.satisfiable
            if not res.ok:
                summary.failures.append(f"{tag} {inst.describe()}")
                if replay_dir is not None:
                    _dump(Path(replay_dir), tag, inst, res)
    return summary


def random_instances(params: BatchParams, seed: int, count: int, attempts: int = 100) -> list[Pm3SatInstance]:
    """``count`` generated instances; (n, m) and sub-seeds are drawn from ``seed``."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        for _ in range(attempts):
            n = rng.randint(params.min_n, params.max_n)
            m = rng.randint(0, params.max_m)
            gp = GenParams(n, m, params.max_clause_size, params.polarity_mix, seed=rng.randrange(2**32))
            try:
                out.append(generate(gp))
                break
            except GenerationError:
                continue
        else:
            raise GenerationError(f"no instance generated in {attempts} draws")
    return out


def batch_verify(
    params: BatchParams, seed: int, count: int, replay_dir: Optional[Path] = None
) -> BatchSummary:
    return verify_instances(random_instances(params, seed, count), params, replay_dir)


def family_verify(max_n: int = 3, max_m: int = 4, params: BatchParams = BatchParams()) -> BatchSummary:
    """Both pipelines over every small realizable normalized formula."""
    return verify_instances(enumerate_family(max_n, max_m), params)
