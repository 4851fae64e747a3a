"""HTTP face of the package: one POST endpoint per entry point.

Every endpoint answers 200 with an envelope; the `status` field separates
successful computation from precondition rejections, verification failures,
and malformed inputs.  Only transport problems surface as HTTP errors.
"""

from __future__ import annotations

from fastapi import FastAPI

from ..errors import (
    DomainError,
    GenerationExhausted,
    InvariantViolation,
    RejectionError,
)
from ..io import (
    hypergraph_from_dict,
    hypergraph_to_dict,
    multigraph_from_dict,
    multigraph_to_dict,
    partition_to_dict,
    quasigraph_from_dict,
    quasigraph_to_dict,
    witness_to_dict,
)
from ..narrow_wide import finest_narrow, finest_wide, has_tight_complement
from ..oracles import (
    brute_force_hamilton,
    brute_force_tight_quasitrees,
    generate_instances,
)
from ..pipeline import (
    hamilton_cycle_in_line_graph,
    hamilton_path_in_line_graph,
    line_graph,
)
from ..quasigraph import QuasiClass, classify
from ..skeletal import find_tight_quasitree
from .schemas import (
    CheckRequest,
    Envelope,
    FindQuasitreeRequest,
    GenRequest,
    HamiltonPathRequest,
    HamiltonRequest,
    OracleRequest,
)


def _run(work) -> Envelope:
    try:
        return work()
    except RejectionError as exc:
        return Envelope(status="rejected", stage=exc.stage, reason=exc.reason)
    except GenerationExhausted as exc:
        return Envelope(status="rejected", stage="generation", reason=str(exc))
    except DomainError as exc:
        return Envelope(status="error", reason=str(exc))
    except InvariantViolation as exc:
        return Envelope(status="verification-failure", reason=str(exc))


def _quasigraph_payload(req: CheckRequest):
    host = hypergraph_from_dict(req.hypergraph.model_dump())
    obj: dict = {"rep": req.quasigraph.rep}
    if req.quasigraph.hypergraph is not None:
        obj["hypergraph"] = req.quasigraph.hypergraph.model_dump()
    return quasigraph_from_dict(obj, host=host)


def create_app() -> FastAPI:
    app = FastAPI(title="quasitree", version="0.1.0")

    @app.post("/check", response_model=Envelope)
    def check(req: CheckRequest) -> Envelope:
        def work():
            pi = _quasigraph_payload(req)
            verdict = classify(pi)
            tight, payload = has_tight_complement(pi)
            result = {
                "classification": verdict.value,
                "quasitree": verdict is QuasiClass.QUASITREE,
                "tight": tight,
                "witness": witness_to_dict(payload) if tight else None,
                "narrow_partition": None if tight else partition_to_dict(payload),
                "finest_narrow": partition_to_dict(finest_narrow(pi)),
                "finest_wide": partition_to_dict(finest_wide(pi)),
            }
            return Envelope(status="ok", result=result)

        return _run(work)

    @app.post("/find-quasitree", response_model=Envelope)
    def find_quasitree(req: FindQuasitreeRequest) -> Envelope:
        def work():
            host = hypergraph_from_dict(req.hypergraph.model_dump())
            sink = [] if req.trace else None
            sigma = find_tight_quasitree(
                host, trace=sink, max_iterations=req.max_iterations
            )
            tight, witness = has_tight_complement(sigma)
            result = {
                "quasigraph": quasigraph_to_dict(sigma),
                "tight": tight,
                "witness": witness_to_dict(witness),
            }
            return Envelope(status="ok", result=result, trace=sink)

        return _run(work)

    @app.post("/hamilton", response_model=Envelope)
    def hamilton(req: HamiltonRequest) -> Envelope:
        def work():
            g = multigraph_from_dict(req.multigraph.model_dump())
            if req.path is not None:
                seq, cert = hamilton_path_in_line_graph(g, req.path[0], req.path[1])
                label = "path"
            else:
                seq, cert = hamilton_cycle_in_line_graph(g)
                label = "cycle"
            result = {
                label: list(seq),
                "trail": list(cert.edges),
                "trail_kind": cert.kind,
                "dominating": cert.dominating,
            }
            return Envelope(status="ok", result=result)

        return _run(work)

    @app.post("/hamilton-path", response_model=Envelope)
    def hamilton_path(req: HamiltonPathRequest) -> Envelope:
        def work():
            g = multigraph_from_dict(req.multigraph.model_dump())
            seq, cert = hamilton_path_in_line_graph(g, req.e1, req.e2)
            result = {
                "path": list(seq),
                "trail": list(cert.edges),
                "trail_kind": cert.kind,
                "dominating": cert.dominating,
            }
            return Envelope(status="ok", result=result)

        return _run(work)

    @app.post("/gen", response_model=Envelope)
    def gen(req: GenRequest) -> Envelope:
        def work():
            stream = generate_instances(
                {
                    "kind": req.kind,
                    "n": req.n,
                    "constraints": req.constraints,
                    "seed": req.seed,
                    "max_edges": req.max_edges,
                    "attempts": req.attempts,
                }
            )
            serialize = (
                hypergraph_to_dict if req.kind == "hypergraph" else multigraph_to_dict
            )
            instances = [serialize(next(stream)) for _ in range(req.count)]
            return Envelope(
                status="ok", result={"kind": req.kind, "instances": instances}
            )

        return _run(work)

    @app.post("/oracle", response_model=Envelope)
    def oracle(req: OracleRequest) -> Envelope:
        def work():
            if req.kind == "tight-quasitrees":
                if req.hypergraph is None:
                    raise DomainError("oracle 'tight-quasitrees' needs a hypergraph")
                host = hypergraph_from_dict(req.hypergraph.model_dump())
                found = brute_force_tight_quasitrees(host, limit=req.limit)
                result = {
                    "count": len(found),
                    "quasitrees": [quasigraph_to_dict(q)["rep"] for q in found],
                    "truncated": req.limit is not None and len(found) == req.limit,
                }
                return Envelope(status="ok", result=result)
            if req.multigraph is None:
                raise DomainError("oracle 'hamilton' needs a multigraph")
            g = multigraph_from_dict(req.multigraph.model_dump())
            ends = tuple(req.ends) if req.ends else None
            if req.mode == "path" and ends is None:
                raise DomainError("oracle 'hamilton' in path mode needs ends")
            seq = brute_force_hamilton(line_graph(g), mode=req.mode, ends=ends)
            result = {
                "mode": req.mode,
                "found": seq is not None,
                "sequence": seq,
            }
            return Envelope(status="ok", result=result)

        return _run(work)

    return app
