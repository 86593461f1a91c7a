"""Text and JSON rendering of run reports."""

from __future__ import annotations

import json
from typing import Any, Dict

from .engine import RunReport


def _num(x: float) -> float:
    return float(format(x, ".12g"))


def report_dict(r: RunReport) -> Dict[str, Any]:
    return {
        "accept_degree": _num(r.accept_degree),
        "reject_degree": _num(r.reject_degree),
        "indeterminacy_degree": _num(r.indeterminacy_degree),
        "status": r.status.value,
        "levels_explored": r.levels_explored,
        "configurations_expanded": r.configurations_expanded,
        "bound_events": [
            {"side": ev.side, "level": ev.level,
             "bound": "unavailable" if ev.bound is None else ev.bound,
             "k": _num(ev.k), "degree": _num(ev.degree)}
            for ev in r.bound_events
        ],
        "machine_kind": r.machine_kind,
        "tnorm": r.tnorm,
        "input": r.input,
    }


def report_emit(r: RunReport, format: str = "text") -> str:
    if format == "json":
        return json.dumps(report_dict(r))
    if format != "text":
        raise ValueError(f"unknown report format {format!r}")
    return (f"e={r.accept_degree:.12g} e'={r.reject_degree:.12g} "
            f"e''={r.indeterminacy_degree:.12g} [{r.status.value}]")
