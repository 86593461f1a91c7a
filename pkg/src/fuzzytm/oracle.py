"""Brute-force path enumeration, used to cross-check the engine.

Nothing here is shared with :mod:`fuzzytm.engine`: the tape model below is a
separate dict-based implementation, and degrees are aggregated straight from
the definitions with no pruning other than stopping at final states.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .machine import MachineSpec, StateKind, require_valid

PATH_LIMIT = 10_000_000


class OracleLimitError(RuntimeError):
    pass


@dataclass(frozen=True)
class PathRecord:
    ids: Tuple[str, ...]
    states: Tuple[str, ...]
    degrees: Tuple[float, ...]
    composed: float
    truncated: bool = False  # cut by the depth limit, not by halting


@dataclass(frozen=True)
class OracleDegrees:
    accept: float
    reject: float
    indeterminacy: Optional[float]  # None: no indeterminacy ID seen
    indeterminacy_by_id: Dict[str, float]


class _Tape:
    def __init__(self, cells: Dict[int, str], head: int, state: str, blank: str):
        self.cells = cells
        self.head = head
        self.state = state
        self.blank = blank

    def render(self, spec: MachineSpec) -> str:
        used = [i for i, a in self.cells.items() if a != self.blank]
        lo = min(used + [self.head])
        hi = max(used + [self.head - 1])
        left = [self.cells.get(i, self.blank) for i in range(lo, self.head)]
        right = [self.cells.get(i, self.blank) for i in range(self.head, hi + 1)]
        while left and left[0] == self.blank:
            left.pop(0)
        while right and right[-1] == self.blank:
            right.pop()
        return spec.format_id(left, self.state, right)

    def moves(self, spec: MachineSpec):
        symbol = self.cells.get(self.head, self.blank)
        for t in spec.transitions:
            if t.source != self.state or t.read != symbol:
                continue
            cells = dict(self.cells)
            cells[self.head] = t.write
            head = self.head + {"L": -1, "R": 1, "S": 0}[t.move.value]
            yield _Tape(cells, head, t.target, self.blank), t.degree


def enumerate_paths(spec: MachineSpec, word: Iterable[str], depth: int) -> List[PathRecord]:
    """All maximal tree paths of length at most ``depth``, depth first.

    A path stops at an accepting or rejecting state, at a dead end, or at the
    depth limit (``truncated``). Raises :class:`OracleLimitError` beyond
    ``PATH_LIMIT`` paths.
    """
    require_valid(spec)
    if depth < 0:
        raise ValueError("depth must be non-negative")
    word = list(word)
    spec.check_word(word)
    alg = spec.algebra
    start = _Tape(dict(enumerate(word)), 0, spec.start, spec.blank)
    out: List[PathRecord] = []

    def visit(tape, ids, states, degrees, composed):
        kids = [] if spec.is_final(tape.state) else list(tape.moves(spec))
        if not kids or len(degrees) == depth:
            if len(out) >= PATH_LIMIT:
                raise OracleLimitError(f"more than {PATH_LIMIT} paths")
            out.append(PathRecord(tuple(ids), tuple(states), tuple(degrees), composed,
                                  truncated=bool(kids)))
            return
        for child, r in kids:
            ids.append(child.render(spec))
            states.append(child.state)
            degrees.append(r)
            visit(child, ids, states, degrees, alg.tnorm(composed, r))
            ids.pop()
            states.pop()
            degrees.pop()

    visit(start, [start.render(spec)], [start.state], [], 1.0)
    return out


def oracle_degrees(paths: Iterable[PathRecord], spec: MachineSpec) -> OracleDegrees:
    alg = spec.algebra
    per_id = {StateKind.ACCEPT: {}, StateKind.REJECT: {}}
    indet: Dict[str, float] = {}
    state_of: Dict[str, str] = {}
    for p in paths:
        kind = spec.states[p.states[-1]]
        if kind in per_id:
            got = per_id[kind]
            got[p.ids[-1]] = alg.tconorm(got.get(p.ids[-1], 0.0), p.composed)
            state_of[p.ids[-1]] = p.states[-1]
        prefix = 1.0
        for i, q in enumerate(p.states):
            if i:
                prefix = alg.tnorm(prefix, p.degrees[i - 1])
            if spec.states[q] is StateKind.INDET:
                indet[p.ids[i]] = min(indet.get(p.ids[i], 1.0), prefix)

    def best(kind):
        groups: Dict[str, float] = {}
        for ident, d in per_id[kind].items():
            tag = spec.sides.get(state_of[ident], "")
            groups[tag] = max(groups.get(tag, 0.0), d)
        return alg.fold_tconorm(groups[t] for t in sorted(groups))

    return OracleDegrees(best(StateKind.ACCEPT), best(StateKind.REJECT),
                         min(indet.values()) if indet else None, indet)
