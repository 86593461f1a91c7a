"""Deterministic simulation of a fuzzy Turing machine on one input.

``run`` walks the configuration tree breadth first, level by level:

* accepting and rejecting configurations are leaves;
* a child that repeats an ancestor of the same path at the same degree is
  dropped (silent round trips would otherwise repeat forever);
* branches that can no longer reach any accepting or rejecting
  configuration are dropped, using the explored configuration graph;
* after an accepting (rejecting) configuration is met at level ``n`` with
  degree ``d``, the accept (reject) side stays open for ``t`` more levels,
  where ``t`` is the largest number of maximal-degree steps any other live
  configuration of level ``n`` needs to fall to ``d``.

The degree of an accepting ID is the t-conorm of the degrees of all surviving
paths that reach it; the accepting degree of the input is the maximum over
accepting IDs. The indeterminacy degree is the infimum of walk degrees to
indeterminacy IDs, computed on the configuration graph.
"""

from __future__ import annotations

import enum
import os
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import (Dict, FrozenSet, Iterable, List, Mapping, NamedTuple,
                    Optional, Set, Tuple)

import networkx as nx

from .degrees import DegreeAlgebra, TNorm
from .machine import (FINAL_KINDS, MachineSpec, Move, StateKind,
                      require_valid)


class InvariantError(RuntimeError):
    """An internal consistency check failed during a run."""


class Status(str, enum.Enum):
    COMPLETE = "complete"
    BOUND_APPLIED = "bound-applied"
    BUDGET_EXHAUSTED = "budget-exhausted"


class Configuration(NamedTuple):
    """Tape left of the head, current state, and tape from the head rightwards.

    Leading blanks of ``left`` and trailing blanks of ``right`` are trimmed,
    so equal tuples mean equal instantaneous descriptions.
    """

    left: Tuple[str, ...]
    state: str
    right: Tuple[str, ...]


def _trimmed(left, state, right, blank) -> Configuration:
    i = 0
    while i < len(left) and left[i] == blank:
        i += 1
    j = len(right)
    while j > 0 and right[j - 1] == blank:
        j -= 1
    return Configuration(tuple(left[i:]), state, tuple(right[:j]))


def initial_configuration(spec: MachineSpec, word: Iterable[str]) -> Configuration:
    return _trimmed((), spec.start, tuple(word), spec.blank)


def config_id(spec: MachineSpec, c: Configuration) -> str:
    return spec.format_id(c.left, c.state, c.right)


def successors(spec: MachineSpec, c: Configuration) -> List[Tuple[Configuration, float]]:
    """One ``(configuration, degree)`` pair per matching transition, in
    transition order. An empty list means the configuration is a dead end."""
    head = c.right[0] if c.right else spec.blank
    rest = c.right[1:]
    out = []
    for t in spec.table.get((c.state, head), ()):
        if t.move is Move.R:
            left, right = c.left + (t.write,), rest
        elif t.move is Move.L:
            if c.left:
                left, right = c.left[:-1], (c.left[-1], t.write) + rest
            else:
                left, right = (), (spec.blank, t.write) + rest
        else:
            left, right = c.left, (t.write,) + rest
        out.append((_trimmed(left, t.target, right, spec.blank), t.degree))
    return out


@dataclass(frozen=True)
class SearchBudget:
    max_levels: int = 10_000
    max_configurations: int = 1_000_000

    def __post_init__(self):
        if self.max_levels < 1 or self.max_configurations < 1:
            raise ValueError("search budget limits must be at least 1")

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None, **overrides) -> "SearchBudget":
        """Defaults, overridden by ``FTM_MAX_LEVELS`` / ``FTM_MAX_CONFIGS``,
        overridden by non-None keyword arguments."""
        environ = os.environ if environ is None else environ
        kw = {}
        if environ.get("FTM_MAX_LEVELS"):
            kw["max_levels"] = int(environ["FTM_MAX_LEVELS"])
        if environ.get("FTM_MAX_CONFIGS"):
            kw["max_configurations"] = int(environ["FTM_MAX_CONFIGS"])
        kw.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kw)


@dataclass(frozen=True)
class BoundEvent:
    side: str
    level: int
    bound: Optional[int]  # None: bound unavailable
    k: float
    degree: float


@dataclass(frozen=True)
class RunReport:
    accept_degree: float
    reject_degree: float
    indeterminacy_degree: float
    status: Status
    levels_explored: int
    configurations_expanded: int
    bound_events: Tuple[BoundEvent, ...] = ()
    machine_kind: str = ""
    tnorm: str = ""
    input: str = ""


# -- configuration graph ---------------------------------------------------

@dataclass
class ConfigGraph:
    """Configurations reachable from ``root``, explored breadth first.

    Final configurations are never expanded. ``boundary`` holds non-final
    configurations that were discovered but not expanded because the budget
    ran out; the graph is complete when it is empty.
    """

    root: Configuration
    edges: Dict[Configuration, List[Tuple[Configuration, float]]]
    nodes: Set[Configuration]
    boundary: Set[Configuration]

    @property
    def complete(self) -> bool:
        return not self.boundary

    def coreachable(self, targets: Iterable[Configuration]) -> Set[Configuration]:
        """Nodes with a path to some target. Boundary nodes count as targets
        since their futures are unknown."""
        rev = defaultdict(list)
        for u, succ in self.edges.items():
            for v, _ in succ:
                rev[v].append(u)
        seen = set(targets) | self.boundary
        todo = deque(seen)
        while todo:
            v = todo.popleft()
            for u in rev.get(v, ()):
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        return seen

    @cached_property
    def reducing_nodes(self) -> FrozenSet[Configuration]:
        """Nodes lying in a strongly connected component that contains an
        edge of degree < 1."""
        g = nx.DiGraph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from((u, v) for u, succ in self.edges.items() for v, _ in succ)
        comp = {}
        for i, scc in enumerate(nx.strongly_connected_components(g)):
            for v in scc:
                comp[v] = i
        out = set()
        for u, succ in self.edges.items():
            for v, r in succ:
                if r < 1.0 and comp[u] == comp[v]:
                    out.update((u, v))
        return frozenset(out)

    def descendants(self, sources: Iterable[Configuration]) -> Set[Configuration]:
        seen = set(sources)
        todo = deque(seen)
        while todo:
            u = todo.popleft()
            for v, _ in self.edges.get(u, ()):
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        return seen


def explore_graph(spec: MachineSpec, root: Configuration,
                  budget: SearchBudget) -> ConfigGraph:
    edges: Dict[Configuration, List[Tuple[Configuration, float]]] = {}
    nodes = {root}
    depth = {root: 0}
    todo = deque([root])
    boundary = set()
    while todo:
        u = todo.popleft()
        if spec.is_final(u.state):
            continue
        if len(edges) >= budget.max_configurations or depth[u] >= budget.max_levels:
            boundary.add(u)
            continue
        succ = successors(spec, u)
        edges[u] = succ
        for v, _ in succ:
            if v not in nodes:
                nodes.add(v)
                depth[v] = depth[u] + 1
                todo.append(v)
    return ConfigGraph(root, edges, nodes, boundary)


def walk_infima(spec: MachineSpec, graph: ConfigGraph) -> Dict[Configuration, float]:
    """Infimum over walks from the root of the composed walk degree, per node.

    Label relaxation: a label only ever decreases to the t-norm of a
    predecessor's label and the edge degree. Under the product and
    Lukasiewicz t-norms a cycle containing an edge below 1 can be repeated
    to drive the degree to 0, so every node reachable from such a cycle is
    labelled 0 up front; what remains has no improving cycle and the
    worklist empties. Under the Goedel t-norm repetition never lowers a
    degree and plain relaxation is exact.
    """
    alg = spec.algebra
    zero: Set[Configuration] = set()
    if alg.kind is not TNorm.GOEDEL:
        zero = graph.descendants(graph.reducing_nodes)
    labels = {graph.root: 0.0 if graph.root in zero else 1.0}
    todo = deque([graph.root])
    queued = {graph.root}
    while todo:
        u = todo.popleft()
        queued.discard(u)
        lu = labels[u]
        for v, r in graph.edges.get(u, ()):
            cand = 0.0 if v in zero else alg.tnorm(lu, r)
            if v not in labels or cand < labels[v]:
                labels[v] = cand
                if v not in queued:
                    queued.add(v)
                    todo.append(v)
    return labels


def _indeterminacy_from_graph(spec: MachineSpec, graph: ConfigGraph) -> float:
    indet = set(spec.states_of(StateKind.INDET))
    if not indet:
        return 0.0
    labels = walk_infima(spec, graph)
    return min((d for c, d in labels.items() if c.state in indet), default=0.0)


def indeterminacy_degree(spec: MachineSpec, word: Iterable[str],
                         budget: Optional[SearchBudget] = None) -> float:
    require_valid(spec)
    word = tuple(word)
    spec.check_word(word)
    budget = budget or SearchBudget()
    graph = explore_graph(spec, initial_configuration(spec, word), budget)
    return _indeterminacy_from_graph(spec, graph)


# -- level bound -----------------------------------------------------------

def level_bound(alg: DegreeAlgebra, d: float, other_level_degrees: Iterable[float],
                k: float, cap: int = 10_000) -> Optional[int]:
    """Levels still worth exploring after a final configuration of degree
    ``d`` is met: the largest number of ``k``-steps any other degree on the
    level needs to drop to ``d``. ``None`` when some degree never gets there.
    """
    t = 0
    for other in other_level_degrees:
        i = alg.min_power_steps(other, k, d, cap)
        if i is None:
            return None
        t = max(t, i)
    return t


# -- the run ---------------------------------------------------------------

class _Side:
    def __init__(self, name: str, reach: Set[Configuration], graph: ConfigGraph):
        self.name = name
        self.reach = reach
        self.nodes = graph.nodes
        self.open = graph.root in reach
        self.deadline: Optional[int] = None
        self.degrees: Dict[Configuration, float] = {}

    def reachable(self, c: Configuration) -> bool:
        return c in self.reach or c not in self.nodes


def _combine(spec: MachineSpec, degrees: Dict[Configuration, float]) -> float:
    groups: Dict[str, float] = {}
    for c, d in degrees.items():
        tag = spec.sides.get(c.state, "")
        groups[tag] = max(groups.get(tag, 0.0), d)
    return spec.algebra.fold_tconorm(groups[tag] for tag in sorted(groups))


def run(spec: MachineSpec, word: Iterable[str], budget: Optional[SearchBudget] = None,
        *, bound: str = "auto", prune_cycles: bool = True) -> RunReport:
    """Compute accepting, rejecting and indeterminacy degrees of ``word``.

    ``bound`` selects when the level bound is used: ``"always"``, ``"never"``
    (search until the tree or the budget runs out), or ``"auto"``, which uses
    it only when the pruned configuration tree is infinite.
    """
    if bound not in ("auto", "always", "never"):
        raise ValueError(f"unknown bound policy {bound!r}")
    require_valid(spec)
    word = tuple(word)
    spec.check_word(word)
    budget = budget or SearchBudget()
    alg = spec.algebra
    root = initial_configuration(spec, word)

    graph = explore_graph(spec, root, budget)
    e_indet = _indeterminacy_from_graph(spec, graph)
    has_indet = bool(spec.states_of(StateKind.INDET))

    sides = {}
    for kind in FINAL_KINDS:
        finals = {c for c in graph.nodes if spec.states.get(c.state) is kind}
        reach = graph.coreachable(finals) if spec.states_of(kind) else set()
        sides[kind] = _Side(kind.value, reach, graph)

    if bound == "auto":
        use_bound = not graph.complete
        if not use_bound and alg.kind is not TNorm.GOEDEL:
            live = sides[StateKind.ACCEPT].reach | sides[StateKind.REJECT].reach
            use_bound = bool(graph.reducing_nodes & live)
    else:
        use_bound = bound == "always"

    k = spec.max_step_degree
    events: List[BoundEvent] = []
    frontier = [(root, 1.0, frozenset((root,)))]
    level = expanded = 0
    truncated = exhausted = False

    while True:
        hits = {kind: [] for kind in FINAL_KINDS}
        live = []
        for node in frontier:
            cfg, deg, _ = node
            kind = spec.states.get(cfg.state)
            if kind in FINAL_KINDS:
                side = sides[kind]
                if side.open:
                    side.degrees[cfg] = alg.tconorm(side.degrees.get(cfg, 0.0), deg)
                    hits[kind].append(deg)
            elif any(s.open and s.reachable(cfg) for s in sides.values()):
                live.append(node)

        for kind, side in sides.items():
            if not side.open:
                continue
            side_live = [deg for cfg, deg, _ in live if side.reachable(cfg)]
            if use_bound and hits[kind]:
                d = max(hits[kind])
                t = level_bound(alg, d, side_live, k, cap=budget.max_levels)
                events.append(BoundEvent(side.name, level, t, k, d))
                side.deadline = None if t is None else level + t
            if not side_live:
                side.open = False
            elif side.deadline is not None and level >= side.deadline:
                side.open = False
                truncated = True

        live = [n for n in live if any(s.open and s.reachable(n[0]) for s in sides.values())]
        if not live:
            break
        if level >= budget.max_levels:
            exhausted = True
            break

        nxt = []
        for cfg, deg, path_run in live:
            if expanded >= budget.max_configurations:
                exhausted = True
                break
            expanded += 1
            for child, r in successors(spec, cfg):
                cdeg = alg.tnorm(deg, r)
                if cdeg > deg:
                    raise InvariantError(f"path degree rose from {deg!r} to {cdeg!r}")
                if cdeg == deg:
                    if prune_cycles and child in path_run:
                        continue
                    child_run = path_run | {child}
                else:
                    child_run = frozenset((child,))
                nxt.append((child, cdeg, child_run))
        if exhausted:
            break
        frontier = nxt
        level += 1

    if exhausted or (has_indet and not graph.complete):
        status = Status.BUDGET_EXHAUSTED
    elif truncated:
        status = Status.BOUND_APPLIED
    else:
        status = Status.COMPLETE
    return RunReport(
        accept_degree=_combine(spec, sides[StateKind.ACCEPT].degrees),
        reject_degree=_combine(spec, sides[StateKind.REJECT].degrees),
        indeterminacy_degree=e_indet,
        status=status,
        levels_explored=level,
        configurations_expanded=expanded,
        bound_events=tuple(events),
        machine_kind=spec.kind.value,
        tnorm=alg.kind.value,
        input=_render_word(spec, word),
    )


def _render_word(spec: MachineSpec, word: Tuple[str, ...]) -> str:
    return ("" if spec.compact_symbols else " ").join(word)
