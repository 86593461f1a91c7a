"""Machine-to-machine transforms: loop catching, lifts of r.e. and co-r.e.
recognizers, role swap and t-conorm union."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Set

from .degrees import check_degree
from .machine import (FINAL_KINDS, MachineKind, MachineSpec, Move, StateKind,
                      Transition, is_classical, require_valid)

HUB_MODES = ("per-state", "shared")


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class LiftParams:
    """Parameters shared by the lifts.

    ``hub`` chooses how indeterminacy states are wired. ``"shared"`` adds a
    single state linked both ways to every non-final state, which lets a
    path leave from one state and come back in another. ``"per-state"`` adds
    one indeterminacy state per non-final state, linked only to it, so a
    visit to the hub never changes the simulated computation.
    """

    uniform_degree: float
    hub_name: str = "qI"
    hub: str = "per-state"

    def __post_init__(self):
        try:
            d = check_degree(self.uniform_degree, "uniform degree")
        except ValueError as exc:
            raise ConstructionError(str(exc)) from None
        if not 0.0 < d < 1.0:
            raise ConstructionError(f"uniform degree must lie in (0, 1), got {d!r}")
        if self.hub not in HUB_MODES:
            raise ConstructionError(f"hub must be one of {HUB_MODES}, got {self.hub!r}")
        object.__setattr__(self, "uniform_degree", d)


def fresh_name(base: str, taken: Iterable[str]) -> str:
    """``base`` if unused, else the first free ``base_1``, ``base_2``, ..."""
    taken = set(taken)
    if base not in taken:
        return base
    i = 1
    while f"{base}_{i}" in taken:
        i += 1
    return f"{base}_{i}"


def _require_classical(m: MachineSpec, accept_only: bool = False) -> None:
    require_valid(m)
    problems = []
    if not is_classical(m):
        problems.append("machine is not classical (needs every degree 1 and no "
                        "indeterminacy states)")
    if accept_only and m.states_of(StateKind.REJECT):
        problems.append("machine must have accepting states only as final states")
    if problems:
        raise ConstructionError("; ".join(problems))


def _wire_hub(states: Dict[str, StateKind], gamma: Iterable[str], hub_name: str,
              hub: str) -> List[Transition]:
    """Add indeterminacy states to ``states`` in place and return the silent
    degree-1 transitions joining them to every non-final state."""
    gamma = sorted(gamma)
    wired = sorted(q for q, k in states.items() if k is StateKind.PLAIN)
    taken: Set[str] = set(states)
    out = []
    if hub == "shared":
        h = fresh_name(hub_name, taken)
        states[h] = StateKind.INDET
        pairs = [(q, h) for q in wired]
    else:
        pairs = []
        for q in wired:
            h = fresh_name(f"{hub_name}.{q}", taken)
            taken.add(h)
            states[h] = StateKind.INDET
            pairs.append((q, h))
    for q, h in pairs:
        for a in gamma:
            out.append(Transition(q, a, h, a, Move.S, 1.0))
            out.append(Transition(h, a, q, a, Move.S, 1.0))
    return out


def lift_loop_catcher(m: MachineSpec, p: LiftParams) -> MachineSpec:
    """EFTM that keeps ``m``'s states and start, gives every transition the
    degree ``p.uniform_degree`` and wires indeterminacy states silently to
    every non-final state. A cyclic loop of ``m`` then drives the
    indeterminacy degree to 0."""
    _require_classical(m)
    states = dict(m.states)
    trans = [t._replace(degree=p.uniform_degree) for t in m.transitions]
    trans += _wire_hub(states, m.tape_alphabet, p.hub_name, p.hub)
    return m.replace(kind=MachineKind.EFTM, states=states, transitions=trans)


def _lift_recognizer(m: MachineSpec, degree: float, hub_name: str, hub: str,
                     final_kind: StateKind, zero_kind: StateKind,
                     zero_base: str) -> MachineSpec:
    p = LiftParams(degree, hub_name, hub)
    _require_classical(m, accept_only=True)
    states = {q: (final_kind if k is StateKind.ACCEPT else k) for q, k in m.states.items()}
    start = fresh_name("qs", states)
    states[start] = StateKind.PLAIN
    zero = fresh_name(zero_base, states)
    states[zero] = zero_kind
    gamma = sorted(m.tape_alphabet)
    trans = [t._replace(degree=p.uniform_degree) for t in m.transitions]
    for a in gamma:
        trans.append(Transition(start, a, m.start, a, Move.S, p.uniform_degree))
        trans.append(Transition(start, a, zero, a, Move.S, 0.0))
    trans += _wire_hub(states, gamma, p.hub_name, p.hub)
    sides = {q: tag for q, tag in m.sides.items() if q in states}
    return m.replace(kind=MachineKind.EFTM, states=states, start=start,
                     transitions=trans, sides=sides)


def lift_re(m: MachineSpec, t: float, *, hub_name: str = "qI",
            hub: str = "per-state") -> MachineSpec:
    """EFTM accepting every word of ``m``'s language with a degree ``b > 0``,
    rejecting it with degree 0 and indeterminating it with a degree above
    ``b``.

    ``m``'s start becomes an ordinary state entered from a fresh start by a
    silent step of degree ``t``; the fresh start also moves with degree 0 to
    a fresh rejecting state.
    """
    return _lift_recognizer(m, t, hub_name, hub, StateKind.ACCEPT,
                            StateKind.REJECT, "q_rej")


def lift_core(m: MachineSpec, s: float, *, hub_name: str = "qI",
              hub: str = "per-state") -> MachineSpec:
    """Mirror of :func:`lift_re` for a recognizer of a complement: ``m``'s
    accepting states become rejecting and the degree-0 step from the fresh
    start goes to a fresh accepting state."""
    return _lift_recognizer(m, s, hub_name, hub, StateKind.REJECT,
                            StateKind.ACCEPT, "q_acc")


def swap_roles(e: MachineSpec) -> MachineSpec:
    require_valid(e)
    if e.kind is MachineKind.FTM:
        raise ConstructionError("swap needs a gftm or eftm (an ftm has no reject states)")
    flip = {StateKind.ACCEPT: StateKind.REJECT, StateKind.REJECT: StateKind.ACCEPT}
    return e.replace(states={q: flip.get(k, k) for q, k in e.states.items()})


def union_conorm(e1: MachineSpec, e2: MachineSpec) -> MachineSpec:
    """GFTM whose accepting degree on every input is the t-conorm of the
    accepting degrees of ``e1`` and ``e2``.

    States are renamed ``1.<q>`` and ``2.<q>``; a fresh start branches
    silently at degree 1 into both starts. Final states are tagged with the
    side they came from, so the engine combines the two sides' maxima with
    the t-conorm.
    """
    require_valid(e1)
    require_valid(e2)
    problems = []
    if e1.algebra != e2.algebra:
        problems.append(f"t-norm mismatch: {e1.algebra} vs {e2.algebra}")
    if e1.input_alphabet != e2.input_alphabet:
        problems.append("input alphabets differ")
    if e1.blank != e2.blank:
        problems.append(f"blank symbols differ: {e1.blank!r} vs {e2.blank!r}")
    for e in (e1, e2):
        if e.kind is MachineKind.EFTM:
            problems.append("union needs ftm/gftm operands, got an eftm")
            break
    if problems:
        raise ConstructionError("; ".join(problems))

    states: Dict[str, StateKind] = {}
    sides: Dict[str, str] = {}
    trans: List[Transition] = []
    for tag, e in (("1", e1), ("2", e2)):
        name = {q: f"{tag}.{q}" for q in e.states}
        for q, k in e.states.items():
            states[name[q]] = k
            if k in FINAL_KINDS:
                inner = e.sides.get(q)
                sides[name[q]] = f"{tag}.{inner}" if inner else tag
        trans += [t._replace(source=name[t.source], target=name[t.target])
                  for t in e.transitions]
    start = fresh_name("qs", states)
    states[start] = StateKind.PLAIN
    gamma = e1.tape_alphabet | e2.tape_alphabet
    for a in sorted(gamma):
        trans.append(Transition(start, a, f"1.{e1.start}", a, Move.S, 1.0))
        trans.append(Transition(start, a, f"2.{e2.start}", a, Move.S, 1.0))
    return MachineSpec(MachineKind.GFTM, e1.algebra, states, e1.input_alphabet,
                       gamma, e1.blank, start, tuple(trans), sides)
