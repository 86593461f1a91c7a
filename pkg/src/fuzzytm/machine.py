"""Machine definitions for fuzzy, generalized fuzzy and extended fuzzy Turing
machines, plus structural validation."""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, List, Mapping, NamedTuple, Sequence, Tuple

from .degrees import DegreeAlgebra, check_degree


class MachineKind(str, enum.Enum):
    FTM = "ftm"
    GFTM = "gftm"
    EFTM = "eftm"


class StateKind(str, enum.Enum):
    PLAIN = "plain"
    ACCEPT = "accept"
    REJECT = "reject"
    INDET = "indet"


class Move(str, enum.Enum):
    L = "L"
    R = "R"
    S = "S"


FINAL_KINDS = (StateKind.ACCEPT, StateKind.REJECT)


class Transition(NamedTuple):
    source: str
    read: str
    target: str
    write: str
    move: Move
    degree: float

    @property
    def key(self) -> Tuple[str, str, str, str, str]:
        return (self.source, self.read, self.target, self.write, self.move.value)


class MachineError(ValueError):
    """Raised when a machine or an input word fails validation."""

    def __init__(self, violations: Sequence["Violation"]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class Violation:
    clause: str
    message: str
    state: str = ""
    transition: Tuple = ()

    def sort_key(self):
        return (self.state, tuple(str(x) for x in self.transition), self.clause,
                self.message)

    def __str__(self) -> str:
        return f"[{self.clause}] {self.message}"


@dataclass(frozen=True)
class MachineSpec:
    """An immutable machine description.

    ``states`` maps state names to their kind; the start state is named
    separately and must be a plain state. ``sides`` optionally tags final
    states with a group label; accepting (rejecting) degrees of different
    groups are combined with the t-conorm instead of the maximum.
    """

    kind: MachineKind
    algebra: DegreeAlgebra
    states: Mapping[str, StateKind]
    input_alphabet: FrozenSet[str]
    tape_alphabet: FrozenSet[str]
    blank: str
    start: str
    transitions: Tuple[Transition, ...] = ()
    sides: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "kind", MachineKind(self.kind))
        set_(self, "states", {q: StateKind(k) for q, k in sorted(self.states.items())})
        set_(self, "input_alphabet", frozenset(self.input_alphabet))
        set_(self, "tape_alphabet", frozenset(self.tape_alphabet))
        set_(self, "sides", dict(sorted(self.sides.items())))
        trans = []
        for t in self.transitions:
            t = Transition(*t)
            trans.append(t._replace(move=Move(t.move),
                                    degree=check_degree(t.degree)))
        trans.sort(key=lambda t: (t.key, t.degree))
        seen = set()
        for t in trans:
            if t.key in seen:
                raise ValueError(f"duplicate transition {t.key}: the transition "
                                 "relation is a crisp set")
            seen.add(t.key)
        set_(self, "transitions", tuple(trans))

    __hash__ = None  # mappings inside

    def states_of(self, kind: StateKind) -> List[str]:
        return [q for q, k in self.states.items() if k is kind]

    def is_final(self, state: str) -> bool:
        return self.states.get(state) in FINAL_KINDS

    @cached_property
    def compact_symbols(self) -> bool:
        return all(len(a) == 1 for a in self.tape_alphabet | {self.blank})

    @cached_property
    def table(self) -> Dict[Tuple[str, str], Tuple[Transition, ...]]:
        out = defaultdict(list)
        for t in self.transitions:
            out[t.source, t.read].append(t)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def max_step_degree(self) -> float:
        """Largest degree among transitions not touching an indeterminacy
        state (0 if there are none)."""
        indet = set(self.states_of(StateKind.INDET))
        return max((t.degree for t in self.transitions
                    if t.source not in indet and t.target not in indet),
                   default=0.0)

    def word(self, text: str) -> Tuple[str, ...]:
        """Split an input string into symbols.

        Whitespace separates symbols when present or when the input alphabet
        has multi-character symbols; otherwise each character is a symbol.
        """
        if any(c.isspace() for c in text) or any(len(a) != 1 for a in self.input_alphabet):
            return tuple(text.split())
        return tuple(text)

    def check_word(self, word: Sequence[str]) -> None:
        bad = sorted({a for a in word if a not in self.input_alphabet})
        if bad:
            raise MachineError([Violation("input", f"symbols {bad} are not in the input alphabet")])

    def format_id(self, left: Sequence[str], state: str, right: Sequence[str]) -> str:
        return format_id(left, state, right, self.compact_symbols)

    def replace(self, **changes) -> "MachineSpec":
        fields = dict(kind=self.kind, algebra=self.algebra, states=self.states,
                      input_alphabet=self.input_alphabet,
                      tape_alphabet=self.tape_alphabet, blank=self.blank,
                      start=self.start, transitions=self.transitions,
                      sides=self.sides)
        fields.update(changes)
        return MachineSpec(**fields)


def format_id(left: Sequence[str], state: str, right: Sequence[str],
              compact: bool) -> str:
    """Render an instantaneous description ``u[q]v``.

    Blanks are expected to be trimmed already. Symbols are concatenated when
    every tape symbol is one character long, otherwise space separated.
    """
    sep = "" if compact else " "
    return f"{sep.join(left)}[{state}]{sep.join(right)}"


def validate(spec: MachineSpec) -> List[Violation]:
    """Return the list of violations (empty when the machine is valid).

    The list is ordered by (state name, transition tuple).
    """
    out: List[Violation] = []
    states = spec.states
    gamma = spec.tape_alphabet

    if spec.start not in states:
        out.append(Violation("structure", f"start state {spec.start!r} is not declared",
                             state=spec.start))
    elif states[spec.start] is not StateKind.PLAIN:
        out.append(Violation("structure", f"start state {spec.start!r} must be a plain "
                             f"state, not {states[spec.start].value}", state=spec.start))
    if spec.blank in spec.input_alphabet:
        out.append(Violation("structure", f"blank {spec.blank!r} is in the input alphabet"))
    if spec.blank not in gamma:
        out.append(Violation("structure", f"blank {spec.blank!r} is not a tape symbol"))
    missing = sorted(spec.input_alphabet - gamma)
    if missing:
        out.append(Violation("structure", f"input symbols {missing} are not tape symbols"))
    for q in spec.sides:
        if states.get(q) not in FINAL_KINDS:
            out.append(Violation("structure", f"side tag on non-final state {q!r}", state=q))

    indet = set(spec.states_of(StateKind.INDET))
    if indet and spec.kind is not MachineKind.EFTM:
        for q in sorted(indet):
            out.append(Violation("kind", f"indeterminacy state {q!r} requires kind eftm",
                                 state=q))
    if spec.kind is MachineKind.FTM:
        for q in spec.states_of(StateKind.REJECT):
            out.append(Violation("kind", f"reject state {q!r} is not allowed in an ftm",
                                 state=q))

    for t in spec.transitions:
        where = dict(state=t.source, transition=t.key)
        for q in (t.source, t.target):
            if q not in states:
                out.append(Violation("structure", f"transition {t.key} uses undeclared "
                                     f"state {q!r}", **where))
        for a in (t.read, t.write):
            if a not in gamma:
                out.append(Violation("structure", f"transition {t.key} uses undeclared "
                                     f"symbol {a!r}", **where))
        if spec.kind is MachineKind.FTM and t.move is Move.S:
            out.append(Violation("kind", f"transition {t.key}: an ftm moves only L or R",
                                 **where))
        if spec.kind is MachineKind.EFTM:
            touches = t.source in indet or t.target in indet
            if touches and (t.read != t.write or t.move is not Move.S):
                out.append(Violation("eftm-i", f"transition {t.key} touches an "
                                     "indeterminacy state but is not silent "
                                     "(needs write == read and move S)", **where))
            if touches and t.degree != 1.0:
                out.append(Violation("eftm-ii", f"transition {t.key} touches an "
                                     f"indeterminacy state but has degree {t.degree!r}, "
                                     "not 1", **where))
            if not touches and t.degree == 1.0:
                out.append(Violation("eftm-ii", f"transition {t.key} has degree 1 but "
                                     "touches no indeterminacy state", **where))
            if t.degree == 0.0 and not (t.source == spec.start
                                        and states.get(t.target) in FINAL_KINDS):
                out.append(Violation("eftm-iii", f"transition {t.key} has degree 0 but is "
                                     "not a start-to-final transition", **where))
    out.sort(key=Violation.sort_key)
    return out


def require_valid(spec: MachineSpec) -> None:
    problems = validate(spec)
    if problems:
        raise MachineError(problems)


def is_classical(spec: MachineSpec) -> bool:
    """True for a crisp machine: every degree is 1 and there are no
    indeterminacy states."""
    return (not spec.states_of(StateKind.INDET)
            and all(t.degree == 1.0 for t in spec.transitions))
