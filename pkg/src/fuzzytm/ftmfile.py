"""The ``.ftm`` machine file format.

A line-oriented format; ``#`` starts a comment::

    kind: eftm
    tnorm: product
    blank: _
    states: qs q1 qa:accept qr:reject qI:indet
    start: qs
    input_alphabet: 0 1
    tape_alphabet: 0 1 _
    side: 1 qa
    trans: qs 0 -> q1 0 R @ 0.2

``states:``, ``side:`` and ``trans:`` may repeat; the other directives appear
once. ``side: <tag> <state>...`` tags final states for grouped aggregation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .degrees import DegreeAlgebra, TNorm
from .machine import MachineKind, MachineSpec, Move, StateKind, Transition

HEADER = ("kind", "tnorm", "blank", "states", "start", "input_alphabet", "tape_alphabet")
REPEATABLE = {"states", "side", "trans"}
KIND_SUFFIX = {"accept": StateKind.ACCEPT, "reject": StateKind.REJECT,
               "indet": StateKind.INDET}
_TOKEN = re.compile(r"^[^\s#@\[\]]+$")
_TRANS = re.compile(r"^(\S+)\s+(\S+)\s+->\s+(\S+)\s+(\S+)\s+(\S+)\s+@\s+(\S+)$")


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"


class ParseError(ValueError):
    def __init__(self, diagnostics: List[Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__("\n".join(str(d) for d in diagnostics))


def parse(text: str) -> MachineSpec:
    """Parse ``.ftm`` text, raising :class:`ParseError` with every problem
    found (not just the first)."""
    diags: List[Diagnostic] = []
    single: Dict[str, Tuple[int, int, str]] = {}
    state_lines: List[Tuple[int, int, str]] = []
    side_lines: List[Tuple[int, int, str]] = []
    trans_lines: List[Tuple[int, int, str]] = []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        key, sep, value = line.strip().partition(":")
        key = key.strip()
        if not sep or key not in HEADER + ("side", "trans"):
            diags.append(Diagnostic(lineno, col, f"unknown directive {key!r}"))
            continue
        vcol = col + len(key) + 1 + (len(value) - len(value.lstrip()))
        value = value.strip()
        if key == "states":
            state_lines.append((lineno, vcol, value))
        elif key == "side":
            side_lines.append((lineno, vcol, value))
        elif key == "trans":
            trans_lines.append((lineno, vcol, value))
        elif key in single:
            diags.append(Diagnostic(lineno, col, f"directive {key!r} repeated "
                                    f"(first on line {single[key][0]})"))
        else:
            single[key] = (lineno, vcol, value)

    def tokens(where, value, what):
        line, col, _ = where
        out = value.split()
        for tok in out:
            if not _TOKEN.match(tok):
                diags.append(Diagnostic(line, col, f"bad {what} {tok!r}"))
        return out

    def need(key) -> Optional[Tuple[int, int, str]]:
        if key not in single:
            diags.append(Diagnostic(1, 1, f"missing directive {key!r}"))
            return None
        return single[key]

    kind = algebra = blank = start = None
    if need("kind"):
        line, col, value = single["kind"]
        try:
            kind = MachineKind(value.lower())
        except ValueError:
            diags.append(Diagnostic(line, col, f"unknown machine kind {value!r}"))
    if need("tnorm"):
        line, col, value = single["tnorm"]
        try:
            algebra = DegreeAlgebra(TNorm(value.lower()))
        except ValueError:
            diags.append(Diagnostic(line, col, f"unknown t-norm {value!r}"))
    if need("blank"):
        toks = tokens(single["blank"], single["blank"][2], "symbol")
        if len(toks) != 1:
            diags.append(Diagnostic(*single["blank"][:2], "blank needs exactly one symbol"))
        else:
            blank = toks[0]
    sigma = set(tokens(single["input_alphabet"], single["input_alphabet"][2], "symbol")
                ) if need("input_alphabet") else set()
    gamma = set(tokens(single["tape_alphabet"], single["tape_alphabet"][2], "symbol")
                ) if need("tape_alphabet") else set()

    states: Dict[str, StateKind] = {}
    for where in state_lines:
        for tok in where[2].split():
            name, _, suffix = tok.partition(":")
            if not _TOKEN.match(name):
                diags.append(Diagnostic(where[0], where[1], f"bad state name {name!r}"))
                continue
            if suffix and suffix not in KIND_SUFFIX:
                diags.append(Diagnostic(where[0], where[1], f"unknown state kind {suffix!r}"))
                continue
            if name in states:
                diags.append(Diagnostic(where[0], where[1], f"state {name!r} declared twice"))
                continue
            states[name] = KIND_SUFFIX[suffix] if suffix else StateKind.PLAIN
    if need("start"):
        toks = tokens(single["start"], single["start"][2], "state")
        if len(toks) != 1:
            diags.append(Diagnostic(*single["start"][:2], "start needs exactly one state"))
        elif toks[0] not in states:
            diags.append(Diagnostic(*single["start"][:2], f"undeclared state {toks[0]!r}"))
        else:
            start = toks[0]
    if blank is not None and gamma and blank not in gamma:
        diags.append(Diagnostic(*single["blank"][:2], f"blank {blank!r} is not in the "
                                "tape alphabet"))
    for a in sorted(sigma - gamma):
        diags.append(Diagnostic(*single["input_alphabet"][:2],
                                f"input symbol {a!r} is not in the tape alphabet"))

    sides: Dict[str, str] = {}
    for line, col, value in side_lines:
        toks = value.split()
        if len(toks) < 2:
            diags.append(Diagnostic(line, col, "side needs a tag and at least one state"))
            continue
        for q in toks[1:]:
            if q not in states:
                diags.append(Diagnostic(line, col, f"undeclared state {q!r}"))
            else:
                sides[q] = toks[0]

    trans: List[Transition] = []
    seen: Dict[tuple, int] = {}
    for line, col, value in trans_lines:
        m = _TRANS.match(value)
        if not m:
            diags.append(Diagnostic(line, col, "expected 'q a -> p b L|R|S @ degree'"))
            continue
        q, a, p, b, move, deg = m.groups()
        bad = False
        for s in (q, p):
            if s not in states:
                diags.append(Diagnostic(line, col, f"undeclared state {s!r}"))
                bad = True
        for s in (a, b):
            if s not in gamma:
                diags.append(Diagnostic(line, col, f"undeclared symbol {s!r}"))
                bad = True
        if move not in ("L", "R", "S"):
            diags.append(Diagnostic(line, col, f"unknown move {move!r}"))
            bad = True
        try:
            degree = float(deg)
        except ValueError:
            diags.append(Diagnostic(line, col, f"degree {deg!r} is not a number"))
            continue
        if not 0.0 <= degree <= 1.0:
            diags.append(Diagnostic(line, col, f"degree {deg} is outside [0, 1]"))
            bad = True
        key = (q, a, p, b, move)
        if key in seen:
            diags.append(Diagnostic(line, col, f"duplicate transition {' '.join(key)} "
                                    f"(also on line {seen[key]}); the transition "
                                    "relation is a crisp set"))
            continue
        seen[key] = line
        if not bad:
            trans.append(Transition(q, a, p, b, Move(move), degree))

    if diags:
        raise ParseError(diags)
    return MachineSpec(kind, algebra, states, sigma, gamma, blank, start,
                       tuple(trans), sides)


def load(path) -> MachineSpec:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def serialize(spec: MachineSpec) -> str:
    """Canonical text: fixed directive order, sorted states, symbols and
    transitions. Degrees use the shortest repr that round-trips."""
    def state_tok(q, k):
        return q if k is StateKind.PLAIN else f"{q}:{k.value}"

    lines = [
        f"kind: {spec.kind.value}",
        f"tnorm: {spec.algebra.kind.value}",
        f"blank: {spec.blank}",
        "states: " + " ".join(state_tok(q, k) for q, k in sorted(spec.states.items())),
        f"start: {spec.start}",
        "input_alphabet: " + " ".join(sorted(spec.input_alphabet)),
        "tape_alphabet: " + " ".join(sorted(spec.tape_alphabet)),
    ]
    by_tag: Dict[str, List[str]] = {}
    for q, tag in sorted(spec.sides.items()):
        by_tag.setdefault(tag, []).append(q)
    lines += [f"side: {tag} " + " ".join(qs) for tag, qs in sorted(by_tag.items())]
    for t in sorted(spec.transitions, key=lambda t: t.key):
        lines.append(f"trans: {t.source} {t.read} -> {t.target} {t.write} "
                     f"{t.move.value} @ {t.degree!r}")
    return "\n".join(lines) + "\n"
