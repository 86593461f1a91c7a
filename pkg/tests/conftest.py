import random
from pathlib import Path

import pytest

from fuzzytm import MachineSpec, StateKind, parse
from fuzzytm.degrees import GOEDEL, LUKASIEWICZ, PRODUCT
from fuzzytm.oracle import enumerate_paths

DATA = Path(__file__).parent / "data"
ALGEBRAS = {"product": PRODUCT, "goedel": GOEDEL, "lukasiewicz": LUKASIEWICZ}


def machine(trans, states, *, kind="gftm", tnorm="product", sigma="0 1",
            gamma="0 1 _", start="q0", extra=""):
    """Build a machine from ``.ftm`` transition lines (``trans:`` optional)."""
    lines = [ln.strip() for ln in trans.strip().splitlines() if ln.strip()]
    body = "\n".join(ln if ln.startswith("trans:") else f"trans: {ln}" for ln in lines)
    return parse(f"kind: {kind}\ntnorm: {tnorm}\nblank: _\nstates: {states}\n"
                 f"start: {start}\ninput_alphabet: {sigma}\ntape_alphabet: {gamma}\n"
                 f"{extra}\n{body}\n")


def corpus_input(path):
    first = Path(path).read_text().splitlines()[0]
    assert first.startswith("# input:")
    return first.split(":", 1)[1].strip()


def random_machine(rng, *, algebra=None, max_states=5, final_kinds=None):
    """A random GFTM with at most ``max_states`` states and tape symbols
    {0, 1, _}; degrees drawn from [0.1, 0.95]."""
    alg = algebra or rng.choice([PRODUCT, GOEDEL, LUKASIEWICZ])
    final_kinds = final_kinds or [StateKind.PLAIN, StateKind.ACCEPT, StateKind.REJECT]
    names = [f"q{i}" for i in range(rng.randint(2, max_states))]
    kinds = {names[0]: StateKind.PLAIN}
    for q in names[1:]:
        kinds[q] = rng.choice(final_kinds)
    movers = [q for q in names if kinds[q] is StateKind.PLAIN]
    gamma = ["0", "1", "_"]
    trans = {}
    for _ in range(rng.randint(1, 9)):
        key = (rng.choice(movers), rng.choice(gamma), rng.choice(names),
               rng.choice(gamma), rng.choice("LRS"))
        trans[key] = rng.uniform(0.1, 0.95)
    return MachineSpec("gftm", alg, kinds, {"0", "1"}, set(gamma), "_", "q0",
                       tuple((*k, d) for k, d in sorted(trans.items())))


def halts_within(spec, word, depth):
    return not any(p.truncated for p in enumerate_paths(spec, word, depth))


def all_words(max_len, alphabet="01"):
    out = [""]
    frontier = [""]
    for _ in range(max_len):
        frontier = [w + a for w in frontier for a in alphabet]
        out += frontier
    return out


@pytest.fixture
def rng():
    return random.Random(20261016)


def cli(*args, env=None, input=None):
    """Run ``python -m fuzzytm`` twice and insist on byte-identical output."""
    import os
    import subprocess
    import sys

    full_env = dict(os.environ)
    full_env.pop("FTM_MAX_LEVELS", None)
    full_env.pop("FTM_MAX_CONFIGS", None)
    full_env.update(env or {})
    runs = [subprocess.run([sys.executable, "-m", "fuzzytm", *map(str, args)],
                           capture_output=True, env=full_env, input=input, timeout=120)
            for _ in range(2)]
    first, second = runs
    assert first.stdout == second.stdout, f"nondeterministic output for {args}"
    assert first.returncode == second.returncode
    return first


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
