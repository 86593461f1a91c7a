"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v -s``; the lines
are also repeated in the terminal summary of any pytest run.
"""

import functools
import random
import time

from fuzzytm import (GOEDEL, LUKASIEWICZ, PRODUCT, LiftParams, MachineSpec, SearchBudget,
                     StateKind, lift_core, lift_loop_catcher, lift_re, load, parse, run,
                     serialize, swap_roles, union_conorm)
from fuzzytm.oracle import enumerate_paths, oracle_degrees

from conftest import (ACCEPTANCE_LINES, DATA, all_words, cli, corpus_input, halts_within,
                      machine, random_machine)


def criterion(number, title, limit=None):
    """Record a PASS/FAIL line for the wrapped test and enforce its time
    limit in seconds."""
    def wrap(fn):
        @functools.wraps(fn)
        def test(*args, **kwargs):
            t0 = time.perf_counter()
            verdict, detail = "FAIL", ""
            try:
                detail = fn(*args, **kwargs) or ""
                elapsed = time.perf_counter() - t0
                if limit is not None:
                    assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"
                verdict = "PASS"
            except BaseException as exc:
                detail = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
                raise
            finally:
                elapsed = time.perf_counter() - t0
                line = (f"criterion {number} [{title}]: {verdict} ({elapsed:.2f}s"
                        + (f", limit {limit}s" if limit else "") + ")"
                        + (f" {detail}" if detail else ""))
                ACCEPTANCE_LINES.append(line)
                print(line)
        return test
    return wrap


# -- 1 ---------------------------------------------------------------------

@criterion(1, "worked example", limit=1.0)
def test_c1_worked_example():
    spec = load(DATA / "worked_example.ftm")
    e = run(spec, "0").accept_degree
    e2 = run(spec, "01").indeterminacy_degree
    assert abs(e - 0.14) <= 1e-9, e
    assert e2 == 0.0, e2
    return f"e('0')={e:.12g}, e''('01')={e2!r}"


# -- 2 ---------------------------------------------------------------------

@criterion(2, "oracle equivalence", limit=30.0)
def test_c2_oracle_equivalence():
    rng = random.Random(2)
    checked = worst = 0
    nonzero = 0
    while checked < 200:
        spec = random_machine(rng, max_states=5)
        word = "".join(rng.choice("01") for _ in range(rng.randint(0, 3)))
        paths = enumerate_paths(spec, word, 8)
        if any(p.truncated for p in paths):
            continue  # not loop-free within depth 8
        od = oracle_degrees(paths, spec)
        r = run(spec, word)
        for got, want in ((r.accept_degree, od.accept), (r.reject_degree, od.reject)):
            worst = max(worst, abs(got - want))
            assert abs(got - want) <= 1e-12, (serialize(spec), word, got, want)
        nonzero += bool(od.accept or od.reject)
        checked += 1
    return f"200 machines, {nonzero} with a nonzero degree, max diff {worst:.1e}"


# -- 3 ---------------------------------------------------------------------

def branching_machine(rng, alg):
    """A start state fanning out into 2 to 4 silent chains of random length,
    each ending in its own accepting state."""
    states = {"qs": StateKind.PLAIN}
    trans = []
    for i in range(rng.randint(2, 4)):
        length = rng.randint(0, 12)
        chain = [f"c{i}_{j}" for j in range(length)] + [f"qa{i}"]
        states.update({q: StateKind.PLAIN for q in chain[:-1]})
        states[chain[-1]] = StateKind.ACCEPT
        prev = "qs"
        for q in chain:
            trans.append((prev, "0", q, "0", "S", rng.uniform(0.3, 0.95)))
            prev = q
    return MachineSpec("gftm", alg, states, {"0"}, {"0", "_"}, "_", "qs", tuple(trans))


@criterion(3, "level-bound validity", limit=30.0)
def test_c3_level_bound():
    rng = random.Random(3)
    truncated = 0
    for n in range(50):
        alg = PRODUCT if n % 2 == 0 else LUKASIEWICZ
        spec = branching_machine(rng, alg)
        r = run(spec, "0", bound="always")
        assert r.bound_events, serialize(spec)
        deadline = max(ev.level + ev.bound for ev in r.bound_events if ev.bound is not None)
        shallow = oracle_degrees(enumerate_paths(spec, "0", deadline + 2), spec).accept
        full = oracle_degrees(enumerate_paths(spec, "0", 20), spec).accept
        assert r.accept_degree == shallow == full, (serialize(spec), r, shallow, full)
        truncated += r.status.value == "bound-applied"
    assert truncated > 0  # the bound did cut some searches short
    return f"50 machines, {truncated} cut short by the bound"


# -- 4 ---------------------------------------------------------------------

@criterion(4, "loop catching", limit=10.0)
def test_c4_loop_catching():
    loopers = sorted((DATA / "loopers").glob("*.ftm"))
    halters = sorted((DATA / "halters").glob("*.ftm"))
    assert len(loopers) == 10 and len(halters) == 10
    p = LiftParams(0.5)
    for path in loopers:
        r = run(lift_loop_catcher(load(path), p), corpus_input(path))
        assert r.indeterminacy_degree == 0.0, (path.name, r)
    least = 1.0
    for path in halters:
        r = run(lift_loop_catcher(load(path), p), corpus_input(path))
        assert r.indeterminacy_degree > 0.0, (path.name, r)
        least = min(least, r.indeterminacy_degree)
    return f"10 loopers at e''=0, 10 halters at e''>={least:.3g}"


# -- 5 ---------------------------------------------------------------------

def steps_to_accept(m, word):
    (path,) = [p for p in enumerate_paths(m, word, 50)
               if m.states[p.states[-1]] is StateKind.ACCEPT]
    return len(path.degrees)


@criterion(5, "lift degree profiles", limit=20.0)
def test_c5_lift_profiles():
    t = 0.5
    words = all_words(5)
    m = load(DATA / "re_contains11.ftm")
    lifted = lift_re(m, t)
    members = 0
    for w in words:
        r = run(lifted, w)
        if "11" in w:
            b = PRODUCT.fold_tnorm([t] * (1 + steps_to_accept(m, w)))
            assert r.accept_degree == b > 0, (w, r)
            assert r.reject_degree == 0.0, (w, r)
            assert r.indeterminacy_degree > r.accept_degree, (w, r)
            members += 1
        else:
            assert r.accept_degree == 0.0, (w, r)

    mc = load(DATA / "re_no11.ftm")  # recognizes the complement
    lifted_c = lift_core(mc, t)
    for w in words:
        r = run(lifted_c, w)
        if "11" not in w:
            rr = PRODUCT.fold_tnorm([t] * (1 + steps_to_accept(mc, w)))
            assert r.reject_degree == rr > 0, (w, r)
            assert r.accept_degree == 0.0, (w, r)
            assert r.indeterminacy_degree > r.reject_degree, (w, r)
        else:
            assert r.reject_degree == 0.0, (w, r)
    return f"{len(words)} words each way, {members} in the language"


# -- 6 ---------------------------------------------------------------------

def loop_free_pair(rng, alg, words):
    def one():
        while True:
            spec = random_machine(rng, algebra=alg, max_states=4,
                                  final_kinds=[StateKind.PLAIN, StateKind.ACCEPT])
            if all(halts_within(spec, w, 10) for w in words):
                if sum(run(spec, w).accept_degree > 0 for w in words) >= 5:
                    return spec
    return one(), one()


@criterion(6, "union law", limit=20.0)
def test_c6_union_law():
    rng = random.Random(6)
    words = all_words(4)
    worst = 0.0
    both = 0
    for alg in (PRODUCT, GOEDEL, LUKASIEWICZ):
        for _ in range(3):
            e1, e2 = loop_free_pair(rng, alg, words)
            u = union_conorm(e1, e2)
            for w in words:
                a, b = run(e1, w).accept_degree, run(e2, w).accept_degree
                got = run(u, w).accept_degree
                want = alg.tconorm(a, b)
                worst = max(worst, abs(got - want))
                assert abs(got - want) <= 1e-12, (alg, w, got, want)
                both += a > 0 and b > 0
    return f"9 pairs x {len(words)} words, {both} with both sides nonzero, " \
           f"max diff {worst:.1e}"


# -- 7 ---------------------------------------------------------------------

def deciders():
    yield load(DATA / "looping_decider.ftm")
    yield machine("""
        q0 0 -> q0 0 R @ 0.9
        q0 1 -> q1 1 R @ 0.8
        q1 0 -> q1 0 R @ 0.7
        q1 1 -> q0 1 R @ 0.85
        q0 _ -> qa _ S @ 0.6
        q0 _ -> qr _ S @ 0.2
        q1 _ -> qr _ S @ 0.75
    """, "q0 q1 qa:accept qr:reject")
    yield machine("""
        q0 0 -> q0 0 S @ 0.6
        q0 0 -> qr 0 S @ 0.6
        q0 1 -> qr 1 S @ 0.6
        q0 _ -> qr _ S @ 0.6
    """, "q0 qr:reject", tnorm="lukasiewicz")
    yield machine("""
        q0 0 -> q1 0 R @ 0.5
        q0 1 -> q1 1 R @ 0.9
        q1 0 -> q0 0 L @ 0.8
        q1 1 -> qa 1 S @ 0.7
        q1 _ -> qr _ S @ 0.4
        q0 _ -> qa _ S @ 0.3
    """, "q0 q1 qa:accept qr:reject", tnorm="goedel")
    yield machine("""
        q0 0 -> qa 0 R @ 0.55
        q0 0 -> q1 0 R @ 0.65
        q0 1 -> qr 1 R @ 0.45
        q1 0 -> qa 0 S @ 0.9
        q1 1 -> qr 1 S @ 0.9
        q1 _ -> qa _ S @ 0.35
        q0 _ -> qr _ S @ 0.25
    """, "q0 q1 qa:accept qr:reject")


@criterion(7, "swap law", limit=10.0)
def test_c7_swap_law():
    words = all_words(4)
    budget = SearchBudget(max_levels=400)
    for e in deciders():
        s = swap_roles(e)
        for w in words:
            a, b = run(e, w, budget), run(s, w, budget)
            assert b.accept_degree == a.reject_degree, (w, a, b)
            assert b.reject_degree == a.accept_degree, (w, a, b)
    return f"5 deciders x {len(words)} words"


# -- 8 ---------------------------------------------------------------------

CORPUS = sorted(DATA.rglob("*.ftm"))


@criterion(8, "determinism and format")
def test_c8_determinism_and_round_trip(tmp_path):
    for path in CORPUS:
        canonical = serialize(load(path))
        assert serialize(parse(canonical)) == canonical, path.name
        first = path.read_text().splitlines()[0]
        word = corpus_input(path) if first.startswith("# input:") else "0"
        out = cli("run", path, "--input", word, "--format", "json")  # runs twice
        assert out.returncode in (0, 2), (path.name, out.stderr)
        copy = tmp_path / path.name
        copy.write_text(canonical)
        assert cli("run", copy, "--input", word, "--format", "json").stdout == out.stdout
    return f"{len(CORPUS)} corpus files, {2 * len(CORPUS)} invocations each run twice"
