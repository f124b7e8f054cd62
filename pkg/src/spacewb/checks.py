"""Desk-scale property suites.

Every suite returns a CheckReport. The suites are exhaustive within the caps
they are given; the caps are part of the report so a run can be reproduced.
"""

import time
from itertools import product
from typing import NamedTuple

from . import fixtures
from .adder import adder_word, canonical_run, default_names, make_adder
from .compiler import (HARD_FLOOR, compile_simple, multiplied_word, multiply)
from .composition import (canonical_lift, compose_with_adder, is_basic, lift_word,
                          project_computation, project_word)
from .machine import (TapeConfig, a_length, inverse_name,
                      make_input_config, successors)
from .oracle import (accepting_computation, bfs_machine_space,
                     bounded_pair_spaces, compute_space_function, configuration_universe,
                     enumerate_language, enumerate_reduced_computations, reduced_layers,
                     SavitchTable, s_accepting_search, savitch_reach, savitch_steps)
from .rewriting import witness_from_computation
from .smachine import (AdmissibleWord, applicable, apply_rule, config_to_word, from_turing,
                       inverse_rule_name, is_reduced_history,
                       replay, successors as s_successors)
from .transforms import (PAD, enforce_s10, pad_space, pad_stage_names,
                         prepare_for_s_machine, symmetrize)
from .words import INV, is_positive

MAX_FAILURES = 20


class CheckReport(NamedTuple):
    suite: str
    passed: bool
    cases: int
    failures: tuple
    metrics: dict

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{self.suite}: {status} ({self.cases} cases, {len(self.failures)} failures)"

    def as_dict(self):
        return {"suite": self.suite, "passed": self.passed, "cases": self.cases,
                "failures": list(self.failures), "metrics": self.metrics}


class _Tally:
    def __init__(self, name):
        self.name = name
        self.cases = 0
        self.failures = []
        self.metrics = {}
        self.t0 = time.perf_counter()

    def check(self, ok, what):
        self.cases += 1
        if not ok:
            self.failures.append(what)
        return ok

    def report(self):
        self.metrics["seconds"] = round(time.perf_counter() - self.t0, 3)
        return CheckReport(self.name, not self.failures, self.cases,
                           tuple(self.failures[:MAX_FAILURES]), self.metrics)


def _machines(names):
    return [(n, fixtures.load(n)) for n in names]


def _show(u):
    return " ".join(u) or "empty"


# ---------------------------------------------------------------- padding

def _pad_start(m2, u, j):
    c = make_input_config(m2, u)
    return c[:-1] + (TapeConfig((PAD,) * j, c[-1].state, ()),)


def check_padding(names=fixtures.NAMES, max_len=5, max_a=5, space_cap=12):
    """Padding keeps the language, and space equals max(space of u, |w|_a)."""
    t = _Tally("lemma2.1")
    for name, m in _machines(names):
        m1 = enforce_s10(m)
        m2 = pad_space(m1)
        l1 = enumerate_language(m1, max_len, space_cap)
        l2 = enumerate_language(m2, max_len, space_cap)
        t.check(l1.words == l2.words, f"{name}: languages differ up to length {max_len}")
        star = pad_stage_names(m2)[0]
        inv = {c.name for c in m2.commands}
        t.check(not any(inverse_name(c) in inv for c in pad_stage_names(m2)[1:3]),
                f"{name}: a connecting command has an inverse")
        compared = 0
        for u in fixtures.words(m.input_alphabet, max_a):
            r1 = bfs_machine_space(m1, make_input_config(m1, u), space_cap)
            if not r1.found:
                continue
            for j in range(max_a - len(u) + 1):
                w = _pad_start(m2, u, j)
                t.check(any(n == star for n, _ in successors(m2, w)),
                        f"{name}: padding command inapplicable to {_show(u)} with {j} pads")
                r2 = bfs_machine_space(m2, w, space_cap + max_a)
                want = max(r1.value, a_length(m2, w))
                t.check(r2.found and r2.value == want,
                        f"{name}: u={_show(u)} pads={j}: got {r2.value}, want {want}")
                compared += 1
        t.metrics[f"{name}.compared"] = compared
    return t.report()


# ---------------------------------------------------------------- symmetrization

def _reduced_tm_runs(m, c, max_len):
    """Reduced computations from c as (history, configs), depth first."""
    out = []

    def go(configs, hist):
        out.append((tuple(hist), tuple(configs)))
        if len(hist) == max_len:
            return
        last = inverse_name(hist[-1]) if hist else None
        for name, c2 in successors(m, configs[-1]):
            if name == last:
                continue
            configs.append(c2)
            hist.append(name)
            go(configs, hist)
            configs.pop()
            hist.pop()

    go([c], [])
    return out


def check_symmetrized_runs(names=fixtures.NAMES, max_len=10, max_a=3, space_cap=12):
    """Accepted reduced runs of the symmetrized padded machine start at accepted inputs."""
    t = _Tally("lemma2.2")
    for name, m in _machines(names):
        m1 = enforce_s10(m)
        m3 = symmetrize(pad_space(m1))
        runs = 0
        for u in fixtures.words(m.input_alphabet, max_a):
            ref = bfs_machine_space(m1, make_input_config(m1, u), space_cap)
            for j in range(max_a - len(u) + 1):
                w = _pad_start(m3, u, j)
                for hist, configs in _reduced_tm_runs(m3, w, max_len):
                    end = configs[-1]
                    if not all(not tc.left and not tc.right for tc in end):
                        continue
                    if tuple(tc.state for tc in end) != tuple(m3.accept):
                        continue
                    runs += 1
                    space = max(a_length(m3, c) for c in configs)
                    t.check(ref.found, f"{name}: run from {_show(u)} accepted but u is not")
                    if ref.found:
                        t.check(space >= ref.value,
                                f"{name}: run from {_show(u)} has space {space} < {ref.value}")
        t.metrics[f"{name}.accepted_runs"] = runs
    return t.report()


def check_languages(names=fixtures.NAMES, max_len=4, full_len=3, space_cap=8):
    """Symmetrizing the padded machine, and the whole pipeline, keep the language."""
    t = _Tally("lemma2.3")
    for name, m in _machines(names):
        want = tuple(fixtures.expected_language(name, m.input_alphabet, max_len))
        m3 = symmetrize(pad_space(enforce_s10(m)))
        got = enumerate_language(m3, max_len, space_cap)
        t.check(got.words == want, f"{name}: symmetrized language differs")
        t.metrics[f"{name}.unsure"] = len(got.incomplete)
        full = prepare_for_s_machine(m)
        want = tuple(w for w in want if len(w) <= full_len)
        got = enumerate_language(full, full_len, space_cap)
        t.check(got.words == want, f"{name}: pipeline language differs")
    return t.report()


# ---------------------------------------------------------------- S(M)

def check_positive_runs(names=fixtures.NAMES, max_len=6, max_letters=3):
    """Positive S(M) computations are exactly the machine's computations.

    Whether the two computation trees agree from a configuration depends only
    on that configuration, so it is enough to compare the one-step successors
    at every configuration reachable within max_len - 1 steps of a start.
    """
    t = _Tally("lemma2.5")
    for name, m in _machines(names):
        M = prepare_for_s_machine(m)
        sm = from_turing(M)
        starts = configuration_universe(M, max_letters)
        seen = set()
        layer = list(dict.fromkeys(starts))
        seen.update(layer)
        for depth in range(max_len):
            nxt = []
            for c in layer:
                want = dict(successors(M, c))
                got = {}
                for rname, w2 in s_successors(sm, config_to_word(M, c)):
                    if w2.is_positive():
                        got[rname] = w2
                ok = set(got) == set(want) and all(
                    config_to_word(M, want[k]) == got[k] for k in want)
                t.check(ok, f"{name}: successors differ at {c}")
                if depth < max_len - 1:
                    for c2 in want.values():
                        if c2 not in seen:
                            seen.add(c2)
                            nxt.append(c2)
            layer = nxt
        t.metrics[f"{name}.starts"] = len(starts)
        t.metrics[f"{name}.configurations"] = len(seen)
    return t.report()


def _p3_end(w, names):
    return w.states[1] == names.p[2]


def _p1_end(w, names):
    return w.states[1] == names.p[0]


def _a0_only(w, names):
    zero = set(names.zero.values())
    return all(x.replace(INV, "") in zero for x in w.sectors[0]) and not w.sectors[1]


def _signed_words(letters, n):
    """Freely reduced words of length n over letters and their inverses."""
    alpha = sorted(letters) + sorted(x + INV for x in letters)
    for w in product(alpha, repeat=n):
        if all(w[i + 1] != (w[i][:-len(INV)] if w[i].endswith(INV) else w[i] + INV)
               for i in range(n - 1)):
            yield w


def check_adder(umax=3, alphabets=(("a",), ("a", "b")), slack=2, signed_max=2):
    """The adding machine's contract on every start with ||u|| <= umax.

    Reduced computations from L u p(1) R are enumerated to length 2^(n+2)
    keeping words with at most n + slack tape letters; computations shorter
    than 2^n are also enumerated with no space cap at all.
    """
    t = _Tally("lemma2.6")
    nodes = 0
    for A in alphabets:
        s = make_adder(A)
        nm = default_names(A)
        zero = [nm.zero[a] for a in A]
        for n in range(umax + 1):
            for u in product(A, repeat=n):
                # (1): the canonical run is positive and keeps the length
                w0 = adder_word(nm, u, 0)
                hist = canonical_run(nm, u)
                tr = replay(s, w0, hist)
                t.check(tr.words[-1] == adder_word(nm, u, 2),
                        f"{A}: canonical run of {_show(u)} does not end at p(3)")
                t.check(all(INV not in h for h in hist),
                        f"{A}: canonical run of {_show(u)} is not positive")
                t.check(len({w.a_length for w in tr.words}) == 1,
                        f"{A}: canonical run of {_show(u)} changes length")
                t.check(tr.length >= 2 ** n, f"{A}: canonical run of {_show(u)} too short")
            starts = [(u, adder_word(nm, u, 0)) for u in product(A, repeat=n)]
            if n <= signed_max:
                starts = [(u, _start_word(nm, u)) for u in _signed_words(zero, n)]
            for u, w0 in starts:
                nodes += _adder_search(t, s, nm, A, u, w0, n, slack)
                back = AdmissibleWord((w0.states[0], nm.p[2], w0.states[2]), w0.sectors)
                nodes += _adder_search(t, s, nm, A, u, back, n, slack, reverse=True)
    t.metrics["nodes"] = nodes
    return t.report()


def _start_word(nm, u):
    return AdmissibleWord(adder_word(nm, (), 0).states, (tuple(u), ()))


def _adder_search(t, s, nm, A, u, w0, n, slack, reverse=False):
    here, there = (_p3_end, _p1_end) if reverse else (_p1_end, _p3_end)
    n0 = len(w0)
    positive = is_positive(w0.sectors[0])
    label = f"{A} u={_show(u)}{' from p(3)' if reverse else ''}"
    count = 0
    # short computations with no space cap
    for depth, nd in reduced_layers(s, w0, 2 ** n - 1):
        count += 1
        if depth and there(nd.word, nm) and _a0_only(nd.word, nm):
            t.check(False, f"{label}: reaches the far end in {depth} < 2^{n} steps")
    for depth, nd in reduced_layers(s, w0, 2 ** (n + 2), space_cap=n0 + slack):
        count += 1
        w = nd.word
        t.check(nd.hi <= max(n0, len(w)), f"{label}: length bound broken at depth {depth}")
        if not depth or not _a0_only(w, nm):
            continue
        if there(w, nm):
            t.check(positive, f"{label}: non-positive u reaches the far end")
            t.check(nd.lo == nd.hi == n0, f"{label}: lengths change on the way")
            t.check(depth >= 2 ** n, f"{label}: reaches the far end in {depth} steps")
        if here(w, nm):
            t.check(False, f"{label}: returns to its own end at depth {depth}")
    return count


def check_lift_round_trip(names=fixtures.NAMES, max_len=3, max_letters=2, trace_len=6):
    """Lifting to the composition and projecting back is the identity."""
    t = _Tally("lemma2.7")
    for name, m in _machines(names):
        M = prepare_for_s_machine(m)
        comp = compose_with_adder(M)
        sm = comp.base
        t.check(is_basic(comp, comp.start_rule) and is_basic(comp, comp.accept_rule),
                f"{name}: start or accept rule is not basic")
        lifted = 0
        for c in configuration_universe(M, max_letters):
            W = config_to_word(M, c)
            for tr in enumerate_reduced_computations(sm, W, max_len):
                if not all(w.is_positive() for w in tr.words):
                    continue
                L = canonical_lift(comp, tr)
                P = project_computation(comp, L)
                lifted += 1
                t.check(P == tr, f"{name}: projection of the lift differs for {tr.history}")
                t.check(L.space == tr.space, f"{name}: lift changes space for {tr.history}")
                t.check(is_reduced_history(L.history), f"{name}: lift not reduced")
        t.metrics[f"{name}.lifted"] = lifted
        # projections of reduced traces of the composition are reduced
        projected = 0
        for tr in enumerate_reduced_computations(comp.machine, comp.machine.start, trace_len):
            P = project_computation(comp, tr)
            projected += 1
            t.check(is_reduced_history(P.history), f"{name}: projection not reduced")
            if tr.history and is_basic(comp, tr.history[0]) and is_basic(comp, tr.history[-1]):
                t.check(P.space == tr.space, f"{name}: space differs from projection")
        t.metrics[f"{name}.projected"] = projected
    return t.report()


def _basic_starts(comp, max_letters, M):
    """Lifted words where a basic rule applies, with sectors of either sign."""
    s = comp.machine
    out = []
    for c in configuration_universe(M, max_letters):
        W = config_to_word(M, c)
        variants = {W}
        for i, sec in enumerate(W.sectors):
            if len(sec) == 1:
                x = sec[0]
                neg = sec[0][:-len(INV)] if x.endswith(INV) else x + INV
                variants.add(AdmissibleWord(W.states, W.sectors[:i] + ((neg,),) + W.sectors[i + 1:]))
        for V in sorted(variants, key=str):
            for r in s.rules:
                if not r.basic:
                    continue
                for sign in ("", INV):
                    w = lift_word(V, [p.q if sign == "" else p.q2
                                      for p in r.parts[1::2]])
                    if applicable(s, w, s.rule(r.name + sign)):
                        out.append((w, r.name + sign))
    return out


def check_basic_segments(names=("even",), max_len=18, max_letters=1, slack=4):
    """Traces from a basic rule to a basic rule project to positive middles.

    Breadth first over reduced traces that start with a basic rule. A node is
    (word, last rule, whether some basic step so far left a non-positive
    projection); a violation is a basic step taken from a flagged node, since
    the flagged word is then a middle word of a trace ending at that step.
    Words with more than slack tape letters above the start are not extended
    (slack None: no cap).
    """
    t = _Tally("lemma2.8")
    for name, m in _machines(names):
        M = prepare_for_s_machine(m)
        comp = compose_with_adder(M)
        s = comp.machine
        segments = 0
        nodes = 0
        for w, first in _basic_starts(comp, max_letters, M):
            w1 = apply_rule(s, w, first)
            cap = None if slack is None else max(w.a_length, w1.a_length) + slack
            start = (w1, first, not project_word(comp, w1).is_positive())
            seen = {start}
            layer = [start]
            for depth in range(2, max_len + 1):
                nxt = []
                for x, last, bad in layer:
                    back = inverse_rule_name(last)
                    for rname, r in s.candidates(x.states):
                        if rname == back or not applicable(s, x, r):
                            continue
                        y = apply_rule(s, x, r)
                        if cap is not None and y.a_length > cap:
                            continue
                        flag = bad
                        if is_basic(comp, rname):
                            segments += 1
                            t.check(not bad, f"{name}: non-positive middle word "
                                             f"before {rname} at depth {depth} from {first}")
                            flag = bad or not project_word(comp, y).is_positive()
                        node = (y, rname, flag)
                        if node not in seen:
                            seen.add(node)
                            nxt.append(node)
                layer = nxt
            nodes += len(seen)
        t.metrics[f"{name}.segments"] = segments
        t.metrics[f"{name}.nodes"] = nodes
    return t.report()


# ---------------------------------------------------------------- groups

def _s_computation(s, u, space_cap=20, step_cap=40):
    w = s.input_word(u)
    return s_accepting_search(s, w, space_cap, step_cap)


def _tm_computation(M, sm, u, space_cap=12):
    got = accepting_computation(M, make_input_config(M, u), space_cap)
    if got is None:
        return None
    configs, hist = got
    return replay(sm, config_to_word(M, configs[0]), hist)


def witness_cases(L=4, floor=HARD_FLOOR, max_len=2, tm_names=("even",), tm_inputs=((), ("a", "a"))):
    """Yield (label, presentation, multiplied machine, accepting computation)."""
    for name in fixtures.S_NAMES:
        s = fixtures.load_s(name)
        mm = multiply(s, L, floor)
        p = compile_simple(s, L, floor)
        for u in fixtures.words(s.input_alphabet, max_len):
            if not fixtures.expected(name, u):
                continue
            c = _s_computation(s, u)
            if c is None:
                continue
            yield f"{name}[{_show(u)}]", p, mm, c
    for name in tm_names:
        M = prepare_for_s_machine(fixtures.load(name))
        sm = from_turing(M)
        mm = multiply(sm, L, floor)
        p = compile_simple(sm, L, floor)
        for u in tm_inputs:
            c = _tm_computation(M, sm, u)
            if c is None:
                continue
            yield f"S({name})[{_show(u)}]", p, mm, c


def check_witness(L=4, floor=HARD_FLOOR, smoke_L=40, max_len=2, tm_names=("even",)):
    """Constructed rewritings have space at most 2 max||W_i|| + c1."""
    t = _Tally("prop1.1")
    worst = {}
    consts = {}
    for label, p, mm, c in witness_cases(L, floor, max_len, tm_names):
        big = replay(mm.machine, multiplied_word(mm, c.words[0]), c.history)
        w = witness_from_computation(p, mm, big)
        ok = w.space <= 2 * w.max_word + w.c1
        t.check(ok, f"{label}: space {w.space} > 2*{w.max_word} + {w.c1}")
        consts[label] = w.c1
        worst[label] = w.space - 2 * w.max_word
    if smoke_L:
        s = fixtures.load_s("eraser")
        mm = multiply(s, smoke_L)
        p = compile_simple(s, smoke_L)
        c = _s_computation(s, ("x",))
        big = replay(mm.machine, multiplied_word(mm, c.words[0]), c.history)
        w = witness_from_computation(p, mm, big)
        t.check(w.space <= 2 * w.max_word + w.c1,
                f"eraser at L={smoke_L}: space {w.space} > 2*{w.max_word} + {w.c1}")
        consts[f"eraser[x]@L={smoke_L}"] = w.c1
        worst[f"eraser[x]@L={smoke_L}"] = w.space - 2 * w.max_word
    t.metrics["c1"] = consts
    t.metrics["space_minus_twice_max_word"] = worst
    t.metrics["measured_c1"] = max(worst.values()) if worst else None
    return t.report()


# ---------------------------------------------------------------- Savitch

def check_savitch(names=fixtures.NAMES, max_letters=3, k_max=8, n_max=4, slack=1,
                  space_cap=12):
    """Savitch minspace equals the direct search, and so does the space function."""
    t = _Tally("savitch")
    for name, m in _machines(names):
        bound = max_letters + slack
        universe = configuration_universe(m, max_letters)
        pairs = 0
        for w in universe:
            for k in range(1, k_max + 1):
                direct = bounded_pair_spaces(m, w, bound, savitch_steps(k))
                table = SavitchTable(m, bound).reach_from(w, k)
                for w2 in universe:
                    pairs += 1
                    t.check(table.get(w2) == direct.get(w2),
                            f"{name}: reach({w}, {w2}, {k}) differs")
        # a sample through the public entry point
        for w in universe[:3]:
            for w2 in universe[:3]:
                r = savitch_reach(m, w, w2, 4, bound)
                d = bounded_pair_spaces(m, w, bound, savitch_steps(4)).get(w2)
                t.check(r.minspace == d, f"{name}: savitch_reach differs on a sample pair")
        t.metrics[f"{name}.pairs"] = pairs
        for n in range(n_max + 1):
            lang = enumerate_language(m, n, space_cap)
            direct = max((bfs_machine_space(m, make_input_config(m, u), space_cap).value
                          for u in lang.words), default=0)
            got = compute_space_function(m, n, space_cap, time_cap=2 ** 7)
            t.check(got == direct, f"{name}: space function at n={n}: {got} != {direct}")
    return t.report()


SUITES = {
    "lemma2.1": check_padding,
    "lemma2.2": check_symmetrized_runs,
    "lemma2.3": check_languages,
    "lemma2.5": check_positive_runs,
    "lemma2.6": check_adder,
    "lemma2.7": check_lift_round_trip,
    "lemma2.8": check_basic_segments,
    "prop1.1": check_witness,
    "savitch": check_savitch,
}


def run_suite(name, **knobs):
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](**knobs)
