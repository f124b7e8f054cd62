"""Brute-force reference searches.

Every search reports one of three outcomes: ``found``, ``rejected`` (the
capped space was explored exhaustively) or ``cap_exhausted`` (a step cap cut
the search short, or the machine search had to prune configurations above
the space cap, so a larger cap might change the answer).
"""

from collections import deque
from fractions import Fraction
from math import gcd
from itertools import product
from typing import NamedTuple, Optional

from . import kernels
from .errors import BoundTooSmall, SpaceBoundExceeded
from .machine import (TapeConfig, a_length, accept_config, is_accept_config,
                      make_input_config, successors)
from .smachine import STrace, apply_rule, applicable, inverse_rule_name
from .words import INV

FOUND = "found"
REJECTED = "rejected"
CAP = "cap_exhausted"


class SearchResult(NamedTuple):
    status: str
    value: Optional[int]
    expanded: int
    detail: str = ""
    bounds: Optional[tuple] = None

    @property
    def found(self):
        return self.status == FOUND


# ---------------------------------------------------------------- machines

def _bfs(m, start, goal, space_cap, step_cap):
    """BFS from ``start`` restricted to a-length <= space_cap.

    Returns (depth or None, expanded, pruned, step_capped, parents).
    """
    if a_length(m, start) > space_cap:
        return None, 0, True, False, {}
    parents = {start: None}
    if goal(start):
        return 0, 0, False, False, parents
    frontier = [start]
    depth = 0
    expanded = 0
    pruned = False
    while frontier:
        if step_cap is not None and depth >= step_cap:
            return None, expanded, pruned, True, parents
        depth += 1
        nxt = []
        for c in frontier:
            expanded += 1
            for name, c2 in successors(m, c):
                if c2 in parents:
                    continue
                if a_length(m, c2) > space_cap:
                    pruned = True
                    continue
                parents[c2] = (c, name)
                if goal(c2):
                    return depth, expanded, pruned, False, parents
                nxt.append(c2)
        frontier = nxt
    return None, expanded, pruned, False, parents


def bfs_machine_space(m, c, space_cap, step_cap=None):
    """Least s such that an accepting computation of space <= s starts at c."""
    total = 0
    capped = False
    pruned = False
    for s in range(a_length(m, c), space_cap + 1):
        depth, expanded, pr, sc, _ = _bfs(m, c, lambda x: is_accept_config(m, x), s, step_cap)
        total += expanded
        if depth is not None:
            return SearchResult(FOUND, s, total, f"accepting computation of length {depth}")
        capped = capped or sc
        pruned = pr
    if capped or pruned:
        return SearchResult(CAP, None, total, f"no acceptance with space <= {space_cap}")
    return SearchResult(REJECTED, None, total, "reachable configurations exhausted")


def accepting_computation(m, c, space_cap, step_cap=None):
    """Shortest accepting computation within the caps, as (configs, history)."""
    depth, _, _, _, parents = _bfs(m, c, lambda x: is_accept_config(m, x), space_cap, step_cap)
    if depth is None:
        return None
    end = accept_config(m)
    configs = [end]
    hist = []
    while parents[configs[-1]] is not None:
        prev, name = parents[configs[-1]]
        configs.append(prev)
        hist.append(name)
    return configs[::-1], hist[::-1]


def accepts(m, u, space_cap, step_cap=None):
    c = make_input_config(m, u)
    depth, expanded, pruned, capped, _ = _bfs(m, c, lambda x: is_accept_config(m, x),
                                               space_cap, step_cap)
    if depth is not None:
        return SearchResult(FOUND, depth, expanded)
    if pruned or capped:
        return SearchResult(CAP, None, expanded)
    return SearchResult(REJECTED, None, expanded)


class LanguageResult(NamedTuple):
    words: tuple
    incomplete: tuple

    @property
    def complete(self):
        return not self.incomplete


def input_words(alphabet, max_len):
    for n in range(max_len + 1):
        for w in product(sorted(alphabet), repeat=n):
            yield w


def enumerate_language(m, max_len, space_cap=12, step_cap=None):
    acc = []
    unsure = []
    for u in input_words(m.input_alphabet, max_len):
        r = accepts(m, u, space_cap, step_cap)
        if r.found:
            acc.append(u)
        elif r.status == CAP:
            unsure.append(u)
    return LanguageResult(tuple(sorted(acc)), tuple(unsure))


def bounded_pair_spaces(m, w, space_bound, max_steps):
    """Min space of computations of length <= max_steps from w to every reachable c.

    Layered relaxation over configurations of a-length <= space_bound.
    """
    if a_length(m, w) > space_bound:
        raise SpaceBoundExceeded("start exceeds the space bound")
    best = {w: a_length(m, w)}
    for _ in range(max_steps):
        nxt = dict(best)
        for c, sp in best.items():
            for _, c2 in successors(m, c):
                la = a_length(m, c2)
                if la > space_bound:
                    continue
                val = max(sp, la)
                if val < nxt.get(c2, space_bound + 1):
                    nxt[c2] = val
        if nxt == best:
            break
        best = nxt
    return best


# ---------------------------------------------------------------- Savitch

class ReachResult(NamedTuple):
    reachable: bool
    minspace: Optional[int]
    calls: int = 0


def savitch_steps(k):
    """Computation length covered by reach(., ., k): halves of floor((k+1)/2)."""
    if k <= 1:
        return 1
    return 2 * savitch_steps((k + 1) // 2)


def _fill(alphabet, slots, n):
    """All ways to write n letters into ``slots`` words over ``alphabet``."""
    if slots == 1:
        for w in product(alphabet, repeat=n):
            yield (w,)
        return
    for i in range(n + 1):
        for head in product(alphabet, repeat=i):
            for rest in _fill(alphabet, slots - 1, n - i):
                yield (head,) + rest


def configuration_universe(m, space_bound, extra=()):
    """Configurations with at most ``space_bound`` letters on all tapes.

    State vectors are those occurring in commands (either side) and in
    ``extra``; no other vector can be the midpoint of a computation step.
    """
    vectors = set()
    for cmd in m.commands:
        vectors.add(tuple(p.lhs.state for p in cmd.parts))
        vectors.add(tuple(p.rhs.state for p in cmd.parts))
    for c in extra:
        vectors.add(tuple(tc.state for tc in c))
    k = m.tapes
    out = []
    for vec in sorted(vectors):
        for total in range(space_bound + 1):
            for split in _compositions(total, k):
                per_tape = [list(_fill(sorted(m.alphabets[j]), 2, split[j]))
                            for j in range(k)]
                for choice in product(*per_tape):
                    out.append(tuple(TapeConfig(lr[0], q, lr[1])
                                     for q, lr in zip(vec, choice)))
    return out


def _compositions(n, k):
    if k == 1:
        yield (n,)
        return
    for i in range(n + 1):
        for rest in _compositions(n - i, k - 1):
            yield (i,) + rest


def _one_step(m, w, w2):
    if w == w2:
        return True
    return any(c2 == w2 for _, c2 in successors(m, w))


def savitch_reach(m, w, w2, k, space_bound, strategy="tabled", universe=None):
    """reach(w, w2, k) with the minimal space of a witnessing computation.

    ``faithful`` recomputes sub-answers and loops over every midpoint of the
    universe, using memory proportional to the recursion depth. ``tabled``
    computes the same values from forward reach tables memoized per
    (configuration, k), which is what makes exhaustive comparison affordable.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if max(a_length(m, w), a_length(m, w2)) > space_bound:
        raise SpaceBoundExceeded("endpoint exceeds the space bound")
    if strategy == "faithful":
        if universe is None:
            universe = configuration_universe(m, space_bound, (w, w2))
        calls = [0]
        val = _faithful(m, w, w2, k, universe, calls)
        return ReachResult(val is not None, val, calls[0])
    table = SavitchTable(m, space_bound)
    val = table.reach_from(w, k).get(w2)
    return ReachResult(val is not None, val, table.calls)


def _faithful(m, w, w2, k, universe, calls):
    calls[0] += 1
    if k == 1:
        if _one_step(m, w, w2):
            return max(a_length(m, w), a_length(m, w2))
        return None
    h = (k + 1) // 2
    best = None
    for mid in universe:
        left = _faithful(m, w, mid, h, universe, calls)
        if left is None or (best is not None and left >= best):
            continue
        right = _faithful(m, mid, w2, h, universe, calls)
        if right is None:
            continue
        val = max(left, right)
        if best is None or val < best:
            best = val
    return best


class SavitchTable:
    """Memoized forward tables: reach_from(x, k)[y] = minspace of reach(x, y, k)."""

    def __init__(self, m, space_bound):
        self.m = m
        self.bound = space_bound
        self.memo = {}
        self.calls = 0

    def reach_from(self, x, k):
        key = (x, k)
        got = self.memo.get(key)
        if got is not None:
            return got
        self.calls += 1
        m = self.m
        lx = a_length(m, x)
        if k == 1:
            out = {x: lx}
            for _, y in successors(m, x):
                ly = a_length(m, y)
                if ly <= self.bound:
                    val = max(lx, ly)
                    if val < out.get(y, self.bound + 1):
                        out[y] = val
        else:
            h = (k + 1) // 2
            first = self.reach_from(x, h)
            out = {}
            for mid, s1 in first.items():
                for y, s2 in self.reach_from(mid, h).items():
                    val = max(s1, s2)
                    if val < out.get(y, self.bound + 1):
                        out[y] = val
        self.memo[key] = out
        return out


def compute_space_function(m, n, f_bound, time_cap=64, c0=0, cross_check=False,
                           check_cap=None):
    """Largest minimal accepting space over accepted inputs of length <= n.

    Inputs are scanned in lexicographic order keeping the running maximum.
    ``time_cap`` stands in for the theoretical 2^(c f(n)) time bound. With
    ``cross_check`` set, every rejected input is re-run through the direct BFS
    with a larger cap, and BoundTooSmall is raised if it was accepted there.
    """
    bound = f_bound + c0
    table = SavitchTable(m, bound)
    wf = accept_config(m)
    best = 0
    for u in input_words(m.input_alphabet, n):
        w = make_input_config(m, u)
        if a_length(m, w) > bound:
            val = None
        else:
            val = table.reach_from(w, time_cap).get(wf)
        if val is None:
            if cross_check:
                cap = check_cap if check_cap is not None else bound + 4
                r = bfs_machine_space(m, w, cap, None)
                if r.found:
                    raise BoundTooSmall(f"input {' '.join(u) or 'empty'} needs space {r.value}")
            continue
        best = max(best, val)
    return best


# ---------------------------------------------------------------- S-machines

def enumerate_reduced_computations(s, w, max_len):
    """All computations from w with reduced histories of length <= max_len.

    Depth first, trying rules in the machine's fixed order.
    """
    out = []

    def go(words, hist):
        out.append(STrace(tuple(words), tuple(hist)))
        if len(hist) == max_len:
            return
        last = inverse_rule_name(hist[-1]) if hist else None
        for name, r in s.candidates(words[-1].states):
            if name == last or not applicable(s, words[-1], r):
                continue
            words.append(apply_rule(s, words[-1], r))
            hist.append(name)
            go(words, hist)
            words.pop()
            hist.pop()

    go([w], [])
    return out


class ReducedNode(NamedTuple):
    word: object
    last: Optional[str]
    lo: int
    hi: int


def reduced_layers(s, w, max_len, space_cap=None, keep=None):
    """Breadth-first layers of reduced computations from w.

    A node records the current word, the last rule, and the least and largest
    word length seen on the way; two computations reaching the same node are
    interchangeable for every length and reachability question, so each node
    is kept once at the depth it first appears. Words whose length exceeds
    ``space_cap`` are dropped. ``keep`` optionally filters words to extend.
    Yields (depth, node) pairs, depth 0 first.
    """
    n0 = len(w)
    start = ReducedNode(w, None, n0, n0)
    seen = {start}
    frontier = [start]
    yield 0, start
    for depth in range(1, max_len + 1):
        nxt = []
        for node in frontier:
            if keep is not None and not keep(node.word):
                continue
            last = inverse_rule_name(node.last) if node.last else None
            for name, r in s.candidates(node.word.states):
                if name == last or not applicable(s, node.word, r):
                    continue
                w2 = apply_rule(s, node.word, r)
                ln = len(w2)
                if space_cap is not None and ln > space_cap:
                    continue
                nd = ReducedNode(w2, name, min(node.lo, ln), max(node.hi, ln))
                if nd in seen:
                    continue
                seen.add(nd)
                nxt.append(nd)
                yield depth, nd
        frontier = nxt
        if not frontier:
            return


def s_accepting_search(s, w, space_cap, step_cap):
    """BFS for the accept word of an S-machine; returns an STrace or None."""
    parents = {w: None}
    frontier = deque([(w, 0)])
    while frontier:
        x, d = frontier.popleft()
        if x == s.accept:
            words = [x]
            hist = []
            while parents[words[-1]] is not None:
                prev, name = parents[words[-1]]
                words.append(prev)
                hist.append(name)
            return STrace(tuple(words[::-1]), tuple(hist[::-1]))
        if d >= step_cap:
            continue
        for name, r in s.candidates(x.states):
            if not applicable(s, x, r):
                continue
            y = apply_rule(s, x, r)
            if y.a_length > space_cap or y in parents:
                continue
            parents[y] = (x, name)
            frontier.append((y, d + 1))
    return None


# ---------------------------------------------------------------- groups

def encode_presentation(gens, relators):
    """Map letters to signed ints; returns (code, ngens, relator tuple with inverses)."""
    code = {}
    for i, g in enumerate(gens, 1):
        code[g] = i
        code[g + INV] = -i
    rels = []
    for r in relators:
        t = tuple(code[x] for x in r)
        if not t:
            continue
        inv = tuple(-x for x in reversed(t))
        for cand in (t, inv):
            if cand not in rels:
                rels.append(cand)
    return code, len(gens), tuple(rels)


WEIGHT_MOD = 2147483647


def abelian_weights(ngens, rels):
    """An integer weight per generator vanishing on every relator.

    Taken modulo the prime ``WEIGHT_MOD`` this is a homomorphism onto a
    cyclic group: a word of nonzero weight is nontrivial in the group. The
    weight is a fixed generic combination of a basis of the rational
    solutions, so it separates about as well as all of them together;
    accidental cancellation only weakens pruning, never breaks it. Entry 0
    holds the modulus. Returns ``None`` when no such homomorphism exists.
    """
    rows = []
    for r in rels:
        row = [0] * (ngens + 1)
        for x in r:
            row[abs(x)] += 1 if x > 0 else -1
        rows.append([Fraction(v) for v in row[1:]])
    # reduced row echelon form
    pivots = []
    rank = 0
    for col in range(ngens):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][col]
        rows[rank] = [v / lead for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(ngens) if c not in pivots]
    if not free:
        return None
    total = [Fraction(0)] * ngens
    for k, fc in enumerate(free):
        coef = 1009 + 7919 * k
        vec = [Fraction(0)] * ngens
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fc]
        total = [a + coef * b for a, b in zip(total, vec)]
    den = 1
    for v in total:
        den = den * v.denominator // gcd(den, v.denominator)
    out = tuple(int(v * den) % WEIGHT_MOD for v in total)
    if not any(out):
        return None
    return (WEIGHT_MOD,) + out


def bfs_group_space(gens, relators, word, space_cap, step_cap=None, canonical=True,
                    backend=None, prune=True, state_cap=None):
    """Least cap such that (word) rewrites to () with every tuple norm <= cap.

    Iterative deepening on the cap. With ``prune`` a fragmentation producing
    a piece of nonzero abelian weight is skipped; such a piece can never
    vanish, so the value is the same with or without it. When a step or
    state cap cuts some level short the result is ``cap_exhausted`` with
    ``bounds`` = (lower, upper); upper is None if nothing was found.
    """
    word = tuple(word)
    code, ngens, rels = encode_presentation(gens, relators)
    weights = abelian_weights(ngens, rels) if prune else None
    start = (tuple(code[x] for x in word),) if word else ((),)
    k = kernels if backend is None else kernels.module(backend)
    total = 0
    lower = None
    for cap in range(len(word), space_cap + 1):
        found, exhausted, expanded, depth = k.bfs_vanish(start, rels, ngens, cap,
                                                         step_cap, canonical, weights,
                                                         state_cap)
        total += expanded
        if found:
            if lower is None:
                return SearchResult(FOUND, cap, total, f"vanishes in {depth} moves")
            return SearchResult(CAP, None, total, f"{lower} <= value <= {cap}", (lower, cap))
        if not exhausted and lower is None:
            lower = cap
    if lower is not None:
        return SearchResult(CAP, None, total, f"value >= {lower} (search limits hit)",
                            (lower, None))
    return SearchResult(REJECTED, None, total, f"no rewriting within norm {space_cap}",
                        (space_cap + 1, None))


def group_space(p, word, space_cap, **kw):
    """``bfs_group_space`` for a compiled Presentation."""
    return bfs_group_space(list(p.generators), p.words(), word, space_cap, **kw)
