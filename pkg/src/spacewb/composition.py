"""Composition of S(M) with copies of the adding machine.

Positions are K1, P1, K2, ..., Pl, K(l+1) where K(i) are the state sets of
S(M) and P(i) the p-letters. Sector 2i-1 (between K(i) and P(i)) holds the
digit copies of S(M)'s sector i: the original letters play the role of A0,
letters with suffix ``_1`` the role of A1. Sector 2i holds the copy of the
sector alphabet with suffix ``_z`` (the adder's A).
"""

from typing import NamedTuple

from .adder import AdderNames, adder_rules, canonical_run
from .errors import MalformedTrace, NotPositive, S10Missing
from .smachine import (AdmissibleWord, SMachine, SPart, SRule, STrace, apply_rule,
                       from_turing, inverse_rule_name, make_word, replay)
from .transforms import satisfies_s10
from .words import INV, base_letter, is_inverse, reduce_word

ONE = "_1"
ZED = "_z"


class Composition(NamedTuple):
    machine: SMachine
    base: SMachine          # S(M)
    start_rule: str
    accept_rule: str
    blocks: int             # number of sectors of S(M)


def p_name(i, theta=None, j=None, sign=None):
    if theta is None:
        return f"p{i}"
    return f"p{i}({theta},{j}{sign})"


def _names(alphabet, i, theta, sign):
    return AdderNames({a: a for a in alphabet}, {a: a + ONE for a in alphabet},
                      {a: a + ZED for a in alphabet}, None, None,
                      tuple(p_name(i, theta, j, sign) for j in (1, 2, 3)))


def zrule_name(tau, i, theta, sign):
    return f"{tau}[{i},{theta},{sign}]"


def zeta_name(theta, sign):
    return f"zeta({theta},{sign})"


def _is_start(rule, sm):
    return tuple(p.q for p in rule.parts) == sm.start.states


def _is_accept(rule, sm):
    return tuple(p.q2 for p in rule.parts) == sm.accept.states


def compose_with_adder(m):
    """M o Z for a symmetric, one-letter machine with the s10 condition."""
    if not satisfies_s10(m):
        raise S10Missing("composition needs the s10 condition")
    sm = from_turing(m)
    l = sm.sector_count
    ks = sm.states
    pos = [r for r in sm.rules if r.positive]
    starts = [r for r in pos if _is_start(r, sm)]
    accepts = [r for r in pos if _is_accept(r, sm)]
    start_rule, accept_rule = starts[0], accepts[0]

    def base_dom(i):
        return frozenset(sm.alphabets[i])

    def full(i):
        return frozenset(sm.alphabets[i]) | frozenset(a + ONE for a in sm.alphabets[i])

    rules = []
    pstates = [[p_name(i + 1)] for i in range(l)]
    for th in pos:
        t = th.name
        is_s = th is start_rule
        is_a = th is accept_rule
        for i in range(l):
            for sign in "-+":
                if (sign == "-" and is_s) or (sign == "+" and is_a):
                    continue
                pstates[i].extend(p_name(i + 1, t, j, sign) for j in (1, 2, 3))
        # the basic rule
        parts = []
        doms = []
        for i in range(l + 1):
            sp = th.parts[i]
            parts.append(SPart((), sp.q, sp.u, (), sp.q2, sp.u2))
            if i < l:
                nxt = th.parts[i + 1]
                before = p_name(i + 1) if is_s else p_name(i + 1, t, 3, "-")
                after = p_name(i + 1) if is_a else p_name(i + 1, t, 1, "+")
                parts.append(SPart(nxt.v, before, (), nxt.v2, after, ()))
                d = th.domains[i]
                doms.append(base_dom(i) if d is None else frozenset(d))
                doms.append(frozenset())
        rules.append(SRule(t, tuple(parts), tuple(doms), True, True))
        # the adder copies and the transition rules
        for sign in "-+":
            if (sign == "-" and is_s) or (sign == "+" and is_a):
                continue
            kvec = [p.q for p in th.parts] if sign == "-" else [p.q2 for p in th.parts]
            for i in range(l):
                names = _names(sm.alphabets[i], i + 1, t, sign)
                for tau, ppart, (d_u, d_v) in adder_rules(sm.alphabets[i], names):
                    parts = []
                    doms = []
                    for j in range(l):
                        kj = kvec[j]
                        parts.append(SPart((), kj, (), (), kj, ()))
                        if j == i:
                            parts.append(ppart)
                            doms.append(full(j) if d_u is None else d_u)
                            doms.append(None if d_v is None else d_v)
                        else:
                            pj = p_name(j + 1, t, 3 if j < i else 1, sign)
                            parts.append(SPart((), pj, (), (), pj, ()))
                            doms.append(base_dom(j))
                            doms.append(frozenset())
                    parts.append(SPart((), kvec[l], (), (), kvec[l], ()))
                    rules.append(SRule(zrule_name(tau, i + 1, t, sign), tuple(parts),
                                       tuple(doms)))
            parts = []
            doms = []
            for j in range(l):
                kj = kvec[j]
                parts.append(SPart((), kj, (), (), kj, ()))
                if sign == "-":
                    parts.append(SPart((), p_name(j + 1), (), (), p_name(j + 1, t, 1, "-"), ()))
                else:
                    parts.append(SPart((), p_name(j + 1, t, 3, "+"), (), (), p_name(j + 1), ()))
                # digits must all be zeros when the p-letters switch
                doms.append(base_dom(j))
                doms.append(frozenset())
            parts.append(SPart((), kvec[l], (), (), kvec[l], ()))
            rules.append(SRule(zeta_name(t, sign), tuple(parts), tuple(doms)))
    states = []
    alphabets = []
    for i in range(l):
        states.append(ks[i])
        states.append(tuple(pstates[i]))
        alphabets.append(tuple(sm.alphabets[i]) + tuple(a + ONE for a in sm.alphabets[i]))
        alphabets.append(tuple(a + ZED for a in sm.alphabets[i]))
    states.append(ks[l])
    machine = SMachine(tuple(states), tuple(alphabets), tuple(rules),
                       lift_word(sm.start), lift_word(sm.accept),
                       input_sector=0, input_alphabet=sm.input_alphabet)
    return Composition(machine, sm, start_rule.name, accept_rule.name, l)


def lift_word(W, p=None):
    """Insert p-letters after every K-letter but the last (default p_i)."""
    states = []
    sectors = []
    l = len(W.sectors)
    for i in range(l):
        states.append(W.states[i])
        states.append(p[i] if p else p_name(i + 1))
        sectors.append(W.sectors[i])
        sectors.append(())
    states.append(W.states[l])
    return make_word(states, sectors)


def _strip(x):
    b = base_letter(x)
    for suf in (ONE, ZED):
        if b.endswith(suf):
            b = b[: -len(suf)]
            break
    return b + INV if is_inverse(x) else b


def project_word(comp, w):
    """Drop p-letters and map every tape letter of a block to S(M)'s copy."""
    l = comp.blocks
    states = tuple(w.states[2 * i] for i in range(l + 1))
    sectors = tuple(reduce_word([_strip(x) for x in w.sectors[2 * i] + w.sectors[2 * i + 1]])
                    for i in range(l))
    return AdmissibleWord(states, sectors)


def is_basic(comp, name):
    base = name[: -len(INV)] if name.endswith(INV) else name
    r = comp.machine._index.get(base)
    return r is not None and r.basic


def project_computation(comp, t):
    """Keep only the basic steps; the words are the projections around them."""
    s = comp.machine
    for i, name in enumerate(t.history):
        try:
            if apply_rule(s, t.words[i], name) != t.words[i + 1]:
                raise MalformedTrace(f"step {i + 1} does not replay")
        except (KeyError, ValueError) as e:
            raise MalformedTrace(f"step {i + 1}: {e}")
        except Exception as e:
            if isinstance(e, MalformedTrace):
                raise
            raise MalformedTrace(f"step {i + 1}: {e}")
    words = [project_word(comp, t.words[0])]
    hist = []
    for i, name in enumerate(t.history):
        if is_basic(comp, name):
            hist.append(name)
            words.append(project_word(comp, t.words[i + 1]))
    return STrace(tuple(words), tuple(hist))


def _z_phase(comp, w, theta, sign, order):
    """Run the adder copies of one phase on w; returns (names, final word)."""
    s = comp.machine
    sm = comp.base
    hist = []
    for i in order:
        names = _names(sm.alphabets[i], i + 1, theta, sign)
        u = w.sectors[2 * i]
        for step in canonical_run(names, u):
            hist.append(zrule_name(step, i + 1, theta, sign))
            w = apply_rule(s, w, hist[-1])
    return hist, w


def lift_step(comp, W, name):
    """M o Z history simulating one positive-word step W -> W o name of S(M)."""
    s = comp.machine
    base = name[: -len(INV)] if name.endswith(INV) else name
    l = comp.blocks
    if name.endswith(INV):
        # run the positive step from the far end and read it backwards
        W2 = apply_rule(comp.base, W, name)
        fwd = lift_step(comp, W2, base)
        return [inverse_rule_name(x) for x in reversed(fwd)]
    w = lift_word(W)
    hist = []
    is_s = base == comp.start_rule
    is_a = base == comp.accept_rule
    if not is_s:
        hist.append(zeta_name(base, "-"))
        w = apply_rule(s, w, hist[-1])
        h, w = _z_phase(comp, w, base, "-", range(l))
        hist += h
    hist.append(base)
    w = apply_rule(s, w, base)
    if not is_a:
        h, w = _z_phase(comp, w, base, "+", range(l))
        hist += h
        hist.append(zeta_name(base, "+"))
        w = apply_rule(s, w, hist[-1])
    return hist


def canonical_lift(comp, c):
    """Lift a positive S(M) computation to M o Z, step by step."""
    if not all(W.is_positive() for W in c.words):
        raise NotPositive("canonical lift needs a computation of positive words")
    hist = []
    for W, name in zip(c.words, c.history):
        hist += lift_step(comp, W, name)
    return replay(comp.machine, lift_word(c.words[0]), hist)
