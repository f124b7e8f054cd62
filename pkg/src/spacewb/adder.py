"""The adding machine Z(A): a binary counter over the letters of A.

Admissible words are ``L u p v R`` with p in {p(1), p(2), p(3)}; u lives in
the two digit copies A0 (digit 0) and A1 (digit 1), v in A itself. Starting
from ``L u p(1) R`` with u over A0 the machine counts u up to all ones and
back to all zeros, then parks at ``L u p(3) R``; that takes at least
2^len(u) steps.

Rules, written as substitutions for the p-letter:

    A(a)  a1 p(1) -> p(1) a      carry: a one digit moves right as a
    B(a)  a0 p(1) -> a1 p(2)     the first zero becomes one
    C(a)  p(2) a  -> a0 p(2)     the carried digits come back as zeros
    D     p(2) -> p(1)           only when v is empty
    E     p(1) -> p(3)           only when u is empty (overflow)
    F(a)  p(3) a  -> a0 p(3)     only while u is over A0
"""

from typing import NamedTuple

from .smachine import SMachine, SPart, SRule, make_word

IDLE_L = "L"
IDLE_R = "R"


class AdderNames(NamedTuple):
    zero: dict   # a -> name of its A0 copy
    one: dict    # a -> name of its A1 copy
    plain: dict  # a -> name of its A copy
    L: str
    R: str
    p: tuple     # names of p(1), p(2), p(3)


def default_names(A):
    return AdderNames({a: f"{a}_0" for a in A}, {a: f"{a}_1" for a in A},
                      {a: a for a in A}, IDLE_L, IDLE_R, ("p(1)", "p(2)", "p(3)"))


def adder_rules(A, names):
    """Positive rules as (name, p-part, domains) over sectors (u, v)."""
    z, o, pl = names.zero, names.one, names.plain
    p1, p2, p3 = names.p
    A0 = frozenset(z[a] for a in A)
    out = []
    for a in sorted(A):
        out.append((f"A({a})", SPart((o[a],), p1, (), (), p1, (pl[a],)), (None, None)))
    for a in sorted(A):
        out.append((f"B({a})", SPart((z[a],), p1, (), (o[a],), p2, ()), (None, None)))
    for a in sorted(A):
        out.append((f"C({a})", SPart((), p2, (pl[a],), (z[a],), p2, ()), (None, None)))
    out.append(("D", SPart((), p2, (), (), p1, ()), (None, frozenset())))
    out.append(("E", SPart((), p1, (), (), p3, ()), (frozenset(), None)))
    for a in sorted(A):
        out.append((f"F({a})", SPart((), p3, (pl[a],), (z[a],), p3, ()), (A0, None)))
    return out


def make_adder(A, names=None):
    A = tuple(sorted(A))
    if not A:
        raise ValueError("the adder needs a nonempty alphabet")
    names = names or default_names(A)
    L, R = names.L, names.R
    idle_l = SPart((), L, (), (), L, ())
    idle_r = SPart((), R, (), (), R, ())
    rules = tuple(SRule(n, (idle_l, part, idle_r), doms)
                  for n, part, doms in adder_rules(A, names))
    states = ((L,), tuple(names.p), (R,))
    alphabets = (tuple(names.zero[a] for a in A) + tuple(names.one[a] for a in A),
                 tuple(names.plain[a] for a in A))
    start = make_word((L, names.p[0], R), ((), ()))
    accept = make_word((L, names.p[2], R), ((), ()))
    return SMachine(states, alphabets, rules, start, accept, input_sector=0,
                    input_alphabet=tuple(names.zero[a] for a in A))


def adder_word(names, u, p_index=0, v=()):
    """``L u p(i) v R`` for a word u over A0 given by base letters."""
    return make_word((names.L, names.p[p_index], names.R),
                     (tuple(names.zero[a] for a in u), tuple(v)))


def canonical_run(names, u_digits):
    """Rule names of the canonical computation from ``L u p(1) R`` to ``L u p(3) R``.

    ``u_digits`` is the base-letter word u (all digits zero at the start).
    The computation is simulated on an explicit digit list.
    """
    letters = list(u_digits)
    digits = [0] * len(letters)
    # p sits after position `head` of u; sector v holds carried letters
    pos = len(letters)
    carried = []
    state = 1
    hist = []
    while True:
        if state == 1:
            if pos == 0:
                hist.append("E")
                state = 3
            elif digits[pos - 1] == 1:
                pos -= 1
                a = letters[pos]
                hist.append(f"A({a})")
                carried.insert(0, a)
            else:
                a = letters[pos - 1]
                digits[pos - 1] = 1
                hist.append(f"B({a})")
                state = 2
        elif state == 2:
            if carried:
                a = carried.pop(0)
                digits[pos] = 0
                pos += 1
                hist.append(f"C({a})")
            else:
                hist.append("D")
                state = 1
        else:
            if carried:
                a = carried.pop(0)
                digits[pos] = 0
                pos += 1
                hist.append(f"F({a})")
            else:
                return hist
