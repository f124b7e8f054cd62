"""Multiplying an S-machine into S(L) and compiling group presentations.

Letters of the compiled group:

    k{b}        separator of block b (b = 1..L)
    q{j}.{s}    state s at position j (j = 1..N)
    a{j}.{x}    tape letter x in sector j (between positions j and j+1)
    t{j}.{r}    copy j of the positive rule r
    h.          prefix of the hatted copy (shared letters are not prefixed)

Positions run k1, block 1, k2, block 2, ... so that N = (K+1)L for a base
machine with K state positions; even blocks are mirror copies. The sector
after the last position (back to k1) is always empty.
"""

from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

from .errors import BadL, BadLetter, FormatError
from .smachine import SMachine, SPart, SRule, make_word
from .words import INV, base_letter, cyclic_reduce, inv_word, is_inverse, least_rotation, mirror

DEFAULT_FLOOR = 40
HARD_FLOOR = 4
HAT = "h."


def check_L(L, floor=DEFAULT_FLOOR):
    if not isinstance(L, int) or L % 2 or L < max(HARD_FLOOR, floor):
        raise BadL(f"L must be even and at least {max(HARD_FLOOR, floor)}, got {L}")


@dataclass(frozen=True)
class MultipliedMachine:
    machine: SMachine
    base: SMachine
    L: int
    K: int
    hat: bool

    @property
    def N(self):
        return (self.K + 1) * self.L

    def position(self, b, i):
        """Global position (1-based) of base position i (0-based) in block b."""
        r = i + 1 if b % 2 else self.K - i
        return (b - 1) * (self.K + 1) + 1 + r

    def sector(self, b, i):
        """Global sector (1-based) holding base sector i (0-based) in block b."""
        r = i + 1 if b % 2 else self.K - 1 - i
        return (b - 1) * (self.K + 1) + 1 + r

    def has_letters(self, b):
        return not (self.hat and b == 1)


class Namer:
    def __init__(self, base, hat):
        self.hat = hat
        self.shared_states = set(base.start.states) | set(base.accept.states)
        self.shared_letters = set(base.input_alphabet)

    def k(self, b):
        return f"k{b}"

    def q(self, j, s):
        pre = HAT if self.hat and s not in self.shared_states else ""
        return f"{pre}q{j}.{s}"

    def a(self, j, x):
        inv = is_inverse(x)
        x = base_letter(x)
        pre = HAT if self.hat and x not in self.shared_letters else ""
        name = f"{pre}a{j}.{x}"
        return name + INV if inv else name

    def t(self, j, r):
        pre = HAT if self.hat else ""
        return f"{pre}t{j}.{r}"


def _mirror_part(p):
    return SPart(mirror(p.u), p.q, mirror(p.v), mirror(p.u2), p.q2, mirror(p.v2))


def multiply(s, L, floor=DEFAULT_FLOOR, hat=False):
    """S(L) (or its hatted copy): L blocks, even ones mirrored, separators fixed."""
    check_L(L, floor)
    K = len(s.states)
    mm = MultipliedMachine(None, s, L, K, hat)
    nm = Namer(s, hat)
    N = mm.N
    states = [None] * N
    alphabets = [()] * (N - 1)
    for b in range(1, L + 1):
        states[(b - 1) * (K + 1)] = (nm.k(b),)
        for i in range(K):
            j = mm.position(b, i)
            states[j - 1] = tuple(nm.q(j, x) for x in s.states[i])
        if mm.has_letters(b):
            for i in range(K - 1):
                j = mm.sector(b, i)
                alphabets[j - 1] = tuple(nm.a(j, x) for x in s.alphabets[i])
    rules = []
    for r in s.rules:
        parts = [None] * N
        doms = [frozenset()] * (N - 1)
        for b in range(1, L + 1):
            kb = nm.k(b)
            parts[(b - 1) * (K + 1)] = SPart((), kb, (), (), kb, ())
            for i in range(K):
                j = mm.position(b, i)
                p = r.parts[i] if b % 2 else _mirror_part(r.parts[i])
                lsec, rsec = j - 1, j   # sectors left and right of position j
                if mm.has_letters(b):
                    # the left context sits in sector j-1, the right one in sector j
                    v = tuple(nm.a(lsec, x) for x in p.v)
                    v2 = tuple(nm.a(lsec, x) for x in p.v2)
                    u = tuple(nm.a(rsec, x) for x in p.u)
                    u2 = tuple(nm.a(rsec, x) for x in p.u2)
                else:
                    v = v2 = u = u2 = ()
                parts[j - 1] = SPart(v, nm.q(j, p.q), u, v2, nm.q(j, p.q2), u2)
            if mm.has_letters(b):
                for i in range(K - 1):
                    j = mm.sector(b, i)
                    d = r.domains[i]
                    doms[j - 1] = (frozenset(alphabets[j - 1]) if d is None
                                   else frozenset(nm.a(j, x) for x in d))
        rules.append(SRule(HAT + r.name if hat else r.name, tuple(parts), tuple(doms),
                           r.positive, r.basic))
    start = lift_word(mm, nm, s.start)
    accept = lift_word(mm, nm, s.accept)
    machine = SMachine(tuple(states), tuple(alphabets), tuple(rules), start, accept)
    return MultipliedMachine(machine, s, L, K, hat)


def hat_machine(s, L, floor=DEFAULT_FLOOR):
    return multiply(s, L, floor, hat=True)


def rule_of(mm, name):
    """Name of the S(L) rule copying base rule ``name``."""
    return HAT + name if mm.hat else name


def lift_word(mm, nm, W):
    K = mm.K
    N = (K + 1) * mm.L
    states = [None] * N
    sectors = [()] * (N - 1)
    for b in range(1, mm.L + 1):
        states[(b - 1) * (K + 1)] = nm.k(b)
        for i in range(K):
            j = mm.position(b, i)
            states[j - 1] = nm.q(j, W.states[i])
        if mm.has_letters(b):
            for i in range(K - 1):
                j = mm.sector(b, i)
                w = W.sectors[i] if b % 2 else mirror(W.sectors[i])
                sectors[j - 1] = tuple(nm.a(j, x) for x in w)
    return make_word(states, sectors)


def multiplied_word(mm, W):
    return lift_word(mm, Namer(mm.base, mm.hat), W)


def _as_multiplied(s, L, floor):
    return s if isinstance(s, MultipliedMachine) else multiply(s, L, floor)


def sigma_word(s, L=None, u=(), floor=DEFAULT_FLOOR):
    """Letters of the input word of S(L) for input u (s may already be multiplied)."""
    mm = _as_multiplied(s, L, floor)
    for x in u:
        if x not in mm.base.input_alphabet:
            raise BadLetter(f"{x!r} is not an input letter")
    return multiplied_word(mm, mm.base.input_word(u)).letters()


def sigma0_word(s, L=None, floor=DEFAULT_FLOOR):
    mm = _as_multiplied(s, L, floor)
    return multiplied_word(mm, mm.base.accept).letters()


# ---------------------------------------------------------------- presentations

class Relator(NamedTuple):
    word: Tuple[str, ...]
    kind: str               # "tq", "ta" or "hub"
    rule: Optional[str] = None
    position: Optional[int] = None


@dataclass(frozen=True)
class Presentation:
    generators: Tuple[str, ...]
    relators: Tuple[Relator, ...]

    def words(self):
        return [r.word for r in self.relators]

    def counts(self):
        out = {"generators": len(self.generators), "relators": len(self.relators)}
        for kind in ("tq", "ta", "hub"):
            out[kind] = sum(1 for r in self.relators if r.kind == kind)
        return out


def normal_form(w):
    return least_rotation(cyclic_reduce(w))


def tq_relator(U, t_next, V, t_here):
    """U t_{j+1} V^-1 t_j^-1 as a cyclic normal form."""
    return normal_form(tuple(U) + (t_next,) + inv_word(V) + (t_here + INV,))


def ta_relator(t, a):
    return normal_form((t, a, t + INV, a + INV))


def _part_words(p):
    return p.v + (p.q,) + p.u, p.v2 + (p.q2,) + p.u2


def machine_relators(mm):
    """(theta,q)- and (theta,a)-relators of S(L), rule by rule.

    The copy t_{j+1} sits in sector j, between positions j and j+1, so the
    commuting letters for t_{j+1} are those of sector j; the last copy wraps
    around to t_1.
    """
    nm = Namer(mm.base, mm.hat)
    s = mm.machine
    N = mm.N
    rels = []
    for r in s.rules:
        if not r.positive:
            continue
        base = r.name[len(HAT):] if mm.hat else r.name
        for j in range(1, N + 1):
            U, V = _part_words(r.parts[j - 1])
            tn = nm.t(j % N + 1, base)
            th = nm.t(j, base)
            rels.append(Relator(tq_relator(U, tn, V, th), "tq", r.name, j))
        for j in range(1, N):
            d = r.domains[j - 1]
            letters = s.alphabets[j - 1] if d is None else sorted(d)
            tn = nm.t(j + 1, base)
            for a in letters:
                rels.append(Relator(ta_relator(tn, a), "ta", r.name, j))
    return rels


def machine_generators(mm):
    nm = Namer(mm.base, mm.hat)
    s = mm.machine
    out = []
    for j in range(mm.N):
        out.extend(s.states[j])
        if j < mm.N - 1:
            out.extend(s.alphabets[j])
    for r in s.rules:
        if r.positive:
            base = r.name[len(HAT):] if mm.hat else r.name
            out.extend(nm.t(j, base) for j in range(1, mm.N + 1))
    return out


def hub_relator(mm):
    return Relator(tuple(sigma0_word(mm)), "hub")


def compile_simple(s, L, floor=DEFAULT_FLOOR):
    mm = multiply(s, L, floor)
    gens = machine_generators(mm)
    rels = machine_relators(mm) + [hub_relator(mm)]
    return Presentation(tuple(gens), tuple(rels))


def compile_embedding(s, L, floor=DEFAULT_FLOOR):
    mm = multiply(s, L, floor)
    hm = hat_machine(s, L, floor)
    gens = machine_generators(mm)
    seen = set(gens)
    for g in machine_generators(hm):
        if g not in seen:
            seen.add(g)
            gens.append(g)
    rels = machine_relators(mm) + machine_relators(hm) + [hub_relator(mm)]
    return Presentation(tuple(gens), tuple(rels))


def expected_counts(s, L, mode="simple"):
    """Closed-form generator and relator counts."""
    K = len(s.states)
    N = (K + 1) * L
    pos = [r for r in s.rules if r.positive]
    states = L + (L // 2) * 2 * sum(len(q) for q in s.states)
    letters = L * sum(len(a) for a in s.alphabets)
    per_rule_ta = [L * sum(len(s.alphabets[i]) if r.domains[i] is None else len(r.domains[i])
                           for i in range(K - 1)) for r in pos]
    out = {"N": N, "tq": N * len(pos), "ta": sum(per_rule_ta), "hub": 1,
           "generators": states + letters + N * len(pos)}
    if mode == "embedding":
        shared_q = set(s.start.states) | set(s.accept.states)
        hat_states = L // 2 * 2 * sum(1 for q in s.states for x in q if x not in shared_q)
        hat_letters = (L - 1) * sum(1 for a in s.alphabets for x in a
                                    if x not in set(s.input_alphabet))
        out["generators"] += hat_states + hat_letters + N * len(pos)
        out["tq"] *= 2
        hat_ta = [(L - 1) * sum(len(s.alphabets[i]) if r.domains[i] is None else len(r.domains[i])
                                for i in range(K - 1)) for r in pos]
        out["ta"] += sum(hat_ta)
    out["relators"] = out["tq"] + out["ta"] + out["hub"]
    return out


# ---------------------------------------------------------------- text format

def emit_presentation(p):
    lines = [f"gen {g}" for g in p.generators]
    lines += ["rel " + " ".join(r.word) for r in p.relators]
    return "\n".join(lines) + ("\n" if lines else "")


def _strip_hat(x):
    x = base_letter(x)
    return x[len(HAT):] if x.startswith(HAT) else x


def _kind(x):
    return _strip_hat(x)[0]


def _index(x):
    body = _strip_hat(x)
    head = body.split(".", 1)[0]
    return head[1:]


def _rule_of_t(x):
    body = _strip_hat(x)
    name = body.split(".", 1)[1]
    return HAT + name if base_letter(x).startswith(HAT) else name


def parse_presentation(text, path=None):
    gens = []
    rels = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = raw.split()
        if not toks:
            continue
        if toks[0] == "gen" and len(toks) == 2:
            gens.append(toks[1])
        elif toks[0] == "rel":
            rels.append(classify(tuple(toks[1:])))
        else:
            raise FormatError(f"expected 'gen NAME' or 'rel WORD', got {raw!r}", path, lineno)
    known = set(gens)
    for r in rels:
        for x in r.word:
            if base_letter(x) not in known:
                raise FormatError(f"relator letter {x} is not a generator", path)
    return Presentation(tuple(gens), tuple(rels))


def classify(word):
    """Recover kind and provenance of a relator from its letters."""
    ts = [x for x in word if _kind(x) == "t"]
    if not ts:
        return Relator(tuple(word), "hub")
    rule = _rule_of_t(ts[0])
    idx = sorted({int(_index(x)) for x in ts})
    if any(_kind(x) in "qk" for x in word):
        # t_j and t_{j+1}; the pair (N, 1) wraps around
        if len(idx) == 2 and idx[0] == 1 and idx[1] > 2:
            pos = idx[1]
        else:
            pos = idx[0]
        return Relator(tuple(word), "tq", rule, pos)
    a = next(x for x in word if _kind(x) == "a")
    return Relator(tuple(word), "ta", rule, int(_index(a)))


def load_presentation(path):
    with open(path) as fh:
        return parse_presentation(fh.read(), path)


def relators_of(gens_and_rels):
    """Plain (generators, relator words) for any presentation-like input."""
    if isinstance(gens_and_rels, Presentation):
        return list(gens_and_rels.generators), gens_and_rels.words()
    gens, rels = gens_and_rels
    return list(gens), [tuple(r) for r in rels]
