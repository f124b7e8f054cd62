"""Rewriting of word tuples by the elementary transformations.

A state is a tuple of words. The moves are

    FreeReduce   insert or remove a pair x x^-1 in one word
    RelatorMove  insert or remove a literal relator (or its inverse)
    CyclicShift  replace a word by a cyclic conjugate
    Fragment     split a word uv into the pair u, v
    DropEmpty    delete an empty word

The space of a rewriting is the largest total length of a tuple along it.
"""

from typing import NamedTuple, Optional, Tuple

from .compiler import MultipliedMachine, relators_of
from .errors import FormatError, IllegalMove, NotAccepting, NotApplicable
from .smachine import apply_rule
from .words import INV, base_letter, inv_letter, inv_word, least_rotation


class FreeReduce(NamedTuple):
    i: int
    pos: int
    insert: bool
    letter: Optional[str] = None


class RelatorMove(NamedTuple):
    i: int
    pos: int
    word: Tuple[str, ...]
    insert: bool


class CyclicShift(NamedTuple):
    i: int
    offset: int


class Fragment(NamedTuple):
    i: int
    split: int


class DropEmpty(NamedTuple):
    i: int


def norm(W):
    return sum(len(w) for w in W)


class Rules:
    """Generators and relators (closed under inversion) of a presentation."""

    def __init__(self, p):
        gens, rels = relators_of(p)
        self.generators = frozenset(gens)
        self.relators = set()
        for r in rels:
            self.relators.add(tuple(r))
            self.relators.add(inv_word(r))
        self.max_len = max((len(r) for r in self.relators), default=0)
        # cyclic normal form -> literal relator having it as a rotation
        self.rotations = {}
        for r in sorted(self.relators):
            self.rotations.setdefault(least_rotation(r), r)


def _rules(p):
    return p if isinstance(p, Rules) else Rules(p)


def apply_move(p, W, m):
    R = _rules(p)
    W = tuple(tuple(w) for w in W)
    if not 0 <= m.i < len(W):
        raise IllegalMove(f"word index {m.i} out of range (tuple has {len(W)} words)")
    w = W[m.i]

    def put(*words):
        return W[: m.i] + tuple(words) + W[m.i + 1:]

    if isinstance(m, FreeReduce):
        if m.insert:
            if m.letter is None or base_letter(m.letter) not in R.generators:
                raise IllegalMove(f"{m.letter!r} is not a generator")
            if not 0 <= m.pos <= len(w):
                raise IllegalMove(f"insert position {m.pos} out of range")
            return put(w[: m.pos] + (m.letter, inv_letter(m.letter)) + w[m.pos:])
        if not 0 <= m.pos < len(w) - 1 or w[m.pos + 1] != inv_letter(w[m.pos]):
            raise IllegalMove(f"no cancelling pair at position {m.pos}")
        return put(w[: m.pos] + w[m.pos + 2:])
    if isinstance(m, RelatorMove):
        r = tuple(m.word)
        if r not in R.relators:
            raise IllegalMove("not a relator or the inverse of one")
        if m.insert:
            if not 0 <= m.pos <= len(w):
                raise IllegalMove(f"insert position {m.pos} out of range")
            return put(w[: m.pos] + r + w[m.pos:])
        if m.pos < 0 or w[m.pos: m.pos + len(r)] != r:
            raise IllegalMove(f"relator does not occur at position {m.pos}")
        return put(w[: m.pos] + w[m.pos + len(r):])
    if isinstance(m, CyclicShift):
        if not w:
            return W
        k = m.offset % len(w)
        return put(w[k:] + w[:k])
    if isinstance(m, Fragment):
        if not 0 <= m.split <= len(w):
            raise IllegalMove(f"split {m.split} out of range")
        return put(w[: m.split], w[m.split:])
    if isinstance(m, DropEmpty):
        if w:
            raise IllegalMove("word is not empty")
        return put()
    raise IllegalMove(f"unknown move {m!r}")


class RewriteTrace(NamedTuple):
    start: Tuple[Tuple[str, ...], ...]
    moves: Tuple[object, ...]

    def tuples(self, p):
        R = _rules(p)
        W = self.start
        out = [W]
        for m in self.moves:
            W = apply_move(R, W, m)
            out.append(W)
        return out

    def space(self, p):
        return max(norm(W) for W in self.tuples(p))


class TraceReport(NamedTuple):
    valid: bool
    final: Optional[tuple]
    space: Optional[int]
    failed_at: Optional[int] = None
    reason: str = ""


def validate_trace(p, t):
    R = _rules(p)
    W = tuple(tuple(w) for w in t.start)
    space = norm(W)
    step = max(2, R.max_len)
    for k, m in enumerate(t.moves):
        try:
            W2 = apply_move(R, W, m)
        except IllegalMove as e:
            return TraceReport(False, None, None, k, str(e))
        if abs(norm(W2) - norm(W)) > step:
            return TraceReport(False, None, None, k, "norm jumped by more than one move allows")
        W = W2
        space = max(space, norm(W))
    return TraceReport(True, W, space)


# ---------------------------------------------------------------- construction

class _Builder:
    """Single-word rewriter recording every move it makes."""

    def __init__(self, R, word):
        self.R = R
        self.W = (tuple(word),)
        self.moves = []
        self.peak = norm(self.W)

    @property
    def w(self):
        return self.W[0]

    def do(self, m):
        self.W = apply_move(self.R, self.W, m)
        self.moves.append(m)
        self.peak = max(self.peak, norm(self.W))

    def cancel_at(self, c, times):
        for _ in range(times):
            self.do(FreeReduce(0, c, False))
            c -= 1

    def reduce_all(self):
        while True:
            w = self.w
            for k in range(len(w) - 1):
                if w[k + 1] == inv_letter(w[k]):
                    self.do(FreeReduce(0, k, False))
                    break
            else:
                return

    def insert_rotation(self, p, rho):
        """Make rho (a cyclic conjugate of a relator) appear at position p."""
        rho = tuple(rho)
        r = self.R.rotations.get(least_rotation(rho))
        if r is None:
            raise NotApplicable("no relator has " + " ".join(rho) + " as a rotation")
        n = len(r)
        k = next(k for k in range(n) if r[k:] + r[:k] == rho)
        A, B = r[:k], r[k:]
        if len(A) <= len(B):
            # A^-1 (A B) A, then cancel A^-1 A
            for j, a in enumerate(reversed(A)):
                self.do(FreeReduce(0, p + j, True, inv_letter(a)))
            self.do(RelatorMove(0, p + len(A), r, True))
            self.cancel_at(p + len(A) - 1, len(A))
        else:
            # B (A B) B^-1, then cancel B B^-1
            for j, b in enumerate(B):
                self.do(FreeReduce(0, p + j, True, b))
            self.do(RelatorMove(0, p + len(B), r, True))
            self.cancel_at(p + len(B) + n - 1, len(B))

    def replace(self, p, X, Y):
        """Rewrite the subword X at p into Y, where Y X^-1 is a relator rotation."""
        X, Y = tuple(X), tuple(Y)
        if self.w[p: p + len(X)] != X:
            raise NotApplicable("expected " + " ".join(X) + f" at position {p}")
        self.insert_rotation(p, Y + inv_word(X))
        self.cancel_at(p + len(Y) + len(X) - 1, len(X))


def _t_letter(mm, base, j, sign):
    name = f"t{j}.{base}"
    if mm.hat:
        name = "h." + name
    return name if sign > 0 else name + INV


def _state_letters(s):
    return {x for q in s.states for x in q}


def expand_conjugation_step(p, mm, W, theta):
    """Moves turning (W) into (W o theta) in the presented group.

    The word is conjugated by the first copy of theta, which is then pushed
    through the word position by position: each state letter uses its
    (theta,q)-relator and each tape letter a commutation relator.
    Returns (moves, W o theta, peak norm).
    """
    if not isinstance(mm, MultipliedMachine):
        raise TypeError("expand_conjugation_step needs the multiplied machine")
    s = mm.machine
    R = _rules(p)
    W2 = apply_rule(s, W, theta)
    r = s.rule(theta)
    sign = 1 if r.positive else -1
    name = r.name if r.positive else r.name[: -len(INV)]
    base = name[len("h."):] if mm.hat else name
    N = mm.N
    states = _state_letters(s)
    b = _Builder(R, W.letters())
    t1 = _t_letter(mm, base, 1, sign)
    b.do(FreeReduce(0, 0, True, t1))
    b.do(CyclicShift(0, 1))
    p_ = 0
    for j in range(1, N + 1):
        part = r.parts[j - 1]
        tj = inv_letter(_t_letter(mm, base, j, sign))
        tn = inv_letter(_t_letter(mm, base, j % N + 1, sign))
        # tj^-1 sits at p_; pull it behind v (letters of sector j-1)
        for a in reversed(part.v):
            b.replace(p_, (tj,), (inv_letter(a), tj, a))
            p_ += 1
        X = (tj,) + tuple(part.v) + (part.q,)
        Y = tuple(part.v2) + (part.q2,) + tuple(part.u2) + (tn,) + inv_word(part.u)
        b.replace(p_, X, Y)
        b.reduce_all()
        if tn not in b.w:
            break
        p_ = b.w.index(tn)
        while p_ + 1 < len(b.w) and base_letter(b.w[p_ + 1]) not in states \
                and b.w[p_ + 1] != inv_letter(tn):
            a = b.w[p_ + 1]
            b.replace(p_, (tn, a), (a, tn))
            p_ += 1
        b.reduce_all()
        if tn not in b.w:
            break
    if b.w != W2.letters():
        raise NotApplicable("conjugation did not reach the expected word")
    return b.moves, W2, b.peak


class Witness(NamedTuple):
    trace: RewriteTrace
    space: int
    max_word: int
    c1: int


def witness_constant(p):
    """c1: the additive constant of the construction (three relator lengths + 2)."""
    return 3 * _rules(p).max_len + 2


def witness_from_computation(p, mm, c):
    """A rewriting (Sigma(u,L)) -> ... -> (Sigma_0) -> ('') -> () from an accepting computation."""
    s = mm.machine
    if not c.words or c.words[-1] != s.accept:
        raise NotAccepting("the computation does not end at the accept word")
    if c.words[0].states != s.start.states:
        raise NotAccepting("the computation does not start at an input word")
    R = _rules(p)
    moves = []
    W = c.words[0]
    for k, name in enumerate(c.history):
        ms, W, _ = expand_conjugation_step(R, mm, W, name)
        if W != c.words[k + 1]:
            raise NotAccepting(f"step {k + 1} does not replay")
        moves += ms
    hub = tuple(W.letters())
    moves.append(RelatorMove(0, 0, hub, False))
    moves.append(DropEmpty(0))
    t = RewriteTrace((tuple(c.words[0].letters()),), tuple(moves))
    rep = validate_trace(R, t)
    if not rep.valid:
        raise NotAccepting(f"constructed trace fails at move {rep.failed_at}: {rep.reason}")
    return Witness(t, rep.space, max(len(w) for w in c.words), witness_constant(R))


# ---------------------------------------------------------------- text format

def _fmt_word(w):
    return " ".join(w) if w else "1"


def format_move(m):
    if isinstance(m, FreeReduce):
        if m.insert:
            return f"free {m.i} {m.pos} insert {m.letter}"
        return f"free {m.i} {m.pos} remove"
    if isinstance(m, RelatorMove):
        return f"rel {m.i} {m.pos} {'insert' if m.insert else 'remove'} {_fmt_word(m.word)}"
    if isinstance(m, CyclicShift):
        return f"shift {m.i} {m.offset}"
    if isinstance(m, Fragment):
        return f"frag {m.i} {m.split}"
    if isinstance(m, DropEmpty):
        return f"drop {m.i}"
    raise ValueError(m)


def format_trace(t):
    start = " | ".join(_fmt_word(w) for w in t.start)
    return "\n".join([f"start {start}"] + [format_move(m) for m in t.moves]) + "\n"


def _word(toks):
    return () if toks == ["1"] else tuple(toks)


def parse_trace(text, path=None):
    start = None
    moves = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = raw.split()
        if not toks or toks[0].startswith("#"):
            continue
        try:
            kw = toks[0]
            if kw == "start":
                start = ()
                cur = []
                for x in toks[1:] + ["|"]:
                    if x == "|":
                        start += (_word(cur),)
                        cur = []
                    else:
                        cur.append(x)
                if start == ((),) and toks[1:] == []:
                    start = ()
            elif kw == "free":
                i, pos, how = int(toks[1]), int(toks[2]), toks[3]
                if how == "insert":
                    moves.append(FreeReduce(i, pos, True, toks[4]))
                elif how == "remove":
                    moves.append(FreeReduce(i, pos, False))
                else:
                    raise ValueError(how)
            elif kw == "rel":
                i, pos, how = int(toks[1]), int(toks[2]), toks[3]
                if how not in ("insert", "remove"):
                    raise ValueError(how)
                moves.append(RelatorMove(i, pos, _word(toks[4:]), how == "insert"))
            elif kw == "shift":
                moves.append(CyclicShift(int(toks[1]), int(toks[2])))
            elif kw == "frag":
                moves.append(Fragment(int(toks[1]), int(toks[2])))
            elif kw == "drop":
                moves.append(DropEmpty(int(toks[1])))
            else:
                raise ValueError(kw)
        except (ValueError, IndexError):
            raise FormatError(f"bad move line {raw!r}", path, lineno)
    if start is None:
        raise FormatError("trace has no start line", path)
    return RewriteTrace(start, tuple(moves))
