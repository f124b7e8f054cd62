"""S-machines over group alphabets.

An admissible word is stored as its state letters (one per position, in
order) and the reduced tape words between them. A rule gives, for every
position, ``v q u -> v' q' u'`` and, for every sector, a domain: ``None``
for the whole sector alphabet, a frozenset otherwise (empty means the sector
must be empty, the l-arrow).
"""

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Tuple

from .errors import (DomainViolation, FormatError, NotApplicable, NotOneLetter,
                     NotSymmetric)
from .machine import TapeConfig
from .words import INV, Word, base_letter, format_word, inv_word, is_positive, reduce_word


class AdmissibleWord(NamedTuple):
    states: Tuple[str, ...]
    sectors: Tuple[Word, ...]

    def letters(self):
        out = [self.states[0]]
        for w, q in zip(self.sectors, self.states[1:]):
            out.extend(w)
            out.append(q)
        return tuple(out)

    @property
    def a_length(self):
        return sum(len(w) for w in self.sectors)

    def __len__(self):
        return len(self.states) + self.a_length

    def is_positive(self):
        return all(is_positive(w) for w in self.sectors)

    def __str__(self):
        return " ".join(self.letters())


def make_word(states, sectors):
    sectors = tuple(tuple(w) for w in sectors)
    for w in sectors:
        assert reduce_word(w) == w, "admissible words keep reduced sectors"
    return AdmissibleWord(tuple(states), sectors)


class SPart(NamedTuple):
    v: Word
    q: str
    u: Word
    v2: Word
    q2: str
    u2: Word

    def swapped(self):
        return SPart(self.v2, self.q2, self.u2, self.v, self.q, self.u)


class SRule(NamedTuple):
    name: str
    parts: Tuple[SPart, ...]
    domains: Tuple[Optional[frozenset], ...]
    positive: bool = True
    basic: bool = False

    def inverse(self):
        name = self.name[: -len(INV)] if self.name.endswith(INV) else self.name + INV
        return SRule(name, tuple(p.swapped() for p in self.parts), self.domains,
                     not self.positive, self.basic)


@dataclass(frozen=True)
class SMachine:
    states: Tuple[Tuple[str, ...], ...]
    alphabets: Tuple[Tuple[str, ...], ...]
    rules: Tuple[SRule, ...]
    start: AdmissibleWord
    accept: AdmissibleWord
    input_sector: int = 0
    input_alphabet: Tuple[str, ...] = ()
    _index: dict = field(default=None, compare=False, repr=False, hash=False)
    _by_states: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        idx = {}
        for r in self.rules:
            idx[r.name] = r
        object.__setattr__(self, "_index", idx)
        object.__setattr__(self, "_by_states", None)

    def candidates(self, states):
        """(name, rule) pairs whose left states are ``states``, in rule_names order."""
        if self._by_states is None:
            table = {}
            for name in self.rule_names():
                r = self.rule(name)
                table.setdefault(tuple(p.q for p in r.parts), []).append((name, r))
            object.__setattr__(self, "_by_states", table)
        return self._by_states.get(tuple(states), ())

    @property
    def sector_count(self):
        return len(self.alphabets)

    def rule(self, name):
        r = self._index.get(name)
        if r is not None:
            return r
        if name.endswith(INV):
            r = self._index.get(name[: -len(INV)])
            if r is not None:
                return r.inverse()
        raise KeyError(name)

    def rule_names(self):
        """Every rule name and its inverse, in a fixed order."""
        out = []
        for r in self.rules:
            out.append(r.name)
            out.append(r.name + INV)
        return out

    def input_word(self, u):
        sectors = [()] * self.sector_count
        if u or sectors:
            sectors[self.input_sector] = tuple(u)
        return make_word(self.start.states, sectors)

    @property
    def basic_names(self):
        return {r.name for r in self.rules if r.basic}


class STrace(NamedTuple):
    words: Tuple[AdmissibleWord, ...]
    history: Tuple[str, ...]

    @property
    def space(self):
        return max(w.a_length for w in self.words)

    @property
    def length(self):
        return len(self.history)


def inverse_rule_name(name):
    return name[: -len(INV)] if name.endswith(INV) else name + INV


def applicable(s, w, rule):
    r = rule if isinstance(rule, SRule) else s.rule(rule)
    if any(q != p.q for q, p in zip(w.states, r.parts)):
        return False
    for dom, sec in zip(r.domains, w.sectors):
        if dom is not None and any(base_letter(x) not in dom for x in sec):
            return False
    return True


def apply_rule(s, w, rule):
    r = rule if isinstance(rule, SRule) else s.rule(rule)
    for i, (q, p) in enumerate(zip(w.states, r.parts)):
        if q != p.q:
            raise NotApplicable(f"{r.name}: position {i + 1} holds {q}, not {p.q}")
    for i, (dom, sec) in enumerate(zip(r.domains, w.sectors)):
        if dom is not None and any(base_letter(x) not in dom for x in sec):
            raise DomainViolation(f"{r.name}: sector {i + 1} leaves the rule's domain")
    parts = r.parts
    sectors = []
    for i, sec in enumerate(w.sectors):
        left = parts[i]
        right = parts[i + 1]
        new = left.u2 + inv_word(left.u) + sec + inv_word(right.v) + right.v2
        sectors.append(reduce_word(new))
    return AdmissibleWord(tuple(p.q2 for p in parts), tuple(sectors))


def successors(s, w):
    for name, r in s.candidates(w.states):
        if applicable(s, w, r):
            yield name, apply_rule(s, w, r)


def replay(s, w, history):
    words = [w]
    for name in history:
        words.append(apply_rule(s, words[-1], name))
    return STrace(tuple(words), tuple(history))


def check_trace(s, t):
    errs = []
    if len(t.words) != len(t.history) + 1:
        return ["word count does not match history length"]
    for i, name in enumerate(t.history):
        try:
            nxt = apply_rule(s, t.words[i], name)
        except (NotApplicable, KeyError) as e:
            errs.append(f"step {i + 1}: {e}")
            continue
        if nxt != t.words[i + 1]:
            errs.append(f"step {i + 1}: result differs from recorded word")
    return errs


def is_reduced_history(history):
    return all(history[i + 1] != inverse_rule_name(history[i])
               for i in range(len(history) - 1))


def reduce_history(s, t):
    """Cancel adjacent ``theta theta^-1`` pairs (and the words between them)."""
    words = [t.words[0]]
    hist = []
    for name, w in zip(t.history, t.words[1:]):
        if hist and hist[-1] == inverse_rule_name(name):
            hist.pop()
            words.pop()
        else:
            hist.append(name)
            words.append(w)
    return STrace(tuple(words), tuple(hist))


# ---------------------------------------------------------------- S(M)

RIGHT = ".r"


class TuringLayout(NamedTuple):
    """How configurations of a machine sit inside admissible words of S(M)."""
    separators: Tuple[str, ...]
    right_suffix: str


def _layout(m):
    taken = set(x for a in m.alphabets for x in a) | set(q for qs in m.states for q in qs)
    seps = []
    for j in range(m.tapes + 1):
        name = f"sep{j}"
        while name in taken:
            name += "'"
        taken.add(name)
        seps.append(name)
    return TuringLayout(tuple(seps), RIGHT)


def config_to_word(m, c, layout=None):
    layout = layout or _layout(m)
    states = [layout.separators[0]]
    sectors = []
    for j, tc in enumerate(c):
        sectors.append(tuple(tc.left))
        states.append(tc.state)
        sectors.append(tuple(x + layout.right_suffix for x in tc.right))
        states.append(layout.separators[j + 1])
    return AdmissibleWord(tuple(states), tuple(sectors))


def word_to_config(m, w, layout=None):
    """Inverse of config_to_word; returns None for non-positive words."""
    layout = layout or _layout(m)
    if not w.is_positive():
        return None
    n = len(layout.right_suffix)
    return tuple(TapeConfig(w.sectors[2 * j], w.states[2 * j + 1],
                            tuple(x[:-n] for x in w.sectors[2 * j + 1]))
                 for j in range(m.tapes))


def from_turing(m):
    """S(M): every command becomes a rule acting on the same layout."""
    from .transforms import is_one_letter
    if not m.is_symmetric:
        raise NotSymmetric("S(M) needs a symmetric machine")
    if not is_one_letter(m):
        raise NotOneLetter("S(M) needs a one-letter machine")
    lay = _layout(m)
    rs = lay.right_suffix
    k = m.tapes
    states = []
    alphabets = []
    for j in range(k):
        states.append((lay.separators[j],))
        states.append(tuple(m.states[j]))
        alphabets.append(tuple(m.alphabets[j]))
        alphabets.append(tuple(x + rs for x in m.alphabets[j]))
    states.append((lay.separators[k],))
    rules = []
    have = {c.name for c in m.commands}
    for c in m.commands:
        if not c.positive and inverse_rule_name(c.name) in have:
            continue
        parts = []
        domains = []
        for j, p in enumerate(c.parts):
            sep = lay.separators[j]
            parts.append(SPart((), sep, (), (), sep, ()))
            a, b = p.lhs, p.rhs
            parts.append(SPart(a.left, a.state, tuple(x + rs for x in a.right),
                               b.left, b.state, tuple(x + rs for x in b.right)))
            if (a.lanchor and (a.left or b.left)) or (a.ranchor and (a.right or b.right)):
                raise NotOneLetter(f"{c.name}: anchored sector carries letters")
            domains.append(frozenset() if a.lanchor else None)
            domains.append(frozenset() if a.ranchor else None)
        sep = lay.separators[k]
        parts.append(SPart((), sep, (), (), sep, ()))
        rules.append(SRule(c.name, tuple(parts), tuple(domains), c.positive))
    from .machine import accept_config, make_input_config
    start = config_to_word(m, make_input_config(m, ()), lay)
    accept = config_to_word(m, accept_config(m), lay)
    return SMachine(tuple(states), tuple(alphabets), tuple(rules), start, accept,
                    input_sector=0, input_alphabet=tuple(m.input_alphabet))


# ---------------------------------------------------------------- file format

def _fmt_dom(d, i):
    if d is None:
        return None
    return f"  dom {i + 1} " + (" ".join(sorted(d)) if d else "-")


def format_smachine(s):
    out = ["smachine", f"sectors {s.sector_count}"]
    for i, qs in enumerate(s.states):
        out.append(f"states {i + 1} " + " ".join(qs))
    for i, a in enumerate(s.alphabets):
        out.append(" ".join([f"sector {i + 1}"] + list(a)))
    out.append("input_sector " + str(s.input_sector + 1))
    out.append(" ".join(["input"] + list(s.input_alphabet)))
    out.append("start " + str(s.start))
    out.append("accept " + str(s.accept))
    for r in s.rules:
        out.append(f"rule {r.name} {'+' if r.positive else '-'}" + (" basic" if r.basic else ""))
        for i, p in enumerate(r.parts):
            lhs = " ".join(p.v + (p.q,) + p.u)
            rhs = " ".join(p.v2 + (p.q2,) + p.u2)
            out.append(f"  part {i + 1} {lhs} => {rhs}")
        for i, d in enumerate(r.domains):
            line = _fmt_dom(d, i)
            if line:
                out.append(line)
    return "\n".join(out) + "\n"


def _parse_word(toks, states, err):
    qs = []
    secs = []
    cur = None
    for t in toks:
        if len(qs) < len(states) and t in states[len(qs)]:
            if cur is not None:
                secs.append(tuple(cur))
            qs.append(t)
            cur = []
        elif cur is None:
            raise err("admissible word must start with a state letter")
        else:
            cur.append(t)
    if len(qs) != len(states) or cur:
        raise err("admissible word has the wrong number of state letters")
    return make_word(qs, secs)


def parse_smachine(text, path=None):
    lineno = 0

    def err(msg):
        return FormatError(msg, path, lineno)

    states = {}
    alphabets = {}
    rules = []
    cur = None
    start = accept = None
    input_sector = 0
    input_alphabet = ()
    count = None
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        if raw.lstrip().startswith("#"):
            continue
        toks = raw.split()
        if not toks:
            continue
        key = toks[0]
        if key == "smachine":
            seen_header = True
        elif key == "sectors":
            count = int(toks[1])
        elif key == "states":
            states[int(toks[1])] = tuple(toks[2:])
        elif key == "sector":
            alphabets[int(toks[1])] = tuple(toks[2:])
        elif key == "input_sector":
            input_sector = int(toks[1]) - 1
        elif key == "input":
            input_alphabet = tuple(toks[1:])
        elif key in ("start", "accept"):
            if count is None or len(states) != count + 1:
                raise err("states must be declared before start/accept")
            w = _parse_word(toks[1:], [states[i] for i in range(1, count + 2)], err)
            if key == "start":
                start = w
            else:
                accept = w
        elif key == "rule":
            if len(toks) not in (3, 4) or toks[2] not in "+-":
                raise err("expected 'rule NAME + [basic]'")
            cur = [toks[1], [], {}, toks[2] == "+", len(toks) == 4 and toks[3] == "basic"]
            rules.append(cur)
        elif key == "part":
            if cur is None:
                raise err("part outside a rule")
            i = int(toks[1])
            qs = states.get(i)
            if qs is None or "=>" not in toks:
                raise err("bad part line")
            arrow = toks.index("=>")
            sides = []
            for side in (toks[2:arrow], toks[arrow + 1:]):
                idx = [n for n, t in enumerate(side) if t in qs]
                if len(idx) != 1:
                    raise err("each part side needs exactly one state letter")
                n = idx[0]
                sides.append((tuple(side[:n]), side[n], tuple(side[n + 1:])))
            cur[1].append(SPart(*sides[0], *sides[1]))
        elif key == "dom":
            if cur is None:
                raise err("dom outside a rule")
            i = int(toks[1])
            cur[2][i] = frozenset() if toks[2:] == ["-"] else frozenset(toks[2:])
        else:
            raise err(f"unknown field {key!r}")
    lineno = None
    if not seen_header or count is None:
        raise err("missing 'smachine' header or sector count")
    srules = []
    for name, parts, doms, pos, basic in rules:
        if len(parts) != count + 1:
            raise err(f"rule {name} needs {count + 1} parts")
        srules.append(SRule(name, tuple(parts),
                            tuple(doms.get(i + 1) for i in range(count)), pos, basic))
    return SMachine(tuple(states[i] for i in range(1, count + 2)),
                    tuple(alphabets.get(i, ()) for i in range(1, count + 1)),
                    tuple(srules), start, accept, input_sector, input_alphabet)


def load_smachine(path):
    with open(path) as fh:
        return parse_smachine(fh.read(), path)


def show(w):
    return " ".join(w.letters()) if isinstance(w, AdmissibleWord) else format_word(w)
