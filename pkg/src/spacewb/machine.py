"""Multi-tape Turing machines with exact space accounting.

A tape configuration is ``u q v``: the letters left of the head, the head
state and the letters right of the head. Separators are never written into
words; a command part records instead whether it is anchored at the left
end (``alpha q``) or the right end (``q omega``) of its tape.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import NamedTuple, Tuple

from .errors import (BadLetter, FormatError, NondeterministicChoice,
                     NotApplicable, StepCapExceeded)
from .words import INV, Word


class TapeConfig(NamedTuple):
    left: Word
    state: str
    right: Word

    def __str__(self):
        return " ".join(self.left + (f"[{self.state}]",) + self.right)


Configuration = Tuple[TapeConfig, ...]


class Side(NamedTuple):
    """One side of a command part: ``u q v`` plus anchoring flags."""
    left: Word
    state: str
    right: Word
    lanchor: bool = False
    ranchor: bool = False

    @property
    def letters(self):
        return len(self.left) + len(self.right)


class Part(NamedTuple):
    lhs: Side
    rhs: Side


@dataclass(frozen=True)
class Command:
    name: str
    parts: Tuple[Part, ...]
    positive: bool = True

    def inverse(self):
        return Command(inverse_name(self.name),
                       tuple(Part(p.rhs, p.lhs) for p in self.parts),
                       not self.positive)

    @property
    def letter_count(self):
        return sum(p.lhs.letters + p.rhs.letters for p in self.parts)


def inverse_name(name):
    return name[: -len(INV)] if name.endswith(INV) else name + INV


@dataclass(frozen=True)
class Machine:
    input_alphabet: Tuple[str, ...]
    alphabets: Tuple[Tuple[str, ...], ...]
    states: Tuple[Tuple[str, ...], ...]
    commands: Tuple[Command, ...]
    start: Tuple[str, ...]
    accept: Tuple[str, ...]
    deterministic: bool = False
    count_input_tape: bool = True
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {c.name: c for c in self.commands})

    @property
    def tapes(self):
        return len(self.alphabets)

    def command(self, name):
        """Look up a command; ``X^-1`` is synthesized from ``X`` if not stored."""
        c = self._index.get(name)
        if c is not None:
            return c
        base = self._index.get(inverse_name(name))
        if base is not None:
            return base.inverse()
        raise KeyError(name)

    @property
    def positive_commands(self):
        return tuple(c for c in self.commands if c.positive)

    @property
    def is_symmetric(self):
        return all(inverse_name(c.name) in self._index for c in self.commands)


@dataclass(frozen=True)
class ComputationTrace:
    configs: Tuple[Configuration, ...]
    history: Tuple[str, ...]
    space: int

    @property
    def length(self):
        return len(self.history)


# ---------------------------------------------------------------- semantics

def side_matches(side, tc):
    if tc.state != side.state:
        return False
    u, v = side.left, side.right
    L, R = tc.left, tc.right
    if side.lanchor:
        if L != u:
            return False
    elif len(L) < len(u) or L[len(L) - len(u):] != u:
        return False
    if side.ranchor:
        if R != v:
            return False
    elif R[: len(v)] != v:
        return False
    return True


def replace_side(lhs, rhs, tc):
    L = tc.left[: len(tc.left) - len(lhs.left)] + rhs.left
    R = rhs.right + tc.right[len(lhs.right):]
    return TapeConfig(L, rhs.state, R)


def is_applicable(cmd, c):
    return all(side_matches(p.lhs, tc) for p, tc in zip(cmd.parts, c))


def apply_command(m, c, theta):
    cmd = theta if isinstance(theta, Command) else m.command(theta)
    for i, (p, tc) in enumerate(zip(cmd.parts, c)):
        if not side_matches(p.lhs, tc):
            raise NotApplicable(f"{cmd.name} does not apply on tape {i + 1}")
    return tuple(replace_side(p.lhs, p.rhs, tc) for p, tc in zip(cmd.parts, c))


def successors(m, c):
    for cmd in m.commands:
        if is_applicable(cmd, c):
            yield cmd.name, apply_command(m, c, cmd)


def a_length(m, c):
    skip = 0 if m.count_input_tape else 1
    return sum(len(tc.left) + len(tc.right) for tc in c[skip:])


def make_input_config(m, u):
    u = tuple(u)
    for x in u:
        if x not in m.input_alphabet:
            raise BadLetter(f"letter {x!r} is not in the input alphabet")
    first = TapeConfig(u, m.start[0], ())
    rest = tuple(TapeConfig((), q, ()) for q in m.start[1:])
    return (first,) + rest


def accept_config(m):
    return tuple(TapeConfig((), q, ()) for q in m.accept)


def is_accept_config(m, c):
    return (tuple(tc.state for tc in c) == tuple(m.accept)
            and all(not tc.left and not tc.right for tc in c))


def make_trace(m, configs, history):
    configs = tuple(configs)
    return ComputationTrace(configs, tuple(history),
                            max(a_length(m, c) for c in configs))


def check_trace(m, t):
    """Replay ``t``; returns a list of problems (empty when it is valid)."""
    errs = []
    if len(t.configs) != len(t.history) + 1:
        return ["configuration count does not match history length"]
    for i, name in enumerate(t.history):
        try:
            nxt = apply_command(m, t.configs[i], name)
        except (NotApplicable, KeyError) as e:
            errs.append(f"step {i + 1}: {e}")
            continue
        if nxt != t.configs[i + 1]:
            errs.append(f"step {i + 1}: result differs from recorded configuration")
    if max(a_length(m, c) for c in t.configs) != t.space:
        errs.append("cached space differs from recomputed space")
    return errs


def replay(m, c, history):
    configs = [c]
    for name in history:
        configs.append(apply_command(m, configs[-1], name))
    return make_trace(m, configs, history)


def run_deterministic(m, c, step_cap):
    configs = [c]
    hist = []
    while not is_accept_config(m, configs[-1]):
        moves = [(cmd.name, apply_command(m, configs[-1], cmd))
                 for cmd in m.positive_commands if is_applicable(cmd, configs[-1])]
        if not moves:
            break
        if len(moves) > 1:
            names = ", ".join(n for n, _ in moves)
            raise NondeterministicChoice(f"several commands apply: {names}")
        if len(hist) >= step_cap:
            raise StepCapExceeded(f"no halt within {step_cap} steps")
        hist.append(moves[0][0])
        configs.append(moves[0][1])
    return make_trace(m, configs, hist)


# ---------------------------------------------------------------- validation

def _compatible(a, b):
    """Can a single tape configuration match both left-hand sides?"""
    if a.state != b.state:
        return False
    for x, y, xa, ya, tail in ((a.left, b.left, a.lanchor, b.lanchor, True),
                               (a.right, b.right, a.ranchor, b.ranchor, False)):
        if len(x) < len(y):
            x, y, xa, ya = y, x, ya, xa
        # y is the shorter side now
        close = x[len(x) - len(y):] if tail else x[: len(y)]
        if close != y:
            return False
        if ya and len(x) != len(y):
            return False
    return True


def validate_machine(m):
    report = []
    k = m.tapes
    if k == 0:
        return ["machine has no tapes"]
    if len(m.states) != k:
        report.append("state set count differs from tape count")
        return report
    if not set(m.input_alphabet) <= set(m.alphabets[0]):
        report.append("input alphabet not contained in first tape alphabet")
    seen = {}
    for label, group in ([(f"tape {i + 1}", a) for i, a in enumerate(m.alphabets)]
                         + [(f"states {i + 1}", q) for i, q in enumerate(m.states)]):
        if len(set(group)) != len(group):
            report.append(f"{label} lists a letter twice")
        for x in group:
            if x in seen and seen[x] != label:
                report.append(f"letter sets not pairwise disjoint: {x} in {seen[x]} and {label}")
            seen[x] = label
    for label, vec in (("start", m.start), ("accept", m.accept)):
        if len(vec) != k or any(q not in m.states[i] for i, q in enumerate(vec)):
            report.append(f"{label} vector does not pick one state per tape")
    names = set()
    for cmd in m.commands:
        if cmd.name in names:
            report.append(f"duplicate command name {cmd.name}")
        names.add(cmd.name)
        if len(cmd.parts) != k:
            report.append(f"command {cmd.name} has {len(cmd.parts)} parts for {k} tapes")
            continue
        for j, p in enumerate(cmd.parts):
            for s in (p.lhs, p.rhs):
                if s.state not in m.states[j]:
                    report.append(f"command {cmd.name}: state {s.state} not in tape {j + 1}")
                for x in s.left + s.right:
                    if x not in m.alphabets[j]:
                        report.append(f"command {cmd.name}: letter {x} not in tape {j + 1}")
            if (p.lhs.lanchor, p.lhs.ranchor) != (p.rhs.lanchor, p.rhs.ranchor):
                report.append(f"command {cmd.name}: anchoring differs on tape {j + 1}")
    if m.deterministic:
        pos = m.positive_commands
        for c1, c2 in combinations(pos, 2):
            if len(c1.parts) == len(c2.parts) == k and all(
                    _compatible(p.lhs, q.lhs) for p, q in zip(c1.parts, c2.parts)):
                report.append(f"determinism violated: {c1.name} and {c2.name}")
    return report


# ---------------------------------------------------------------- file format

def _fmt_side(s):
    toks = (["^"] if s.lanchor else []) + list(s.left) + [s.state] + list(s.right)
    if s.ranchor:
        toks.append("$")
    return " ".join(toks)


def format_machine(m):
    out = [f"tapes {m.tapes}", "input " + " ".join(m.input_alphabet)]
    for i, a in enumerate(m.alphabets):
        out.append(f"tape {i + 1} " + " ".join(a))
    for i, q in enumerate(m.states):
        out.append(f"states {i + 1} " + " ".join(q))
    out.append("start " + " ".join(m.start))
    out.append("accept " + " ".join(m.accept))
    out.append(f"deterministic {str(m.deterministic).lower()}")
    out.append(f"count_input_tape {str(m.count_input_tape).lower()}")
    for cmd in m.commands:
        out.append(f"command {cmd.name} {'+' if cmd.positive else '-'}")
        for j, p in enumerate(cmd.parts):
            out.append(f"  tape {j + 1} {_fmt_side(p.lhs)} => {_fmt_side(p.rhs)}")
    return "\n".join(" ".join(l.split()) if not l.startswith("  ") else l
                     for l in out) + "\n"


def _parse_side(toks, states, err):
    la = bool(toks) and toks[0] == "^"
    if la:
        toks = toks[1:]
    ra = bool(toks) and toks[-1] == "$"
    if ra:
        toks = toks[:-1]
    idx = [i for i, t in enumerate(toks) if t in states]
    if len(idx) != 1:
        raise err("expected exactly one state letter in a command side")
    i = idx[0]
    return Side(tuple(toks[:i]), toks[i], tuple(toks[i + 1:]), la, ra)


def _flag(val, err):
    if val not in ("true", "false"):
        raise err(f"expected true or false, got {val!r}")
    return val == "true"


def parse_machine(text, path=None):
    fields = {"alphabets": {}, "states": {}}
    commands = []
    cur = None
    lineno = 0

    def err(msg):
        return FormatError(msg, path, lineno)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0] if not raw.lstrip().startswith("#") else ""
        toks = line.split()
        if not toks:
            continue
        key = toks[0]
        if raw.startswith((" ", "\t")) and key == "tape":
            if cur is None:
                raise err("command part outside a command")
            if "=>" not in toks:
                raise err("command part needs '=>'")
            try:
                j = int(toks[1])
            except (IndexError, ValueError):
                raise err("bad tape index in command part")
            st = fields["states"].get(j)
            if st is None:
                raise err(f"states of tape {j} not declared")
            arrow = toks.index("=>")
            lhs = _parse_side(toks[2:arrow], st, err)
            rhs = _parse_side(toks[arrow + 1:], st, err)
            if j != len(cur[2]) + 1:
                raise err("command parts must be listed in tape order")
            cur[2].append(Part(lhs, rhs))
            continue
        if key == "tapes":
            fields["tapes"] = int(toks[1])
        elif key == "input":
            fields["input"] = tuple(toks[1:])
        elif key == "tape":
            fields["alphabets"][int(toks[1])] = tuple(toks[2:])
        elif key == "states":
            fields["states"][int(toks[1])] = tuple(toks[2:])
        elif key in ("start", "accept"):
            fields[key] = tuple(toks[1:])
        elif key in ("deterministic", "count_input_tape"):
            fields[key] = _flag(toks[1] if len(toks) > 1 else "", err)
        elif key == "command":
            if len(toks) != 3 or toks[2] not in "+-":
                raise err("expected 'command NAME +' or 'command NAME -'")
            cur = (toks[1], toks[2] == "+", [])
            commands.append(cur)
        else:
            raise err(f"unknown field {key!r}")
    lineno = None
    if "tapes" not in fields:
        raise err("missing 'tapes'")
    k = fields["tapes"]
    try:
        alphabets = tuple(fields["alphabets"][i] for i in range(1, k + 1))
        states = tuple(fields["states"][i] for i in range(1, k + 1))
    except KeyError as e:
        raise err(f"missing alphabet or states for tape {e.args[0]}")
    return Machine(
        input_alphabet=fields.get("input", ()),
        alphabets=alphabets,
        states=states,
        commands=tuple(Command(n, tuple(ps), pos) for n, pos, ps in commands),
        start=fields.get("start", ()),
        accept=fields.get("accept", ()),
        deterministic=fields.get("deterministic", False),
        count_input_tape=fields.get("count_input_tape", True),
    )


def load_machine(path):
    with open(path) as fh:
        return parse_machine(fh.read(), path)


def format_config(c):
    return " | ".join(str(tc) for tc in c)
