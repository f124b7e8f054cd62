"""Space-controlled machine transformations.

enforce_s10 -> pad_space -> symmetrize -> normalize_one_letter, composed by
build_pipeline. Fresh names are derived from existing names so that output
is reproducible.
"""

from dataclasses import replace

from .errors import S10Missing
from .machine import Command, Machine, Part, Side, inverse_name

PAD = "*"


def _fresh(name, taken):
    while name in taken:
        name += "'"
    taken.add(name)
    return name


def _all_letters(m):
    out = set(m.input_alphabet)
    for a in m.alphabets:
        out.update(a)
    for q in m.states:
        out.update(q)
    return out


def _state_part(q, q2):
    return Part(Side((), q, ()), Side((), q2, ()))


def _command_names(m):
    return {c.name for c in m.commands} | {inverse_name(c.name) for c in m.commands}


# ---------------------------------------------------------------- s10

def satisfies_s10(m):
    """Checked on positive commands, so symmetric machines qualify too."""
    start, accept = tuple(m.start), tuple(m.accept)
    pos = m.positive_commands
    lhs = [tuple(p.lhs.state for p in c.parts) for c in pos]
    rhs = [tuple(p.rhs.state for p in c.parts) for c in pos]
    starters = [i for i, v in enumerate(lhs) if v == start]
    finishers = [i for i, v in enumerate(rhs) if v == accept]
    if len(starters) != 1 or len(finishers) != 1:
        return False
    s, f = starters[0], finishers[0]
    for i in range(len(pos)):
        for j in range(m.tapes):
            if rhs[i][j] == start[j]:
                return False
            if lhs[i][j] == accept[j]:
                return False
            if i != s and lhs[i][j] == start[j]:
                return False
            if i != f and rhs[i][j] == accept[j]:
                return False
    return True


def enforce_s10(m, start_name="start", accept_name="accept"):
    """Add fresh start and accept states with one command each (always applied)."""
    taken = _all_letters(m)
    names = _command_names(m)
    s_new = tuple(_fresh(q + "_s", taken) for q in m.start)
    f_new = tuple(_fresh(q + "_f", taken) for q in m.accept)
    cs = _fresh(start_name, names)
    ca = _fresh(accept_name, names)
    start_cmd = Command(cs, tuple(_state_part(a, b) for a, b in zip(s_new, m.start)))
    accept_cmd = Command(ca, tuple(_state_part(a, b) for a, b in zip(m.accept, f_new)))
    states = tuple(q + (a, b) for q, a, b in zip(m.states, s_new, f_new))
    return replace(m, states=states, start=s_new, accept=f_new,
                   commands=(start_cmd,) + m.commands + (accept_cmd,))


# ---------------------------------------------------------------- padding

def pad_space(m1, suffix="~2"):
    """Add a padding tape so that simulated commands keep the space constant.

    Command order is: the padding command, the first connecting command, the
    renamed copies of m1's commands, the second connecting command and the
    eraser (see pad_stage_names).
    """
    if not satisfies_s10(m1):
        raise S10Missing("pad_space needs a machine satisfying the s10 condition")
    for a in m1.alphabets:
        if PAD in a:
            raise S10Missing(f"letter {PAD!r} is reserved for the padding tape")
    taken = _all_letters(m1)
    z = [_fresh(f"z{i}", taken) for i in (1, 2, 3)]
    ren = [{q: _fresh(q + suffix, taken) for q in qs} for qs in m1.states]
    names = _command_names(m1)

    def idle(states):
        return tuple(_state_part(q, q) for q in states)

    cmds = []
    cmds.append(Command(_fresh("theta_*", names),
                        idle(m1.start) + (Part(Side((), z[0], ()), Side((PAD,), z[0], ())),)))
    cmds.append(Command(_fresh("theta12", names),
                        tuple(_state_part(q, ren[j][q]) for j, q in enumerate(m1.start))
                        + (_state_part(z[0], z[1]),)))
    for c in m1.commands:
        parts = []
        for j, p in enumerate(c.parts):
            parts.append(Part(p.lhs._replace(state=ren[j][p.lhs.state]),
                              p.rhs._replace(state=ren[j][p.rhs.state])))
        net = sum(p.rhs.letters - p.lhs.letters for p in c.parts)
        if net > 0:
            pad = Part(Side((PAD,) * net, z[1], ()), Side((), z[1], ()))
        else:
            pad = Part(Side((), z[1], ()), Side((PAD,) * (-net), z[1], ()))
        cmds.append(Command(_fresh(c.name + suffix, names), tuple(parts) + (pad,),
                            c.positive))
    cmds.append(Command(_fresh("theta23", names),
                        tuple(_state_part(ren[j][q], q) for j, q in enumerate(m1.accept))
                        + (_state_part(z[1], z[2]),)))
    cmds.append(Command(_fresh("erase", names),
                        idle(m1.accept) + (Part(Side((PAD,), z[2], ()), Side((), z[2], ())),)))
    states = tuple(tuple(qs) + tuple(ren[j][q] for q in qs) for j, qs in enumerate(m1.states))
    states += ((z[0], z[1], z[2]),)
    return Machine(
        input_alphabet=m1.input_alphabet,
        alphabets=m1.alphabets + ((PAD,),),
        states=states,
        commands=tuple(cmds),
        start=tuple(m1.start) + (z[0],),
        accept=tuple(m1.accept) + (z[2],),
        deterministic=False,
        count_input_tape=m1.count_input_tape,
    )


def pad_stage_names(m2):
    """Names of the padding command, the two connecting commands and the eraser."""
    names = [c.name for c in m2.commands]
    return names[0], names[1], names[-2], names[-1]


# ---------------------------------------------------------------- symmetry

def symmetrize(m):
    have = {c.name for c in m.commands}
    extra = tuple(c.inverse() for c in m.commands if inverse_name(c.name) not in have)
    return replace(m, commands=m.commands + extra, deterministic=False)


def is_one_letter(m):
    return all(not needs_split(c) for c in m.commands)


def _anchor_conflict(c):
    """An anchored side that also carries letters cannot become an S-rule part."""
    for p in c.parts:
        if p.lhs.lanchor and (p.lhs.left or p.rhs.left):
            return True
        if p.lhs.ranchor and (p.lhs.right or p.rhs.right):
            return True
    return False


def needs_split(c):
    return c.letter_count > 1 or _anchor_conflict(c)


def _split_command(c, taken):
    """Pieces of ``c`` touching one tape letter each, through fresh states.

    Letters are removed first (nearest the head first), then anchors are
    checked by a letter-free piece, then the new letters are written.
    """
    steps = []  # (tape, kind, letter); kind is lrem, rrem, check, lins or rins
    for j, p in enumerate(c.parts):
        for x in reversed(p.lhs.left):
            steps.append((j, "lrem", x))
        for x in p.lhs.right:
            steps.append((j, "rrem", x))
    if any(p.lhs.lanchor or p.lhs.ranchor for p in c.parts):
        steps.append((None, "check", None))
    for j, p in enumerate(c.parts):
        for x in p.rhs.left:
            steps.append((j, "lins", x))
        for x in reversed(p.rhs.right):
            steps.append((j, "rins", x))
    k = len(c.parts)
    n = len(steps)
    cur = [p.lhs.state for p in c.parts]
    pieces = []
    fresh = []
    for i, (tj, kind, x) in enumerate(steps):
        if i == n - 1:
            nxt = [p.rhs.state for p in c.parts]
        else:
            nxt = [_fresh(f"{c.name}.{i + 1}.{j + 1}", taken) for j in range(k)]
            fresh.extend(nxt)
        parts = []
        for j in range(k):
            la = kind == "check" and c.parts[j].lhs.lanchor
            ra = kind == "check" and c.parts[j].lhs.ranchor
            lhs = Side((), cur[j], (), la, ra)
            rhs = Side((), nxt[j], (), la, ra)
            if j == tj:
                if kind == "lrem":
                    lhs = lhs._replace(left=(x,))
                elif kind == "rrem":
                    lhs = lhs._replace(right=(x,))
                elif kind == "lins":
                    rhs = rhs._replace(left=(x,))
                else:
                    rhs = rhs._replace(right=(x,))
            parts.append(Part(lhs, rhs))
        pieces.append(Command(f"{c.name}.{i + 1}", tuple(parts), True))
        cur = nxt
    return pieces, fresh


def normalize_one_letter(m):
    """Split every command so that it involves at most one tape letter."""
    taken = _all_letters(m)
    have = {c.name for c in m.commands}
    out = []
    new_states = [[] for _ in range(m.tapes)]
    split = {}
    for c in m.commands:
        if not c.positive and inverse_name(c.name) in have:
            continue
        if not needs_split(c):
            split[c.name] = None
            out.append(c)
            continue
        pieces, fresh = _split_command(c, taken)
        for i, q in enumerate(fresh):
            new_states[i % m.tapes].append(q)
        split[c.name] = pieces
        for piece in pieces:
            out.append(replace(piece, positive=c.positive))
    for c in m.commands:
        if c.positive or inverse_name(c.name) not in have:
            continue
        pieces = split.get(inverse_name(c.name))
        if pieces is None:
            out.append(c)
        else:
            out.extend(p.inverse() for p in reversed(pieces))
    states = tuple(tuple(q) + tuple(extra) for q, extra in zip(m.states, new_states))
    return replace(m, commands=tuple(out), states=states)


def build_pipeline(m):
    return normalize_one_letter(symmetrize(pad_space(enforce_s10(m))))


def prepare_for_s_machine(m):
    """Pipeline output with the s10 condition restored, ready for S(M)."""
    return symmetrize(enforce_s10(build_pipeline(m)))
