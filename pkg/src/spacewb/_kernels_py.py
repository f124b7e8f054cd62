"""Pure-Python versions of the hot kernels.

Words here are tuples of non-zero ints: generator ``g`` is ``g`` and its
inverse is ``-g``. A state is a tuple of such words (an FFFL word tuple).
The compiled module ``_ckernels`` exposes exactly the same functions.
"""


def free_reduce(w):
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def min_rotation(w):
    n = len(w)
    if n < 2:
        return tuple(w)
    best = tuple(w)
    for i in range(1, n):
        cand = w[i:] + w[:i]
        if cand < best:
            best = cand
    return best


def canonical(state):
    return tuple(sorted(min_rotation(w) for w in state))


def collapse_empty(state):
    """Keep at most one empty word; extra ones neither cost nor enable anything."""
    if state.count(()) < 2:
        return state
    k = state.index(())
    return state[: k + 1] + tuple(w for w in state[k + 1:] if w)


def norm(state):
    total = 0
    for w in state:
        total += len(w)
    return total


def weight(w, weights):
    """Weight of w modulo ``weights[0]``."""
    mod = weights[0]
    total = 0
    for x in w:
        total += weights[x] if x > 0 else mod - weights[-x]
    return total % mod


def _word_successors(w, rels, ngens, room, with_shifts, weights=None, allow_empty=True):
    """Single-word results (and pair results for fragmentation) of one move.

    Yields tuples of replacement words for the component. With ``weights``
    (a homomorphism to a cyclic group, see ``weight``) a word is only cut
    where both pieces map to zero: a piece with nonzero weight is nontrivial
    and can never vanish. Cuts leaving an empty piece need ``allow_empty``:
    a second empty word in a tuple is never useful, and without this rule
    repeated cuts of the empty word would make the state space infinite.
    """
    n = len(w)
    for p in range(n - 1):
        if w[p] == -w[p + 1]:
            yield (w[:p] + w[p + 2:],)
    if room >= 2:
        for p in range(n + 1):
            head = w[:p]
            tail = w[p:]
            for g in range(1, ngens + 1):
                yield (head + (g, -g) + tail,)
                yield (head + (-g, g) + tail,)
    for r in rels:
        m = len(r)
        if m <= room:
            for p in range(n + 1):
                yield (w[:p] + r + w[p:],)
        if m <= n:
            for p in range(n - m + 1):
                if w[p:p + m] == r:
                    yield (w[:p] + w[p + m:],)
    if with_shifts:
        for k in range(1, n):
            yield (w[k:] + w[:k],)
    acc = 0
    for s in range(n + 1):
        if s and weights:
            x = w[s - 1]
            acc = (acc + (weights[x] if x > 0 else weights[0] - weights[-x])) % weights[0]
        if acc == 0 and (allow_empty or 0 < s < n):
            yield (w[:s], w[s:])
    if n == 0:
        yield ()


def successors(state, rels, ngens, cap, canon, weights=None):
    """All states one elementary move away whose norm stays within ``cap``.

    ``rels`` must already contain every relator and its inverse. With
    ``canon`` set the input is taken as canonical, rotations are folded into
    the moves, and outputs are canonical; otherwise tuple order and explicit
    cyclic shifts are kept.
    """
    room = cap - norm(state)
    allow_empty = all(state)
    out = []
    seen_words = set()
    for i, w in enumerate(state):
        rest_l = state[:i]
        rest_r = state[i + 1:]
        if canon:
            if w in seen_words:
                continue
            seen_words.add(w)
            rots = {w[k:] + w[:k] for k in range(len(w))} if w else {w}
            for rw in sorted(rots):
                for rep in _word_successors(rw, rels, ngens, room, False, weights, allow_empty):
                    out.append(canonical(collapse_empty(rest_l + rep + rest_r)))
        else:
            for rep in _word_successors(w, rels, ngens, room, True, weights, allow_empty):
                out.append(collapse_empty(rest_l + rep + rest_r))
    return out


def bfs_vanish(start, rels, ngens, cap, step_cap, canon, weights=None, state_cap=None):
    """Breadth-first search for the empty tuple within norm ``cap``.

    Returns ``(found, exhausted, expanded, depth)``; ``exhausted`` is true when
    the whole capped component was explored without reaching the step cap
    (a depth limit) or the state cap (a limit on distinct states).
    """
    if norm(start) > cap:
        return False, True, 0, 0
    if weights and any(weight(w, weights) for w in start):
        return False, True, 0, 0
    if canon:
        start = canonical(start)
    if start == ():
        return True, False, 0, 0
    seen = {start}
    frontier = [start]
    expanded = 0
    depth = 0
    while frontier:
        if step_cap is not None and depth >= step_cap:
            return False, False, expanded, depth
        depth += 1
        nxt = []
        for st in frontier:
            expanded += 1
            for s2 in successors(st, rels, ngens, cap, canon, weights):
                if s2 == ():
                    return True, False, expanded, depth
                if s2 not in seen:
                    seen.add(s2)
                    nxt.append(s2)
                    if state_cap is not None and len(seen) > state_cap:
                        return False, False, expanded, depth
        frontier = nxt
    return False, True, expanded, depth
