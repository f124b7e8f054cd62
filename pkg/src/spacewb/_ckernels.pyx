# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the kernels in ``_kernels_py``.

Same signatures and results; only the inner loops are typed.
"""


cpdef tuple free_reduce(tuple w):
    cdef list out = []
    cdef Py_ssize_t top = 0
    cdef long x
    for x in w:
        if top and <long>out[top - 1] == -x:
            out.pop()
            top -= 1
        else:
            out.append(x)
            top += 1
    return tuple(out)


cpdef tuple min_rotation(tuple w):
    cdef Py_ssize_t n = len(w)
    cdef Py_ssize_t i, best, k
    cdef long a, b
    if n < 2:
        return w
    best = 0
    for i in range(1, n):
        for k in range(n):
            a = <long>w[(i + k) % n]
            b = <long>w[(best + k) % n]
            if a != b:
                if a < b:
                    best = i
                break
    if best == 0:
        return w
    return w[best:] + w[:best]


cpdef tuple canonical(tuple state):
    return tuple(sorted([min_rotation(w) for w in state]))


cpdef tuple collapse_empty(tuple state):
    cdef Py_ssize_t k
    if state.count(()) < 2:
        return state
    k = state.index(())
    return state[: k + 1] + tuple([w for w in state[k + 1:] if w])


cpdef long norm(tuple state):
    cdef long total = 0
    cdef tuple w
    for w in state:
        total += len(w)
    return total


cpdef long weight(tuple w, tuple weights):
    cdef long mod = weights[0]
    cdef long total = 0
    cdef long x
    for x in w:
        total = (total + (<long>weights[x] if x > 0 else mod - <long>weights[-x])) % mod
    return total


cdef void _word_successors(tuple w, tuple rels, long ngens, long room,
                           bint with_shifts, list sink, tuple weights, bint allow_empty):
    cdef Py_ssize_t n = len(w)
    cdef Py_ssize_t p, m, k, s
    cdef long g, x, acc
    cdef tuple head, tail, r
    for p in range(n - 1):
        if <long>w[p] == -<long>w[p + 1]:
            sink.append((w[:p] + w[p + 2:],))
    if room >= 2:
        for p in range(n + 1):
            head = w[:p]
            tail = w[p:]
            for g in range(1, ngens + 1):
                sink.append((head + (g, -g) + tail,))
                sink.append((head + (-g, g) + tail,))
    for r in rels:
        m = len(r)
        if m <= room:
            for p in range(n + 1):
                sink.append((w[:p] + r + w[p:],))
        if m <= n:
            for p in range(n - m + 1):
                if w[p:p + m] == r:
                    sink.append((w[:p] + w[p + m:],))
    if with_shifts:
        for k in range(1, n):
            sink.append((w[k:] + w[:k],))
    acc = 0
    for s in range(n + 1):
        if s and weights is not None:
            x = <long>w[s - 1]
            acc = (acc + (<long>weights[x] if x > 0 else <long>weights[0] - <long>weights[-x])) % <long>weights[0]
        if acc == 0 and (allow_empty or 0 < s < n):
            sink.append((w[:s], w[s:]))
    if n == 0:
        sink.append(())


cpdef list successors(tuple state, tuple rels, long ngens, long cap, bint canon,
                      tuple weights=None):
    cdef long room = cap - norm(state)
    cdef bint allow_empty = all(state)
    cdef list out = []
    cdef list reps
    cdef set seen_words = set()
    cdef Py_ssize_t i, k, n
    cdef tuple w, rest_l, rest_r, rep, rw
    for i in range(len(state)):
        w = state[i]
        rest_l = state[:i]
        rest_r = state[i + 1:]
        reps = []
        if canon:
            if w in seen_words:
                continue
            seen_words.add(w)
            n = len(w)
            if n:
                rots = sorted({w[k:] + w[:k] for k in range(n)})
            else:
                rots = [w]
            for rw in rots:
                reps = []
                _word_successors(rw, rels, ngens, room, False, reps, weights, allow_empty)
                for rep in reps:
                    out.append(canonical(collapse_empty(rest_l + rep + rest_r)))
        else:
            _word_successors(w, rels, ngens, room, True, reps, weights, allow_empty)
            for rep in reps:
                out.append(collapse_empty(rest_l + rep + rest_r))
    return out


def bfs_vanish(tuple start, tuple rels, long ngens, long cap, step_cap, bint canon,
               tuple weights=None, state_cap=None):
    cdef long expanded = 0
    cdef long depth = 0
    cdef set seen
    cdef list frontier, nxt
    cdef tuple st, s2, w
    if norm(start) > cap:
        return False, True, 0, 0
    if weights is not None:
        for w in start:
            if weight(w, weights):
                return False, True, 0, 0
    if canon:
        start = canonical(start)
    if start == ():
        return True, False, 0, 0
    seen = {start}
    frontier = [start]
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
