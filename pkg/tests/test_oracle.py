import pytest

from spacewb import fixtures
from spacewb.errors import BoundTooSmall, SpaceBoundExceeded
from spacewb.machine import accept_config, make_input_config, parse_machine
from spacewb.oracle import (CAP, FOUND, REJECTED, accepts, bfs_group_space, bfs_machine_space,
                            compute_space_function, configuration_universe, enumerate_language,
                            enumerate_reduced_computations, s_accepting_search, savitch_reach)

COMM = [("a", "b", "a^-1", "b^-1")]


def test_killed_generator(backend):
    assert bfs_group_space(["a"], [("a",)], ["a"], 4).value == 1
    assert bfs_group_space(["a"], [("a",)], ["a", "a^-1"], 4).value == 2


def test_free_group(backend):
    r = bfs_group_space(["a"], [], ["a"], 4)
    assert r.status == REJECTED and r.bounds == (5, None)
    r = bfs_group_space(["a", "b"], [], ["a", "b", "b^-1", "a^-1"], 6)
    assert r.status == FOUND and r.value == 4


def test_cap_below_value(backend):
    r = bfs_group_space(["a", "b"], COMM, ["a", "b", "a^-1", "b^-1"], 3)
    assert r.status == REJECTED
    assert bfs_group_space(["a", "b"], COMM, ["a", "b", "a^-1", "b^-1"], 6).value == 4


def test_state_cap_gives_bounds(backend):
    word = ["a", "a", "b", "a^-1", "a^-1", "b^-1"]
    full = bfs_group_space(["a", "b"], COMM, word, 10)
    assert full.found
    r = bfs_group_space(["a", "b"], COMM, word, 10, state_cap=3)
    assert r.status == CAP
    lo, hi = r.bounds
    assert lo <= full.value and (hi is None or full.value <= hi)


def test_empty_word(backend):
    r = bfs_group_space(["a"], [], [], 2)
    assert r.found and r.value == 0


@pytest.mark.parametrize("word", [
    ["a", "b", "a^-1", "b^-1"],
    ["a", "a", "b", "a^-1", "a^-1", "b^-1"],
    ["b", "a", "b^-1", "a^-1", "a"],
])
def test_canonical_matches_raw(word):
    a = bfs_group_space(["a", "b"], COMM, word, 6)
    b = bfs_group_space(["a", "b"], COMM, word, 6, canonical=False, prune=False)
    assert (a.status, a.value) == (b.status, b.value)


def test_deterministic():
    word = ["a", "a", "b", "a^-1", "a^-1", "b^-1"]
    assert bfs_group_space(["a", "b"], COMM, word, 8) == \
        bfs_group_space(["a", "b"], COMM, word, 8)


def test_machine_space_outcomes(fbal):
    r = bfs_machine_space(fbal, make_input_config(fbal, ("a", "a'")), 8)
    assert r.status == FOUND and r.value >= 2
    r = bfs_machine_space(fbal, make_input_config(fbal, ("a",)), 8)
    assert r.status in (REJECTED, CAP) and r.value is None
    # more room never makes space worse
    r2 = bfs_machine_space(fbal, make_input_config(fbal, ("a", "a'")), 12)
    assert r2.value == bfs_machine_space(fbal, make_input_config(fbal, ("a", "a'")), 8).value


def test_step_cap_is_three_valued(fbal):
    r = accepts(fbal, ("a", "a'"), 8, step_cap=1)
    assert r.status == CAP


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_languages(name):
    m = fixtures.load(name)
    got = enumerate_language(m, 4, 10)
    assert got.words == tuple(fixtures.expected_language(name, m.input_alphabet, 4))


def test_savitch_strategies_agree(even):
    universe = configuration_universe(even, 3)
    start = make_input_config(even, ("a", "a"))
    end = accept_config(even)
    for k in (1, 2, 4, 8):
        f = savitch_reach(even, start, end, k, 3, "faithful", universe)
        t = savitch_reach(even, start, end, k, 3, "tabled")
        assert (f.reachable, f.minspace) == (t.reachable, t.minspace)
    assert savitch_reach(even, start, end, 8, 3).reachable


def test_savitch_monotone_in_k(even):
    start = make_input_config(even, ("a", "a"))
    end = accept_config(even)
    prev = None
    for k in range(1, 10):
        r = savitch_reach(even, start, end, k, 4)
        if prev is not None and prev.reachable:
            assert r.reachable and r.minspace <= prev.minspace
        prev = r


def test_savitch_guards(even):
    start = make_input_config(even, ("a",) * 4)
    with pytest.raises(SpaceBoundExceeded):
        savitch_reach(even, start, accept_config(even), 2, 2)
    with pytest.raises(ValueError):
        savitch_reach(even, start, accept_config(even), 0, 8)


def test_space_function(even):
    direct = max(bfs_machine_space(even, make_input_config(even, u), 10).value
                 for u in fixtures.words(even.input_alphabet, 4)
                 if fixtures.expected("even", u))
    assert compute_space_function(even, 4, direct) == direct


def test_space_function_bound_too_small(even):
    with pytest.raises(BoundTooSmall):
        compute_space_function(even, 4, 1, cross_check=True)


def test_s_machine_search():
    s = fixtures.load_s("eraser")
    c = s_accepting_search(s, s.input_word(("x", "x")), 10, 20)
    assert c is not None and c.words[-1] == s.accept
    assert s_accepting_search(s, s.input_word(()), 10, 20) is not None


def test_reduced_computations_are_reduced():
    s = fixtures.load_s("eraser")
    for t in enumerate_reduced_computations(s, s.input_word(("x",)), 4):
        h = t.history
        assert all(h[i + 1] != (h[i][:-3] if h[i].endswith("^-1") else h[i] + "^-1")
                   for i in range(len(h) - 1))


def test_unanchored_machine_is_capped():
    m = parse_machine("tapes 1\ninput a\ntape 1 a\nstates 1 q f\nstart q\naccept f\n"
                      "command grow +\n  tape 1 q => a q\n")
    r = bfs_machine_space(m, make_input_config(m, ()), 5)
    assert r.status == CAP
