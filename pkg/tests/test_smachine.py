import pytest

from spacewb import fixtures
from spacewb.adder import adder_word, canonical_run, default_names, make_adder
from spacewb.composition import (canonical_lift, compose_with_adder, is_basic, lift_word,
                                 project_computation, project_word)
from spacewb.errors import DomainViolation, NotApplicable, NotOneLetter, NotSymmetric
from spacewb.machine import apply_command, make_input_config
from spacewb.oracle import accepting_computation
from spacewb.smachine import (SMachine, SPart, SRule, STrace, apply_rule, applicable,
                              check_trace, config_to_word, format_smachine, from_turing,
                              make_word, parse_smachine, reduce_history, replay, successors,
                              word_to_config)
from spacewb.transforms import prepare_for_s_machine


def two_positions(rule):
    return SMachine((("s",), ("q", "q'")), (("a", "b", "c"),), (rule,),
                    make_word(("s", "q"), ((),)), make_word(("s", "q'"), ((),)))


IDLE = SPart((), "s", (), (), "s", ())


def test_substitution_example():
    # q -> a^-1 b q' turns "a q" into "b q'"
    r = SRule("t", (IDLE, SPart(("a",), "q", (), ("b",), "q'", ())), (None,))
    s = two_positions(r)
    w = make_word(("s", "q"), (("a",),))
    assert apply_rule(s, w, "t") == make_word(("s", "q'"), (("b",),))
    # substitution is free: the sector need not end with a
    w2 = make_word(("s", "q"), (("c",),))
    assert apply_rule(s, w2, "t").sectors == (("c", "a^-1", "b"),)
    assert apply_rule(s, apply_rule(s, w, "t"), "t^-1") == w


def test_empty_domain_rejects_letters():
    r = SRule("t", (IDLE, SPart((), "q", (), (), "q'", ())), (frozenset(),))
    s = two_positions(r)
    w = make_word(("s", "q"), (("a",),))
    assert not applicable(s, w, "t")
    with pytest.raises(DomainViolation):
        apply_rule(s, w, "t")
    assert applicable(s, make_word(("s", "q"), ((),)), "t")


def test_domain_checks_inverse_letters():
    r = SRule("t", (IDLE, SPart((), "q", (), (), "q'", ())), (frozenset({"a"}),))
    s = two_positions(r)
    assert applicable(s, make_word(("s", "q"), (("a^-1",),)), "t")
    assert not applicable(s, make_word(("s", "q"), (("b",),)), "t")


def test_state_mismatch():
    r = SRule("t", (IDLE, SPart((), "q", (), (), "q'", ())), (None,))
    s = two_positions(r)
    with pytest.raises(NotApplicable):
        apply_rule(s, make_word(("s", "q'"), ((),)), "t")
    assert list(successors(s, make_word(("s", "q'"), ((),)))) == [
        ("t^-1", make_word(("s", "q"), ((),)))]


def test_trace_helpers():
    r = SRule("t", (IDLE, SPart(("a",), "q", (), ("b",), "q'", ())), (None,))
    s = two_positions(r)
    w = make_word(("s", "q"), (("a",),))
    t = replay(s, w, ["t", "t^-1", "t"])
    assert check_trace(s, t) == []
    red = reduce_history(s, t)
    assert red.history == ("t",)
    assert red.words == (t.words[0], t.words[-1])
    bad = STrace(t.words[:2], ("t^-1",))
    assert check_trace(s, bad)


@pytest.mark.parametrize("name", fixtures.S_NAMES)
def test_format_round_trip(name):
    s = fixtures.load_s(name)
    assert parse_smachine(format_smachine(s)) == s


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_s_of_m_rule_count(name):
    M = prepare_for_s_machine(fixtures.load(name))
    s = from_turing(M)
    assert len(s.rule_names()) == len(M.commands)
    assert s.sector_count == 2 * M.tapes


def test_s_of_m_needs_prepared_machine(fbal):
    with pytest.raises((NotSymmetric, NotOneLetter)):
        from_turing(fbal)


def test_s_of_m_follows_the_machine(even):
    M = prepare_for_s_machine(even)
    s = from_turing(M)
    for u in fixtures.words(M.input_alphabet, 3):
        c = make_input_config(M, u)
        w = config_to_word(M, c)
        assert s.input_word(u) == w
        assert word_to_config(M, w) == c
        got = accepting_computation(M, c, 12)
        assert (got is not None) == fixtures.expected("even", u)
        if got is None:
            continue
        configs, hist = got
        t = replay(s, w, hist)
        assert [word_to_config(M, x) for x in t.words] == list(configs)
        for i, name in enumerate(hist):
            assert apply_command(M, configs[i], name) == configs[i + 1]


def test_adder_counts_up_and_back():
    A = ("a", "b")
    z = make_adder(A)
    names = default_names(A)
    for u in fixtures.words(A, 3):
        run = canonical_run(names, u)
        assert len(run) >= 2 ** len(u)
        t = replay(z, adder_word(names, u), run)
        assert t.words[-1] == adder_word(names, u, p_index=2)
        assert t.space <= len(u) + 1
        assert check_trace(z, t) == []


def test_adder_stops_on_overflow_only_when_empty():
    names = default_names(("a",))
    z = make_adder(("a",))
    w = adder_word(names, ("a",))
    assert not applicable(z, w, "E")
    assert applicable(z, adder_word(names, ()), "E")


@pytest.fixture(scope="module")
def comp_even():
    return compose_with_adder(prepare_for_s_machine(fixtures.load("even")))


def test_composition_layout(comp_even):
    sm = comp_even.base
    m = comp_even.machine
    assert len(m.states) == 2 * sm.sector_count + 1
    assert m.sector_count == 2 * sm.sector_count
    assert len(m.start.states) == 2 * comp_even.blocks + 1
    assert comp_even.start_rule in m.basic_names
    assert comp_even.accept_rule in m.basic_names


def test_lift_projects_back(comp_even):
    W = comp_even.base.start
    assert project_word(comp_even, lift_word(W)) == W


def test_lifted_computation_accepts(comp_even):
    M = prepare_for_s_machine(fixtures.load("even"))
    sm = comp_even.base
    got = accepting_computation(M, make_input_config(M, ("a", "a")), 12)
    configs, hist = got
    c = replay(sm, config_to_word(M, configs[0]), hist)
    big = canonical_lift(comp_even, c)
    assert big.words[0] == lift_word(c.words[0])
    assert big.words[-1] == comp_even.machine.accept
    proj = project_computation(comp_even, big)
    assert proj.history == c.history
    assert proj.words == c.words
    assert big.space >= c.space


def test_projection_without_basic_steps(comp_even):
    m = comp_even.machine
    w = lift_word(comp_even.base.start)
    t = replay(m, w, [])
    assert project_computation(comp_even, t).length == 0
    # walk a few non-basic steps from a lifted word
    for name, w2 in successors(m, w):
        if not is_basic(comp_even, name):
            t = replay(m, w, [name])
            proj = project_computation(comp_even, t)
            assert proj.length == 0
            assert proj.words == (project_word(comp_even, w),)
