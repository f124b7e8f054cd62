from dataclasses import replace

import pytest

from spacewb import fixtures
from spacewb.errors import BadLetter, FormatError, NondeterministicChoice, NotApplicable, StepCapExceeded
from spacewb.machine import (Command, Part, Side, TapeConfig, a_length, accept_config,
                             apply_command, check_trace, format_machine, inverse_name,
                             is_accept_config, make_input_config, parse_machine, replay,
                             run_deterministic, successors, validate_machine)
from spacewb.transforms import symmetrize


def one_tape(commands, **kw):
    text = "\n".join(["tapes 1", "input a b", "tape 1 a b", "states 1 q r f",
                      "start q", "accept f"] + commands)
    return replace(parse_machine(text), **kw)


def test_fixture_validates(fbal, even):
    assert validate_machine(fbal) == []
    assert validate_machine(even) == []


def test_input_alphabet_must_sit_in_first_tape(fbal):
    bad = replace(fbal, input_alphabet=("a", "zz"))
    assert any("input alphabet not contained" in p for p in validate_machine(bad))


def test_determinism_violation_reported():
    m = one_tape(["deterministic true", "command x +", "  tape 1 a q => r",
                  "command y +", "  tape 1 a q => f"])
    assert any("determinism violated" in p for p in validate_machine(m))


def test_zero_tapes_rejected():
    m = parse_machine("tapes 0\n")
    assert validate_machine(m) == ["machine has no tapes"]


def test_input_config(fbal):
    c = make_input_config(fbal, ("a", "a'"))
    assert c[0] == TapeConfig(("a", "a'"), "q", ())
    assert c[1] == TapeConfig((), "P", ())
    assert all(not tc.left and not tc.right for tc in make_input_config(fbal, ())[1:])
    with pytest.raises(BadLetter):
        make_input_config(fbal, ("a", "b"))


def test_substitution_at_head():
    m = one_tape(["command eat +", "  tape 1 a q => r"])
    c = (TapeConfig(("a", "a"), "q", ()),)
    assert apply_command(m, c, "eat") == (TapeConfig(("a",), "r", ()),)
    back = apply_command(m, apply_command(m, c, "eat"), "eat^-1")
    assert back == c


def test_anchored_part():
    m = one_tape(["command go +", "  tape 1 ^ q => ^ r"])
    assert apply_command(m, (TapeConfig((), "q", ("b",)),), "go") == (TapeConfig((), "r", ("b",)),)
    with pytest.raises(NotApplicable):
        apply_command(m, (TapeConfig(("a",), "q", ()),), "go")


def test_a_length(fbal):
    c = (TapeConfig(("a", "a'"), "q", ()), TapeConfig((), "P", ()))
    assert a_length(fbal, c) == 2
    assert a_length(replace(fbal, count_input_tape=False), c) == 0
    assert a_length(fbal, accept_config(fbal)) == 0


def test_accept_config(fbal):
    assert is_accept_config(fbal, accept_config(fbal))
    c = (TapeConfig((), "f", ()), TapeConfig(("x",), "F", ()))
    assert not is_accept_config(fbal, c)
    assert not is_accept_config(fbal, make_input_config(fbal, ()))


def test_run_fbal(fbal):
    t = run_deterministic(fbal, make_input_config(fbal, ("a", "a'")), 20)
    assert is_accept_config(fbal, t.configs[-1])
    t = run_deterministic(fbal, make_input_config(fbal, ("a", "a")), 20)
    assert not is_accept_config(fbal, t.configs[-1])
    with pytest.raises(StepCapExceeded):
        run_deterministic(fbal, make_input_config(fbal, ("a", "a'")), 0)


def test_wrong_determinism_flag_is_diagnosed():
    m = one_tape(["deterministic true", "command x +", "  tape 1 a q => r",
                  "command y +", "  tape 1 a q => f"])
    with pytest.raises(NondeterministicChoice):
        run_deterministic(m, (TapeConfig(("a",), "q", ()),), 5)


def test_trace_space_matches_recomputation(fbal):
    t = run_deterministic(fbal, make_input_config(fbal, ("a", "a", "a'", "a'")), 40)
    assert t.space == max(a_length(fbal, c) for c in t.configs)
    assert check_trace(fbal, t) == []


def test_reversed_trace_of_symmetric_machine(fbal):
    s = symmetrize(fbal)
    t = run_deterministic(fbal, make_input_config(fbal, ("a'", "a")), 20)
    back = replay(s, t.configs[-1], [inverse_name(h) for h in reversed(t.history)])
    assert back.configs[-1] == t.configs[0]
    names = {c.name for c in s.commands}
    assert all(inverse_name(n) in names for n in names)


def test_format_round_trip(fbal, even):
    for m in (fbal, even):
        text = format_machine(m)
        again = parse_machine(text)
        assert again == m
        assert format_machine(again) == text


def test_parse_error_has_location():
    with pytest.raises(FormatError) as e:
        parse_machine("tapes 1\nbogus 3\n", "x.mach")
    assert "x.mach:2" in str(e.value)


def test_round_trip_of_every_reachable_step(fbal):
    s = symmetrize(fbal)
    frontier = [make_input_config(s, u) for u in fixtures.words(s.input_alphabet, 3)]
    seen = set(frontier)
    for _ in range(4):
        nxt = []
        for c in frontier:
            for name, c2 in successors(s, c):
                assert apply_command(s, c2, inverse_name(name)) == c
                if c2 not in seen:
                    seen.add(c2)
                    nxt.append(c2)
        frontier = nxt
    assert len(seen) > 20


def test_command_inverse_swaps_sides():
    c = Command("x", (Part(Side(("a",), "q", ()), Side((), "r", ())),))
    assert c.inverse().name == "x^-1"
    assert c.inverse().inverse() == c
