import pytest

from spacewb import fixtures
from spacewb.errors import S10Missing
from spacewb.machine import (Command, Part, Side, is_applicable, make_input_config, parse_machine,
                             validate_machine)
from spacewb.oracle import bfs_machine_space, enumerate_language
from spacewb.transforms import (PAD, build_pipeline, enforce_s10, is_one_letter,
                                normalize_one_letter, pad_space, pad_stage_names,
                                prepare_for_s_machine, satisfies_s10, symmetrize)


def lang(m, n, cap=10):
    return enumerate_language(m, n, cap).words


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_enforce_s10(name):
    m = fixtures.load(name)
    m1 = enforce_s10(m)
    assert satisfies_s10(m1)
    assert validate_machine(m1) == []
    assert len(m1.commands) == len(m.commands) + 2
    assert sum(len(q) for q in m1.states) == sum(len(q) for q in m.states) + 2 * m.tapes
    assert lang(m1, 5) == lang(m, 5)
    # applied unconditionally, even when the input already qualifies
    assert len(enforce_s10(m1).commands) == len(m1.commands) + 2


def test_exactly_one_command_starts(fbal):
    m1 = enforce_s10(fbal)
    for u in fixtures.words(fbal.input_alphabet, 4):
        c = make_input_config(m1, u)
        assert sum(is_applicable(cmd, c) for cmd in m1.positive_commands) == 1


def test_pad_requires_s10(fbal):
    with pytest.raises(S10Missing):
        pad_space(fbal)


def test_pad_shape(fbal):
    m1 = enforce_s10(fbal)
    m2 = pad_space(m1)
    assert m2.tapes == fbal.tapes + 1
    assert m2.alphabets[-1] == (PAD,)
    star, t12, t23, erase = pad_stage_names(m2)
    names = {c.name for c in m2.commands}
    assert t12 + "^-1" not in names and t23 + "^-1" not in names
    # every simulated command keeps the total number of squares
    for c in m2.commands:
        if c.name in (star, t12, t23, erase):
            continue
        net = sum(p.rhs.letters - p.lhs.letters for p in c.parts)
        assert net == 0, c.name


def test_insertion_pays_with_a_pad():
    m = parse_machine("tapes 1\ninput a\ntape 1 a\nstates 1 q f\nstart q\naccept f\n"
                      "command ins +\n  tape 1 q => a q\n")
    m2 = pad_space(enforce_s10(m))
    ins = next(c for c in m2.commands if c.name.startswith("ins"))
    assert ins.parts[-1].lhs.left == (PAD,)
    assert ins.parts[-1].rhs.left == ()


def test_pad_rejects_reserved_letter():
    m = parse_machine("tapes 1\ninput *\ntape 1 *\nstates 1 q f\nstart q\naccept f\n"
                      "command go +\n  tape 1 ^ q => ^ f\n")
    with pytest.raises(S10Missing):
        pad_space(enforce_s10(m))


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_pad_keeps_language(name):
    m1 = enforce_s10(fixtures.load(name))
    assert lang(pad_space(m1), 4) == lang(m1, 4)


def test_symmetrize(fbal):
    s = symmetrize(fbal)
    assert len(s.commands) == 2 * len(fbal.commands)
    assert s.is_symmetric
    again = symmetrize(s)
    assert {c.name for c in again.commands} == {c.name for c in s.commands}


def test_split_one_command():
    m = parse_machine("tapes 1\ninput a b\ntape 1 a b\nstates 1 q r\nstart q\naccept r\n"
                      "command sw +\n  tape 1 a q => b r\n")
    out = normalize_one_letter(m)
    assert [c.name for c in out.commands] == ["sw.1", "sw.2"]
    first, second = out.commands
    assert first.parts[0].lhs.left == ("a",) and first.parts[0].rhs.left == ()
    assert second.parts[0].lhs.left == () and second.parts[0].rhs.left == ("b",)
    assert first.parts[0].rhs.state == second.parts[0].lhs.state
    assert is_one_letter(out)


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_one_letter_keeps_language(name):
    m = fixtures.load(name)
    out = normalize_one_letter(m)
    assert max(c.letter_count for c in out.commands) <= 1
    assert lang(out, 4) == lang(m, 4)


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_pipeline(name):
    m = fixtures.load(name)
    out = build_pipeline(m)
    assert out.is_symmetric and is_one_letter(out)
    full = prepare_for_s_machine(m)
    assert full.is_symmetric and is_one_letter(full) and satisfies_s10(full)
    assert lang(full, 2, 8) == tuple(fixtures.expected_language(name, m.input_alphabet, 2))


def test_pipeline_space_tracks_original(even):
    full = prepare_for_s_machine(even)
    for u in fixtures.words(even.input_alphabet, 4):
        a = bfs_machine_space(even, make_input_config(even, u), 10)
        b = bfs_machine_space(full, make_input_config(full, u), 10)
        assert a.found == b.found
        if a.found:
            # the pipeline adds bounded overhead only
            assert a.value <= b.value <= a.value + 2


def test_deterministic_names(fbal):
    a = prepare_for_s_machine(fbal)
    b = prepare_for_s_machine(fbal)
    assert [c.name for c in a.commands] == [c.name for c in b.commands]
    assert a == b


def test_command_builder_helpers():
    c = Command("x", (Part(Side(("a", "b"), "q", ()), Side((), "r", ())),))
    assert c.letter_count == 2
