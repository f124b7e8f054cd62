"""Small machines shipped with the package, with their languages."""

from importlib import resources
from itertools import product

from ..machine import parse_machine
from ..smachine import parse_smachine

NAMES = ("fbal", "even")
S_NAMES = ("eraser", "onestep")


def load(name):
    text = resources.files(__package__).joinpath(f"{name}.mach").read_text()
    return parse_machine(text, f"{name}.mach")


def load_s(name):
    text = resources.files(__package__).joinpath(f"{name}.smach").read_text()
    return parse_smachine(text, f"{name}.smach")


def path(filename):
    return str(resources.files(__package__).joinpath(filename))


def expected(name, word):
    """Membership by definition, independent of any machine."""
    word = tuple(word)
    if name == "fbal":
        return word.count("a") == word.count("a'")
    if name == "even":
        return len(word) % 2 == 0
    if name == "eraser":
        return all(x == "x" for x in word)
    if name == "onestep":
        return not word
    raise KeyError(name)


def words(alphabet, max_len):
    for n in range(max_len + 1):
        for w in product(sorted(alphabet), repeat=n):
            yield w


def expected_language(name, alphabet, max_len):
    return sorted(w for w in words(alphabet, max_len) if expected(name, w))
