"""Group words over string letters.

A letter is a non-empty string; its formal inverse carries the suffix ``^-1``.
Words are tuples of letters.
"""

from typing import Iterable, Sequence, Tuple

INV = "^-1"

Word = Tuple[str, ...]


def inv_letter(x: str) -> str:
    if x.endswith(INV):
        return x[: -len(INV)]
    return x + INV


def base_letter(x: str) -> str:
    return x[: -len(INV)] if x.endswith(INV) else x


def is_inverse(x: str) -> bool:
    return x.endswith(INV)


def inv_word(w: Sequence[str]) -> Word:
    return tuple(inv_letter(x) for x in reversed(w))


def reduce_word(w: Iterable[str]) -> Word:
    """Free reduction (cancel adjacent ``x x^-1`` pairs until none remain)."""
    out = []
    for x in w:
        if out and out[-1] == inv_letter(x):
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def is_reduced(w: Sequence[str]) -> bool:
    return all(w[i + 1] != inv_letter(w[i]) for i in range(len(w) - 1))


def cyclic_reduce(w: Sequence[str]) -> Word:
    w = reduce_word(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == inv_letter(w[j - 1]):
        i += 1
        j -= 1
    return w[i:j]


def mirror(w: Sequence[str]) -> Word:
    """Reverse the letter order; letters themselves are untouched."""
    return tuple(reversed(w))


def is_positive(w: Sequence[str]) -> bool:
    return not any(x.endswith(INV) for x in w)


def least_rotation(w: Sequence[str]) -> Word:
    w = tuple(w)
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


def parse_word(text: str) -> Word:
    """Whitespace-separated tokens; ``1`` or an empty string is the empty word."""
    toks = text.split()
    if toks == ["1"]:
        return ()
    return tuple(toks)


def format_word(w: Sequence[str]) -> str:
    return " ".join(w) if w else "1"
