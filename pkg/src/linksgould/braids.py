"""Braid words and the moves that preserve their closure.

A letter ``k > 0`` is the generator sigma_k crossing strands ``k-1`` and
``k`` (0-based) positively; ``-k`` is its inverse.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "BraidWord",
    "BraidError",
    "parse_braid_word",
    "render_braid_word",
    "braid_move",
    "conjugate",
    "stabilize",
    "destabilize",
    "braid_relation_rewrite",
    "reflect_braid",
    "invert_braid",
    "writhe",
    "closure_components",
]


class BraidError(ValueError):
    """Invalid braid word or illegal move."""


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.strands < 1:
            raise BraidError("a braid needs at least one strand")
        for x in self.letters:
            if x == 0:
                raise BraidError("generator index 0 is not allowed")
            if abs(x) >= self.strands:
                raise BraidError(f"generator {x} does not fit on {self.strands} strands")

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return render_braid_word(self)


def parse_braid_word(text: str, strands: int | None = None) -> BraidWord:
    """Parse comma/space separated signed generators.

    The strand count defaults to ``max|letter| + 1`` (1 for the empty word).

    >>> parse_braid_word("1,-2,1,-2")
    BraidWord(strands=3, letters=(1, -2, 1, -2))
    """
    body = text.strip().strip("[]{}()")
    tokens = [t for t in re.split(r"[,\s]+", body) if t]
    try:
        letters = tuple(int(t) for t in tokens)
    except ValueError as exc:
        raise BraidError(f"malformed braid word {text!r}") from exc
    if any(x == 0 for x in letters):
        raise BraidError("generator index 0 is not allowed")
    if strands is None:
        strands = max((abs(x) for x in letters), default=0) + 1
    return BraidWord(strands, letters)


def render_braid_word(b: BraidWord) -> str:
    return ",".join(str(x) for x in b.letters)


def conjugate(b: BraidWord, w: BraidWord | tuple[int, ...]) -> BraidWord:
    """Return ``w^-1 b w`` (letters read left to right)."""
    wl = tuple(w.letters if isinstance(w, BraidWord) else w)
    inv = tuple(-x for x in reversed(wl))
    return BraidWord(b.strands, inv + b.letters + wl)


def stabilize(b: BraidWord, sign: int = 1) -> BraidWord:
    """Add a strand and append ``±sigma_s`` (Markov II)."""
    if sign not in (1, -1):
        raise BraidError("stabilization sign must be +1 or -1")
    return BraidWord(b.strands + 1, b.letters + (sign * b.strands,))


def destabilize(b: BraidWord) -> BraidWord:
    """Inverse of :func:`stabilize`: drop the last letter ``±(s-1)`` and one strand."""
    top = b.strands - 1
    if top < 1 or not b.letters or abs(b.letters[-1]) != top:
        raise BraidError("last letter is not a generator of the top strand")
    if sum(1 for x in b.letters if abs(x) == top) != 1:
        raise BraidError("top generator occurs more than once")
    return BraidWord(top, b.letters[:-1])


def braid_relation_rewrite(b: BraidWord, position: int | None = None) -> BraidWord:
    """Apply one braid-group relation at ``position`` (default: first applicable).

    Rewrites ``i,j,i -> j,i,j`` for adjacent generators of one sign, swaps
    far commuting letters, or cancels a pair ``x,-x``.  Returns the word
    unchanged when nothing applies.
    """
    L = list(b.letters)
    positions = range(len(L)) if position is None else [position]
    for i in positions:
        if i + 2 < len(L):
            x, y, z = L[i:i + 3]
            if x == z and abs(abs(x) - abs(y)) == 1 and (x > 0) == (y > 0):
                L[i:i + 3] = [y, x, y]
                return BraidWord(b.strands, tuple(L))
        if i + 1 < len(L):
            x, y = L[i:i + 2]
            if abs(abs(x) - abs(y)) >= 2:
                L[i:i + 2] = [y, x]
                return BraidWord(b.strands, tuple(L))
            if x == -y:
                del L[i:i + 2]
                return BraidWord(b.strands, tuple(L))
    return b


def braid_move(b: BraidWord, move: str, arg=None) -> BraidWord:
    """Dispatch one of ``conjugate`` (arg: word), ``stabilize`` (arg: sign),
    ``destabilize`` or ``braid_relation_rewrite`` (arg: position)."""
    if move == "conjugate":
        return conjugate(b, arg if arg is not None else ())
    if move == "stabilize":
        return stabilize(b, 1 if arg is None else arg)
    if move == "destabilize":
        return destabilize(b)
    if move == "braid_relation_rewrite":
        return braid_relation_rewrite(b, arg)
    raise BraidError(f"unknown move {move!r}")


def reflect_braid(b: BraidWord) -> BraidWord:
    """Mirror image: negate every letter."""
    return BraidWord(b.strands, tuple(-x for x in b.letters))


def invert_braid(b: BraidWord) -> BraidWord:
    """Reverse the letter sequence."""
    return BraidWord(b.strands, tuple(reversed(b.letters)))


def writhe(b: BraidWord) -> int:
    return sum(1 if x > 0 else -1 for x in b.letters)


def closure_components(b: BraidWord) -> int:
    """Number of components of the braid closure."""
    perm = list(range(b.strands))
    for x in b.letters:
        i = abs(x) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen = [False] * b.strands
    count = 0
    for s in range(b.strands):
        if not seen[s]:
            count += 1
            while not seen[s]:
                seen[s] = True
                s = perm[s]
    return count
