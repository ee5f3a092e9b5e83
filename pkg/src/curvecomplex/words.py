"""Free-group words as tuples of nonzero integers.

Generator ``k`` (1-based) is the integer ``k``; its inverse is ``-k``.  On
the ASCII side generator ``k`` is the ``k``-th lowercase letter and its
inverse the matching uppercase letter, so ``"abAB"`` is ``(1, 2, -1, -2)``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Word = tuple[int, ...]

_LOWER = "abcdefghijklmnopqrstuvwxyz"


class WordError(ValueError):
    pass


class EmptyAfterReduction(WordError):
    """The word reduced to the identity."""


def parse_word(text: str, rank: int) -> Word:
    """Parse ``"abAB"`` style text over the first ``rank`` generators."""
    letters = []
    for ch in text.strip():
        k = _LOWER.find(ch.lower()) + 1
        if k == 0 or k > rank:
            raise WordError(f"letter {ch!r} is not a generator of a rank-{rank} group")
        letters.append(k if ch.islower() else -k)
    return tuple(letters)


def format_word(w: Sequence[int]) -> str:
    return "".join(_LOWER[x - 1] if x > 0 else _LOWER[-x - 1].upper() for x in w)


def inverse(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def free_reduce(w: Iterable[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def multiply(*words: Sequence[int]) -> Word:
    return free_reduce(x for w in words for x in w)


def power(w: Sequence[int], n: int) -> Word:
    if n < 0:
        return power(inverse(w), -n)
    return free_reduce(tuple(w) * n)


def cyclic_reduce(w: Iterable[int]) -> Word:
    r = free_reduce(w)
    i, j = 0, len(r)
    while j - i >= 2 and r[i] == -r[j - 1]:
        i += 1
        j -= 1
    return r[i:j]


def rotate(w: Sequence[int], k: int) -> Word:
    if not w:
        return ()
    k %= len(w)
    return tuple(w[k:]) + tuple(w[:k])


def letter_key(x: int, rank: int) -> int:
    """Alphabet order: a < b < ... < A < B < ..."""
    return x - 1 if x > 0 else rank - x - 1


def _least_rotation(w: Word, rank: int) -> tuple[tuple[int, ...], int]:
    keys = [letter_key(x, rank) for x in w]
    best = None
    best_k = 0
    for k in range(len(w)):
        cand = keys[k:] + keys[:k]
        if best is None or cand < best:
            best, best_k = cand, k
    return tuple(best), best_k


def canonical_cyclic(w: Iterable[int], rank: int) -> Word:
    """Least rotation of the cyclic reduction of ``w`` or of its inverse.

    Raises :class:`EmptyAfterReduction` for words trivial in the free group.
    """
    r = cyclic_reduce(w)
    if not r:
        raise EmptyAfterReduction("word is trivial after cyclic reduction")
    k1, i1 = _least_rotation(r, rank)
    ri = inverse(r)
    k2, i2 = _least_rotation(ri, rank)
    return rotate(r, i1) if k1 <= k2 else rotate(ri, i2)


def is_canonical(w: Word, rank: int) -> bool:
    """Cheap test used by the enumerator; ``w`` must be cyclically reduced."""
    keys = [letter_key(x, rank) for x in w]
    inv_keys = [letter_key(-x, rank) for x in reversed(w)]
    n = len(keys)
    for k in range(1, n):
        if keys[k:] + keys[:k] < keys:
            return False
    for k in range(n):
        if inv_keys[k:] + inv_keys[:k] < keys:
            return False
    return True


def primitive_root_length(w: Sequence[int]) -> int:
    """Length of the shortest cyclic period of ``w``."""
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and all(w[i] == w[i % d] for i in range(n)):
            return d
    return n


def is_proper_power(w: Sequence[int]) -> bool:
    return primitive_root_length(w) < len(w)


def exponent_sums(w: Iterable[int], rank: int) -> list[int]:
    sums = [0] * rank
    for x in w:
        sums[abs(x) - 1] += 1 if x > 0 else -1
    return sums


def substitute(w: Iterable[int], images: dict[int, Word]) -> Word:
    """Apply the endomorphism sending generator ``k`` to ``images[k]``."""
    out = []
    for x in w:
        img = images.get(abs(x), (abs(x),))
        out.extend(img if x > 0 else inverse(img))
    return free_reduce(out)
