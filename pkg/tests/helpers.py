"""Shared test utilities."""

import random

from mwb.cartanweyl import CartanMatrix, WeylWord, is_reduced


def random_reduced_word(C: CartanMatrix, max_len: int, rng: random.Random) -> WeylWord:
    """Grow a reduced word by rejection sampling, one letter at a time."""
    letters: list[int] = []
    target = rng.randint(1, max_len)
    stuck = 0
    while len(letters) < target and stuck < 20:
        i = rng.randint(1, C.n)
        cand = letters + [i]
        if is_reduced(C, WeylWord(tuple(cand))):
            letters = cand
            stuck = 0
        else:
            stuck += 1
    return WeylWord(tuple(letters))
