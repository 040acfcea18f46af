import random

import pytest

from tracepoly.words import GoodWord


def make_word(rng, max_syllables=6, max_exp=3, max_lead=2, order2=False,
              balanced=None, even=None, regular=None):
    """Random normalized good word with optional classification constraints."""
    while True:
        m = rng.randint(1, max_syllables)
        if balanced is True:
            m += m % 2
        elif balanced is False and m % 2 == 0:
            m += 1
        if regular is True or order2:
            s0 = 1
        else:
            s0 = rng.choice([1, -1])
        syls = []
        for k in range(m):
            choices = [e for e in range(-max_exp, max_exp + 1) if e or k == m - 1]
            syls.append((s0 * (-1) ** k, rng.choice(choices)))
        lead = 0 if order2 else rng.randint(-max_lead, max_lead)
        w = GoodWord(tuple(syls), lead, order2)
        if even is True and w.exponent_sum() % 2:
            syls[-1] = (syls[-1][0], syls[-1][1] + 1)
            w = GoodWord(tuple(syls), lead, order2)
        if even is False and w.exponent_sum() % 2 == 0:
            syls[-1] = (syls[-1][0], syls[-1][1] + 1)
            w = GoodWord(tuple(syls), lead, order2)
        if regular is False and (not w.syllables or w.syllables[0][0] == 1):
            continue
        if not w.is_identity:
            return w


def make_params(rng, lo=0.4, hi=1.1):
    import cmath

    def one():
        r = rng.uniform(lo, hi)
        th = rng.uniform(0, 6.283185307179586)
        return r * cmath.exp(1j * th)

    return one(), one(), one()


@pytest.fixture
def rng():
    return random.Random(20240811)
