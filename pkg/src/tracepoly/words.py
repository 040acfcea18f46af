"""Good words on two letters: parsing, normal forms, classification.

A good word is a word ``b^{s_1} a^{r_1} b^{s_2} a^{r_2} ... b^{s_m} a^{r_m}``
(with an optional leading power of ``a``) whose b-exponents are all +-1 and
alternate in sign.  Syllables are stored as ``(s, r)`` pairs; interior zero
a-powers are collapsed away on construction, so normalized words are unique.

Two regimes coexist:

* free mode: the word lives in the free group on a, b; b-signs must already
  alternate or parsing fails.
* order-2 mode (``order2=True``): the second letter has order two, so any
  string of a's and b's normalizes to a good word whose b-signs we store in
  the canonical alternating pattern +1, -1, +1, ...
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

__all__ = [
    "GoodWord",
    "WordSyntaxError",
    "NotGoodWordError",
    "parse_word",
    "Classification",
    "classify",
    "star",
    "to_regular",
    "append_a",
    "invert",
    "multiply",
    "decompose_rbe",
    "expand_tokens",
    "GEN_A2",
    "GEN_BA2B",
    "GEN_COMM",
    "enumerate_order2_words",
]


class WordSyntaxError(ValueError):
    """The input string does not match the word grammar."""


class NotGoodWordError(ValueError):
    """The (freely reduced) word is not a good word."""


@dataclass(frozen=True)
class GoodWord:
    """Normalized good word.

    ``syllables``: tuple of (b-exponent, trailing a-exponent) pairs;
    ``leading_a``: power of a preceding the first b;
    ``order2``: whether the word is taken modulo b**2 = 1.
    """

    syllables: tuple[tuple[int, int], ...] = ()
    leading_a: int = 0
    order2: bool = False

    @property
    def is_identity(self) -> bool:
        return not self.syllables and self.leading_a == 0

    @property
    def syllable_count(self) -> int:
        return len(self.syllables)

    def exponent_sum(self) -> int:
        return self.leading_a + sum(r for _, r in self.syllables)

    def letters(self) -> list[tuple[str, int]]:
        """Run-length letter sequence [('a'|'b', exponent), ...]."""
        out = []
        if self.leading_a:
            out.append(("a", self.leading_a))
        for s, r in self.syllables:
            out.append(("b", s))
            if r:
                out.append(("a", r))
        return out

    def __str__(self) -> str:
        if self.is_identity:
            return "1"
        parts = []
        for sym, e in self.letters():
            if e == 1:
                parts.append(sym)
            elif e == -1:
                parts.append(sym.upper() if sym in ("a", "b") else sym)
            else:
                parts.append(f"{sym}^{e}")
        return " ".join(parts)


_TOKEN_RE = re.compile(r"\s*(\[b,a\]|[abAB])(?:\s*\^\s*(-?\d+))?")


def _tokenize(text: str) -> list[tuple[str, int]]:
    letters: list[tuple[str, int]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.start() != pos:
            raise WordSyntaxError(f"bad token at position {pos}: {text[pos:pos + 8]!r}")
        sym, exp = m.group(1), m.group(2)
        if sym == "[b,a]":
            if exp is not None:
                raise WordSyntaxError("exponents on [b,a] are not supported")
            letters += [("b", 1), ("a", 1), ("b", -1), ("a", -1)]
        else:
            e = int(exp) if exp is not None else 1
            base = sym.lower()
            if sym.isupper():
                e = -e
            if e:
                letters.append((base, e))
        pos = m.end()
    rest = text[pos:].strip()
    if rest:
        raise WordSyntaxError(f"trailing garbage {rest!r}")
    return letters


def _reduce_free(letters: Iterable[tuple[str, int]]) -> list[tuple[str, int]]:
    stack: list[tuple[str, int]] = []
    for sym, e in letters:
        if not e:
            continue
        if stack and stack[-1][0] == sym:
            s = stack[-1][1] + e
            stack.pop()
            if s:
                stack.append((sym, s))
                continue
            # a run vanished; its neighbours may now merge
            while len(stack) >= 2 and stack[-1][0] == stack[-2][0]:
                sym2, e2 = stack.pop()
                sym1, e1 = stack.pop()
                if e1 + e2:
                    stack.append((sym1, e1 + e2))
        else:
            stack.append((sym, e))
    return stack


def _reduce_order2(letters: Iterable[tuple[str, int]]) -> list[tuple[str, int]]:
    """Reduction in <a> * <b | b^2>: b-exponents live mod 2."""
    stack: list[tuple[str, int]] = []
    for sym, e in letters:
        if sym == "b":
            e = e % 2
        if not e:
            continue
        if stack and stack[-1][0] == sym:
            s = stack[-1][1] + e
            if sym == "b":
                s = s % 2
            stack.pop()
            if s:
                stack.append((sym, s))
                continue
            while len(stack) >= 2 and stack[-1][0] == stack[-2][0]:
                sym2, e2 = stack.pop()
                sym1, e1 = stack.pop()
                s2 = e1 + e2 if sym1 == "a" else (e1 + e2) % 2
                if s2:
                    stack.append((sym1, s2))
        else:
            stack.append((sym, e))
    return stack


def _from_runs(runs: list[tuple[str, int]], order2: bool) -> GoodWord:
    leading = 0
    idx = 0
    if runs and runs[0][0] == "a":
        leading = runs[0][1]
        idx = 1
    syls: list[tuple[int, int]] = []
    while idx < len(runs):
        sym, e = runs[idx]
        if sym != "b":
            raise NotGoodWordError("internal: malformed run sequence")
        if order2:
            s = 1 if not syls else -syls[-1][0]
        else:
            if e not in (1, -1):
                raise NotGoodWordError(f"b-power {e} is not +-1")
            s = e
            if syls and syls[-1][0] == s:
                raise NotGoodWordError("b-exponents do not alternate in sign")
        r = 0
        if idx + 1 < len(runs) and runs[idx + 1][0] == "a":
            r = runs[idx + 1][1]
            idx += 1
        syls.append((s, r))
        idx += 1
    return GoodWord(tuple(syls), leading, order2)


def word_from_letters(letters: Iterable[tuple[str, int]], order2: bool = False) -> GoodWord:
    runs = _reduce_order2(letters) if order2 else _reduce_free(letters)
    return _from_runs(runs, order2)


def parse_word(text: str, order2: bool = False) -> GoodWord:
    """Parse the word grammar into a normalized :class:`GoodWord`.

    Grammar: tokens ``a b A B`` (capitals are inverses), optional ``^<int>``
    exponents, whitespace ignored, ``[b,a]`` expands to ``b a B A``.
    """
    return word_from_letters(_tokenize(text), order2)


@dataclass(frozen=True)
class Classification:
    parity: str  # "even" | "odd"
    balance: str  # "balanced" | "unbalanced"
    regularity: str  # "regular" | "irregular"

    def as_dict(self) -> dict:
        return {"parity": self.parity, "balance": self.balance, "regularity": self.regularity}


def classify(w: GoodWord) -> Classification:
    even = w.exponent_sum() % 2 == 0
    balanced = w.syllable_count % 2 == 0
    regular = w.syllable_count == 0 or w.syllables[0][0] == 1
    return Classification(
        "even" if even else "odd",
        "balanced" if balanced else "unbalanced",
        "regular" if regular else "irregular",
    )


def multiply(w1: GoodWord, w2: GoodWord) -> GoodWord:
    """Product in the ambient group (free, or a * Z2 in order-2 mode)."""
    if w1.order2 != w2.order2:
        raise ValueError("cannot multiply words from different modes")
    return word_from_letters(w1.letters() + w2.letters(), w1.order2)


def invert(w: GoodWord) -> GoodWord:
    letters = [(sym, -e) for sym, e in reversed(w.letters())]
    return word_from_letters(letters, w.order2)


def to_regular(w: GoodWord) -> GoodWord:
    """Flip the sign of every b-exponent (the word w(a, b^-1))."""
    syls = tuple((-s, r) for s, r in w.syllables)
    return GoodWord(syls, w.leading_a, w.order2)


def append_a(w: GoodWord, power: int = 1) -> GoodWord:
    """Right-multiply by a**power."""
    if not w.syllables:
        return GoodWord((), w.leading_a + power, w.order2)
    s, r = w.syllables[-1]
    return GoodWord(w.syllables[:-1] + ((s, r + power),), w.leading_a, w.order2)


def star(outer: GoodWord, inner: GoodWord) -> GoodWord:
    """Semigroup operation: substitute ``inner`` for b throughout ``outer``.

    Both words must be in order-2 mode.  Occurrences of b go to ``inner`` and
    occurrences of b^-1 to ``inner`` inverted; the result is reduced modulo
    b^2 = 1 and re-canonicalized.  The identity word can come out (for
    instance when the substitution cancels completely); callers should check
    ``result.is_identity``.
    """
    if not (outer.order2 and inner.order2):
        raise ValueError("the semigroup operation is defined for order-2 mode words")
    inner_letters = inner.letters()
    inner_inv = [(sym, -e) for sym, e in reversed(inner_letters)]
    out: list[tuple[str, int]] = []
    if outer.leading_a:
        out.append(("a", outer.leading_a))
    for s, r in outer.syllables:
        out += inner_letters if s == 1 else inner_inv
        if r:
            out.append(("a", r))
    return word_from_letters(out, order2=True)


# -- decomposition into the even-subgroup generators ---------------------------

GEN_A2 = "a2"  # a^2
GEN_BA2B = "ba2B"  # b a^2 b^-1
GEN_COMM = "comm"  # b a b^-1 a^-1

_GEN_LETTERS = {
    GEN_A2: [("a", 2)],
    GEN_BA2B: [("b", 1), ("a", 2), ("b", -1)],
    GEN_COMM: [("b", 1), ("a", 1), ("b", -1), ("a", -1)],
}


def _xy_letters(w: GoodWord) -> list[tuple[str, int]]:
    """Rewrite a regular balanced word over X = a and Y = b a b^-1.

    Regular balanced words have b-sign pattern +1, -1, +1, -1, ..., so the
    syllable pairs (b a^i b^-1) a^j become Y^i X^j.
    """
    out: list[tuple[str, int]] = []
    if w.leading_a:
        out.append(("X", w.leading_a))
    syls = w.syllables
    for k in range(0, len(syls), 2):
        (s1, r1), (s2, r2) = syls[k], syls[k + 1]
        if s1 != 1 or s2 != -1:
            raise ValueError("word is not regular balanced")
        if r1:
            out.append(("Y", r1))
        if r2:
            out.append(("X", r2))
    return out


def decompose_rbe(w: GoodWord) -> list[tuple[str, int]]:
    """Write a regular balanced even word over the three even-subgroup generators.

    Returns a list of (generator, +-1) tokens whose free expansion equals the
    word.  Uses coset rewriting over the index-two subgroup of <X, Y> with
    X = a, Y = b a b^-1: scanning left to right with the coset state t in
    {e, X}, each letter emits the tokens shown below.
    """
    cls = classify(w)
    if cls != Classification("even", "balanced", "regular"):
        raise ValueError(f"decomposition needs a regular balanced even word, got {cls}")
    tokens: list[tuple[str, int]] = []
    at_x = False  # coset state: False = e, True = X
    for sym, e in _xy_letters(w):
        step = 1 if e > 0 else -1
        for _ in range(abs(e)):
            if sym == "X":
                if step > 0:
                    if at_x:
                        tokens.append((GEN_A2, 1))
                else:
                    if not at_x:
                        tokens.append((GEN_A2, -1))
            else:  # Y = X (comm) in the rewriting: Y = G3 X, Y^-1 = Q^-1 R X
                if step > 0:
                    if at_x:
                        tokens.append((GEN_COMM, -1))
                        tokens.append((GEN_BA2B, 1))
                    else:
                        tokens.append((GEN_COMM, 1))
                else:
                    if at_x:
                        tokens.append((GEN_COMM, -1))
                    else:
                        tokens.append((GEN_BA2B, -1))
                        tokens.append((GEN_COMM, 1))
            at_x = not at_x
    assert not at_x, "even word must return to the trivial coset"
    # cancel adjacent inverse tokens so downstream products stay short
    reduced: list[tuple[str, int]] = []
    for tok in tokens:
        if reduced and reduced[-1][0] == tok[0] and reduced[-1][1] == -tok[1]:
            reduced.pop()
        else:
            reduced.append(tok)
    return reduced


def expand_tokens(tokens: Iterable[tuple[str, int]], order2: bool = False) -> GoodWord:
    """Free expansion of a generator token list back into a word."""
    letters: list[tuple[str, int]] = []
    for name, e in tokens:
        gen = _GEN_LETTERS[name]
        if e == 1:
            letters += gen
        elif e == -1:
            letters += [(sym, -k) for sym, k in reversed(gen)]
        else:
            raise ValueError(f"token exponent must be +-1, got {e}")
    return word_from_letters(letters, order2)


def enumerate_order2_words(
    max_syllables: int, max_exp: int, trailing: bool = False
) -> Iterator[GoodWord]:
    """Order-2-mode good words ending in b, in breadth-first search order.

    Words are b a^{r_1} b a^{r_2} ... b with interior exponents nonzero and
    |r_i| <= max_exp, ordered by syllable count, then by the largest |r_i|,
    then lexicographically.  With ``trailing=True`` a trailing a-power (which
    may be zero) is appended as well.
    """
    interior = [e for k in range(1, max_exp + 1) for e in (k, -k)]
    trail = [0] + interior if trailing else [0]

    def tuples(n: int) -> Iterator[tuple[int, ...]]:
        if n == 0:
            yield ()
            return
        for rest in tuples(n - 1):
            for e in interior:
                yield rest + (e,)

    for m in range(1, max_syllables + 1):
        batch = []
        for rs in tuples(m - 1):
            for tr in trail:
                batch.append(rs + (tr,))
        batch.sort(key=lambda rs: (max((abs(r) for r in rs), default=0), rs))
        for rs in batch:
            syls = tuple(((-1) ** k, rs[k]) for k in range(m))
            yield GoodWord(syls, 0, order2=True)
