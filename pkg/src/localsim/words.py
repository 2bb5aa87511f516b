"""Exact combinatorics on the boundary of the rooted d-ary tree.

Infinite words over a d-letter alphabet form a compact ultrametric space;
a finite word addresses the closed ball of all its infinite extensions.
Everything here is integer-exact: distances are handled through their
exponent (the length of the longest common prefix), never as floats.

Words are plain tuples of small ints.  The alphabet is passed where an
operation actually needs to know d; letters are validated at the
boundaries (literal parsing, code/table construction).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from .errors import InvalidCodeError, LiteralParseError, MalformedWordError

Word = tuple[int, ...]

EMPTY: Word = ()


def is_prefix(prefix: Word, word: Word) -> bool:
    return word[: len(prefix)] == prefix


class Containment(Enum):
    """How the ball at `outer` relates to the ball at `inner`."""

    PROPER = "proper"
    EQUAL = "equal"
    NONE = "none"
    REVERSE = "reverse"


@dataclass(frozen=True)
class Alphabet:
    """The ordered alphabet {0, ..., size-1}."""

    size: int

    def __post_init__(self):
        if not isinstance(self.size, int) or self.size < 2:
            raise MalformedWordError(f"alphabet size must be an integer >= 2, got {self.size!r}")

    @property
    def letters(self) -> range:
        return range(self.size)

    def check_word(self, word: Iterable[int]) -> Word:
        word = tuple(word)
        for a in word:
            if not isinstance(a, int) or not 0 <= a < self.size:
                raise MalformedWordError(f"letter {a!r} out of range for alphabet of size {self.size}")
        return word

    def words_up_to(self, depth: int) -> list[Word]:
        """All ball addresses of length <= depth, in canonical order.

        Canonical word order is lexicographic with prefixes first, which is
        exactly Python tuple comparison.
        """
        out: list[Word] = []
        for n in range(depth + 1):
            out.extend(itertools.product(self.letters, repeat=n))
        out.sort()
        return out

    # -- literals ----------------------------------------------------------

    def parse_word(self, text: str) -> Word:
        """Parse a word literal: digits for d <= 10, '[a,b,...]' otherwise, 'e' empty."""
        t = text.strip()
        if t == "e":
            return ()
        if t.startswith("["):
            if not t.endswith("]"):
                raise LiteralParseError(f"unterminated bracket word {text!r}")
            body = t[1:-1].strip()
            if not body:
                raise LiteralParseError("empty word is spelled 'e', not '[]'")
            try:
                word = tuple(int(p.strip()) for p in body.split(","))
            except ValueError:
                raise LiteralParseError(f"bad bracket word {text!r}") from None
        elif t.isdigit():
            if self.size > 10:
                raise LiteralParseError("alphabets larger than 10 need the bracket syntax [a,b,...]")
            word = tuple(int(c) for c in t)
        else:
            raise LiteralParseError(f"bad word literal {text!r}")
        return self.check_word(word)

    def format_word(self, word: Word) -> str:
        if not word:
            return "e"
        if self.size <= 10:
            return "".join(str(a) for a in word)
        return "[" + ",".join(str(a) for a in word) + "]"

    def parse_point(self, text: str) -> "Point":
        """Parse 'prefix(period)', e.g. '01(10)'; the prefix may be absent."""
        t = text.strip()
        i = t.find("(")
        if i < 0 or not t.endswith(")"):
            raise LiteralParseError(f"point literal must look like 'prefix(period)', got {text!r}")
        pre_txt = t[:i].strip()
        per_txt = t[i + 1 : -1].strip()
        pre = self.parse_word(pre_txt) if pre_txt else ()
        per = self.parse_word(per_txt)
        if not per:
            raise LiteralParseError("point literal needs a nonempty period")
        return Point(self, pre, per)

    def format_point(self, point: "Point") -> str:
        pre = self.format_word(point.preperiod) if point.preperiod else ""
        return f"{pre}({self.format_word(point.period)})"


def ball_contains(outer: Word, inner: Word, alphabet: Alphabet | None = None) -> Containment:
    """Relate the balls addressed by two words.

    Returns PROPER/EQUAL when the outer ball contains the inner one,
    REVERSE when the containment is strictly the other way, NONE when the
    balls are disjoint.  Two balls meeting at all are nested, so these four
    cases are exhaustive.
    """
    if alphabet is not None:
        outer = alphabet.check_word(outer)
        inner = alphabet.check_word(inner)
    else:
        for a in outer + inner:
            if not isinstance(a, int) or a < 0:
                raise MalformedWordError(f"letter {a!r} is not a valid alphabet letter")
    if outer == inner:
        return Containment.EQUAL
    if is_prefix(outer, inner):
        return Containment.PROPER
    if is_prefix(inner, outer):
        return Containment.REVERSE
    return Containment.NONE


@dataclass(frozen=True)
class Point:
    """An eventually periodic infinite word, kept in minimal canonical form.

    The canonical form has a primitive period and the shortest preperiod
    (trailing letters equal to the period's last letter are absorbed by
    rotating the period).  Structural equality of canonical forms is then
    equality of the underlying infinite words.
    """

    alphabet: Alphabet
    preperiod: Word
    period: Word

    def __post_init__(self):
        pre = self.alphabet.check_word(self.preperiod)
        per = self.alphabet.check_word(self.period)
        if not per:
            raise MalformedWordError("a point needs a nonempty period")
        n = len(per)
        for p in range(1, n + 1):
            if n % p == 0 and per[:p] * (n // p) == per:
                per = per[:p]
                break
        pre_l, per_l = list(pre), list(per)
        while pre_l and pre_l[-1] == per_l[-1]:
            per_l.insert(0, per_l.pop())
            pre_l.pop()
        object.__setattr__(self, "preperiod", tuple(pre_l))
        object.__setattr__(self, "period", tuple(per_l))

    def letter(self, i: int) -> int:
        if i < len(self.preperiod):
            return self.preperiod[i]
        return self.period[(i - len(self.preperiod)) % len(self.period)]

    def prefix(self, n: int) -> Word:
        return tuple(self.letter(i) for i in range(n))

    def drop(self, n: int) -> "Point":
        """The point with its first n letters removed."""
        if n <= len(self.preperiod):
            return Point(self.alphabet, self.preperiod[n:], self.period)
        shift = (n - len(self.preperiod)) % len(self.period)
        return Point(self.alphabet, (), self.period[shift:] + self.period[:shift])

    def prepend(self, word: Word) -> "Point":
        return Point(self.alphabet, tuple(word) + self.preperiod, self.period)

    def __str__(self) -> str:
        return self.alphabet.format_point(self)


def distance_exponent(x: Point, y: Point) -> int | None:
    """Length of the longest common prefix of two points, None if they coincide.

    The ultrametric distance between distinct points is exp(-t) for the
    returned t; only the exponent is ever needed, so no floats appear.
    """
    if x.alphabet != y.alphabet:
        raise MalformedWordError("points live over different alphabets")
    if x == y:
        return None
    bound = max(len(x.preperiod), len(y.preperiod)) + math.lcm(len(x.period), len(y.period)) + 1
    for i in range(bound):
        if x.letter(i) != y.letter(i):
            return i
    raise AssertionError("distinct canonical points must differ within the scan bound")


@dataclass(frozen=True)
class PrefixCode:
    """A finite antichain of ball addresses, stored sorted.

    No word of the code is a prefix of another, so the addressed balls are
    pairwise disjoint.  A complete code partitions the whole space.
    """

    alphabet: Alphabet
    words: tuple[Word, ...]

    def __post_init__(self):
        ws = sorted(self.alphabet.check_word(w) for w in self.words)
        if len(set(ws)) != len(ws):
            raise InvalidCodeError("repeated word in prefix code")
        # in sorted order a prefix lands immediately before its extensions
        for u, v in itertools.pairwise(ws):
            if is_prefix(u, v):
                raise InvalidCodeError(f"{u} is a prefix of {v}; not an antichain")
        object.__setattr__(self, "words", tuple(ws))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def is_complete(self) -> bool:
        """True iff the balls of the code partition the whole space.

        An antichain is complete exactly when the ball measures sum to 1;
        with integers: sum of d^(D-|w|) over the code equals d^D.
        """
        if not self.words:
            return False
        d = self.alphabet.size
        depth = max(len(w) for w in self.words)
        return sum(d ** (depth - len(w)) for w in self.words) == d**depth

    def max_depth(self) -> int:
        if not self.words:
            raise InvalidCodeError("empty code has no depth")
        return max(len(w) for w in self.words)

    def proper_prefixes(self) -> tuple[Word, ...]:
        """All balls properly containing some ball of the code, sorted."""
        seen = {w[:k] for w in self.words for k in range(len(w))}
        return tuple(sorted(seen))

    def refines(self, other: "PrefixCode") -> bool:
        """Every ball of this code lies inside some ball of `other`."""
        others = set(other.words)
        return all(any(w[:k] in others for k in range(len(w) + 1)) for w in self.words)


def proper_prefix_count(code: PrefixCode) -> int:
    """Number of distinct balls properly containing some ball of the code.

    For a complete code with n words over a d-letter alphabet this equals
    (n - 1) / (d - 1): the internal nodes of the code's tree.
    """
    if not code.words:
        raise InvalidCodeError("empty code")
    return len(code.proper_prefixes())


@dataclass(frozen=True)
class ClopenSet:
    """A finite union of balls in normal form.

    Normal form: an antichain in which no full family of d siblings is
    present (such a family is merged into its parent).  Build instances via
    clopen_normalize.
    """

    alphabet: Alphabet
    balls: tuple[Word, ...]

    def contains_ball(self, word: Word) -> bool:
        """Whether the ball at `word` lies inside the union.

        Exact for normalized sets: a ball is covered iff one of the set's
        balls sits at or above it (a deeper cover would merge upward).
        """
        word = self.alphabet.check_word(word)
        return any(is_prefix(b, word) for b in self.balls)


def clopen_normalize(alphabet: Alphabet, words: Iterable[Word]) -> ClopenSet:
    """Normal form of a union of balls: drop nested balls, merge full sibling families."""
    keep = {alphabet.check_word(w) for w in words}
    keep = {w for w in keep if not any(w[:k] in keep for k in range(len(w)))}
    d = alphabet.size
    changed = True
    while changed:
        changed = False
        for parent in sorted({w[:-1] for w in keep if w}, key=len, reverse=True):
            family = [parent + (a,) for a in range(d)]
            if all(f in keep for f in family):
                keep.difference_update(family)
                keep.add(parent)
                changed = True
    return ClopenSet(alphabet, tuple(sorted(keep)))


def complement_balls(alphabet: Alphabet, words: Iterable[Word]) -> tuple[Word, ...]:
    """Minimal ball cover of the complement of a union of balls."""
    inside = clopen_normalize(alphabet, words).balls
    out: list[Word] = []

    def walk(p: Word) -> None:
        if any(is_prefix(b, p) for b in inside):
            return
        if not any(is_prefix(p, b) for b in inside):
            out.append(p)
            return
        for a in alphabet.letters:
            walk(p + (a,))

    walk(())
    return tuple(out)
