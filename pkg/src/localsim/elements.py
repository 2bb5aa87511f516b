"""Group elements and embeddings as germ-decorated prefix-replacement tables.

A table row (source, target, germ) declares: on the ball at `source`, the
map replaces the source address by `target` and lets the germ act on the
tail.  A table whose sources partition the whole space and whose targets
also form a complete code describes a homeomorphism of the boundary (kind
"element"); with merely pairwise-disjoint targets it describes an
injection (kind "embedding").

Two moves generate everything here.  Expansion replaces a row by its d
children (one letter deeper, targets pushed through the germ's action,
germs replaced by restrictions) and never changes the map.  Reduction is
the inverse rewrite: a full family of sibling rows whose effect agrees
with a single similarity collapses to its parent.  Reduction is confluent
because the balls on which the map agrees with one similarity around a
point form a chain, so every table has a unique reduced form.  Reduced
tables are canonical: two tables describe the same map iff their reduced
sorted forms coincide, and the reduced source code is the coarsest ball
partition on which the map acts by single similarities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import (
    IncompatibleElementsError,
    InvalidCodeError,
    LiteralParseError,
    MalformedStructureError,
    NoSuchRowError,
    NotInvertibleError,
    UnsupportedStructureError,
)
from .structure import Germ, SelfSimilarGroup, germ_apply
from .words import Point, PrefixCode, Word, is_prefix

ELEMENT = "element"
EMBEDDING = "embedding"


class Row(NamedTuple):
    source: Word
    target: Word
    germ: int


@dataclass(frozen=True)
class SimTable:
    """An immutable table of rows, sorted by source word."""

    group: SelfSimilarGroup
    kind: str
    rows: tuple[Row, ...]

    def __post_init__(self):
        if self.kind not in (ELEMENT, EMBEDDING):
            raise MalformedStructureError(f"unknown table kind {self.kind!r}")
        alphabet = self.group.alphabet
        rows = []
        for r in self.rows:
            src = alphabet.check_word(r.source)
            tgt = alphabet.check_word(r.target)
            if not 0 <= r.germ < self.group.size:
                raise MalformedStructureError(f"no germ {r.germ} in {self.group!r}")
            rows.append(Row(src, tgt, r.germ))
        rows.sort(key=lambda r: r.source)
        object.__setattr__(self, "rows", tuple(rows))

    def sources(self) -> tuple[Word, ...]:
        return tuple(r.source for r in self.rows)

    def targets(self) -> tuple[Word, ...]:
        return tuple(r.target for r in self.rows)


def _trusted_table(group: SelfSimilarGroup, kind: str, rows: tuple[Row, ...]) -> SimTable:
    # internal fast path: rows already validated and sorted
    t = object.__new__(SimTable)
    object.__setattr__(t, "group", group)
    object.__setattr__(t, "kind", kind)
    object.__setattr__(t, "rows", rows)
    return t


def _is_antichain(sorted_words: tuple[Word, ...]) -> bool:
    return all(
        not is_prefix(u, v) for u, v in itertools.pairwise(sorted_words)
    ) and len(set(sorted_words)) == len(sorted_words)


def _complete_over(words: Iterable[Word], base: Word, d: int) -> bool:
    rel = [w[len(base):] for w in words]
    if not rel:
        return False
    depth = max(len(w) for w in rel)
    return sum(d ** (depth - len(w)) for w in rel) == d**depth


def validate_table(t: SimTable) -> list[str]:
    """Structural violations of a table, as stable diagnostic strings."""
    out: list[str] = []
    if not t.rows:
        return ["empty-table"]
    d = t.group.alphabet.size
    srcs = t.sources()
    if not _is_antichain(srcs):
        out.append("domain-not-antichain")
    else:
        base = srcs[0]
        for w in srcs[1:]:
            k = 0
            while k < len(base) and k < len(w) and base[k] == w[k]:
                k += 1
            base = base[:k]
        if t.kind == ELEMENT and base != ():
            out.append("incomplete-domain")
        elif not all(is_prefix(base, w) for w in srcs) or not _complete_over(srcs, base, d):
            out.append("incomplete-domain")
    tgts = tuple(sorted(t.targets()))
    if not _is_antichain(tgts):
        out.append("target-not-antichain")
    elif t.kind == ELEMENT and not _complete_over(tgts, (), d):
        out.append("target-incomplete")
    return out


def domain_ball(t: SimTable) -> Word:
    """Address of the ball the table's sources partition (their common prefix)."""
    srcs = t.sources()
    if not srcs:
        raise NoSuchRowError("empty table has no domain")
    base = srcs[0]
    for w in srcs[1:]:
        k = 0
        while k < len(base) and k < len(w) and base[k] == w[k]:
            k += 1
        base = base[:k]
    return base


# -- the rewrite engine ------------------------------------------------------


def _source_trie(rows: Iterable[Row]) -> dict:
    # nested dicts keyed by letters; a leaf stores (target, germ) under None
    trie: dict = {}
    for src, tgt, germ in rows:
        node = trie
        for a in src:
            node = node.setdefault(a, {})
        node[None] = (tgt, germ)
    return trie


def _compose_rows(group: SelfSimilarGroup, g_rows: Iterable[Row], h_rows: Iterable[Row]) -> list[Row]:
    """Rows of g after h (h applied first).

    Each h-row's image ball is split until it lies inside a single source
    ball of g, then the two similarities chain: the composite germ is g's
    leftover restriction times the h germ.
    """
    trie = _source_trie(g_rows)
    act, res, mul = group.act, group.res, group.mul
    d = group.alphabet.size
    out: list[Row] = []
    stack = list(h_rows)
    while stack:
        src, tgt, germ = stack.pop()
        node = trie
        hit = None
        if None in node:
            hit = (0, node[None])
        else:
            for i, a in enumerate(tgt):
                node = node.get(a)
                if node is None:
                    break
                if None in node:
                    hit = (i + 1, node[None])
                    break
        if hit is None:
            row_act, row_res = act[germ], res[germ]
            for a in range(d):
                stack.append(Row(src + (a,), tgt + (row_act[a],), row_res[a]))
            continue
        k, (g_target, g_germ) = hit
        path, rest = group.act_word(g_germ, tgt[k:])
        out.append(Row(src, g_target + path, mul[rest][germ]))
    return out


def _reduce_rows(group: SelfSimilarGroup, rows: Iterable[Row]) -> tuple[Row, ...]:
    """Merge sibling families until none matches a single similarity."""
    d = group.alphabet.size
    act, res = group.act, group.res
    table = {src: (tgt, germ) for src, tgt, germ in rows}
    pending = {src[:-1] for src in table if src}
    while pending:
        p = pending.pop()
        kids = []
        for a in range(d):
            r = table.get(p + (a,))
            if r is None:
                break
            kids.append(r)
        if len(kids) != d:
            continue
        stem = kids[0][0][:-1] if kids[0][0] else None
        if stem is None or any(not t or t[:-1] != stem for t, _ in kids):
            continue
        merged = None
        for s in range(group.size):
            s_act, s_res = act[s], res[s]
            if all(kids[a][0][-1] == s_act[a] and kids[a][1] == s_res[a] for a in range(d)):
                merged = s
                break
        if merged is None:
            continue
        for a in range(d):
            del table[p + (a,)]
        table[p] = (stem, merged)
        if p:
            pending.add(p[:-1])
    return tuple(sorted(Row(s, t, g) for s, (t, g) in table.items()))


@dataclass(frozen=True)
class CanonicalElement:
    """A table in reduced sorted form; equality here is equality of maps.

    Build instances through reduce / compose / invert / identity /
    parse_element rather than directly.
    """

    table: SimTable

    @property
    def group(self) -> SelfSimilarGroup:
        return self.table.group

    @property
    def rows(self) -> tuple[Row, ...]:
        return self.table.rows

    def packed(self) -> bytes | tuple:
        """Compact serialization used for dedup sets; falls back to the
        row tuple when letters or germs do not fit in single bytes."""
        g = self.group
        if g.alphabet.size > 256 or g.size > 256:
            return self.rows
        out = bytearray()
        for s, t, germ in self.rows:
            if len(s) > 255 or len(t) > 255:
                return self.rows
            out.append(len(s))
            out.extend(s)
            out.append(len(t))
            out.extend(t)
            out.append(germ)
        return bytes(out)

    def __repr__(self) -> str:
        kind = "" if self.table.kind == ELEMENT else " (embedding)"
        return f"<{format_element(self)}{kind}>"


def reduce(t: SimTable) -> CanonicalElement:
    """The unique reduced form of a table (kind is preserved)."""
    rows = _reduce_rows(t.group, t.rows)
    return CanonicalElement(_trusted_table(t.group, t.kind, rows))


def identity(group: SelfSimilarGroup) -> CanonicalElement:
    return CanonicalElement(_trusted_table(group, ELEMENT, (Row((), (), 0),)))


def expand_at(t: SimTable, source: Word) -> SimTable:
    """Replace the row at `source` by its d one-letter-deeper children."""
    source = t.group.alphabet.check_word(source)
    for r in t.rows:
        if r.source == source:
            break
    else:
        raise NoSuchRowError(f"no row with source {source}")
    act, res = t.group.act[r.germ], t.group.res[r.germ]
    children = [Row(source + (a,), r.target + (act[a],), res[a]) for a in t.group.alphabet.letters]
    rows = tuple(x for x in t.rows if x.source != source) + tuple(children)
    return SimTable(t.group, t.kind, rows)


def compose(g: CanonicalElement, h: CanonicalElement) -> CanonicalElement:
    """g after h.  The left operand must act on the whole space."""
    if g.group != h.group:
        raise IncompatibleElementsError("cannot compose over different structures")
    kind = ELEMENT if g.table.kind == ELEMENT and h.table.kind == ELEMENT else EMBEDDING
    rows = _reduce_rows(g.group, _compose_rows(g.group, g.rows, h.rows))
    return CanonicalElement(_trusted_table(g.group, kind, rows))


def invert(g: CanonicalElement) -> CanonicalElement:
    """Swap the columns and invert the germs.

    No re-reduction is needed: the image of a maximal ball of g is a
    maximal ball of the inverse, so the swapped table is already reduced.
    """
    if g.table.kind != ELEMENT:
        raise NotInvertibleError("embeddings are not invertible on the whole space")
    inv = g.group.inv
    rows = tuple(sorted(Row(t, s, inv[germ]) for s, t, germ in g.rows))
    return CanonicalElement(_trusted_table(g.group, ELEMENT, rows))


def apply(g: CanonicalElement, x: Point) -> Point:
    """Image of an eventually periodic point."""
    group = g.group
    if x.alphabet != group.alphabet:
        raise IncompatibleElementsError("point and element live over different alphabets")
    for src, tgt, germ in g.rows:
        if x.prefix(len(src)) == src:
            tail = x.drop(len(src))
            if germ:
                tail = germ_apply(Germ(group, germ), tail)
            return tail.prepend(tgt)
    raise NoSuchRowError(f"no row covers the point {x}")


def max_partition(g: CanonicalElement) -> PrefixCode:
    """The coarsest ball partition on which g acts by single similarities.

    This is just the source code of the reduced table.
    """
    return PrefixCode(g.group.alphabet, g.table.sources())


def _leaf_permutation(g: CanonicalElement) -> list[int]:
    targets = g.table.targets()
    order = sorted(range(len(targets)), key=lambda i: targets[i])
    ranks = [0] * len(targets)
    for rank, i in enumerate(order):
        ranks[i] = rank
    return ranks


def _require_plain_binary(g: CanonicalElement, what: str) -> None:
    if g.group.alphabet.size != 2 or g.group.size != 1:
        raise UnsupportedStructureError(f"{what} is defined for the binary alphabet with trivial germs")


def is_in_F(g: CanonicalElement) -> bool:
    """Order preserving: sources in sorted order map to sorted targets."""
    _require_plain_binary(g, "order-preserving membership")
    ranks = _leaf_permutation(g)
    return ranks == list(range(len(ranks)))


def is_in_T(g: CanonicalElement) -> bool:
    """Cyclic-order preserving: the leaf permutation is a rotation."""
    _require_plain_binary(g, "cyclic-order membership")
    ranks = _leaf_permutation(g)
    n = len(ranks)
    shift = ranks[0]
    return all(ranks[i] == (shift + i) % n for i in range(n))


def enumerate_gamma(
    group: SelfSimilarGroup, p_plus: PrefixCode, p_minus: PrefixCode
) -> tuple[CanonicalElement, ...]:
    """All elements whose maximal partition is exactly p_plus and whose
    inverse has maximal partition exactly p_minus.

    Works by trying every bijection between the codes and every germ
    labelling, keeping the tables that survive reduction unchanged on both
    sides.  Finite because there are only n! * m^n candidates.
    """
    if not p_plus.is_complete() or not p_minus.is_complete():
        raise InvalidCodeError("both codes must be complete")
    if len(p_plus) != len(p_minus):
        return ()
    srcs = p_plus.words
    out = []
    for perm in itertools.permutations(p_minus.words):
        for germs in itertools.product(range(group.size), repeat=len(srcs)):
            rows = tuple(Row(s, t, g) for s, t, g in zip(srcs, perm, germs))
            cand = reduce(SimTable(group, ELEMENT, rows))
            if cand.table.sources() != srcs:
                continue
            if invert(cand).table.sources() != p_minus.words:
                continue
            out.append(cand)
    return tuple(sorted(out, key=lambda e: e.rows))


# -- literals ----------------------------------------------------------------


def parse_element(text: str, group: SelfSimilarGroup, kind: str = ELEMENT) -> CanonicalElement:
    """Parse 'v->w[:germ](;v->w[:germ])*' and return the reduced element.

    'id' is accepted for the identity.  Germs are decimal element ids of
    the structure; a missing germ means the identity germ.
    """
    if text.strip() == "id":
        return identity(group)
    alphabet = group.alphabet
    rows = []
    offset = 0
    for rownum, chunk in enumerate(text.split(";")):
        col = offset + 1
        offset += len(chunk) + 1
        part = chunk.strip()
        if "->" not in part:
            raise LiteralParseError(f"row needs 'source->target', got {part!r}", row=rownum, column=col)
        left, right = part.split("->", 1)
        germ = 0
        if ":" in right:
            right, germ_txt = right.split(":", 1)
            try:
                germ = int(germ_txt.strip())
            except ValueError:
                raise LiteralParseError(f"bad germ name {germ_txt.strip()!r}", row=rownum, column=col) from None
        try:
            src = alphabet.parse_word(left)
            tgt = alphabet.parse_word(right)
        except LiteralParseError as e:
            raise LiteralParseError(str(e), row=rownum, column=col) from None
        if not 0 <= germ < group.size:
            raise LiteralParseError(f"no germ {germ} in the structure", row=rownum, column=col)
        rows.append(Row(src, tgt, germ))
    table = SimTable(group, kind, tuple(rows))
    violations = validate_table(table)
    if violations:
        raise InvalidCodeError(f"invalid table: {', '.join(violations)}")
    return reduce(table)


def format_element(g: CanonicalElement) -> str:
    alphabet = g.group.alphabet
    parts = []
    for src, tgt, germ in g.rows:
        row = f"{alphabet.format_word(src)}->{alphabet.format_word(tgt)}"
        if germ:
            row += f":{germ}"
        parts.append(row)
    return ";".join(parts)


# -- randomness ---------------------------------------------------------------


def random_code_words(alphabet, rng, max_depth: int = 5, split_prob: float = 0.55) -> list[Word]:
    """A random complete code grown by independent splitting, depth-capped."""
    out: list[Word] = []

    def grow(w: Word) -> None:
        if len(w) < max_depth and rng.random() < split_prob:
            for a in alphabet.letters:
                grow(w + (a,))
        else:
            out.append(w)

    grow(())
    return out


def random_element(
    group: SelfSimilarGroup, rng, max_depth: int = 5, split_prob: float = 0.55
) -> CanonicalElement:
    """A random element: random source code, random equal-size target code,
    random bijection, random germs; then reduced."""
    alphabet = group.alphabet
    srcs = random_code_words(alphabet, rng, max_depth, split_prob)
    tgts: list[Word] = [()]
    while len(tgts) < len(srcs):
        splittable = [i for i, w in enumerate(tgts) if len(w) < max_depth]
        i = splittable[rng.randrange(len(splittable))]
        w = tgts.pop(i)
        tgts.extend(w + (a,) for a in alphabet.letters)
    rng.shuffle(tgts)
    rows = tuple(Row(s, t, rng.randrange(group.size)) for s, t in zip(srcs, tgts))
    return reduce(SimTable(group, ELEMENT, rows))


def random_point(alphabet, rng, max_len: int = 4) -> Point:
    pre_len = rng.randrange(0, max_len)
    per_len = rng.randrange(1, max_len)
    pre = tuple(rng.randrange(alphabet.size) for _ in range(pre_len))
    per = tuple(rng.randrange(alphabet.size) for _ in range(per_len))
    return Point(alphabet, pre, per)
