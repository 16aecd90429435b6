"""Compositions, their diagrams and box statistics.

A composition is stored as a trimmed tuple of naturals (no trailing zeros);
its logical value is the infinite zero-padded sequence, so equality of the
stored tuples is padding-invariant equality.  Boxes of the diagram are pairs
(row, col), both 1-based, with 1 <= col <= lambda_row.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


def canonicalize(raw):
    """Trim trailing zeros; the canonical tuple form of a composition."""
    parts = tuple(int(x) for x in raw)
    if any(x < 0 for x in parts):
        raise ValueError("composition parts must be naturals")
    end = len(parts)
    while end and parts[end - 1] == 0:
        end -= 1
    return parts[:end]


def weight(lam):
    return sum(lam)


def length(lam):
    """l(lambda): index of the last nonzero part (0 for the empty composition)."""
    return len(lam)


def partition_length(lam):
    """pl(lambda): least m such that the tail lambda_{>m} is weakly decreasing."""
    for m in range(len(lam) + 1):
        tail = lam[m:]
        if all(tail[i] >= tail[i + 1] for i in range(len(tail) - 1)):
            return m
    return len(lam)  # unreachable; a length-0 tail is always a partition


def pad(lam, n):
    if len(lam) > n:
        raise ValueError("rank %d too small for %r" % (n, lam))
    return lam + (0,) * (n - len(lam))


@dataclass(frozen=True)
class SortData:
    """The sorting permutation w^lambda at an explicit rank.

    images[i-1] = w(i); w is the shortest permutation with
    lambda^+_{w(i)} = lambda_i, and inversions = l(w).
    """

    images: tuple
    inversions: int
    lam_plus: tuple


@lru_cache(maxsize=None)
def sorting_data(lam, n):
    """w^lambda, its length, and the decreasing sort lambda^+ at rank n.

    Computed by the counting formula for the shortest sorting permutation
    applied to tau = -lambda: w(i) counts j <= i with lambda_j >= lambda_i
    plus j > i with lambda_j > lambda_i.
    """
    lam = pad(lam, n)
    images = []
    for i in range(n):
        w = sum(1 for j in range(i + 1) if lam[j] >= lam[i]) + sum(
            1 for j in range(i + 1, n) if lam[j] > lam[i]
        )
        images.append(w)
    images = tuple(images)
    inv = sum(
        1 for i in range(n) for j in range(i + 1, n) if images[i] > images[j]
    )
    return SortData(images, inv, canonicalize(sorted(lam, reverse=True)))


def boxes(lam):
    """All boxes (row, col) of the diagram, row-major."""
    return [(i + 1, j + 1) for i, p in enumerate(lam) for j in range(p)]


def arm(lam, s):
    i, j = s
    if not (1 <= i <= len(lam) and 1 <= j <= lam[i - 1]):
        raise ValueError("box %r outside diagram of %r" % (s, lam))
    return lam[i - 1] - j


def leg(lam, s):
    i, j = s
    if not (1 <= i <= len(lam) and 1 <= j <= lam[i - 1]):
        raise ValueError("box %r outside diagram of %r" % (s, lam))
    li = lam[i - 1]
    above = sum(1 for k in range(1, i) if j <= lam[k - 1] + 1 <= li)
    below = sum(1 for k in range(i + 1, len(lam) + 1) if j <= lam[k - 1] <= li)
    return above + below


def column(lam, s):
    """Column length of a box: rows above it shifted by one plus rows from it down."""
    i, j = s
    if not (1 <= i <= len(lam) and 1 <= j <= lam[i - 1]):
        raise ValueError("box %r outside diagram of %r" % (s, lam))
    above = sum(1 for k in range(1, i) if j <= lam[k - 1] + 1)
    below = sum(1 for k in range(i, len(lam) + 1) if j <= lam[k - 1])
    return above + below


def box_enumeration(lam):
    """Boxes in application order with their column lengths.

    Columns are visited rightmost first, top to bottom inside a column.
    Returns (boxes, column_lengths), both in that order.
    """
    out = []
    cols = []
    width = max(lam, default=0)
    for j in range(width, 0, -1):
        for i in range(1, len(lam) + 1):
            if j <= lam[i - 1]:
                out.append((i, j))
                cols.append(column(lam, (i, j)))
    return out, tuple(cols)


@lru_cache(maxsize=None)
def c_word(lam):
    """The column-length word of the box enumeration.

    Satisfies c_word(lam) = c_word(lam*) + (l(lam),), which makes chains of
    the star step share operator words.
    """
    return box_enumeration(lam)[1]


def lambda_star(lam):
    """One step of the recursion: (lambda*, m, a).

    m = l(lambda); lambda* = (lambda_m - 1, lambda_1, ..., lambda_{m-1});
    a = 1 + #{i <= m : lambda_i < lambda_m}.
    """
    if not lam:
        raise ValueError("lambda* of the empty composition")
    m = len(lam)
    star = canonicalize((lam[m - 1] - 1,) + lam[: m - 1])
    a = 1 + sum(1 for x in lam if x < lam[m - 1])
    return star, m, a


def omega_star(lam, n):
    """(lambda_2, ..., lambda_n, lambda_1 + 1) at rank n."""
    lam = pad(lam, n)
    return canonicalize(lam[1:] + (lam[0] + 1,))


def omega_star_inv(lam, n):
    """Inverse of omega_star; requires lambda_n >= 1."""
    lam = pad(lam, n)
    if lam[n - 1] < 1:
        raise ValueError("omega_star inverse needs a positive last part")
    return canonicalize((lam[n - 1] - 1,) + lam[: n - 1])


@dataclass(frozen=True)
class MarkedDiagram:
    """A composition shape together with a subset of its boxes."""

    shape: tuple
    marked: frozenset

    def __post_init__(self):
        diagram = set(boxes(self.shape))
        if not set(self.marked) <= diagram:
            raise ValueError("marks outside the diagram of %r" % (self.shape,))


def marking_stats(d):
    """(A, L): sums of arm+1 and leg+1 over the marked boxes."""
    a = sum(arm(d.shape, s) + 1 for s in d.marked)
    l = sum(leg(d.shape, s) + 1 for s in d.marked)
    return a, l


def all_markings(lam):
    """Every marked diagram on the shape, as bitmasks over the box enumeration.

    Bit k of the mask refers to the k-th box in application order, least
    significant bit first; deterministic and reproducible.
    """
    order = box_enumeration(lam)[0]
    for mask in range(1 << len(order)):
        marked = frozenset(order[k] for k in range(len(order)) if mask >> k & 1)
        yield MarkedDiagram(lam, marked)


# -- string forms -----------------------------------------------------------


def format_composition(lam):
    return ",".join(str(x) for x in lam)


def parse_composition(text):
    text = text.strip()
    if not text:
        return ()
    try:
        return canonicalize(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ValueError("bad composition %r" % text) from exc


def format_marked(d):
    order = box_enumeration(d.shape)[0]
    marks = ",".join("%d.%d" % s for s in order if s in d.marked)
    return format_composition(d.shape) + "|" + marks


def parse_marked(text):
    shape_text, _, marks_text = text.partition("|")
    shape = parse_composition(shape_text)
    marked = set()
    for chunk in marks_text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        r, _, c = chunk.partition(".")
        marked.add((int(r), int(c)))
    return MarkedDiagram(shape, frozenset(marked))


def compositions_of(d, max_len):
    """All trimmed compositions of weight d with length at most max_len."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            if remaining == 0:
                out.append(canonicalize(prefix))
            return
        for x in range(remaining + 1):
            rec(prefix + (x,), remaining - x, slots - 1)

    rec((), d, max_len)
    return sorted(set(out))
