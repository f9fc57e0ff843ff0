"""Finite triads: orthogonality, biorthogonal closure, specialization and
semantical consequence.

A triad has a positive side and a negative side, each a list of distinct
labels, plus an orthogonality relation between them.  Terms are interned to
dense indices at construction and every set operation is a bitmask operation.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from ._bits import full_mask, iter_bits, popcount
from .errors import PolarityClash, TriadError


class Polarity(enum.Enum):
    POSITIVE = "P"
    NEGATIVE = "N"

    @property
    def opposite(self) -> "Polarity":
        return Polarity.NEGATIVE if self is Polarity.POSITIVE else Polarity.POSITIVE

    @classmethod
    def parse(cls, text: "str | Polarity") -> "Polarity":
        if isinstance(text, Polarity):
            return text
        key = text.strip().lower()
        if key in ("p", "pos", "positive", "+"):
            return cls.POSITIVE
        if key in ("n", "neg", "negative", "-"):
            return cls.NEGATIVE
        raise TriadError(f"unknown polarity {text!r}")

    def __str__(self) -> str:
        return self.value


P = Polarity.POSITIVE
N = Polarity.NEGATIVE


@dataclass(frozen=True)
class TermRef:
    side: Polarity
    index: int

    def __lt__(self, other):  # Polarity is not orderable; order P before N
        if not isinstance(other, TermRef):
            return NotImplemented
        return (self.side is N, self.index) < (other.side is N, other.index)


class Triad:
    """An immutable finite triad.

    ``orth`` is either a ``|positives| x |negatives|`` boolean matrix (any
    nested sequence or numpy array) or an iterable of ``(positive, negative)``
    label pairs.
    """

    __slots__ = ("positives", "negatives", "_rows", "_cols", "_index", "_hash")

    def __init__(self, positives: Sequence[str], negatives: Sequence[str], orth=()):
        positives = tuple(str(p) for p in positives)
        negatives = tuple(str(n) for n in negatives)
        for name, side in (("positives", positives), ("negatives", negatives)):
            if len(set(side)) != len(side):
                dup = sorted({x for x in side if side.count(x) > 1})
                raise TriadError(f"duplicate labels among {name}: {', '.join(dup)}")
        both = set(positives) & set(negatives)
        if both:
            raise TriadError(f"labels on both sides: {', '.join(sorted(both))}")
        index = {lab: TermRef(P, i) for i, lab in enumerate(positives)}
        index.update({lab: TermRef(N, i) for i, lab in enumerate(negatives)})

        rows = [0] * len(positives)
        if _looks_like_matrix(orth, len(positives), len(negatives)):
            matrix = [list(r) for r in orth]
            if len(matrix) != len(positives) or any(len(r) != len(negatives) for r in matrix):
                raise TriadError(
                    f"orthogonality matrix must be {len(positives)}x{len(negatives)}"
                )
            for i, r in enumerate(matrix):
                for j, v in enumerate(r):
                    if v:
                        rows[i] |= 1 << j
        else:
            for pair in orth:
                a, b = pair
                ra, rb = index.get(str(a)), index.get(str(b))
                if ra is None or rb is None:
                    raise TriadError(f"unknown label in pair {a!r} {b!r}")
                if ra.side is rb.side:
                    raise PolarityClash(f"polarity clash in pair {a!r} {b!r}")
                p, n = (ra, rb) if ra.side is P else (rb, ra)
                rows[p.index] |= 1 << n.index
        cols = [0] * len(negatives)
        for i, r in enumerate(rows):
            for j in iter_bits(r):
                cols[j] |= 1 << i

        self.positives = positives
        self.negatives = negatives
        self._rows = tuple(rows)
        self._cols = tuple(cols)
        self._index = index
        self._hash = hash((positives, negatives, self._rows))

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_pairs(cls, positives, negatives, pairs) -> "Triad":
        return cls(positives, negatives, list(pairs))

    def __setattr__(self, name, value):
        if hasattr(self, "_hash"):
            raise AttributeError("Triad is immutable")
        object.__setattr__(self, name, value)

    def __eq__(self, other):
        if not isinstance(other, Triad):
            return NotImplemented
        return self is other or (
            self._hash == other._hash
            and self.positives == other.positives
            and self.negatives == other.negatives
            and self._rows == other._rows
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Triad(|P|={len(self.positives)}, |N|={len(self.negatives)})"

    def __getstate__(self):
        return (self.positives, self.negatives, self.matrix())

    def __setstate__(self, state):
        Triad.__init__(self, *state)

    # -- carrier access -------------------------------------------------------

    def labels(self, side: Polarity) -> tuple[str, ...]:
        return self.positives if side is P else self.negatives

    def size(self, side: Polarity) -> int:
        return len(self.positives) if side is P else len(self.negatives)

    def full_mask(self, side: Polarity) -> int:
        return full_mask(self.size(side))

    def singleton_orth(self, ref: TermRef) -> int:
        """Mask of ``{a}`` orthogonal, on the opposite side."""
        return self._rows[ref.index] if ref.side is P else self._cols[ref.index]

    def orth_masks(self, side: Polarity) -> tuple[int, ...]:
        return self._rows if side is P else self._cols

    def matrix(self) -> list[list[bool]]:
        return [
            [bool(r >> j & 1) for j in range(len(self.negatives))] for r in self._rows
        ]

    def pairs(self) -> Iterator[tuple[str, str]]:
        for i, r in enumerate(self._rows):
            for j in iter_bits(r):
                yield self.positives[i], self.negatives[j]

    def ref(self, label: "str | TermRef") -> TermRef:
        if isinstance(label, TermRef):
            self.check_ref(label)
            return label
        try:
            return self._index[str(label)]
        except KeyError:
            raise TriadError(f"unknown label {label!r}") from None

    def check_ref(self, ref: TermRef) -> None:
        if not 0 <= ref.index < self.size(ref.side):
            raise TriadError(f"term index {ref.index} outside {ref.side} carrier")

    def label(self, ref: TermRef) -> str:
        self.check_ref(ref)
        return self.labels(ref.side)[ref.index]

    def refs(self, side: Polarity) -> list[TermRef]:
        return [TermRef(side, i) for i in range(self.size(side))]

    # -- term sets ------------------------------------------------------------

    def termset(self, members: Iterable, side: "Polarity | str | None" = None) -> "TermSet":
        """Build a term set from labels or refs; ``side`` is needed when empty."""
        refs = [self.ref(m) for m in members]
        if side is not None:
            side = Polarity.parse(side)
        sides = {r.side for r in refs}
        if len(sides) > 1:
            raise PolarityClash("term set mixes positive and negative terms")
        if sides:
            (found,) = sides
            if side is not None and side is not found:
                raise PolarityClash(f"terms are {found}, requested side {side}")
            side = found
        if side is None:
            raise TriadError("side required for an empty term set")
        bits = 0
        for r in refs:
            bits |= 1 << r.index
        return TermSet(self, side, bits)

    def empty(self, side) -> "TermSet":
        return TermSet(self, Polarity.parse(side), 0)

    def full(self, side) -> "TermSet":
        side = Polarity.parse(side)
        return TermSet(self, side, self.full_mask(side))

    def from_mask(self, side, bits: int) -> "TermSet":
        return TermSet(self, Polarity.parse(side), bits)


def _looks_like_matrix(orth, n_pos: int, n_neg: int) -> bool:
    if hasattr(orth, "shape"):
        return True
    orth = orth if isinstance(orth, (list, tuple)) else None
    if orth is None:
        return False
    if not orth:
        # an empty list is both "no pairs" and a 0xN matrix; they coincide
        return False
    first = orth[0]
    if isinstance(first, (list, tuple)) and len(first) == 2 and all(
        isinstance(x, str) for x in first
    ):
        return False
    return True


class TermSet:
    """A subset of one side of a specific triad, stored as a bitmask.

    Combining or comparing term sets of different triads or sides raises
    :class:`TriadError` instead of quietly answering ``False``.
    """

    __slots__ = ("triad", "side", "bits")

    def __init__(self, triad: Triad, side: Polarity, bits: int):
        if bits < 0 or bits >> triad.size(side):
            raise TriadError("term set member outside the carrier")
        object.__setattr__(self, "triad", triad)
        object.__setattr__(self, "side", side)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("TermSet is immutable")

    def _compat(self, other: "TermSet") -> None:
        if not isinstance(other, TermSet):
            raise TypeError(f"expected TermSet, got {type(other).__name__}")
        if other.triad is not self.triad and other.triad != self.triad:
            raise TriadError("term sets belong to different triads")
        if other.side is not self.side:
            raise PolarityClash("term sets belong to different sides")

    def __or__(self, other):
        self._compat(other)
        return TermSet(self.triad, self.side, self.bits | other.bits)

    def __and__(self, other):
        self._compat(other)
        return TermSet(self.triad, self.side, self.bits & other.bits)

    def __sub__(self, other):
        self._compat(other)
        return TermSet(self.triad, self.side, self.bits & ~other.bits)

    def __le__(self, other):
        self._compat(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other):
        return self <= other and self.bits != other.bits

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def __eq__(self, other):
        if not isinstance(other, TermSet):
            return NotImplemented
        self._compat(other)
        return self.bits == other.bits

    def __hash__(self):
        return hash((self.triad, self.side, self.bits))

    def __len__(self):
        return popcount(self.bits)

    def __iter__(self) -> Iterator[TermRef]:
        return (TermRef(self.side, i) for i in iter_bits(self.bits))

    def __contains__(self, item):
        ref = self.triad.ref(item)
        if ref.side is not self.side:
            raise PolarityClash()
        return bool(self.bits >> ref.index & 1)

    def labels(self) -> list[str]:
        names = self.triad.labels(self.side)
        return [names[i] for i in iter_bits(self.bits)]

    def __repr__(self):
        return "{" + ",".join(self.labels()) + "}" + f"[{self.side}]"

    def __str__(self):
        return ",".join(self.labels())


# -- operations ---------------------------------------------------------------


def _check_set(t: Triad, x: TermSet) -> None:
    if x.triad is not t and x.triad != t:
        raise TriadError("term set does not belong to this triad")


def _opposite_pair(t: Triad, a: TermRef, b: TermRef) -> tuple[TermRef, TermRef]:
    t.check_ref(a)
    t.check_ref(b)
    if a.side is b.side:
        raise PolarityClash()
    return (a, b) if a.side is P else (b, a)


def orth_mask(t: Triad, side: Polarity, bits: int) -> int:
    """Bitmask form of the orthogonal set: result lives on ``side.opposite``."""
    out = t.full_mask(side.opposite)
    singles = t.orth_masks(side)
    while bits and out:
        low = bits & -bits
        out &= singles[low.bit_length() - 1]
        bits ^= low
    return out


def closure_mask(t: Triad, side: Polarity, bits: int) -> int:
    return orth_mask(t, side.opposite, orth_mask(t, side, bits))


def orthogonal_terms(t: Triad, a: TermRef, b: TermRef) -> bool:
    p, n = _opposite_pair(t, a, b)
    return bool(t.singleton_orth(p) >> n.index & 1)


def orthogonal_set(t: Triad, x: TermSet) -> TermSet:
    _check_set(t, x)
    return TermSet(t, x.side.opposite, orth_mask(t, x.side, x.bits))


def closure(t: Triad, x: TermSet) -> TermSet:
    _check_set(t, x)
    return TermSet(t, x.side, closure_mask(t, x.side, x.bits))


def is_closed(t: Triad, x: TermSet) -> bool:
    _check_set(t, x)
    return closure_mask(t, x.side, x.bits) == x.bits


def specializes(t: Triad, a: TermRef, b: TermRef) -> bool:
    """``a`` is more special than ``b``: every term orthogonal to ``a`` is
    orthogonal to ``b``."""
    t.check_ref(a)
    t.check_ref(b)
    if a.side is not b.side:
        raise PolarityClash()
    oa, ob = t.singleton_orth(a), t.singleton_orth(b)
    return oa & ~ob == 0


def intersection_of_orthogonals(t: Triad, side: Polarity, bits: int) -> int:
    """Intersection of ``{a}`` orthogonal over ``a`` in ``bits``; the empty
    intersection is the full opposite side."""
    out = t.full_mask(side.opposite)
    singles = t.orth_masks(side)
    for i in iter_bits(bits):
        out &= singles[i]
    return out


def sem_consequence(t: Triad, x: TermSet, b: TermRef) -> bool:
    _check_set(t, x)
    t.check_ref(b)
    if x.side is not b.side:
        raise PolarityClash()
    inter = intersection_of_orthogonals(t, x.side, x.bits)
    return inter & ~t.singleton_orth(b) == 0


def consequence_mask(t: Triad, side: Polarity, bits: int) -> int:
    """Mask of every ``b`` with ``X`` entailing ``b``, computed term by term
    from the definition (not through double orthogonality)."""
    inter = intersection_of_orthogonals(t, side, bits)
    out = 0
    for i, ob in enumerate(t.orth_masks(side)):
        if inter & ~ob == 0:
            out |= 1 << i
    return out


def consequences(t: Triad, x: TermSet) -> TermSet:
    _check_set(t, x)
    return TermSet(t, x.side, consequence_mask(t, x.side, x.bits))


def universal_consequences(t: Triad, side) -> TermSet:
    side = Polarity.parse(side)
    return closure(t, t.empty(side))


def check_orthogonality_propagation(
    t: Triad, a: TermRef, a2: TermRef, b: TermRef, b2: TermRef
) -> bool:
    """Whether ``a ⊥ b``, ``{a} ⊴ a2`` and ``{b} ⊴ b2`` imply ``a2 ⊥ b2``."""
    if a.side is not a2.side or b.side is not b2.side:
        raise PolarityClash()
    premises = (
        orthogonal_terms(t, a, b)
        and sem_consequence(t, TermSet(t, a.side, 1 << a.index), a2)
        and sem_consequence(t, TermSet(t, b.side, 1 << b.index), b2)
    )
    return not premises or orthogonal_terms(t, a2, b2)


def format_set(x: TermSet) -> str:
    return "{" + ",".join(x.labels()) + "}"
