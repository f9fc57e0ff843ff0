"""Enumeration of the closed sets of one side of a triad."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from ._bits import full_mask, lectic_key, lectic_subsets
from .errors import CapacityError, TriadError
from .triad import Polarity, TermSet, Triad, closure_mask

SCAN_LIMIT = 16
MAX_CARRIER = 30


@dataclass(frozen=True)
class ClosedSetFamily:
    triad: Triad
    side: Polarity
    masks: tuple[int, ...]

    @property
    def sets(self) -> list[TermSet]:
        return [TermSet(self.triad, self.side, m) for m in self.masks]

    def __len__(self):
        return len(self.masks)

    def __iter__(self) -> Iterator[TermSet]:
        return iter(self.sets)

    def __contains__(self, x: TermSet) -> bool:
        self._own(x)
        return x.bits in self._lookup

    @property
    def _lookup(self) -> frozenset[int]:
        cached = self.__dict__.get("_lookup_cache")
        if cached is None:
            cached = frozenset(self.masks)
            object.__setattr__(self, "_lookup_cache", cached)
        return cached

    def _own(self, x: TermSet) -> None:
        if (x.triad is not self.triad and x.triad != self.triad) or x.side is not self.side:
            raise TriadError("term set is not on this family's side")

    def bottom(self) -> TermSet:
        return TermSet(self.triad, self.side, closure_mask(self.triad, self.side, 0))

    def top(self) -> TermSet:
        return self.triad.full(self.side)

    def covers(self) -> list[tuple[TermSet, TermSet]]:
        """Hasse edges ``(lower, upper)``, computed on demand."""
        def below(a, b):
            return a != b and a & ~b == 0

        edges = []
        for lo in self.masks:
            ups = [m for m in self.masks if below(lo, m)]
            for up in ups:
                if not any(below(m, up) for m in ups):
                    edges.append((self.triad.from_mask(self.side, lo), self.triad.from_mask(self.side, up)))
        return edges


def _next_closure(t: Triad, side: Polarity, n: int) -> Iterator[int]:
    # Ganter's algorithm; index 0 is the most significant element.
    def close(bits):
        return closure_mask(t, side, bits)

    current = close(0)
    yield current
    full = full_mask(n)
    while current != full:
        for i in range(n - 1, -1, -1):
            bit = 1 << i
            if current & bit:
                current &= ~bit
                continue
            prefix = current & (bit - 1)
            candidate = close(prefix | bit)
            if candidate & (bit - 1) == prefix:
                current = candidate
                yield current
                break
        else:  # pragma: no cover - closure of the full side is the full side
            return


def _scan(t: Triad, side: Polarity, n: int) -> list[int]:
    seen = {closure_mask(t, side, m) for m in lectic_subsets(n)}
    return sorted(seen, key=lambda m: lectic_key(m, n))


def enumerate_closed_sets(
    t: Triad, side, method: str = "auto", max_carrier: int = MAX_CARRIER
) -> ClosedSetFamily:
    """All fixpoints of double orthogonality on ``side``, in lectic order.

    ``method`` is ``"scan"`` (close every subset and deduplicate),
    ``"next-closure"`` or ``"auto"`` (scan up to 16 terms).
    """
    side = Polarity.parse(side)
    n = t.size(side)
    if n > max_carrier:
        raise CapacityError(f"side {side} has {n} terms; limit is {max_carrier}")
    if method == "auto":
        method = "scan" if n <= SCAN_LIMIT else "next-closure"
    if method == "scan":
        masks = _scan(t, side, n)
    elif method == "next-closure":
        masks = list(_next_closure(t, side, n))
    else:
        raise ValueError(f"unknown method {method!r}")
    return ClosedSetFamily(t, side, tuple(masks))


def _member(f: ClosedSetFamily, x: TermSet) -> None:
    if x not in f:
        raise TriadError(f"{x!r} is not a closed set of the family")


def lattice_meet(f: ClosedSetFamily, x: TermSet, y: TermSet) -> TermSet:
    _member(f, x)
    _member(f, y)
    out = x & y
    if out not in f:
        raise TriadError("closed sets are not closed under intersection")
    return out


def lattice_join(f: ClosedSetFamily, x: TermSet, y: TermSet) -> TermSet:
    _member(f, x)
    _member(f, y)
    return TermSet(f.triad, f.side, closure_mask(f.triad, f.side, x.bits | y.bits))
