"""Boolean-valued games and their linear maps (adjoint pairs of self-maps)."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .errors import TriadError
from .functionals import Functional, Verdict
from .triad import N, P, TermRef, Triad


@dataclass(frozen=True)
class BooleanGame:
    strategies: tuple[str, ...]
    costrategies: tuple[str, ...]
    relation: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "strategies", tuple(self.strategies))
        object.__setattr__(self, "costrategies", tuple(self.costrategies))
        object.__setattr__(self, "relation", tuple(tuple(bool(v) for v in r) for r in self.relation))
        overlap = set(self.strategies) & set(self.costrategies)
        if overlap:
            raise TriadError(f"strategies and costrategies overlap: {', '.join(sorted(overlap))}")
        if len(self.relation) != len(self.strategies) or any(
            len(r) != len(self.costrategies) for r in self.relation
        ):
            raise TriadError("relation must be |strategies| x |costrategies|")

    @classmethod
    def from_triad(cls, t: Triad) -> "BooleanGame":
        return cls(t.positives, t.negatives, t.matrix())

    def related(self, x: int, y: int) -> bool:
        return self.relation[x][y]


def game_to_triad(g: BooleanGame) -> Triad:
    return Triad(g.strategies, g.costrategies, [list(r) for r in g.relation])


@dataclass(frozen=True)
class LinearMap:
    """A candidate pair of self-maps, given as index tables."""

    on_strategies: tuple[int, ...]
    on_costrategies: tuple[int, ...]

    @classmethod
    def from_mapping(cls, g: BooleanGame, mapping: Mapping[str, str]) -> "LinearMap":
        f = Functional.from_mapping("map", game_to_triad(g), mapping)
        return cls(f.pos_map, f.neg_map)


def validate_linear_map(g: BooleanGame, m: LinearMap) -> Verdict:
    """Adjunction: f(x) r y iff x r g(y), for every strategy x and costrategy y.

    The witness is ``(x, y)`` as term refs of the game's triad.
    """
    if len(m.on_strategies) != len(g.strategies) or len(m.on_costrategies) != len(g.costrategies):
        raise TriadError("linear map is not total")
    rel = g.relation
    for x, fx in enumerate(m.on_strategies):
        for y, gy in enumerate(m.on_costrategies):
            if rel[fx][y] != rel[x][gy]:
                return Verdict(False, (TermRef(P, x), TermRef(N, y)))
    return Verdict(True)


def lift_linear_map(g: BooleanGame, m: LinearMap, name: str = "map") -> Functional:
    verdict = validate_linear_map(g, m)
    if not verdict:
        x, y = verdict.witness
        raise TriadError(
            f"not a linear map: adjunction fails at ({g.strategies[x.index]}, {g.costrategies[y.index]})"
        )
    return Functional(name, game_to_triad(g), m.on_strategies, m.on_costrategies)


def all_map_pairs(g: BooleanGame) -> Iterator[LinearMap]:
    """Every pair of self-maps, adjoint or not."""
    p, o = len(g.strategies), len(g.costrategies)
    for fs in itertools.product(range(p), repeat=p):
        for gs in itertools.product(range(o), repeat=o):
            yield LinearMap(fs, gs)


def all_games(max_p: int, max_o: int) -> Iterator[BooleanGame]:
    """Every game with at most ``max_p`` strategies and ``max_o`` costrategies."""
    for p in range(max_p + 1):
        for o in range(max_o + 1):
            for bits in range(1 << (p * o)):
                rel = [[bool(bits >> (i * o + j) & 1) for j in range(o)] for i in range(p)]
                yield BooleanGame(
                    tuple(f"s{i}" for i in range(p)), tuple(f"c{j}" for j in range(o)), rel
                )


def linear_maps(g: BooleanGame) -> list[LinearMap]:
    return [m for m in all_map_pairs(g) if validate_linear_map(g, m)]


def game_from_sides(strategies: Sequence[str], costrategies: Sequence[str], pairs) -> BooleanGame:
    return BooleanGame.from_triad(Triad.from_pairs(strategies, costrategies, pairs))
