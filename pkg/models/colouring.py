# models/colouring.py - colours as nonzero elements of Z2 x Z2
"""
Colours are the ints 1, 2, 3 standing for 01, 10, 11. Group addition is XOR, so
a + b + c == 0 for nonzero a, b, c exactly when the three are distinct.
"""

from itertools import permutations
from typing import Dict, Iterator, List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

COLOURS: Tuple[int, int, int] = (1, 2, 3)
COLOUR_LABELS = {0: "00", 1: "01", 2: "10", 3: "11"}

BoundaryColouring = Tuple[int, ...]

# all six automorphisms of the colour group, as lookup tables indexed by colour
COLOUR_PERMUTATIONS: List[Tuple[int, int, int, int]] = [
    (0,) + p for p in permutations(COLOURS)
]


def colour_label(c: int) -> str:
    return COLOUR_LABELS[c]


def add(*colours: int) -> int:
    total = 0
    for c in colours:
        total ^= c
    return total


def third(a: int, b: int) -> int:
    """The colour completing a vertex whose other two ends carry a and b."""
    return a ^ b


def colour_counts(t: Sequence[int]) -> Tuple[int, int, int]:
    return (t.count(1), t.count(2), t.count(3))


def satisfies_parity(t: Sequence[int]) -> bool:
    """Every colour count has the parity of the tuple length."""
    k = len(t) % 2
    return all(n % 2 == k for n in colour_counts(t))


def permute(t: Sequence[int], table: Sequence[int]) -> BoundaryColouring:
    return tuple(table[c] for c in t)


def orbit(t: Sequence[int]) -> set:
    """All images of a tuple under the six colour permutations."""
    return {permute(t, table) for table in COLOUR_PERMUTATIONS}


def canonical_tuples(n: int) -> Iterator[BoundaryColouring]:
    """
    One representative per colour-permutation orbit of K^n: tuples in which each
    colour first appears only after all smaller colours have appeared.
    """
    if n == 0:
        yield ()
        return
    stack: List[Tuple[Tuple[int, ...], int]] = [((1,), 1)]
    while stack:
        prefix, used = stack.pop()
        if len(prefix) == n:
            yield prefix
            continue
        for c in range(min(used + 1, 3), 0, -1):
            stack.append((prefix + (c,), max(used, c)))


def all_tuples(n: int) -> Iterator[BoundaryColouring]:
    for t in canonical_tuples(n):
        yield from sorted(orbit(t))


class Colouring(BaseModel):
    """A proper 3-edge-colouring of a multipole."""
    model_config = ConfigDict(frozen=True)

    edge_colours: Dict[int, int]
    semiedge_colours: Dict[int, int]
    boundary: BoundaryColouring = ()

    def colour_of(self, edge_id: int) -> int:
        return self.edge_colours[edge_id]
