"""Distance graphs G_alpha of codes and their connected components.

Two codewords are adjacent when their Hamming distance is at most alpha. Explicit codes are
partitioned with union-find over all pairs; linear codes use the Cayley structure, where the
components are the cosets of the span of the nonzero codewords of weight <= alpha.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from src.codes import (
    Code,
    CosetPartition,
    coset_partition,
    enumerate_codewords,
    low_weight_codewords,
    span,
)
from src.config import COSET_CAP, ENUM_BUDGET, PAIR_BUDGET, SEARCH_BUDGET
from src.errors import BudgetExceeded
from src.field import to_ints

logger = logging.getLogger(__name__)


class UnionFind:
    """Disjoint sets with union by size and path compression."""

    def __init__(self, n: int):
        self.parents = list(range(n))
        self.sizes = [1] * n

    def find(self, i: int) -> int:
        root = i
        while self.parents[root] != root:
            root = self.parents[root]
        while self.parents[i] != root:
            self.parents[i], i = root, self.parents[i]
        return root

    def union(self, i: int, j: int) -> int:
        root_i, root_j = self.find(i), self.find(j)
        if root_i == root_j:
            return root_i
        large, small = (root_i, root_j) if self.sizes[root_i] >= self.sizes[root_j] else (root_j, root_i)
        self.sizes[large] += self.sizes[small]
        self.parents[small] = large
        return large

    def groups(self) -> list[list[int]]:
        groups = defaultdict(list)
        for i in range(len(self.parents)):
            groups[self.find(i)].append(i)
        return list(groups.values())


@dataclass
class ComponentPartition:
    alpha: int
    method: str  # "explicit" | "cayley"
    block_sizes: list[int]
    block_count: int
    blocks: list[np.ndarray] | None = None  # materialised components, each sorted lexicographically
    block_size: int | None = None  # common size gamma (Cayley)
    subcode_dim: int | None = None
    cosets: CosetPartition | None = None

    def as_sets(self) -> set[frozenset]:
        if self.blocks is None:
            raise BudgetExceeded("Components were not materialised")
        return {frozenset(tuple(int(x) for x in row) for row in block) for block in self.blocks}


def _lex_sorted(words: np.ndarray) -> np.ndarray:
    if len(words) == 0:
        return words
    return words[np.lexsort(words.T[::-1])]


def _ordered_blocks(blocks: list[np.ndarray]) -> list[np.ndarray]:
    blocks = [_lex_sorted(b) for b in blocks]
    return sorted(blocks, key=lambda b: tuple(int(x) for x in b[0]))


def components_explicit(code: Code, alpha: int, budget: int = ENUM_BUDGET,
                        pair_budget: int = PAIR_BUDGET) -> ComponentPartition:
    """Components of G_alpha by union-find over every pair of codewords."""
    words = code.codewords if not code.is_linear else enumerate_codewords(code, budget)
    m = len(words)
    if m * m > pair_budget:
        raise BudgetExceeded(f"{m} codewords need {m * m} pairwise distances (budget {pair_budget})")
    uf = UnionFind(m)
    for i in range(m - 1):
        dist = np.count_nonzero(words[i + 1:] != words[i], axis=1)
        for j in np.flatnonzero(dist <= alpha):
            uf.union(i, i + 1 + int(j))
    blocks = _ordered_blocks([words[g] for g in uf.groups()])
    logger.debug("G_%d of %s: %d components", alpha, code.label(), len(blocks))
    return ComponentPartition(
        alpha=alpha, method="explicit", blocks=blocks,
        block_sizes=[len(b) for b in blocks], block_count=len(blocks),
    )


def components_cayley(code: Code, alpha: int, search_budget: int = SEARCH_BUDGET,
                      cap: int = COSET_CAP) -> ComponentPartition:
    """Components of G_alpha of a linear code as cosets of <S_alpha>.

    Blocks are materialised only when the whole code fits under the cap; otherwise the
    partition carries the coset structure (representatives, or just the complement basis).
    """
    low = low_weight_codewords(code, alpha, search_budget)
    sub = span(code.field, low, code.n)
    cosets = coset_partition(code, sub, cap)
    gamma = sub.size
    blocks = None
    if cosets.representatives is not None and cosets.count * gamma <= cap:
        members = enumerate_codewords(sub, cap)
        gf = code.field.gf
        blocks = _ordered_blocks([
            to_ints(gf(members) + gf(rep)) for rep in cosets.representatives
        ])
    logger.debug("G_%d of %s: dim<S> = %d, %d cosets", alpha, code.label(), sub.k, cosets.count)
    return ComponentPartition(
        alpha=alpha, method="cayley", blocks=blocks,
        block_sizes=[gamma] * cosets.count if cosets.count <= cap else [],
        block_count=cosets.count, block_size=gamma, subcode_dim=sub.k, cosets=cosets,
    )


def components(code: Code, alpha: int, budget: int = ENUM_BUDGET, search_budget: int = SEARCH_BUDGET,
               pair_budget: int = PAIR_BUDGET, cap: int = COSET_CAP) -> ComponentPartition:
    if code.is_linear:
        return components_cayley(code, alpha, search_budget, cap)
    return components_explicit(code, alpha, budget, pair_budget)


def is_connected(code: Code, alpha: int, **budgets) -> bool:
    return components(code, alpha, **budgets).block_count == 1


def refines(fine: ComponentPartition, coarse: ComponentPartition) -> bool:
    """True when every block of fine lies inside a single block of coarse."""
    coarse_sets = coarse.as_sets()
    return all(any(block <= c for c in coarse_sets) for block in fine.as_sets())


def _word_label(word, q: int) -> str:
    values = [int(x) for x in word]
    if q <= 10:
        return "".join(str(v) for v in values)
    return ",".join(str(v) for v in values)


def to_dot(code: Code, alpha: int, budget: int = ENUM_BUDGET, pair_budget: int = PAIR_BUDGET) -> str:
    """DOT source of G_alpha; vertices and edges in lexicographic order."""
    words = _lex_sorted(code.codewords if not code.is_linear else enumerate_codewords(code, budget))
    m = len(words)
    if m * m > pair_budget:
        raise BudgetExceeded(f"{m} codewords are too many to draw")
    labels = [_word_label(w, code.q) for w in words]
    lines = [f"graph G{alpha} {{"]
    lines += [f'  "{label}";' for label in labels]
    for i in range(m - 1):
        dist = np.count_nonzero(words[i + 1:] != words[i], axis=1)
        for j in np.flatnonzero(dist <= alpha):
            lines.append(f'  "{labels[i]}" -- "{labels[i + 1 + int(j)]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
