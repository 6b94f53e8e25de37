"""Skew-symmetric bilinear forms, annihilators, and Lagrangian subspaces.

Degenerate forms are first-class: nothing here assumes the Gram matrix is
invertible, and the radical is simply the annihilator of the whole space.
The module also provides the standard intersection form of a disjoint union
of closed surfaces and seed-deterministic random symplectic matrices and
Lagrangians used throughout the test campaigns.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, NonSkewFormError
from .linalg import (
    RationalMatrix,
    Subspace,
    as_vector,
    canonical_basis,
    dot,
    kernel,
)

#: Default number of generator factors in a random symplectic walk.  Long
#: enough to move Lagrangians well away from coordinate subspaces while the
#: integer entries stay small.
DEFAULT_WALK_LENGTH = 20


@dataclass(frozen=True)
class SymplecticSpace:
    """A rational vector space with a skew-symmetric, possibly degenerate form."""

    gram: RationalMatrix

    def __post_init__(self):
        g = self.gram
        if g.rows != g.cols:
            raise NonSkewFormError(f"gram matrix is {g.rows}x{g.cols}, not square")
        for i in range(g.rows):
            for j in range(i, g.cols):
                if g[i, j] != -g[j, i]:
                    raise NonSkewFormError(f"gram[{i}][{j}] != -gram[{j}][{i}]")

    @property
    def dim(self) -> int:
        return self.gram.rows

    def evaluate(self, x: Iterable, y: Iterable) -> Fraction:
        """Value of the form on a pair of vectors: x^T gram y."""
        vx, vy = as_vector(x), as_vector(y)
        if len(vx) != self.dim or len(vy) != self.dim:
            raise DimensionMismatchError(
                f"vectors of lengths {len(vx)}, {len(vy)} in dimension {self.dim}"
            )
        return dot(vx, self.gram.apply(vy))

    def annihilator(self, sub: Subspace) -> Subspace:
        """All vectors pairing to zero with every element of the subspace."""
        if sub.ambient_dim != self.dim:
            raise DimensionMismatchError(
                f"subspace of ambient {sub.ambient_dim} in a space of dimension {self.dim}"
            )
        pairing = sub.basis @ self.gram.transpose()
        return kernel(pairing)

    def radical(self) -> Subspace:
        """The degenerate directions: the annihilator of the whole space."""
        return self.annihilator(Subspace.full(self.dim))

    def is_lagrangian(self, sub: Subspace) -> bool:
        """True iff the subspace equals its own annihilator."""
        return self.annihilator(sub) == sub


def beta0(genera: Sequence[int]) -> int:
    """Number of surface components."""
    return len(genera)


def beta1(genera: Sequence[int]) -> int:
    """First Betti number of the surface: twice the total genus."""
    return 2 * sum(genera)


def validated_genera(genera: Iterable[int]) -> tuple[int, ...]:
    out = tuple(int(g) for g in genera)
    if any(g < 0 for g in out):
        raise ValueError(f"genera must be non-negative, got {out}")
    return out


@lru_cache(maxsize=None)
def _standard_space(genera: tuple[int, ...]) -> SymplecticSpace:
    n = beta1(genera)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for h in range(sum(genera)):
        rows[2 * h][2 * h + 1] = Fraction(1)
        rows[2 * h + 1][2 * h] = Fraction(-1)
    return SymplecticSpace(RationalMatrix(rows, cols=n))


def standard_surface_space(genera: Iterable[int]) -> SymplecticSpace:
    """Intersection form of a disjoint union of closed oriented surfaces.

    Basis order is e1, f1, e2, f2, ... across all handles of all components,
    one [[0, 1], [-1, 0]] block per handle; nondegenerate.
    """
    return _standard_space(validated_genera(genera))


# -- integral symplectic group walk ------------------------------------------
#
# The generating family below is frozen; its indexing is part of the seed
# contract.  With e_i, f_i the coordinates 2i, 2i+1 the list is, in order:
#
#   index 0 .. g-1          rotations      e_i -> f_i,        f_i -> -e_i
#   index g .. 2g-1         transvections  e_i -> e_i + f_i
#   index 2g .. 3g-1        transvections  f_i -> f_i + e_i
#   index 3g ..             handle mixing, ordered pairs (i, j), i != j, in
#                           lexicographic order:
#                                          e_i -> e_i + e_j,  f_j -> f_j - f_i
#
# Matrices act on column vectors, so column 2i holds the image of e_i.


def _int_identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


@lru_cache(maxsize=None)
def _int_generators(g: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    n = 2 * g
    gens: list[list[list[int]]] = []
    for i in range(g):  # rotations
        m = _int_identity(n)
        m[2 * i][2 * i] = 0
        m[2 * i + 1][2 * i] = 1
        m[2 * i][2 * i + 1] = -1
        m[2 * i + 1][2 * i + 1] = 0
        gens.append(m)
    for i in range(g):  # e_i -> e_i + f_i
        m = _int_identity(n)
        m[2 * i + 1][2 * i] = 1
        gens.append(m)
    for i in range(g):  # f_i -> f_i + e_i
        m = _int_identity(n)
        m[2 * i][2 * i + 1] = 1
        gens.append(m)
    for i in range(g):  # handle mixing
        for j in range(g):
            if i == j:
                continue
            m = _int_identity(n)
            m[2 * j][2 * i] = 1
            m[2 * i + 1][2 * j + 1] = -1
            gens.append(m)
    return tuple(tuple(tuple(row) for row in m) for m in gens)


def symplectic_generators(g: int) -> tuple[RationalMatrix, ...]:
    """The frozen integral generating family for genus g, in documented order."""
    if g < 1:
        raise ValueError("need at least one handle")
    return tuple(RationalMatrix(m) for m in _int_generators(g))


def _int_matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(a)
    w = len(b[0])
    out = [[0] * w for _ in range(n)]
    for i in range(n):
        arow = a[i]
        orow = out[i]
        for k, x in enumerate(arow):
            if x:
                brow = b[k]
                for j in range(w):
                    y = brow[j]
                    if y:
                        orow[j] += x * y
    return out


def _int_standard_gram(g: int) -> list[list[int]]:
    n = 2 * g
    j = [[0] * n for _ in range(n)]
    for h in range(g):
        j[2 * h][2 * h + 1] = 1
        j[2 * h + 1][2 * h] = -1
    return j


def _is_int_symplectic(a: Sequence[Sequence[int]], g: int) -> bool:
    j = _int_standard_gram(g)
    at = [list(col) for col in zip(*a)]
    return _int_matmul(_int_matmul(at, j), a) == j


def random_symplectic(
    g: int, seed: int | random.Random, length: int = DEFAULT_WALK_LENGTH
) -> RationalMatrix:
    """Seed-deterministic product of `length` draws from the generator family.

    Draws use random.Random(seed).randrange over the documented generator
    order, multiplying on the right; length 0 gives the identity.  The
    result always satisfies A^T J A = J for the standard form J.
    """
    if g < 1:
        raise ValueError("need at least one handle")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    gens = _int_generators(g)
    acc = _int_identity(2 * g)
    for _ in range(length):
        acc = _int_matmul(acc, gens[rng.randrange(len(gens))])
    assert _is_int_symplectic(acc, g)
    return RationalMatrix(acc)


def random_lagrangian(
    g: int, seed: int | random.Random, length: int = DEFAULT_WALK_LENGTH
) -> Subspace:
    """Image of the standard Lagrangian span{e_1..e_g} under a random walk.

    Always Lagrangian in the standard genus-g space; length 0 returns the
    standard Lagrangian itself.
    """
    walk = random_symplectic(g, seed, length)
    columns = [walk.column(2 * i) for i in range(g)]
    lag = canonical_basis(columns, 2 * g)
    assert standard_surface_space((g,)).is_lagrangian(lag)
    return lag
