"""Dih6 as the symmetry group of K(2,3), in the +/-(cycle) notation.

An element is a pair (sign, perm): sign -1 iff the two poles are swapped,
perm the action on the three points q0, q1, q2.  ``x @ y`` applies y first.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations

from .words import DihRho, SymbolError, Word

_ID = (0, 1, 2)


@dataclass(frozen=True, order=True)
class DihElement:
    # field order gives the canonical ordering: + before -, then one-line perm
    neg: bool
    perm: tuple[int, int, int]

    def __post_init__(self):
        if sorted(self.perm) != [0, 1, 2]:
            raise ValueError(f"not a permutation of {{0,1,2}}: {self.perm}")

    @property
    def sign(self) -> int:
        return -1 if self.neg else 1

    def __matmul__(self, other: "DihElement") -> "DihElement":
        return DihElement(self.neg != other.neg, tuple(self.perm[k] for k in other.perm))

    def inverse(self) -> "DihElement":
        inv = [0, 0, 0]
        for k, v in enumerate(self.perm):
            inv[v] = k
        return DihElement(self.neg, tuple(inv))

    def order(self) -> int:
        x, n = self, 1
        while x != IDENTITY:
            x, n = x @ self, n + 1
        return n

    def __str__(self) -> str:
        return dih_format(self)


IDENTITY = DihElement(False, _ID)
ALL_ELEMENTS = tuple(sorted(DihElement(neg, p) for neg in (False, True) for p in permutations(range(3))))


def dih_compose(*xs: DihElement) -> DihElement:
    out = IDENTITY
    for x in xs:
        out = out @ x
    return out


_ELEMENT = re.compile(r"\s*([+\-−])\s*\(([^)]*)\)\s*$")


def dih_parse(text: str) -> DihElement:
    """Parse ``+(021)``, ``-()``, ``-( )``, ``-(1,2)``."""
    m = _ELEMENT.match(text)
    if not m:
        if text.strip()[:1] not in ("+", "-", "−"):
            raise ValueError(f"malformed sign in {text!r}")
        raise ValueError(f"malformed element {text!r}")
    body = re.sub(r"[\s,]", "", m.group(2))
    for ch in body:
        if ch not in "012":
            raise ValueError(f"invalid digit {ch!r} in {text!r}")
    if len(set(body)) != len(body):
        raise ValueError(f"repeated digit in cycle {text!r}")
    perm = list(_ID)
    digits = [int(c) for c in body]
    for k, d in enumerate(digits):
        perm[d] = digits[(k + 1) % len(digits)]
    return DihElement(m.group(1) != "+", tuple(perm))


def dih_format(x: DihElement) -> str:
    moved = [k for k in range(3) if x.perm[k] != k]
    cycle = []
    if moved:
        k = moved[0]
        while k not in cycle:
            cycle.append(k)
            k = x.perm[k]
    return ("-" if x.neg else "+") + "(" + "".join(map(str, cycle)) + ")"


def dih_of_rho(axis: str) -> DihElement:
    """rho_e swaps the poles; rho_i swaps the two q_j with j != i."""
    if axis == "e":
        return DihElement(True, _ID)
    i = int(axis)
    j, k = [n for n in range(3) if n != i]
    perm = list(_ID)
    perm[j], perm[k] = k, j
    return DihElement(False, tuple(perm))


def eval_dih(w: Word) -> DihElement:
    out = IDENTITY
    for letter in w.letters:
        if not isinstance(letter.symbol, DihRho):
            raise SymbolError("only pi-rotations re, r0, r1, r2 evaluate in the dihedral representation")
        x = dih_of_rho(letter.symbol.axis)
        out = out @ (x if letter.exp > 0 else x.inverse())
    return out


def dih_closure(gens) -> list[DihElement]:
    """Subgroup generated by ``gens``, sorted canonically."""
    gens = list(gens)
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = s @ x
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


# Labeled meridians a_i (in A) and b_j (in B), i, j in Z/3.  a_i is disjoint
# from b_i and meets each other b_j in one point; such pairs are orthogonal.
INCIDENCE = tuple(tuple(i != j for j in range(3)) for i in range(3))


def orthogonal_pairs() -> list[tuple[int, int]]:
    return [(i, j) for i in range(3) for j in range(3) if INCIDENCE[i][j]]


def act_on_meridian(x: DihElement, label: tuple[str, int]) -> tuple[str, int]:
    """Image of labeled meridian ('a'|'b', i); both families are invariant."""
    kind, i = label
    return kind, x.perm[i]
