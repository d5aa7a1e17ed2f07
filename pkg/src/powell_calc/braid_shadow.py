"""Permutation and framed-permutation images of words on the g bubble slots.

Slots are numbered 1..g.  A FramedPermutation records where each bubble goes
and how far (in full turns) its orientation arrow has turned on the way; the
framing belongs to the bubble, indexed by the slot it started in.

Framing conventions per generator:

    flip on slot i       +1/2 to the bubble in slot i
    rotation             every bubble moves i -> i+1 and turns +1/g
    exchange x_i         bubble i+1 -> i turns -1/g, bubble i -> i+1 turns +1/g

With these, the bubble starting in slot 4 of "x1 x2 x3" (g=4) lands in slot 1
having turned -3/4, and "e" equals "w w x1 ... x{g-1}" exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .words import Exchange, Eyeglass, Flip, Rotation, Word, check_genus, chain_word, parse


@dataclass(frozen=True)
class FramedPermutation:
    g: int
    perm: tuple[int, ...]  # 0-based: bubble starting at slot s ends at perm[s]
    framing: tuple[Fraction, ...]  # indexed by starting slot

    @classmethod
    def identity(cls, g: int) -> "FramedPermutation":
        return cls(g, tuple(range(g)), (Fraction(0),) * g)

    @classmethod
    def from_perm(cls, perm) -> "FramedPermutation":
        perm = tuple(perm)
        return cls(len(perm), perm, (Fraction(0),) * len(perm))

    def __matmul__(self, other: "FramedPermutation") -> "FramedPermutation":
        """``self @ other`` applies other first."""
        if self.g != other.g:
            raise ValueError("genus mismatch")
        perm = tuple(self.perm[other.perm[s]] for s in range(self.g))
        framing = tuple(other.framing[s] + self.framing[other.perm[s]] for s in range(self.g))
        return FramedPermutation(self.g, perm, framing)

    def inverse(self) -> "FramedPermutation":
        inv = [0] * self.g
        for s, t in enumerate(self.perm):
            inv[t] = s
        return FramedPermutation(self.g, tuple(inv), tuple(-self.framing[inv[t]] for t in range(self.g)))

    def relabel(self, sigma) -> "FramedPermutation":
        """Same motion described after renaming slot s to sigma[s]."""
        inv = [0] * self.g
        for s, t in enumerate(sigma):
            inv[t] = s
        perm = tuple(sigma[self.perm[inv[t]]] for t in range(self.g))
        framing = tuple(self.framing[inv[t]] for t in range(self.g))
        return FramedPermutation(self.g, perm, framing)

    def track(self, slot: int) -> tuple[int, Fraction]:
        """(end slot, framing) of the bubble starting at 1-based ``slot``."""
        return self.perm[slot - 1] + 1, self.framing[slot - 1]

    def __str__(self) -> str:
        return f"{cycle_notation(self.perm)} [{', '.join(str(f) for f in self.framing)}]"


def cycle_notation(perm) -> str:
    """1-based cycle notation, cycles starting at their smallest slot; '()' for id."""
    seen, out = set(), []
    for s in range(len(perm)):
        if s in seen or perm[s] == s:
            continue
        cyc, k = [], s
        while k not in seen:
            seen.add(k)
            cyc.append(k + 1)
            k = perm[k]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def _generator(g: int, symbol) -> FramedPermutation:
    zero = Fraction(0)
    if isinstance(symbol, Flip):
        framing = [zero] * g
        framing[symbol.slot - 1] = Fraction(1, 2)
        return FramedPermutation(g, tuple(range(g)), tuple(framing))
    if isinstance(symbol, Rotation):
        return FramedPermutation(g, tuple((s + 1) % g for s in range(g)), (Fraction(1, g),) * g)
    if isinstance(symbol, Exchange):
        i = symbol.i - 1
        perm = list(range(g))
        perm[i], perm[i + 1] = i + 1, i
        framing = [zero] * g
        framing[i] = Fraction(1, g)
        framing[i + 1] = Fraction(-1, g)
        return FramedPermutation(g, tuple(perm), tuple(framing))
    if isinstance(symbol, Eyeglass):
        return FramedPermutation.identity(g)
    raise TypeError(symbol)


def framed_of_word(g: int, w: Word | str) -> FramedPermutation:
    if isinstance(w, str):
        w = parse(w)
    check_genus(w, g)
    out = FramedPermutation.identity(g)
    cache: dict = {}
    for letter in w.letters:
        x = cache.get(letter)
        if x is None:
            x = _generator(g, letter.symbol)
            if letter.exp < 0:
                x = x.inverse()
            cache[letter] = x
        out = out @ x
    return out


def perm_of_word(g: int, w: Word | str) -> tuple[int, ...]:
    return framed_of_word(g, w).perm


@dataclass
class NewgenReport:
    g: int
    passed: bool
    perm_ok: bool
    framed_ok: bool | None  # None when the framed identity was not asked for
    witness: dict | None = None


def verify_newgen(g: int, framed: bool | None = None) -> NewgenReport:
    """Check "e" == "x1 ... x{g-1}" on slots, and "e" == "w w x1 ... x{g-1}" framed.

    The framed check runs at g=4 by default; pass ``framed=True`` to force it.
    """
    if g < 2:
        raise ValueError("genus must be >= 2")
    chain = chain_word(g)
    rot = framed_of_word(g, "e")
    perm_ok = rot.perm == perm_of_word(g, chain)
    framed_ok = None
    witness = None
    if framed or (framed is None and g == 4):
        rhs = framed_of_word(g, parse("w w") + chain)
        framed_ok = rot == rhs
        if not framed_ok:
            witness = {"lhs": str(rot), "rhs": str(rhs)}
    if not perm_ok:
        witness = {"lhs": cycle_notation(rot.perm), "rhs": cycle_notation(perm_of_word(g, chain))}
    return NewgenReport(g, perm_ok and framed_ok is not False, perm_ok, framed_ok, witness)


def central_framing(g: int) -> FramedPermutation:
    """(D_eta)^g: the full 2*pi rotation, identity on slots with every framing 1."""
    if g < 2:
        raise ValueError("genus must be >= 2")
    out = framed_of_word(g, " ".join(["e"] * g))
    assert out.perm == tuple(range(g)) and all(f == 1 for f in out.framing), out
    return out
