"""Finite-quotient membership: symplectic matrices mod p and a stabilizer chain.

The chain is a deterministic Schreier-Sims on the action of the group on
column vectors of (Z/p)^{2g}.  Base points are standard basis vectors, taken
in order and appended only when a sifted residue survives the whole chain.
No random Schreier generators are used; builds are reproducible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .symplectic import SymplecticMatrix, eval_sp, form_matrix, powell_generators, transvection, HomologyClass
from .words import Word

P_LIMIT = 1 << 16


class DimensionMismatch(ValueError):
    pass


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or p < 2:
        raise ValueError(f"p must be a prime, got {p!r}")
    if p >= P_LIMIT:
        raise ValueError(f"p must be < 2^16, got {p}")
    for d in range(2, math.isqrt(p) + 1):
        if p % d == 0:
            raise ValueError(f"{p} is not prime")
    return int(p)


def _form(g: int, p: int) -> np.ndarray:
    return form_matrix(g).astype(np.int64) % p


class ModPMatrix:
    __slots__ = ("g", "p", "entries")

    def __init__(self, g: int, p: int, entries):
        a = np.asarray(entries, dtype=object)
        if a.shape != (2 * g, 2 * g):
            raise DimensionMismatch(f"expected a {2 * g}x{2 * g} matrix, got {a.shape}")
        a = (a % p).astype(np.int64)
        a.setflags(write=False)
        self.g, self.p, self.entries = g, p, a

    def is_symplectic(self) -> bool:
        J = _form(self.g, self.p)
        return bool(np.array_equal(self.entries.T @ J @ self.entries % self.p, J))

    def __matmul__(self, other: "ModPMatrix") -> "ModPMatrix":
        if (self.g, self.p) != (other.g, other.p):
            raise DimensionMismatch("mismatched (g, p)")
        return ModPMatrix(self.g, self.p, self.entries @ other.entries)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ModPMatrix)
            and (self.g, self.p) == (other.g, other.p)
            and np.array_equal(self.entries, other.entries)
        )

    def __hash__(self) -> int:
        return hash((self.g, self.p, self.entries.tobytes()))

    def is_identity(self) -> bool:
        return np.array_equal(self.entries, np.eye(2 * self.g, dtype=np.int64))

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    def __repr__(self) -> str:
        return f"ModPMatrix(g={self.g}, p={self.p}, {self.tolist()})"


def reduce_mod_p(m: SymplecticMatrix, p: int) -> ModPMatrix:
    check_prime(p)
    return ModPMatrix(m.g, p, m.entries)


def sp_order(g: int, p: int) -> int:
    """|Sp(2g, p)| = p^{g^2} prod_{i=1..g} (p^{2i} - 1)."""
    out = p ** (g * g)
    for i in range(1, g + 1):
        out *= p ** (2 * i) - 1
    return out


# ---------------------------------------------------------------------------
# stabilizer chain


@dataclass
class _Level:
    point: int  # index of the standard basis vector
    gens: list[int]
    index: dict  # orbit point code -> row in points / U / Uinv
    points: np.ndarray  # (m, n)
    U: np.ndarray  # (m, n, n), U[k] @ e_point = points[k]
    Uinv: np.ndarray


class StabilizerChain:
    """Base and strong generating set for a subgroup of Sp(2g, p).

    >>> ch = StabilizerChain.build([reduce_mod_p(transvection(HomologyClass.a(1, 1)), 2),
    ...                             reduce_mod_p(transvection(HomologyClass.b(1, 1)), 2)])
    >>> ch.order()
    6
    """

    def __init__(self, g: int, p: int):
        self.g, self.p, self.n = g, p, 2 * g
        self.strong: list[np.ndarray] = []
        self.strong_inv: list[np.ndarray] = []
        self.levels: list[_Level] = []
        big = p ** self.n >= 1 << 62
        self._weights = None if big else np.array([p**k for k in range(self.n)], dtype=np.int64)

    # -- construction ------------------------------------------------------

    @classmethod
    def build(cls, gens, g: int | None = None, p: int | None = None) -> "StabilizerChain":
        gens = list(gens)
        if not gens and (g is None or p is None):
            raise ValueError("g and p are required for an empty generator list")
        g = gens[0].g if g is None else g
        p = gens[0].p if p is None else p
        for m in gens:
            if (m.g, m.p) != (g, p):
                raise DimensionMismatch(f"generator has (g, p) = ({m.g}, {m.p}), expected ({g}, {p})")
            if not m.is_symplectic():
                raise ValueError("generators must be symplectic")
        chain = cls(g, p)
        chain._schreier_sims([m.entries for m in gens])
        return chain

    def _codes(self, vecs: np.ndarray) -> list:
        if self._weights is not None:
            return (vecs @ self._weights).tolist()
        return [v.tobytes() for v in vecs]

    def _inv(self, m: np.ndarray) -> np.ndarray:
        J = _form(self.g, self.p)
        return (-(J @ m.T @ J)) % self.p

    def _fixes_prefix(self, m: np.ndarray, depth: int) -> bool:
        return all(m[:, lv.point][lv.point] == 1 and np.count_nonzero(m[:, lv.point]) == 1 for lv in self.levels[:depth])

    def _first_moved(self, m: np.ndarray) -> int:
        used = {lv.point for lv in self.levels}
        for k in range(self.n):
            if k in used:
                continue
            col = m[:, k]
            if col[k] != 1 or np.count_nonzero(col) != 1:
                return k
        raise AssertionError("identity has no moved point")

    def _orbit(self, point: int, gens: list[int]) -> _Level:
        n, p = self.n, self.p
        e = np.zeros(n, dtype=np.int64)
        e[point] = 1
        eye = np.eye(n, dtype=np.int64)
        pts, Us, Uinvs = [e[None]], [eye[None]], [eye[None]]
        index = {self._codes(e[None])[0]: 0}
        size = 1
        frontier = np.array([0])
        cur_pts, cur_U, cur_Uinv = e[None], eye[None], eye[None]
        while len(frontier):
            new_pts, new_U, new_Uinv = [], [], []
            for gi in gens:
                s, sinv = self.strong[gi], self.strong_inv[gi]
                imgs = cur_pts @ s.T % p
                sel = []
                for j, c in enumerate(self._codes(imgs)):
                    if c not in index:
                        index[c] = size
                        size += 1
                        sel.append(j)
                if sel:
                    sel = np.array(sel)
                    new_pts.append(imgs[sel])
                    new_U.append(np.matmul(s, cur_U[sel]) % p)
                    new_Uinv.append(np.matmul(cur_Uinv[sel], sinv) % p)
            if not new_pts:
                break
            cur_pts = np.concatenate(new_pts)
            cur_U = np.concatenate(new_U)
            cur_Uinv = np.concatenate(new_Uinv)
            pts.append(cur_pts)
            Us.append(cur_U)
            Uinvs.append(cur_Uinv)
            frontier = np.arange(len(cur_pts))
        return _Level(point, list(gens), index, np.concatenate(pts), np.concatenate(Us), np.concatenate(Uinvs))

    def _gens_at(self, depth: int) -> list[int]:
        return [k for k, m in enumerate(self.strong) if self._fixes_prefix(m, depth)]

    def _add_strong(self, m: np.ndarray):
        self.strong.append(m)
        self.strong_inv.append(self._inv(m))

    def _schreier_sims(self, gens: list[np.ndarray]):
        eye = np.eye(self.n, dtype=np.int64)
        seen = set()
        for m in gens:
            m = np.asarray(m, dtype=np.int64) % self.p
            key = m.tobytes()
            if np.array_equal(m, eye) or key in seen:
                continue
            seen.add(key)
            if self._fixes_prefix(m, len(self.levels)):
                self.levels.append(_Level(self._first_moved(m), [], {}, None, None, None))
            self._add_strong(m)
        for d in range(len(self.levels)):
            self.levels[d] = self._orbit(self.levels[d].point, self._gens_at(d))

        i = len(self.levels) - 1
        while i >= 0:
            hit = self._check_level(i)
            if hit is None:
                i -= 1
                continue
            h, j = hit
            if j == len(self.levels):
                self.levels.append(_Level(self._first_moved(h), [], {}, None, None, None))
            self._add_strong(h)
            for d in range(len(self.levels)):
                if i < d <= j:
                    self.levels[d] = self._orbit(self.levels[d].point, self._gens_at(d))
                else:
                    self.levels[d].gens = self._gens_at(d)
            i = j

    def _check_level(self, i: int):
        """First Schreier generator of level i that does not sift, as (residue, level)."""
        lv, p, n = self.levels[i], self.p, self.n
        eye = np.eye(n, dtype=np.int64)
        for gi in lv.gens:
            s = self.strong[gi]
            imgs = lv.points @ s.T % p
            idx = np.array([lv.index[c] for c in self._codes(imgs)])
            H = np.matmul(np.matmul(lv.Uinv[idx], s) % p, lv.U) % p
            nontrivial = ~np.all(H == eye, axis=(1, 2))
            if not nontrivial.any():
                continue
            H = H[nontrivial]
            res = self._sift_batch(H, i + 1)
            if res is not None:
                return res
        return None

    def _sift_batch(self, H: np.ndarray, start: int):
        """Sift each matrix of H from level ``start``; first failure as (residue, level)."""
        p = self.p
        order = np.arange(len(H))
        for d in range(start, len(self.levels)):
            lv = self.levels[d]
            imgs = H[:, :, lv.point]
            idx = [lv.index.get(c, -1) for c in self._codes(imgs)]
            bad = [k for k, x in enumerate(idx) if x < 0]
            if bad:
                # earliest failure in batch order wins; stop sifting the rest
                first = bad[0]
                earlier = np.arange(first)
                if len(earlier):
                    res = self._sift_batch(H[earlier], d)
                    if res is not None:
                        return res
                return H[first], d
            H = np.matmul(lv.Uinv[np.array(idx)], H) % p
        eye = np.eye(self.n, dtype=np.int64)
        nontrivial = np.flatnonzero(~np.all(H == eye, axis=(1, 2)))
        if len(nontrivial):
            return H[nontrivial[0]], len(self.levels)
        return None

    # -- queries -----------------------------------------------------------

    @property
    def base(self) -> list[np.ndarray]:
        out = []
        for lv in self.levels:
            e = np.zeros(self.n, dtype=np.int64)
            e[lv.point] = 1
            out.append(e)
        return out

    @property
    def base_points(self) -> list[int]:
        return [lv.point for lv in self.levels]

    def orbit_sizes(self) -> list[int]:
        return [len(lv.points) for lv in self.levels]

    def order(self) -> int:
        return math.prod(self.orbit_sizes())

    def _check_compatible(self, m: ModPMatrix):
        if (m.g, m.p) != (self.g, self.p):
            raise DimensionMismatch(f"matrix has (g, p) = ({m.g}, {m.p}), chain has ({self.g}, {self.p})")

    def sift(self, m: ModPMatrix) -> tuple[ModPMatrix, int]:
        """Residue of m after sifting, and the number of levels passed."""
        self._check_compatible(m)
        h = m.entries.copy()
        for d, lv in enumerate(self.levels):
            k = lv.index.get(self._codes(h[:, lv.point][None])[0])
            if k is None:
                return ModPMatrix(self.g, self.p, h), d
            h = lv.Uinv[k] @ h % self.p
        return ModPMatrix(self.g, self.p, h), len(self.levels)

    def contains(self, m: ModPMatrix) -> bool:
        residue, depth = self.sift(m)
        return depth == len(self.levels) and residue.is_identity()

    def __contains__(self, m: ModPMatrix) -> bool:
        return self.contains(m)

    def strong_generators(self) -> list[ModPMatrix]:
        return [ModPMatrix(self.g, self.p, m) for m in self.strong]


# ---------------------------------------------------------------------------
# named subgroups


def full_generators(g: int, p: int) -> list[ModPMatrix]:
    """Transvections along a_i, b_i and a_i - a_{i+1}; these generate Sp(2g, p)."""
    classes = [HomologyClass.a(g, i) for i in range(1, g + 1)] + [HomologyClass.b(g, i) for i in range(1, g + 1)]
    classes += [HomologyClass.a(g, i) - HomologyClass.a(g, i + 1) for i in range(1, g)]
    return [reduce_mod_p(transvection(c), p) for c in classes]


def powell_subgroup(g: int, p: int) -> StabilizerChain:
    if g < 2:
        raise ValueError("genus must be >= 2")
    check_prime(p)
    return StabilizerChain.build([reduce_mod_p(m, p) for m in powell_generators(g)], g, p)


def full_group(g: int, p: int) -> StabilizerChain:
    check_prime(p)
    return StabilizerChain.build(full_generators(g, p), g, p)


def subgroup_chain(name: str, g: int, p: int) -> StabilizerChain:
    if name == "powell":
        return powell_subgroup(g, p)
    if name == "full":
        return full_group(g, p)
    raise ValueError(f"unknown subgroup {name!r} (expected 'powell' or 'full')")


def word_mod_p(g: int, w: Word | str, p: int) -> ModPMatrix:
    return reduce_mod_p(eval_sp(g, w), p)
