"""Naive closure of a finite matrix group mod p, used as an oracle for the chain.

Breadth-first search over the Cayley graph with generators closed under
inverses.  In an undirected Cayley graph the neighbours of layer k lie in
layers k-1, k, k+1, so only the two previous layers need to be consulted.
"""
from __future__ import annotations

import numpy as np


def _mat_order(m: np.ndarray, p: int, limit: int = 10**6) -> int:
    eye = np.eye(len(m), dtype=np.int64)
    x, k = m % p, 1
    while not np.array_equal(x, eye):
        x = x @ m % p
        k += 1
        if k > limit:
            raise ValueError("matrix order exceeds limit; is it invertible?")
    return k


def _inverse_by_power(m: np.ndarray, p: int) -> np.ndarray:
    k = _mat_order(m, p)
    out = np.eye(len(m), dtype=np.int64)
    for _ in range(k - 1):
        out = out @ m % p
    return out


def _member(x: np.ndarray, sorted_arr: np.ndarray) -> np.ndarray:
    if not len(sorted_arr):
        return np.zeros(len(x), dtype=bool)
    k = np.searchsorted(sorted_arr, x)
    k[k == len(sorted_arr)] = 0
    return sorted_arr[k] == x


class Closure:
    def __init__(self, gens, p: int, limit: int = 5_000_000):
        gens = [np.asarray(g, dtype=np.int64) % p for g in gens]
        self.p = p
        self.n = n = len(gens[0]) if gens else 0
        if n * n * np.log2(max(p, 2)) > 62:
            raise ValueError("matrix code space too large for the int64 encoding")
        self._w = np.array([p**k for k in range(n * n)], dtype=np.int64)
        allgens, seen = [], set()
        for g in gens:
            for m in (g, _inverse_by_power(g, p)):
                if m.tobytes() not in seen:
                    seen.add(m.tobytes())
                    allgens.append(m)
        # frontier layout is (n, N, n) float64 so that g @ frontier is one BLAS call;
        # exact because entries stay far below 2^53
        fgens = [g.astype(np.float64) for g in allgens]
        eye = np.eye(n)
        self._wf = self._w.reshape(n, n)
        cur = eye[:, None, :]
        cur_codes = self._codes_f(cur)
        prev = np.empty(0, dtype=np.int64)
        layers = [cur_codes]
        total = 1
        while cur.shape[1] and fgens:
            N = cur.shape[1]
            flat = cur.reshape(n, N * n)
            nb = np.concatenate([np.mod(g @ flat, p).reshape(n, N, n) for g in fgens], axis=1)
            codes, first = np.unique(self._codes_f(nb), return_index=True)
            keep = ~_member(codes, cur_codes) & ~_member(codes, prev)
            prev, cur_codes = cur_codes, codes[keep]
            cur = nb[:, first[keep], :]
            if len(cur_codes):
                layers.append(cur_codes)
            total += len(cur_codes)
            if total > limit:
                raise ValueError(f"closure exceeds {limit} elements")
        self.codes = np.sort(np.concatenate(layers))
        self.diameter = len(layers) - 1

    def _codes_f(self, wide: np.ndarray) -> np.ndarray:
        return np.einsum("iNk,ik->N", wide.astype(np.int64), self._wf)

    def encode(self, mats: np.ndarray) -> np.ndarray:
        return mats.reshape(len(mats), -1) @ self._w

    @property
    def order(self) -> int:
        return len(self.codes)

    def contains(self, m) -> bool:
        c = self.encode((np.asarray(m, dtype=np.int64) % self.p)[None])[0]
        k = np.searchsorted(self.codes, c)
        return bool(k < len(self.codes) and self.codes[k] == c)
