"""Homology action on H_1(T_g; Z) = Z^{2g} by exact integer symplectic matrices.

Basis order is (a_1, b_1, ..., a_g, b_g) with <a_i, b_i> = +1; matrices act on
column vectors from the left.  Entries are Python ints held in object arrays,
so products never overflow.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .words import ClassExpr, Eyeglass, Exchange, Flip, Rotation, SymbolError, Word, check_genus, parse, parse_class


class GenusMismatch(ValueError):
    pass


class NotSymplectic(ValueError):
    pass


def form_matrix(g: int) -> np.ndarray:
    J = np.zeros((2 * g, 2 * g), dtype=object)
    for i in range(g):
        J[2 * i, 2 * i + 1] = 1
        J[2 * i + 1, 2 * i] = -1
    return J


# ---------------------------------------------------------------------------
# homology classes


@dataclass(frozen=True)
class HomologyClass:
    g: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != 2 * self.g:
            raise ValueError(f"expected {2 * self.g} coefficients, got {len(self.coeffs)}")

    @classmethod
    def zero(cls, g: int) -> "HomologyClass":
        return cls(g, (0,) * (2 * g))

    @classmethod
    def a(cls, g: int, i: int) -> "HomologyClass":
        return cls._basis(g, 2 * (i - 1), i)

    @classmethod
    def b(cls, g: int, i: int) -> "HomologyClass":
        return cls._basis(g, 2 * (i - 1) + 1, i)

    @classmethod
    def _basis(cls, g, k, i):
        if not 1 <= i <= g:
            raise GenusMismatch(f"class index {i} out of range for genus {g}")
        c = [0] * (2 * g)
        c[k] = 1
        return cls(g, tuple(c))

    @classmethod
    def from_expr(cls, g: int, expr: ClassExpr | str) -> "HomologyClass":
        if isinstance(expr, str):
            expr = parse_class(expr)
        c = [0] * (2 * g)
        for i, kind, coef in expr.terms:
            if i > g:
                raise GenusMismatch(f"class index {i} out of range for genus {g}")
            c[2 * (i - 1) + (kind == "b")] += coef
        return cls(g, tuple(c))

    def _check(self, other):
        if self.g != other.g:
            raise GenusMismatch(f"genus {self.g} vs {other.g}")

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        self._check(other)
        return HomologyClass(self.g, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(self.g, tuple(-x for x in self.coeffs))

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        return self + (-other)

    def __rmul__(self, k: int) -> "HomologyClass":
        return HomologyClass(self.g, tuple(k * x for x in self.coeffs))

    def pair(self, other: "HomologyClass") -> int:
        """Algebraic intersection <self, other>."""
        self._check(other)
        x, y = self.coeffs, other.coeffs
        return sum(x[2 * i] * y[2 * i + 1] - x[2 * i + 1] * y[2 * i] for i in range(self.g))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def vector(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=object)

    def __str__(self) -> str:
        items = [(k, i + 1, c) for n, c in enumerate(self.coeffs) if c for i, k in [(n // 2, "ab"[n % 2])]]
        return str(ClassExpr.of(items))


# ---------------------------------------------------------------------------
# matrices


class SymplecticMatrix:
    """Immutable 2g x 2g integer matrix; ``check=True`` verifies M^T J M = J."""

    __slots__ = ("g", "entries")

    def __init__(self, g: int, entries, check: bool = False):
        a = np.array(entries, dtype=object)
        if a.shape != (2 * g, 2 * g):
            raise GenusMismatch(f"expected a {2 * g}x{2 * g} matrix, got shape {a.shape}")
        a = np.vectorize(int, otypes=[object])(a) if a.size else a
        a.setflags(write=False)
        self.g = g
        self.entries = a
        if check and not self.is_symplectic():
            raise NotSymplectic("matrix does not preserve the symplectic form")

    @classmethod
    def _raw(cls, g: int, a: np.ndarray) -> "SymplecticMatrix":
        m = cls.__new__(cls)
        a.setflags(write=False)
        m.g, m.entries = g, a
        return m

    @classmethod
    def identity(cls, g: int) -> "SymplecticMatrix":
        return cls._raw(g, _eye(g))

    def is_symplectic(self) -> bool:
        J = form_matrix(self.g)
        return bool(np.array_equal(self.entries.T.dot(J).dot(self.entries), J))

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        if self.g != other.g:
            raise GenusMismatch(f"genus {self.g} vs {other.g}")
        return SymplecticMatrix._raw(self.g, self.entries.dot(other.entries))

    def inverse(self) -> "SymplecticMatrix":
        """M^-1 = -J M^T J, valid because M is symplectic."""
        J = form_matrix(self.g)
        return SymplecticMatrix._raw(self.g, -J.dot(self.entries.T).dot(J))

    def __pow__(self, n: int) -> "SymplecticMatrix":
        base = self if n >= 0 else self.inverse()
        out = SymplecticMatrix.identity(self.g)
        for _ in range(abs(n)):
            out = out @ base
        return out

    def apply(self, c: HomologyClass) -> HomologyClass:
        if c.g != self.g:
            raise GenusMismatch(f"genus {self.g} vs {c.g}")
        return HomologyClass(self.g, tuple(int(x) for x in self.entries.dot(c.vector())))

    def __eq__(self, other) -> bool:
        return isinstance(other, SymplecticMatrix) and self.g == other.g and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.g, tuple(self.entries.ravel())))

    def is_identity(self) -> bool:
        return np.array_equal(self.entries, _eye(self.g))

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self.entries]

    def det(self) -> int:
        return bareiss_det(self.tolist())

    def to_text(self) -> str:
        rows = [" ".join(str(x) for x in row) for row in self.tolist()]
        return "\n".join([f"g={self.g}", *rows]) + "\n"

    def __repr__(self) -> str:
        return f"SymplecticMatrix(g={self.g}, {self.tolist()})"


def _eye(g: int) -> np.ndarray:
    a = np.zeros((2 * g, 2 * g), dtype=object)
    for k in range(2 * g):
        a[k, k] = 1
    return a


def bareiss_det(rows: list[list[int]]) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1] if n else 1


def read_matrix(text: str) -> SymplecticMatrix:
    """Matrix file: ``g=<G>`` then 2g rows of 2g integers."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("g="):
        raise ValueError("matrix file must start with 'g=<G>'")
    g = int(lines[0][2:])
    rows = [[int(x) for x in ln.split()] for ln in lines[1:]]
    if len(rows) != 2 * g or any(len(r) != 2 * g for r in rows):
        raise ValueError(f"expected {2 * g} rows of {2 * g} integers")
    return SymplecticMatrix(g, rows)


# ---------------------------------------------------------------------------
# generators


def transvection(c: HomologyClass, power: int = 1) -> SymplecticMatrix:
    """x -> x + power * <x, c> c."""
    g = c.g
    v = c.vector()
    Jc = form_matrix(g).dot(v)
    return SymplecticMatrix._raw(g, _eye(g) + power * np.outer(v, Jc))


@dataclass(frozen=True)
class EyeglassSpec:
    lens_a: HomologyClass
    lens_b: HomologyClass
    direction: int = 1

    def __post_init__(self):
        if self.lens_a.g != self.lens_b.g:
            raise GenusMismatch("lens classes have different genus")
        if self.direction not in (1, -1):
            raise ValueError("direction must be +1 or -1")
        if self.lens_a.pair(self.lens_b) != 0:
            raise ValueError(f"lenses {self.lens_a} and {self.lens_b} are not orthogonal")

    @property
    def g(self) -> int:
        return self.lens_a.g


def eyeglass_map(spec: EyeglassSpec) -> SymplecticMatrix:
    """T_{a+b}^d T_a^{-d} T_b^{-d}; with <a,b> = 0 this is x -> x + d(<x,b>a + <x,a>b)."""
    a, b, d = spec.lens_a, spec.lens_b, spec.direction
    return transvection(a + b, d) @ transvection(a, -d) @ transvection(b, -d)


def eyeglass(lens_a: HomologyClass, lens_b: HomologyClass, direction: int = 1) -> SymplecticMatrix:
    return eyeglass_map(EyeglassSpec(lens_a, lens_b, direction))


def flip_matrix(g: int, i: int) -> SymplecticMatrix:
    if not 1 <= i <= g:
        raise GenusMismatch(f"flip index {i} out of range for genus {g}")
    a = _eye(g)
    a[2 * i - 2, 2 * i - 2] = a[2 * i - 1, 2 * i - 1] = -1
    return SymplecticMatrix._raw(g, a)


def block_permutation(g: int, perm) -> SymplecticMatrix:
    """Send block s to block perm[s] (0-based) with +1 signs."""
    a = np.zeros((2 * g, 2 * g), dtype=object)
    for s, t in enumerate(perm):
        a[2 * t, 2 * s] = a[2 * t + 1, 2 * s + 1] = 1
    return SymplecticMatrix._raw(g, a)


def exchange_matrix(g: int, i: int, j: int) -> SymplecticMatrix:
    if i == j:
        raise ValueError("exchange needs two distinct blocks")
    if not (1 <= i <= g and 1 <= j <= g):
        raise GenusMismatch(f"exchange ({i},{j}) out of range for genus {g}")
    perm = list(range(g))
    perm[i - 1], perm[j - 1] = j - 1, i - 1
    return block_permutation(g, perm)


def rotation_matrix(g: int) -> SymplecticMatrix:
    if g < 1:
        raise ValueError("genus must be >= 1")
    return block_permutation(g, [(s + 1) % g for s in range(g)])


def standard_eyeglass(g: int) -> SymplecticMatrix:
    return eyeglass(HomologyClass.a(g, 1), HomologyClass.b(g, 2))


@lru_cache(maxsize=4096)
def _letter_matrix(g: int, symbol, exp: int) -> SymplecticMatrix:
    if isinstance(symbol, Flip):
        m = flip_matrix(g, symbol.slot)
    elif isinstance(symbol, Exchange):
        m = exchange_matrix(g, symbol.i, symbol.i + 1)
    elif isinstance(symbol, Rotation):
        m = rotation_matrix(g)
    elif isinstance(symbol, Eyeglass):
        la = HomologyClass.from_expr(g, symbol.lens_a)
        lb = HomologyClass.from_expr(g, symbol.lens_b)
        m = eyeglass(la, lb)
    else:
        raise SymbolError(f"no homology action for {symbol!r}")
    return m if exp > 0 else m.inverse()


def eval_sp(g: int, w: Word | str) -> SymplecticMatrix:
    if isinstance(w, str):
        w = parse(w)
    check_genus(w, g)
    out = _eye(g)
    for letter in w.letters:
        out = out.dot(_letter_matrix(g, letter.symbol, letter.exp).entries)
    return SymplecticMatrix._raw(g, out)


def powell_generators(g: int) -> list[SymplecticMatrix]:
    """D_theta, D_omega and the standard exchanges phi_1 .. phi_{g-1}."""
    return [standard_eyeglass(g), flip_matrix(g, 1)] + [exchange_matrix(g, i, i + 1) for i in range(1, g)]


def stabilize(m: SymplecticMatrix) -> SymplecticMatrix:
    """Extend by the identity on a new block (a_{g+1}, b_{g+1})."""
    if not m.is_symplectic():
        raise NotSymplectic("stabilize needs a symplectic matrix")
    a = _eye(m.g + 1)
    a[: 2 * m.g, : 2 * m.g] = m.entries
    return SymplecticMatrix._raw(m.g + 1, a)


# ---------------------------------------------------------------------------
# checks


@dataclass
class CheckReport:
    name: str
    passed: bool
    witness: dict | None = None
    details: dict = field(default_factory=dict)


def eyeglass_composition_check(lens_a: HomologyClass, lens_b: HomologyClass, mu: HomologyClass) -> CheckReport:
    """tau(l_a, l_b) tau(mu, l_b) == tau(l_a + mu, l_b), i.e. tau = tau_+ tau'^-1."""
    for x, y, what in ((lens_a, lens_b, "l_a,l_b"), (mu, lens_b, "mu,l_b"), (lens_a, mu, "l_a,mu")):
        if x.pair(y) != 0:
            raise ValueError(f"<{what}> = {x.pair(y)}, classes must be pairwise orthogonal")
    tau = eyeglass(lens_a, lens_b)
    tau_prime = eyeglass(mu, lens_b)
    tau_plus = eyeglass(lens_a + mu, lens_b)
    ok = tau @ tau_prime == tau_plus and tau == tau_plus @ tau_prime.inverse()
    witness = None if ok else {"lhs": (tau @ tau_prime).tolist(), "rhs": tau_plus.tolist()}
    return CheckReport("eyeglass-composition", ok, witness)


def conjugation_covariance_check(spec: EyeglassSpec, m: SymplecticMatrix) -> CheckReport:
    """M tau(l_a, l_b) M^-1 == tau(M l_a, M l_b)."""
    if m.g != spec.g:
        raise GenusMismatch(f"genus {m.g} vs {spec.g}")
    lhs = m @ eyeglass_map(spec) @ m.inverse()
    rhs = eyeglass_map(EyeglassSpec(m.apply(spec.lens_a), m.apply(spec.lens_b), spec.direction))
    ok = lhs == rhs
    return CheckReport("conjugation-covariance", ok, None if ok else {"lhs": lhs.tolist(), "rhs": rhs.tolist()})


PHI_EPSILON = ((1, 2), (0, 1))
PHI_ALPHA = ((1, 0), (-1, 1))


def _mul2(x, y):
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def _apply2(x, v):
    return tuple(sum(x[i][k] * v[k] for k in range(2)) for i in range(2))


def local_sl2_check() -> CheckReport:
    """Slope bookkeeping in the 2x2 local model of the eyeglass-then-flip move."""
    prod = _mul2(PHI_ALPHA, PHI_EPSILON)
    checks = {
        "product": prod == ((1, 2), (-1, -1)),
        "image_01": _apply2(prod, (0, 1)) == (2, -1),
        "image_2m1_up_to_sign": _apply2(prod, (2, -1)) in ((0, 1), (0, -1)),
        "fixes_10": _apply2(PHI_EPSILON, (1, 0)) == (1, 0),
        "det_1": all(m[0][0] * m[1][1] - m[0][1] * m[1][0] == 1 for m in (PHI_EPSILON, PHI_ALPHA, prod)),
    }
    # order in PSL(2, Z): smallest n with prod^n = +-I
    x, n = prod, 1
    while x not in (((1, 0), (0, 1)), ((-1, 0), (0, -1))) and n <= 12:
        x, n = _mul2(x, prod), n + 1
    checks["psl_order_divides_6"] = 6 % n == 0
    ok = all(checks.values())
    return CheckReport(
        "sl2",
        ok,
        None if ok else {k: v for k, v in checks.items() if not v},
        {"product": [list(r) for r in prod], "image_2m1": list(_apply2(prod, (2, -1))), "psl_order": n},
    )
