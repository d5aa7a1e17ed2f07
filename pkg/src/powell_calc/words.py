"""Generator alphabet and free word calculus.

A word is a tuple of ``Letter(symbol, exp)`` with ``exp`` in {+1, -1}.
Words are composed right to left when evaluated: the rightmost letter acts
first, so ``eval(u + v) == eval(u) @ eval(v)`` in every representation.

Text grammar (whitespace separated tokens)::

    w        standard flip on bubble 1        w2     flip on bubble 2
    x3       exchange of bubbles 3 and 4      e      rotation of all bubbles
    t        standard eyeglass t(a1,b2)       t(a1+a3,-b2)   general eyeglass
    re r0 r1 r2   pi-rotations of K(2,3)
    TOKEN^-1 inverse of the preceding token
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union


class WordSyntaxError(ValueError):
    """Raised by :func:`parse`; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class SymbolError(ValueError):
    """A symbol is invalid for the representation or genus it is evaluated in."""


# ---------------------------------------------------------------------------
# class expressions (lens labels of eyeglasses)


@dataclass(frozen=True)
class ClassExpr:
    """Integer combination of basis classes a_i, b_i, genus-free.

    ``terms`` is a sorted tuple of ``(index, kind, coef)`` with kind 'a' or 'b'
    and nonzero coef; construct through :meth:`of` to get the normal form.
    """

    terms: tuple[tuple[int, str, int], ...] = ()

    @classmethod
    def of(cls, items: Iterable[tuple[str, int, int]]) -> "ClassExpr":
        acc: dict[tuple[int, str], int] = {}
        for kind, index, coef in items:
            if kind not in ("a", "b"):
                raise ValueError(f"class kind must be 'a' or 'b', got {kind!r}")
            if index < 1:
                raise ValueError(f"class index must be >= 1, got {index}")
            acc[(index, kind)] = acc.get((index, kind), 0) + coef
        return cls(tuple((i, k, c) for (i, k), c in sorted(acc.items()) if c))

    @classmethod
    def a(cls, i: int) -> "ClassExpr":
        return cls.of([("a", i, 1)])

    @classmethod
    def b(cls, i: int) -> "ClassExpr":
        return cls.of([("b", i, 1)])

    def __add__(self, other: "ClassExpr") -> "ClassExpr":
        return ClassExpr.of([(k, i, c) for i, k, c in self.terms + other.terms])

    def __neg__(self) -> "ClassExpr":
        return ClassExpr(tuple((i, k, -c) for i, k, c in self.terms))

    @property
    def max_index(self) -> int:
        return max((i for i, _, _ in self.terms), default=0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for n, (i, k, c) in enumerate(self.terms):
            sign = "-" if c < 0 else ("+" if n else "")
            mag = "" if abs(c) == 1 else str(abs(c))
            out.append(f"{sign}{mag}{k}{i}")
        return "".join(out)


# ---------------------------------------------------------------------------
# generator symbols


@dataclass(frozen=True)
class Flip:
    """Standard flip on bubble ``slot`` (slot 1 is Powell's D_omega)."""

    slot: int = 1


@dataclass(frozen=True)
class Exchange:
    """Standard exchange of bubbles i and i+1."""

    i: int


@dataclass(frozen=True)
class Rotation:
    """Rotation moving bubble i to bubble i+1 (mod g)."""


@dataclass(frozen=True)
class Eyeglass:
    lens_a: ClassExpr
    lens_b: ClassExpr


@dataclass(frozen=True)
class DihRho:
    """pi-rotation of K(2,3); axis is one of 'e', '0', '1', '2'."""

    axis: str

    def __post_init__(self):
        if self.axis not in ("e", "0", "1", "2"):
            raise ValueError(f"unknown rho axis {self.axis!r}")


Symbol = Union[Flip, Exchange, Rotation, Eyeglass, DihRho]

STANDARD_EYEGLASS = Eyeglass(ClassExpr.a(1), ClassExpr.b(2))


@dataclass(frozen=True)
class Letter:
    symbol: Symbol
    exp: int = 1

    def __post_init__(self):
        if self.exp not in (1, -1):
            raise ValueError("exponent must be +1 or -1; expand powers")

    def inverse(self) -> "Letter":
        return Letter(self.symbol, -self.exp)


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    @classmethod
    def of(cls, *items) -> "Word":
        """``Word.of(Flip(), (Exchange(1), -1))`` - bare symbols get exponent +1."""
        out = []
        for it in items:
            if isinstance(it, Letter):
                out.append(it)
            elif isinstance(it, tuple):
                out.append(Letter(*it))
            else:
                out.append(Letter(it, 1))
        return cls(tuple(out))

    def __add__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return invert(self) ** (-n)
        return Word(self.letters * n)

    def __str__(self) -> str:
        return format_word(self)

    def is_reduced(self) -> bool:
        return all(
            not (x.symbol == y.symbol and x.exp == -y.exp)
            for x, y in zip(self.letters, self.letters[1:])
        )

    @property
    def has_dih(self) -> bool:
        return any(isinstance(l.symbol, DihRho) for l in self.letters)


IDENTITY = Word()


def reduce(w: Word) -> Word:
    stack: list[Letter] = []
    for letter in w.letters:
        if stack and stack[-1].symbol == letter.symbol and stack[-1].exp == -letter.exp:
            stack.pop()
        else:
            stack.append(letter)
    return Word(tuple(stack))


def invert(w: Word) -> Word:
    return Word(tuple(l.inverse() for l in reversed(w.letters)))


def conjugate(w: Word, by: Word) -> Word:
    """Reduced ``by * w * by^-1``."""
    return reduce(by + w + invert(by))


def check_genus(w: Word, g: int) -> None:
    """Raise SymbolError unless every symbol of ``w`` is valid at genus g."""
    if g < 1:
        raise SymbolError(f"genus must be >= 1, got {g}")
    for letter in w.letters:
        s = letter.symbol
        if isinstance(s, DihRho):
            raise SymbolError(f"{format_letter(letter)}: pi-rotations only evaluate in the dihedral representation")
        if isinstance(s, Flip) and not 1 <= s.slot <= g:
            raise SymbolError(f"flip slot {s.slot} out of range for genus {g}")
        if isinstance(s, Exchange) and not 1 <= s.i <= g - 1:
            raise SymbolError(f"exchange index {s.i} out of range for genus {g}")
        if isinstance(s, Eyeglass):
            m = max(s.lens_a.max_index, s.lens_b.max_index)
            if m > g:
                raise SymbolError(f"eyeglass lens index {m} out of range for genus {g}")


# ---------------------------------------------------------------------------
# text format

_TOKEN = re.compile(r"\S+")
_CLASS_TERM = re.compile(r"([+-]?)(\d*)([ab])(\d+)")


def parse_class(text: str, offset: int = 0) -> ClassExpr:
    text = text.strip()
    if text == "0":
        return ClassExpr()
    pos, items = 0, []
    while pos < len(text):
        m = _CLASS_TERM.match(text, pos)
        if not m or (pos and not m.group(1)):
            raise WordSyntaxError(f"bad class expression {text!r}", offset + pos)
        sign = -1 if m.group(1) == "-" else 1
        coef = int(m.group(2)) if m.group(2) else 1
        index = int(m.group(4))
        if index < 1:
            raise WordSyntaxError(f"malformed index {index} in class expression", offset + pos)
        items.append((m.group(3), index, sign * coef))
        pos = m.end()
    if not items:
        raise WordSyntaxError("empty class expression", offset)
    return ClassExpr.of(items)


def _index(text: str, offset: int) -> int:
    if not text.isdigit():
        raise WordSyntaxError(f"malformed index {text!r}", offset)
    i = int(text)
    if i < 1:
        raise WordSyntaxError(f"malformed index {i}, must be >= 1", offset)
    return i


def _parse_symbol(tok: str, offset: int) -> Symbol:
    if tok == "e":
        return Rotation()
    if tok == "t":
        return STANDARD_EYEGLASS
    if tok in ("re", "r0", "r1", "r2"):
        return DihRho(tok[1])
    if tok[0] == "w":
        return Flip(_index(tok[1:], offset + 1)) if len(tok) > 1 else Flip()
    if tok[0] == "x":
        return Exchange(_index(tok[1:], offset + 1))
    if tok.startswith("t("):
        if not tok.endswith(")"):
            raise WordSyntaxError("unterminated eyeglass", offset + len(tok))
        body = tok[2:-1]
        parts = body.split(",")
        if len(parts) != 2:
            raise WordSyntaxError("eyeglass takes exactly two class expressions", offset + 2)
        a = parse_class(parts[0], offset + 2)
        b = parse_class(parts[1], offset + 3 + len(parts[0]))
        return Eyeglass(a, b)
    raise WordSyntaxError(f"unknown token {tok!r}", offset)


def parse(text: str) -> Word:
    letters = []
    for m in _TOKEN.finditer(text):
        tok, off = m.group(), m.start()
        exp = 1
        if tok.endswith("^-1"):
            tok, exp = tok[:-3], -1
            if not tok:
                raise WordSyntaxError("'^-1' must follow a token", off)
        elif "^" in tok:
            raise WordSyntaxError(f"only '^-1' is supported, got {tok!r}", off + tok.index("^"))
        letters.append(Letter(_parse_symbol(tok, off), exp))
    return Word(tuple(letters))


def format_symbol(s: Symbol) -> str:
    if isinstance(s, Flip):
        return "w" if s.slot == 1 else f"w{s.slot}"
    if isinstance(s, Exchange):
        return f"x{s.i}"
    if isinstance(s, Rotation):
        return "e"
    if isinstance(s, Eyeglass):
        return "t" if s == STANDARD_EYEGLASS else f"t({s.lens_a},{s.lens_b})"
    if isinstance(s, DihRho):
        return f"r{s.axis}"
    raise TypeError(s)


def format_letter(l: Letter) -> str:
    return format_symbol(l.symbol) + ("^-1" if l.exp < 0 else "")


def format_word(w: Word) -> str:
    return " ".join(format_letter(l) for l in w.letters)


def chain_word(g: int) -> Word:
    """x1 x2 ... x{g-1}."""
    return Word(tuple(Letter(Exchange(i)) for i in range(1, g)))
