"""Exact arithmetic in the free product Z_N * Z_M generated by ``a`` and ``t``.

Elements are stored in syllable normal form: a tuple of ``(generator, exponent)``
pairs with alternating generators.  For a generator of finite order ``k`` the
exponent is kept in ``[1, k-1]``; for infinite order any nonzero integer.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

A = "a"
T = "t"
INF = math.inf

Order = Union[int, float]


def parse_order(value) -> Order:
    """Accept an int, ``"inf"`` or ``math.inf``."""
    if isinstance(value, str):
        if value.strip().lower() in ("inf", "infinity", "oo"):
            return INF
        value = int(value)
    if value == INF:
        return INF
    if int(value) != value:
        raise ValueError(f"order must be an integer or 'inf', got {value!r}")
    return int(value)


def order_str(order: Order) -> Union[int, str]:
    return "inf" if order == INF else int(order)


@dataclass(frozen=True)
class GroupCtx:
    order_a: Order = INF
    order_t: Order = INF

    def __post_init__(self):
        object.__setattr__(self, "order_a", parse_order(self.order_a))
        object.__setattr__(self, "order_t", parse_order(self.order_t))
        if self.order_a < 2:
            raise ValueError(f"ord(a) must be >= 2, got {self.order_a}")
        if self.order_t < self.order_a:
            raise ValueError(f"ord(t) = {self.order_t} must be >= ord(a) = {self.order_a}")

    def order(self, gen: str) -> Order:
        return self.order_a if gen == A else self.order_t

    def normalize(self, gen: str, exp: int) -> int:
        k = self.order(gen)
        return exp if k == INF else exp % k

    def to_json(self) -> dict:
        return {"N": order_str(self.order_a), "M": order_str(self.order_t)}

    @classmethod
    def from_json(cls, data: dict) -> "GroupCtx":
        return cls(parse_order(data["N"]), parse_order(data["M"]))

    def __str__(self):
        return f"({order_str(self.order_a)},{order_str(self.order_t)})"


FREE = GroupCtx(INF, INF)


def reduce(raw: Iterable[tuple[str, int]], ctx: GroupCtx) -> "Word":
    """Normal form of a product of syllables."""
    stack: list[list] = []
    for gen, exp in raw:
        if gen not in (A, T):
            raise ValueError(f"unknown generator {gen!r}")
        exp = ctx.normalize(gen, int(exp))
        if exp == 0:
            continue
        if stack and stack[-1][0] == gen:
            merged = ctx.normalize(gen, stack[-1][1] + exp)
            if merged == 0:
                stack.pop()
            else:
                stack[-1][1] = merged
        else:
            stack.append([gen, exp])
    return Word(tuple((g, e) for g, e in stack), ctx)


@dataclass(frozen=True)
class Word:
    syllables: tuple[tuple[str, int], ...]
    ctx: GroupCtx = FREE

    @classmethod
    def identity(cls, ctx: GroupCtx = FREE) -> "Word":
        return cls((), ctx)

    @classmethod
    def gen(cls, name: str, exp: int = 1, ctx: GroupCtx = FREE) -> "Word":
        return reduce([(name, exp)], ctx)

    def __len__(self):
        return len(self.syllables)

    def __bool__(self):
        # the identity is falsy, so "if w:" reads as "if w != 1"
        return bool(self.syllables)

    def is_identity(self) -> bool:
        return not self.syllables

    def _check(self, other: "Word"):
        if not isinstance(other, Word):
            raise TypeError(f"expected Word, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __mul__(self, other: "Word") -> "Word":
        self._check(other)
        return reduce(self.syllables + other.syllables, self.ctx)

    def __invert__(self) -> "Word":
        return reduce([(g, -e) for g, e in reversed(self.syllables)], self.ctx)

    def inverse(self) -> "Word":
        return ~self

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return (~self) ** (-n)
        result = Word.identity(self.ctx)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def with_ctx(self, ctx: GroupCtx) -> "Word":
        """Image of this word under the natural map to another context."""
        return reduce(self.syllables, ctx)

    def exponent_sum(self, gen: str) -> int:
        return sum(e for g, e in self.syllables if g == gen)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Word({render(self)!r}, ctx={self.ctx})"


def multiply(u: Word, v: Word) -> Word:
    return u * v


def invert(u: Word) -> Word:
    return ~u


def power(u: Word, n: int) -> Word:
    return u ** n


def conjugate(u: Word, c: Word) -> Word:
    """c^-1 u c."""
    return ~c * u * c


def commutator(x: Word, y: Word) -> Word:
    """[x, y] = x^-1 y^-1 x y."""
    return ~x * ~y * x * y


def product(words: Iterable[Word], ctx: GroupCtx) -> Word:
    result = Word.identity(ctx)
    for w in words:
        result = result * w
    return result


def cyclic_reduce(u: Word) -> tuple[Word, Word]:
    """Return ``(core, c)`` with ``u == c^-1 core c`` and ``core`` cyclically reduced."""
    ctx = u.ctx
    core = u
    conj = Word.identity(ctx)
    while len(core) >= 2 and core.syllables[0][0] == core.syllables[-1][0]:
        last = Word((core.syllables[-1],), ctx)
        core = last * core * ~last
        conj = last * conj
    return core, conj


def rotations(u: Word) -> list[tuple]:
    syl = u.syllables
    return [syl[i:] + syl[:i] for i in range(max(len(syl), 1))]


def are_conjugate(u: Word, v: Word) -> bool:
    u._check(v)
    cu, _ = cyclic_reduce(u)
    cv, _ = cyclic_reduce(v)
    if len(cu) != len(cv):
        return False
    if len(cu) <= 1:
        # factors are cyclic, so conjugation inside a factor is trivial
        return cu == cv
    return cv.syllables in rotations(cu)


def conjugator_between(u: Word, v: Word) -> Word | None:
    """Some ``c`` with ``c^-1 u c == v``, or None if not conjugate."""
    u._check(v)
    cu, pu = cyclic_reduce(u)
    cv, pv = cyclic_reduce(v)
    if len(cu) != len(cv):
        return None
    if len(cu) <= 1:
        return ~pu * pv if cu == cv else None
    syl = cu.syllables
    for i in range(len(syl)):
        if syl[i:] + syl[:i] == cv.syllables:
            # rotating by i syllables is conjugation by the prefix
            prefix = Word(syl[:i], u.ctx)
            c = ~pu * prefix * pv
            if conjugate(u, c) == v:
                return c
    return None


# ---------------------------------------------------------------- parsing

class WordSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


_LETTERS = {"a": A, "t": T, "b": T}


class _Parser:
    def __init__(self, text: str, ctx: GroupCtx):
        self.text = text
        self.ctx = ctx
        self.pos = 0

    def error(self, message):
        raise WordSyntaxError(message, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t\n*·":
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start:self.pos]
        if digits in ("", "+", "-"):
            self.pos = start
            self.error("expected integer exponent")
        return int(digits)

    def expr(self, stop: str) -> Word:
        result = Word.identity(self.ctx)
        while True:
            ch = self.peek()
            if ch == "" or ch in stop:
                return result
            result = result * self.factor()

    def factor(self) -> Word:
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            base = base ** self.integer()
        return base

    def atom(self) -> Word:
        ch = self.peek()
        if ch in _LETTERS:
            self.pos += 1
            return Word.gen(_LETTERS[ch], 1, self.ctx)
        if ch == "1":
            self.pos += 1
            return Word.identity(self.ctx)
        if ch == "(":
            self.pos += 1
            inner = self.expr(")")
            self.expect(")")
            return inner
        if ch == "[":
            self.pos += 1
            x = self.expr(",]")
            self.expect(",")
            y = self.expr("]")
            self.expect("]")
            return commutator(x, y)
        self.error(f"unexpected character {ch!r}" if ch else "unexpected end of input")


def parse(text: str, ctx: GroupCtx = FREE) -> Word:
    """Parse ``a``/``t`` words with ``^k``, ``(..)^k`` and ``[x,y]`` sugar.

    ``b`` is accepted as a synonym for ``t`` so identities can be written
    with the letters the literature uses.
    """
    p = _Parser(text, ctx)
    w = p.expr("")
    if p.peek():
        p.error("trailing input")
    return w


def render(u: Word) -> str:
    if not u.syllables:
        return "1"
    parts = []
    for g, e in u.syllables:
        parts.append(g if e == 1 else f"{g}^{e}")
    return " ".join(parts)


def render_symmetric(u: Word) -> str:
    """Render with exponents in the symmetric range, e.g. ``a^-1`` rather than ``a^2`` for N=3."""
    if not u.syllables:
        return "1"
    parts = []
    for g, e in u.syllables:
        k = u.ctx.order(g)
        if k != INF and e > k // 2:
            e -= k
        parts.append(g if e == 1 else f"{g}^{e}")
    return " ".join(parts)


def at_power(n: int, ctx: GroupCtx = FREE) -> Word:
    """[a, t]^n."""
    return commutator(Word.gen(A, 1, ctx), Word.gen(T, 1, ctx)) ** n


def words_equal(u: Word, v: Word) -> bool:
    return u.ctx == v.ctx and u.syllables == v.syllables


def from_letters(letters: Sequence[tuple[str, int]], ctx: GroupCtx) -> Word:
    return reduce(letters, ctx)
