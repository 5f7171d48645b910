"""Group spec strings and the construction descriptors they parse to.

Grammar (whitespace between tokens is ignored)::

    spec    := factor ('x' factor)*
    factor  := 'C' INT | 'D' INT | 'S' INT | 'A' INT | 'Q8'
             | 'wreath(' spec ',' spec ')'
             | 'fnil(p=' INT ',k=' INT ')' | 'fnil4(k=' INT ')'
             | 'gl(p=' INT ',k=' INT ')' | 'cayley(' PATH ')'

``str(descriptor)`` is canonical and re-parses to an equal descriptor.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import sympy

from .errors import SpecParseError


class Descriptor:
    """Base class; subclasses are frozen dataclasses."""

    black_box = False

    @property
    def order(self) -> int | None:
        raise NotImplementedError


@dataclass(frozen=True)
class Cyclic(Descriptor):
    n: int

    def __str__(self):
        return f"C{self.n}"

    @property
    def order(self):
        return self.n


@dataclass(frozen=True)
class Dihedral(Descriptor):
    """Dihedral group of the given order (D8 has order 8)."""

    n: int

    def __str__(self):
        return f"D{self.n}"

    @property
    def order(self):
        return self.n


@dataclass(frozen=True)
class Symmetric(Descriptor):
    n: int

    def __str__(self):
        return f"S{self.n}"

    @property
    def order(self):
        return math.factorial(self.n)


@dataclass(frozen=True)
class Alternating(Descriptor):
    n: int

    def __str__(self):
        return f"A{self.n}"

    @property
    def order(self):
        return max(1, math.factorial(self.n) // 2)


@dataclass(frozen=True)
class Quaternion(Descriptor):
    def __str__(self):
        return "Q8"

    @property
    def order(self):
        return 8


@dataclass(frozen=True)
class Product(Descriptor):
    factors: tuple[Descriptor, ...]

    def __str__(self):
        return "x".join(str(f) for f in self.factors)

    @property
    def order(self):
        orders = [f.order for f in self.factors]
        return None if None in orders else math.prod(orders)


@dataclass(frozen=True)
class Wreath(Descriptor):
    """Standard (regular) wreath product base wr top."""

    base: Descriptor
    top: Descriptor

    def __str__(self):
        return f"wreath({self.base},{self.top})"

    @property
    def order(self):
        a, b = self.base.order, self.top.order
        if a is None or b is None:
            return None
        return a ** b * b


@dataclass(frozen=True)
class FreeNil(Descriptor):
    """Free nilpotent class-2 group of exponent p (odd prime) and rank k."""

    p: int
    k: int

    def __str__(self):
        return f"fnil(p={self.p},k={self.k})"

    @property
    def order(self):
        return self.p ** (self.k + self.k * (self.k - 1) // 2)


@dataclass(frozen=True)
class FreeNil4(Descriptor):
    """Free nilpotent class-2 group of exponent 4 and rank k."""

    k: int

    def __str__(self):
        return f"fnil4(k={self.k})"

    @property
    def order(self):
        return 4 ** self.k * 2 ** (self.k * (self.k - 1) // 2)


@dataclass(frozen=True)
class GuptaLevin(Descriptor):
    """Black-box matrix group over Z_p[base]; p = 2 uses the exponent-4 base."""

    p: int
    k: int
    black_box = True

    def __str__(self):
        return f"gl(p={self.p},k={self.k})"

    @property
    def base(self) -> Descriptor:
        return FreeNil4(self.k) if self.p == 2 else FreeNil(self.p, self.k)

    @property
    def order(self):
        return None


@dataclass(frozen=True)
class Cayley(Descriptor):
    path: str

    def __str__(self):
        return f"cayley({self.path})"

    @property
    def order(self):
        return None


_TOKEN = re.compile(
    r"\s*(?:(?P<kw>wreath|fnil4|fnil|gl|cayley)\b|(?P<atom>Q8|[CDSA]\d+)|(?P<int>\d+)"
    r"|(?P<name>[pk])|(?P<punct>[(),=x]))"
)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message, pos=None):
        pos = self.pos if pos is None else pos
        rest = self.text[pos:].strip()
        token = rest.split()[0] if rest else "<end>"
        raise SpecParseError(message, position=pos, token=token[:20])

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        m = _TOKEN.match(self.text, self.pos)
        if m is None:
            return None
        kind = m.lastgroup
        return kind, m.group(kind), m

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok is None:
            self.skip_ws()
            self.error("unexpected character" if self.pos < len(self.text) else "unexpected end")
        k, v, m = tok
        if (kind is not None and k != kind) or (value is not None and v != value):
            self.skip_ws()
            want = value or kind
            self.error(f"expected {want!r}")
        self.pos = m.end()
        return k, v

    def at(self, value) -> bool:
        tok = self.peek()
        return tok is not None and tok[1] == value

    def parse(self) -> Descriptor:
        desc = self.spec()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")
        if isinstance(desc, Product) and any(isinstance(f, GuptaLevin) for f in desc.factors):
            raise SpecParseError("gl(...) is black-box and cannot be a direct factor")
        return desc

    def spec(self) -> Descriptor:
        factors = [self.factor()]
        while self.at("x"):
            self.take("punct", "x")
            factors.append(self.factor())
        if len(factors) == 1:
            return factors[0]
        return Product(tuple(factors))

    def factor(self) -> Descriptor:
        self.skip_ws()
        start = self.pos
        tok = self.peek()
        if tok is None:
            self.error("expected a group" if self.pos < len(self.text) else "unexpected end")
        kind, value, _ = tok
        if kind == "atom":
            self.take()
            if value == "Q8":
                return Quaternion()
            n = int(value[1:])
            letter = value[0]
            if letter == "C":
                if n < 1:
                    self.error("cyclic order must be positive", start)
                return Cyclic(n)
            if letter == "D":
                if n < 2 or n % 2:
                    self.error("dihedral order must be even and at least 2", start)
                return Dihedral(n)
            if n < 1:
                self.error("degree must be positive", start)
            return Symmetric(n) if letter == "S" else Alternating(n)
        if kind != "kw":
            self.error("expected a group")
        self.take()
        if value == "cayley":
            return self.cayley(start)
        self.take("punct", "(")
        if value == "wreath":
            base = self.spec()
            self.take("punct", ",")
            top = self.spec()
            self.take("punct", ")")
            if isinstance(base, GuptaLevin) or isinstance(top, GuptaLevin):
                self.error("gl(...) cannot be used inside a wreath product", start)
            return Wreath(base, top)
        args = self.kwargs()
        if value == "fnil4":
            self.need(args, {"k"}, start)
            if args["k"] < 2:
                self.error("rank k must be at least 2", start)
            return FreeNil4(args["k"])
        self.need(args, {"p", "k"}, start)
        p, k = args["p"], args["k"]
        if k < 2:
            self.error("rank k must be at least 2", start)
        if value == "fnil":
            if p < 3 or not sympy.isprime(p):
                self.error("fnil needs an odd prime p (use fnil4 for exponent 4)", start)
            return FreeNil(p, k)
        if not sympy.isprime(p):
            self.error("gl needs a prime p", start)
        return GuptaLevin(p, k)

    def kwargs(self) -> dict[str, int]:
        args = {}
        while True:
            _, key = self.take("name")
            self.take("punct", "=")
            _, val = self.take("int")
            if key in args:
                self.error(f"duplicate argument {key!r}")
            args[key] = int(val)
            if self.at(","):
                self.take("punct", ",")
                continue
            self.take("punct", ")")
            return args

    def need(self, args, keys, start):
        if set(args) != keys:
            self.error(f"expected arguments {sorted(keys)}, got {sorted(args)}", start)

    def cayley(self, start) -> Cayley:
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != "(":
            self.error("expected '('")
        close = self.text.find(")", self.pos)
        if close < 0:
            self.error("unterminated cayley(...)", start)
        path = self.text[self.pos + 1:close].strip()
        if not path:
            self.error("empty cayley path", start)
        self.pos = close + 1
        return Cayley(path)


def parse_group_spec(text: str) -> Descriptor:
    """Parse a group spec string; raises SpecParseError naming the offending token."""
    if not isinstance(text, str) or not text.strip():
        raise SpecParseError("empty group spec")
    return _Parser(text).parse()
