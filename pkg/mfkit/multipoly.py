"""
Sparse multivariate polynomials.

Polynomials over Q(e) in named variables, with monomial orders, exact
arithmetic, substitution, coefficient extraction and a small text grammar:

    expr   := sign? term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := atom ("^" INT)?
    atom   := INT ("/" INT)? | "e" | NAME | "(" expr ")"

Whitespace is ignored and "*" is mandatory between factors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .constants import EPSILON_SYMBOL, MONOMIAL_ORDERS, Y_NAMES, ZERO_POLY_DEGREE
from .cyclofield import EPS, ONE, ZERO, CycNum, Scalar

Monomial = Tuple[int, ...]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class VarTableMismatchError(ValueError):
    """Raised when polynomials over different variable tables are combined."""


class PolySyntaxError(ValueError):
    """Raised when polynomial text does not conform to the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position


class UnknownVariableError(ValueError):
    """Raised when polynomial text names a variable missing from the table."""

    def __init__(self, name: str, position: int):
        super().__init__(f"Unknown variable '{name}' at position {position}")
        self.name = name
        self.position = position


@dataclass(frozen=True)
class VarTable:
    """Ordered, duplicate-free list of variable names."""

    names: Tuple[str, ...]
    _index: Dict[str, int] = field(default=None, init=False, repr=False, compare=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        for name in names:
            if not _NAME_RE.match(name):
                raise ValueError(f"Invalid variable name: {name!r}")
            if name == EPSILON_SYMBOL:
                raise ValueError(f"'{EPSILON_SYMBOL}' is reserved for the root of unity")
        if len(set(names)) != len(names):
            raise ValueError(f"Duplicate variable names in {names}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @classmethod
    def of(cls, *names: str) -> VarTable:
        return cls(tuple(names))

    @classmethod
    def ys(cls) -> VarTable:
        """The table Y1, Y2, Y3, Y4."""
        return cls(Y_NAMES)

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __iter__(self):
        return iter(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise VarTableMismatchError(f"Variable '{name}' not in {self.names}") from None

    def extend(self, names: Iterable[str]) -> VarTable:
        """Append the names not already present, keeping the current order first."""
        extra = [n for n in names if n not in self._index]
        return VarTable(self.names + tuple(dict.fromkeys(extra)))


@lru_cache(maxsize=None)
def _grevlex_key(m: Monomial) -> tuple:
    return (sum(m), tuple(-x for x in reversed(m)))


@dataclass(frozen=True)
class MonomialOrder:
    """
    A lex or grevlex monomial order.

    ``priority`` optionally permutes the variable positions (highest first);
    by default the table order is used, so Y1 > Y2 > Y3 > Y4.
    """

    kind: str = "grevlex"
    priority: Optional[Tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if self.kind not in MONOMIAL_ORDERS:
            raise ValueError(f"Unknown monomial order '{self.kind}', expected one of {MONOMIAL_ORDERS}")
        if self.priority is not None:
            object.__setattr__(self, "priority", tuple(self.priority))

    def key(self, m: Monomial) -> tuple:
        if self.priority is not None:
            m = tuple(m[i] for i in self.priority)
        if self.kind == "lex":
            return m
        return _grevlex_key(m)

    def __str__(self) -> str:
        return self.kind


OrderLike = Union[MonomialOrder, str, None]


def as_order(order: OrderLike) -> MonomialOrder:
    """Accept an order name, an order, or None (grevlex)."""
    if order is None:
        return MonomialOrder()
    if isinstance(order, MonomialOrder):
        return order
    return MonomialOrder(order)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Optional[Monomial]:
    """Return a / b, or None if b does not divide a."""
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def mono_divides(b: Monomial, a: Monomial) -> bool:
    return all(y <= x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class Poly:
    """
    Sparse polynomial: a map from exponent tuples to nonzero CycNum values.

    Instances are treated as immutable. All binary operations require both
    operands to share the same VarTable.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: VarTable, terms: Optional[Mapping[Monomial, Scalar]] = None):
        self.vars = vars
        clean: Dict[Monomial, CycNum] = {}
        n = len(vars)
        for mono, coeff in (terms or {}).items():
            if len(mono) != n:
                raise ValueError(f"Monomial {mono} does not fit table {vars.names}")
            c = CycNum.coerce(coeff)
            if c:
                clean[tuple(mono)] = c
        self.terms = clean

    # Constructors

    @classmethod
    def zero(cls, vars: VarTable) -> Poly:
        return cls(vars)

    @classmethod
    def constant(cls, vars: VarTable, c: Scalar) -> Poly:
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def variable(cls, vars: VarTable, name: str) -> Poly:
        i = vars.index(name)
        mono = tuple(1 if k == i else 0 for k in range(len(vars)))
        return cls(vars, {mono: ONE})

    @classmethod
    def monomial(cls, vars: VarTable, mono: Monomial, c: Scalar = ONE) -> Poly:
        return cls(vars, {mono: c})

    @classmethod
    def _raw(cls, vars: VarTable, terms: Dict[Monomial, CycNum]) -> Poly:
        p = cls.__new__(cls)
        p.vars = vars
        p.terms = terms
        return p

    # Queries

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> CycNum:
        """Value of a constant polynomial."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()), ZERO)

    def variables_used(self) -> List[str]:
        used = set()
        for m in self.terms:
            used.update(i for i, x in enumerate(m) if x)
        return [self.vars.names[i] for i in sorted(used)]

    def sorted_terms(self, order: OrderLike = None) -> List[Tuple[Monomial, CycNum]]:
        """Terms in descending order."""
        o = as_order(order)
        return sorted(self.terms.items(), key=lambda t: o.key(t[0]), reverse=True)

    def leading_monomial(self, order: OrderLike = None) -> Monomial:
        if not self.terms:
            raise ValueError("Zero polynomial has no leading monomial")
        o = as_order(order)
        return max(self.terms, key=o.key)

    def leading_coefficient(self, order: OrderLike = None) -> CycNum:
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: OrderLike = None) -> Poly:
        if not self.terms:
            return self
        return self.scale(self.leading_coefficient(order).inverse())

    # Arithmetic

    def _check(self, other: Poly) -> None:
        if self.vars != other.vars:
            raise VarTableMismatchError(
                f"Variable tables differ: {self.vars.names} vs {other.vars.names}"
            )

    def _lift(self, other: Union[Poly, Scalar]) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(self.vars, other)

    def scale(self, c: Scalar) -> Poly:
        c = CycNum.coerce(c)
        if not c:
            return Poly.zero(self.vars)
        return Poly._raw(self.vars, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c: Scalar) -> Poly:
        c = CycNum.coerce(c)
        if not c:
            return Poly.zero(self.vars)
        return Poly._raw(self.vars, {mono_mul(m, mono): v * c for m, v in self.terms.items()})

    def __add__(self, other: Union[Poly, Scalar]) -> Poly:
        return poly_add(self, self._lift(other))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw(self.vars, {m: -v for m, v in self.terms.items()})

    def __sub__(self, other: Union[Poly, Scalar]) -> Poly:
        return poly_add(self, -self._lift(other))

    def __rsub__(self, other: Scalar) -> Poly:
        return poly_add(-self, self._lift(other))

    def __mul__(self, other: Union[Poly, Scalar]) -> Poly:
        if isinstance(other, Poly):
            return poly_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        return poly_pow(self, k)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction, CycNum)):
            return self.terms == Poly.constant(self.vars, other).terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # Conversion

    def embed(self, vars: VarTable) -> Poly:
        """
        Rewrite over another table, matching variables by name.

        Raises:
            VarTableMismatchError: If a variable in use is missing from ``vars``
        """
        if vars == self.vars:
            return self
        positions = [vars.index(n) if n in vars else None for n in self.vars.names]
        size = len(vars)
        out: Dict[Monomial, CycNum] = {}
        for m, c in self.terms.items():
            new = [0] * size
            for i, x in enumerate(m):
                if x:
                    j = positions[i]
                    if j is None:
                        raise VarTableMismatchError(
                            f"Variable '{self.vars.names[i]}' not in {vars.names}"
                        )
                    new[j] = x
            out[tuple(new)] = c
        return Poly._raw(vars, out)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)})"


def poly_add(p: Poly, q: Poly) -> Poly:
    p._check(q)
    out = dict(p.terms)
    for m, c in q.terms.items():
        s = out.get(m)
        if s is None:
            out[m] = c
        else:
            s = s + c
            if s:
                out[m] = s
            else:
                del out[m]
    return Poly._raw(p.vars, out)


def poly_mul(p: Poly, q: Poly) -> Poly:
    """
    Product of two polynomials over the same table.

    Example:
        >>> V = VarTable.of("Y1", "Y4")
        >>> str(parse_poly("Y1+Y4", V) * parse_poly("Y1^2-Y1*Y4+Y4^2", V))
        'Y1^3+Y4^3'
    """
    p._check(q)
    out: Dict[Monomial, CycNum] = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            m = mono_mul(m1, m2)
            out[m] = out.get(m, ZERO) + c1 * c2
    return Poly._raw(p.vars, {m: c for m, c in out.items() if c})


def poly_pow(p: Poly, k: int) -> Poly:
    if k < 0:
        raise ValueError("Negative polynomial exponent")
    result = Poly.constant(p.vars, ONE)
    base = p
    while k:
        if k & 1:
            result = poly_mul(result, base)
        base = poly_mul(base, base)
        k >>= 1
    return result


def degree(p: Poly) -> int:
    """Total degree, or ZERO_POLY_DEGREE for the zero polynomial."""
    if not p.terms:
        return ZERO_POLY_DEGREE
    return max(sum(m) for m in p.terms)


def is_homogeneous(p: Poly) -> bool:
    return len({sum(m) for m in p.terms}) <= 1


def f4(vars: Optional[VarTable] = None) -> Poly:
    """Y1^3 + Y2^3 + Y3^3 + Y4^3 over ``vars`` (default Y1..Y4)."""
    vars = vars or VarTable.ys()
    return sum((Poly.variable(vars, y) ** 3 for y in Y_NAMES), Poly.zero(vars))


def substitute(
    p: Poly, assignments: Mapping[str, Poly], target: Optional[VarTable] = None
) -> Poly:
    """
    Replace variables by polynomials.

    Variables without an assignment are kept and must exist in the target
    table (by default the table shared by the assignment values).

    Example:
        >>> V = VarTable.ys()
        >>> y1, y2 = Poly.variable(V, "Y1"), Poly.variable(V, "Y2")
        >>> str(substitute(f4(V), {"Y1": -y2, "Y3": -Poly.variable(V, "Y4")}))
        '0'
    """
    if target is None:
        tables = {a.vars for a in assignments.values()}
        if len(tables) > 1:
            raise VarTableMismatchError("Assignment polynomials use different tables")
        target = tables.pop() if tables else p.vars
    images: List[Poly] = []
    for name in p.vars.names:
        if name in assignments:
            image = assignments[name]
            if image.vars != target:
                raise VarTableMismatchError(f"Assignment for '{name}' uses another table")
        elif name in target:
            image = Poly.variable(target, name)
        else:
            image = None  # only an error if the variable actually occurs
        images.append(image)

    powers: Dict[Tuple[int, int], Poly] = {}

    def power(i: int, k: int) -> Poly:
        key = (i, k)
        if key not in powers:
            if images[i] is None:
                raise VarTableMismatchError(f"No image for variable '{p.vars.names[i]}'")
            powers[key] = images[i] ** k
        return powers[key]

    result = Poly.zero(target)
    for m, c in p.terms.items():
        term = Poly.constant(target, c)
        for i, k in enumerate(m):
            if k:
                term = term * power(i, k)
        result = result + term
    return result


def coeff_decompose(p: Poly, v: str) -> List[Poly]:
    """
    Coefficients of p by powers of v: p = sum(result[k] * v**k).

    Example:
        >>> V = VarTable.ys()
        >>> [str(c) for c in coeff_decompose(parse_poly("Y1^2*Y2+Y2+Y3", V), "Y2")]
        ['Y3', 'Y1^2+1']
    """
    i = p.vars.index(v)
    buckets: Dict[int, Dict[Monomial, CycNum]] = {}
    for m, c in p.terms.items():
        k = m[i]
        rest = m[:i] + (0,) + m[i + 1 :]
        buckets.setdefault(k, {})[rest] = c
    top = max(buckets, default=0)
    return [Poly._raw(p.vars, buckets.get(k, {})) for k in range(top + 1)]


def coefficient_map(
    p: Poly, names: Sequence[str], target: Optional[VarTable] = None
) -> Dict[Monomial, Poly]:
    """
    Coefficients of p with respect to every monomial in ``names``.

    Keys are exponent tuples over ``names``; values are polynomials in the
    remaining variables, expressed over ``target`` (by default the table of
    the remaining variables in their original order).
    """
    idx = [p.vars.index(n) for n in names]
    rest_names = [n for n in p.vars.names if n not in set(names)]
    target = target or VarTable(tuple(rest_names))
    rest_pos = [target.index(n) for n in rest_names]
    rest_idx = [p.vars.index(n) for n in rest_names]
    grouped: Dict[Monomial, Dict[Monomial, CycNum]] = {}
    size = len(target)
    for m, c in p.terms.items():
        key = tuple(m[i] for i in idx)
        new = [0] * size
        for j, i in zip(rest_pos, rest_idx):
            new[j] = m[i]
        grouped.setdefault(key, {})[tuple(new)] = c
    return {k: Poly._raw(target, grouped[k]) for k in sorted(grouped, reverse=True)}


def exact_div(p: Poly, q: Poly, order: OrderLike = None) -> Optional[Poly]:
    """
    Return r with p = q * r, or None if q does not divide p.

    Raises:
        ZeroDivisionError: If q is the zero polynomial
    """
    p._check(q)
    if q.is_zero():
        raise ZeroDivisionError("Division by the zero polynomial")
    o = as_order(order)
    lm_q = q.leading_monomial(o)
    lc_inv = q.terms[lm_q].inverse()
    quotient: Dict[Monomial, CycNum] = {}
    rest = p
    while rest.terms:
        lm = rest.leading_monomial(o)
        shift = mono_div(lm, lm_q)
        if shift is None:
            return None
        c = rest.terms[lm] * lc_inv
        quotient[shift] = c
        rest = rest - q.mul_term(shift, c)
    return Poly._raw(p.vars, quotient)


# Printing


def _format_monomial(vars: VarTable, m: Monomial) -> str:
    parts = []
    for name, k in zip(vars.names, m):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _sign_and_magnitude(c: CycNum) -> Tuple[str, str, bool]:
    """Split a coefficient into (sign, text, is_one)."""
    if c.im == 0:
        sign = "-" if c.re < 0 else "+"
        mag = abs(c.re)
        return sign, str(mag), mag == 1
    if c.re == 0:
        sign = "-" if c.im < 0 else "+"
        mag = abs(c.im)
        return sign, ("e" if mag == 1 else f"{mag}*e"), False
    if c.re < 0:
        return "-", (-c).to_text(), False
    return "+", c.to_text(), False


def format_poly(p: Poly, order: OrderLike = None) -> str:
    """
    Canonical text: terms in descending order, no spaces.

    Example:
        >>> V = VarTable.ys()
        >>> format_poly(parse_poly("-e*Y4 + Y1", V))
        'Y1-e*Y4'
    """
    if not p.terms:
        return "0"
    out = []
    for m, c in p.sorted_terms(order):
        sign, mag, is_one = _sign_and_magnitude(c)
        mono = _format_monomial(p.vars, m)
        if not mono:
            body = mag
        elif is_one:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if out or sign == "-":
            out.append(sign)
        out.append(body)
    return "".join(out)


# Parsing

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            break  # trailing whitespace
        start = m.start(m.lastindex) if m.lastindex else m.start()
        if m.group(1) is not None:
            tokens.append(("INT", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("NAME", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise PolySyntaxError(f"Unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("END", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, vars: VarTable):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.vars = vars

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.pos]

    def take(self, kind: str) -> Tuple[str, str, int]:
        tok = self.peek()
        if tok[0] != kind:
            found = "end of input" if tok[0] == "END" else repr(tok[1])
            raise PolySyntaxError(f"Expected {kind!r}, found {found}", tok[2])
        self.pos += 1
        return tok

    def expr(self) -> Poly:
        negate = False
        if self.peek()[0] in ("+", "-"):
            negate = self.take(self.peek()[0])[0] == "-"
        result = self.term()
        if negate:
            result = -result
        while self.peek()[0] in ("+", "-"):
            op = self.take(self.peek()[0])[0]
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self) -> Poly:
        result = self.factor()
        while self.peek()[0] == "*":
            self.take("*")
            result = result * self.factor()
        return result

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take("^")
            k = int(self.take("INT")[1])
            base = base**k
        return base

    def atom(self) -> Poly:
        kind, value, start = self.peek()
        if kind == "INT":
            self.take("INT")
            num = Fraction(int(value))
            if self.peek()[0] == "/":
                self.take("/")
                den_tok = self.take("INT")
                if int(den_tok[1]) == 0:
                    raise PolySyntaxError("Zero denominator", den_tok[2])
                num /= int(den_tok[1])
            return Poly.constant(self.vars, num)
        if kind == "NAME":
            self.take("NAME")
            if value == EPSILON_SYMBOL:
                return Poly.constant(self.vars, EPS)
            if value not in self.vars:
                raise UnknownVariableError(value, start)
            return Poly.variable(self.vars, value)
        if kind == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        found = "end of input" if kind == "END" else repr(value)
        raise PolySyntaxError(f"Unexpected {found}", start)


def parse_poly(text: str, vars: VarTable) -> Poly:
    """
    Parse polynomial text over ``vars``.

    Raises:
        PolySyntaxError: If the text does not follow the grammar
        UnknownVariableError: If a name is not in ``vars``

    Example:
        >>> str(parse_poly("Y1^3+Y2^3+Y3^3+Y4^3", VarTable.ys()))
        'Y1^3+Y2^3+Y3^3+Y4^3'
    """
    parser = _Parser(text, vars)
    if parser.peek()[0] == "END":
        raise PolySyntaxError("Empty polynomial", 0)
    result = parser.expr()
    parser.take("END")
    return result


def names_in_text(text: str) -> List[str]:
    """Variable names appearing in polynomial text, in order of first use."""
    names = []
    for kind, value, _ in _tokenize(text):
        if kind == "NAME" and value != EPSILON_SYMBOL and value not in names:
            names.append(value)
    return names
