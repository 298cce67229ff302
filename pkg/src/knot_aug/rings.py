"""Exact arithmetic for the coefficient ring Z[lambda^±, mu^±, U^±] and its extensions.

Four value types live here:

* :class:`LaurentPoly`: sparse Laurent polynomials in ``lambda, mu, U`` with
  integer or rational coefficients.
* :class:`CommPoly`: commutative polynomials over :class:`LaurentPoly` in a
  fixed list of named variables (``a[i,j]``, ``X``, ``Y``, ``T`` ...).
* :class:`RationalUniPoly`: dense univariate polynomials over Q in ``T``.
* :class:`PrimeFieldElem`: residues modulo a prime.

All values are immutable; every operation returns a fresh value in canonical
form (no stored zero coefficients).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from numbers import Rational
from typing import Iterable, Mapping

import sympy

from .errors import DomainError, UsageError

SYMBOLS = ("lambda", "mu", "U")

Exp3 = tuple[int, int, int]


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def _is_scalar(x) -> bool:
    return isinstance(x, Rational) and not isinstance(x, bool)


def _power(value, e: int, name: str = "?"):
    if e >= 0:
        return value**e
    if value == 0:
        raise DomainError(f"zero assigned to inverted symbol {name}")
    if _is_scalar(value):
        return Fraction(1, 1) / Fraction(value) ** (-e)
    return value**e


def _fmt_number(c) -> str:
    return str(c)


def _fmt_monomial(names: Iterable[str], exps: Iterable[int]) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _join_terms(pieces: list[str]) -> str:
    if not pieces:
        return "0"
    out = pieces[0]
    for piece in pieces[1:]:
        if piece.startswith("-"):
            out += " - " + piece[1:]
        else:
            out += " + " + piece
    return out


def _fmt_scaled(c, mono: str) -> str:
    if not mono:
        return _fmt_number(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    if isinstance(c, Fraction):
        return f"({c})*{mono}" if c < 0 else f"{c}*{mono}"
    return f"{c}*{mono}"


# ---------------------------------------------------------------------------
# Laurent polynomials in lambda, mu, U
# ---------------------------------------------------------------------------


def _laurent_key(e: Exp3):
    # "3*mu - mu^2 - U": U-degree first, then mu, then lambda.
    return (e[2], e[1], e[0])


class LaurentPoly:
    """Element of Z[lambda^±, mu^±, U^±] (coefficients may also be rational).

    Stored as a map from exponent triples ``(e_lambda, e_mu, e_U)`` to nonzero
    coefficients.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exp3, object] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    e = (int(e[0]), int(e[1]), int(e[2]))
                    clean[e] = _norm(clean.get(e, 0) + c)
                    if not clean[e]:
                        del clean[e]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        c = _norm(c)
        return cls._raw({(0, 0, 0): c} if c else {})

    @classmethod
    def monomial(cls, c=1, lam: int = 0, mu: int = 0, U: int = 0) -> "LaurentPoly":
        c = _norm(c)
        return cls._raw({(lam, mu, U): c} if c else {})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if _is_scalar(x):
            return cls.const(x)
        raise UsageError(f"cannot coerce {type(x).__name__} into the Laurent ring")

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0, 0, 0) in self._terms)

    def constant_value(self):
        if not self.is_constant():
            raise UsageError(f"{self} is not a constant")
        return self._terms.get((0, 0, 0), 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def min_exponents(self) -> Exp3:
        if not self._terms:
            return (0, 0, 0)
        return tuple(min(e[i] for e in self._terms) for i in range(3))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if not _is_scalar(other):
                return NotImplemented
            other = LaurentPoly.const(other)
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            if not _is_scalar(other):
                return NotImplemented
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if not _is_scalar(other):
                return NotImplemented
            other = _norm(other)
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: _norm(c * other) for e, c in self._terms.items()})
        if not self._terms or not other._terms:
            return LaurentPoly._raw({})
        out: dict = {}
        for (a0, a1, a2), c in self._terms.items():
            for (b0, b1, b2), d in other._terms.items():
                e = (a0 + b0, a1 + b1, a2 + b2)
                out[e] = out.get(e, 0) + c * d
        return LaurentPoly._raw({e: _norm(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def inverse(self) -> "LaurentPoly":
        """Inverse of a unit, i.e. of a monomial with coefficient ±1."""
        if len(self._terms) != 1:
            raise DomainError(f"{self} is not a unit of the Laurent ring")
        (e, c), = self._terms.items()
        if c not in (1, -1) and not isinstance(c, Fraction):
            raise DomainError(f"{self} is not a unit of the Laurent ring")
        return LaurentPoly._raw({(-e[0], -e[1], -e[2]): _norm(Fraction(1) / c)})

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if _is_scalar(other):
            return self._terms == LaurentPoly.const(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, object]):
        """Substitute values for every symbol occurring in the polynomial."""
        used = [any(e[i] for e in self._terms) for i in range(3)]
        for i, name in enumerate(SYMBOLS):
            if used[i] and name not in assignment:
                raise UsageError(f"no value assigned to {name}")
            if used[i] and assignment[name] == 0 and any(e[i] < 0 for e in self._terms):
                raise DomainError(f"zero assigned to inverted symbol {name}")
        zero = _zero_like(assignment.values())
        total = zero
        for e, c in self._terms.items():
            term = c
            for i, name in enumerate(SYMBOLS):
                if e[i]:
                    term = term * _power(assignment[name], e[i], name)
            total = total + term
        return total

    def specialize(self, assignment: Mapping[str, object]) -> "LaurentPoly":
        """Partial substitution of rational values; unassigned symbols stay symbolic."""
        out: dict = {}
        for e, c in self._terms.items():
            ne = list(e)
            for i, name in enumerate(SYMBOLS):
                if name in assignment and e[i]:
                    c = c * _power(Fraction(assignment[name]), e[i], name)
                    ne[i] = 0
            key = tuple(ne)
            out[key] = out.get(key, 0) + c
        return LaurentPoly(out)

    # -- formatting ---------------------------------------------------------

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: _laurent_key(t[0]))

    def __str__(self):
        return _join_terms([_fmt_scaled(c, _fmt_monomial(SYMBOLS, e)) for e, c in self.sorted_terms()])

    def __repr__(self):
        return f"LaurentPoly({self})"

    def to_json(self) -> list:
        return [{"exponents": list(e), "coefficient": str(c)} for e, c in self.sorted_terms()]


def _zero_like(values):
    for v in values:
        if isinstance(v, PrimeFieldElem):
            return PrimeFieldElem(v.p, 0)
    return 0


LAMBDA = LaurentPoly.monomial(1, lam=1)
MU = LaurentPoly.monomial(1, mu=1)
U = LaurentPoly.monomial(1, U=1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly.const(0)


# ---------------------------------------------------------------------------
# Commutative polynomials over the Laurent ring
# ---------------------------------------------------------------------------


class CommPoly:
    """Commutative polynomial in named variables with :class:`LaurentPoly` coefficients.

    The ring is identified by its variable tuple; arithmetic between different
    rings raises :class:`UsageError`.
    """

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple, object] | None = None):
        self.variables = tuple(variables)
        nv = len(self.variables)
        clean: dict = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != nv or any(x < 0 for x in e):
                    raise UsageError(f"bad exponent vector {e} for variables {self.variables}")
                c = LaurentPoly.coerce(c)
                if c:
                    prev = clean.get(e)
                    c = c if prev is None else prev + c
                    if c:
                        clean[e] = c
                    else:
                        clean.pop(e, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "CommPoly":
        obj = cls.__new__(cls)
        obj.variables = variables
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def var(cls, variables: Iterable[str], name: str) -> "CommPoly":
        variables = tuple(variables)
        if name not in variables:
            raise UsageError(f"{name} is not a variable of {variables}")
        e = tuple(1 if v == name else 0 for v in variables)
        return cls._raw(variables, {e: ONE})

    @classmethod
    def const(cls, variables: Iterable[str], c) -> "CommPoly":
        variables = tuple(variables)
        c = LaurentPoly.coerce(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    def _coerce(self, other) -> "CommPoly":
        if isinstance(other, CommPoly):
            if other.variables != self.variables:
                raise UsageError(f"ring mismatch: {self.variables} vs {other.variables}")
            return other
        if isinstance(other, LaurentPoly) or _is_scalar(other):
            return CommPoly.const(self.variables, other)
        raise UsageError(f"cannot combine CommPoly with {type(other).__name__}")

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degree(self, name: str) -> int:
        i = self.variables.index(name)
        return max((e[i] for e in self._terms), default=-1)

    def coefficient(self, exps: tuple) -> LaurentPoly:
        return self._terms.get(tuple(exps), ZERO)

    def free_variables(self) -> set:
        return {v for i, v in enumerate(self.variables) if any(e[i] for e in self._terms)}

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if not other._terms:
            return self
        out = dict(self._terms)
        for e, c in other._terms.items():
            prev = out.get(e)
            v = c if prev is None else prev + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return CommPoly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return CommPoly._raw(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentPoly) or _is_scalar(other):
            other = LaurentPoly.coerce(other)
            if not other:
                return CommPoly._raw(self.variables, {})
            return CommPoly._raw(self.variables, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                prev = out.get(e)
                out[e] = ca * cb if prev is None else prev + ca * cb
        return CommPoly._raw(self.variables, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative powers are not defined in a polynomial ring")
        result = CommPoly.const(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, CommPoly):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, LaurentPoly) or _is_scalar(other):
            return self._terms == CommPoly.const(self.variables, other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    # -- substitution and evaluation ----------------------------------------

    def subs(self, mapping: Mapping[str, "CommPoly"], target: Iterable[str] | None = None) -> "CommPoly":
        """Ring homomorphism sending each variable to a polynomial of the target ring.

        Variables absent from ``mapping`` are sent to the same-named variable of
        the target ring.
        """
        target = self.variables if target is None else tuple(target)
        images = []
        for v in self.variables:
            if v in mapping:
                img = mapping[v]
                if not isinstance(img, CommPoly):
                    img = CommPoly.const(target, img)
                elif img.variables != target:
                    raise UsageError(f"image of {v} lives in {img.variables}, expected {target}")
                images.append(img)
            else:
                images.append(CommPoly.var(target, v))
        cache: list[dict] = [dict() for _ in images]
        result = CommPoly.const(target, 0)
        for e, c in self._terms.items():
            term = CommPoly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    pw = cache[i].get(k)
                    if pw is None:
                        pw = cache[i][k] = images[i] ** k
                    term = term * pw
            result = result + term
        return result

    def evaluate(self, assignment: Mapping[str, object]):
        """Evaluate at values for the variables and for lambda/mu/U."""
        for i, v in enumerate(self.variables):
            if v not in assignment and any(e[i] for e in self._terms):
                raise UsageError(f"no value assigned to {v}")
        total = _zero_like(assignment.values())
        for e, c in self._terms.items():
            term = c.evaluate(assignment)
            for v, k in zip(self.variables, e):
                if k:
                    term = term * assignment[v] ** k
            total = total + term
        return total

    def specialize(self, assignment: Mapping[str, object]) -> "CommPoly":
        """Substitute rational values for lambda/mu/U inside the coefficients."""
        out = {}
        for e, c in self._terms.items():
            s = c.specialize(assignment)
            if s:
                out[e] = s
        return CommPoly._raw(self.variables, out)

    def map_coefficients(self, fn) -> "CommPoly":
        return CommPoly(self.variables, {e: fn(c) for e, c in self._terms.items()})

    def to_uni(self, name: str | None = None) -> "RationalUniPoly":
        """Convert a polynomial in one variable with numeric coefficients to Q[T]."""
        if name is None:
            if len(self.variables) != 1:
                raise UsageError("to_uni needs a variable name for multivariate rings")
            name = self.variables[0]
        i = self.variables.index(name)
        coeffs: dict = {}
        for e, c in self._terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise UsageError(f"{self} depends on variables other than {name}")
            if not c.is_constant():
                raise UsageError(f"coefficient {c} is not a number")
            coeffs[e[i]] = c.constant_value()
        deg = max(coeffs, default=-1)
        return RationalUniPoly([coeffs.get(k, 0) for k in range(deg + 1)])

    def univariate_coefficients(self, name: str) -> list[LaurentPoly]:
        """Coefficient list (low to high) when the polynomial involves only ``name``."""
        i = self.variables.index(name)
        out: dict = {}
        for e, c in self._terms.items():
            if any(k for j, k in enumerate(e) if j != i):
                raise UsageError(f"{self} depends on variables other than {name}")
            out[e[i]] = c
        deg = max(out, default=-1)
        return [out.get(k, ZERO) for k in range(deg + 1)]

    # -- formatting ---------------------------------------------------------

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: t[0], reverse=True)

    def __str__(self):
        pieces = []
        for e, c in self.sorted_terms():
            mono = _fmt_monomial(self.variables, e)
            if c.is_constant():
                pieces.append(_fmt_scaled(c.constant_value(), mono))
            elif not mono:
                pieces.append(f"({c})" if len(c) > 1 and len(self._terms) > 1 else str(c))
            elif len(c) == 1:
                cs = str(c)
                pieces.append(f"{cs}*{mono}")
            else:
                pieces.append(f"({c})*{mono}")
        return _join_terms(pieces)

    def __repr__(self):
        return f"CommPoly({self})"

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "terms": [{"exponents": list(e), "coefficient": str(c)} for e, c in self.sorted_terms()],
        }


# ---------------------------------------------------------------------------
# Univariate polynomials over Q
# ---------------------------------------------------------------------------


class RationalUniPoly:
    """Dense polynomial over Q in ``T``; ``coeffs[i]`` is the coefficient of ``T^i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def T(cls) -> "RationalUniPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _c(self, other) -> "RationalUniPoly":
        if isinstance(other, RationalUniPoly):
            return other
        if _is_scalar(other):
            return RationalUniPoly([other])
        raise UsageError(f"cannot combine RationalUniPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._c(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return RationalUniPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return RationalUniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._c(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._c(other)
        if not self.coeffs or not other.coeffs:
            return RationalUniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalUniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = RationalUniPoly([1])
        for _ in range(n):
            result = result * self
        return result

    def __divmod__(self, other):
        other = self._c(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return RationalUniPoly(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.lead
        for k in range(dq, -1, -1):
            q = rem[k + other.degree] / lead
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return RationalUniPoly(quot), RationalUniPoly(rem[: other.degree])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = Fraction(0) if _is_scalar(x) else x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "RationalUniPoly":
        if self.is_zero():
            return self
        lead = self.lead
        return RationalUniPoly([c / lead for c in self.coeffs])

    def __eq__(self, other):
        if isinstance(other, RationalUniPoly):
            return self.coeffs == other.coeffs
        if _is_scalar(other):
            return self.coeffs == RationalUniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        pieces = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c:
                pieces.append(_fmt_scaled(_norm(c), _fmt_monomial(("T",), (k,))))
        return _join_terms(pieces)

    def __repr__(self):
        return f"RationalUniPoly({self})"

    def to_json(self) -> list:
        return [str(_norm(c)) for c in self.coeffs]


def uni_gcd(f: RationalUniPoly, g: RationalUniPoly) -> RationalUniPoly:
    """Monic gcd over Q by the Euclidean algorithm."""
    if f.is_zero() and g.is_zero():
        raise UsageError("gcd(0, 0) is undefined")
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def primitive_integer_coefficients(f: RationalUniPoly) -> list[int]:
    """Clear denominators and divide out the content; sign of the lead is kept."""
    if f.is_zero():
        raise UsageError("zero polynomial has no primitive part")
    den = lcm(*(c.denominator for c in f.coeffs))
    ints = [int(c * den) for c in f.coeffs]
    content = 0
    for c in ints:
        content = _gcd(content, c)
    return [c // content for c in ints]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> list[int]:
    return [int(d) for d in sympy.divisors(abs(n))]


def root_candidates(ints: list[int]) -> list[Fraction]:
    """Rational-root-theorem candidates ±p/q (lowest terms, deduplicated) for a
    polynomial with nonzero constant term given low-to-high."""
    if not ints or ints[0] == 0:
        raise UsageError("candidate enumeration needs a nonzero constant term")
    seen = set()
    out = []
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if r not in seen:
                    seen.add(r)
                    out.append(r)
    out.sort(key=lambda r: (r.denominator, abs(r), r < 0))
    return out


def rational_roots(f: RationalUniPoly) -> set[Fraction]:
    """All rational roots of a nonzero polynomial, by the rational root theorem."""
    if f.is_zero():
        raise UsageError("the zero polynomial has every number as a root")
    ints = primitive_integer_coefficients(f)
    roots = set()
    shift = 0
    while ints[shift] == 0:
        shift += 1
    if shift:
        roots.add(Fraction(0))
    ints = ints[shift:]
    if len(ints) == 1:
        return roots
    for r in root_candidates(ints):
        if _int_eval_numerator(ints, r) == 0:
            roots.add(r)
    return roots


def _int_eval_numerator(ints: list[int], r: Fraction) -> int:
    """q^d * f(p/q) computed with integers only."""
    p, q = r.numerator, r.denominator
    d = len(ints) - 1
    return sum(c * p**i * q ** (d - i) for i, c in enumerate(ints))


# ---------------------------------------------------------------------------
# Prime fields
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    return bool(sympy.isprime(p))


@dataclass(frozen=True)
class PrimeFieldElem:
    """Residue ``r`` modulo the prime ``p``."""

    p: int
    r: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")
        object.__setattr__(self, "r", self.r % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, PrimeFieldElem):
            if other.p != self.p:
                raise UsageError(f"field mismatch: F_{self.p} vs F_{other.p}")
            return other.r
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise DomainError(f"{other} has no image in F_{self.p}")
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        if isinstance(other, int):
            return other % self.p
        raise UsageError(f"cannot combine F_{self.p} element with {type(other).__name__}")

    def __add__(self, other):
        return PrimeFieldElem(self.p, self.r + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return PrimeFieldElem(self.p, self.r - self._coerce(other))

    def __rsub__(self, other):
        return PrimeFieldElem(self.p, self._coerce(other) - self.r)

    def __neg__(self):
        return PrimeFieldElem(self.p, -self.r)

    def __mul__(self, other):
        return PrimeFieldElem(self.p, self.r * self._coerce(other))

    __rmul__ = __mul__

    def inverse(self) -> "PrimeFieldElem":
        if self.r == 0:
            raise DomainError(f"0 has no inverse in F_{self.p}")
        return PrimeFieldElem(self.p, pow(self.r, -1, self.p))

    def __truediv__(self, other):
        return self * PrimeFieldElem(self.p, self._coerce(other)).inverse()

    def __rtruediv__(self, other):
        return PrimeFieldElem(self.p, self._coerce(other)) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return PrimeFieldElem(self.p, pow(self.r, e, self.p))

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElem):
            return self.p == other.p and self.r == other.r
        if isinstance(other, (int, Fraction)):
            try:
                return self.r == self._coerce(other)
            except DomainError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.r))

    def __int__(self):
        return self.r

    def __repr__(self):
        return f"{self.r} (mod {self.p})"


def evaluate(poly, assignment: Mapping[str, object]):
    """Evaluate a :class:`LaurentPoly` or :class:`CommPoly` at exact values."""
    return poly.evaluate(assignment)


def ring_mul(a, b):
    """Exact product of two elements of the same ring."""
    if type(a) is not type(b):
        raise UsageError(f"cannot multiply {type(a).__name__} by {type(b).__name__}")
    return a * b
