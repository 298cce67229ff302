"""The free unital algebra on the symbols a[i,j] (i != j) over the Laurent ring.

A generator is an ``(i, j)`` pair of 1-based strand indices.  In a context
with a starred strand, the last strand (index ``n + 1``) prints as ``*``.
Words are tuples of generators; the empty word is the unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import StructureError, UsageError
from .rings import ONE, LaurentPoly, _is_scalar

Gen = tuple[int, int]
Word = tuple[Gen, ...]


@dataclass(frozen=True)
class Context:
    """``n`` ordinary strands, plus one extra strand labelled ``*`` when ``star``."""

    n: int
    star: bool = False

    @property
    def size(self) -> int:
        return self.n + (1 if self.star else 0)

    @property
    def star_index(self) -> int | None:
        return self.n + 1 if self.star else None

    def generators(self) -> list[Gen]:
        N = self.size
        return [(i, j) for i in range(1, N + 1) for j in range(1, N + 1) if i != j]

    def valid(self, g: Gen) -> bool:
        i, j = g
        return i != j and 1 <= i <= self.size and 1 <= j <= self.size

    def is_starred(self, g: Gen) -> bool:
        return self.star and (g[0] == self.n + 1 or g[1] == self.n + 1)

    def label(self, i: int) -> str:
        return "*" if self.star and i == self.n + 1 else str(i)

    def gen_name(self, g: Gen) -> str:
        return f"a[{self.label(g[0])},{self.label(g[1])}]"

    def unstarred(self) -> "Context":
        return Context(self.n, False)


class FreeAlgElement:
    """Finite R-linear combination of words in the generators of a :class:`Context`."""

    __slots__ = ("ctx", "_terms", "_hash")

    def __init__(self, ctx: Context, terms: Mapping[Word, object] | None = None):
        self.ctx = ctx
        clean: dict = {}
        if terms:
            for w, c in terms.items():
                w = tuple(tuple(g) for g in w)
                for g in w:
                    if not ctx.valid(g):
                        raise UsageError(f"generator {g} is not valid in {ctx}")
                c = LaurentPoly.coerce(c)
                if c:
                    prev = clean.get(w)
                    c = c if prev is None else prev + c
                    if c:
                        clean[w] = c
                    else:
                        clean.pop(w, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ctx: Context, terms: dict) -> "FreeAlgElement":
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def gen(cls, ctx: Context, i: int, j: int) -> "FreeAlgElement":
        if not ctx.valid((i, j)):
            raise UsageError(f"a[{i},{j}] is not a generator of {ctx}")
        return cls._raw(ctx, {((i, j),): ONE})

    @classmethod
    def scalar(cls, ctx: Context, c) -> "FreeAlgElement":
        c = LaurentPoly.coerce(c)
        return cls._raw(ctx, {(): c} if c else {})

    def _coerce(self, other) -> "FreeAlgElement":
        if isinstance(other, FreeAlgElement):
            if other.ctx != self.ctx:
                raise UsageError(f"context mismatch: {self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, LaurentPoly) or _is_scalar(other):
            return FreeAlgElement.scalar(self.ctx, other)
        raise UsageError(f"cannot combine FreeAlgElement with {type(other).__name__}")

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

    def letters(self) -> set:
        return {g for w in self._terms for g in w}

    def with_context(self, ctx: Context) -> "FreeAlgElement":
        """Reinterpret in another context that contains every letter used."""
        for g in self.letters():
            if not ctx.valid(g):
                raise UsageError(f"{g} does not exist in {ctx}")
        return FreeAlgElement._raw(ctx, dict(self._terms))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            prev = out.get(w)
            v = c if prev is None else prev + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return FreeAlgElement._raw(self.ctx, out)

    def __radd__(self, other):
        return self._coerce(other) + self

    def __neg__(self):
        return FreeAlgElement._raw(self.ctx, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly) or _is_scalar(other):
            other = LaurentPoly.coerce(other)
            if not other:
                return FreeAlgElement._raw(self.ctx, {})
            return FreeAlgElement._raw(self.ctx, {w: c * other for w, c in self._terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for wa, ca in self._terms.items():
            for wb, cb in other._terms.items():
                w = wa + wb
                prev = out.get(w)
                out[w] = ca * cb if prev is None else prev + ca * cb
        return FreeAlgElement._raw(self.ctx, {w: c for w, c in out.items() if c})

    def __rmul__(self, other):
        # scalars are central
        return self._coerce(other) * self

    def __pow__(self, n: int):
        result = FreeAlgElement.scalar(self.ctx, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, FreeAlgElement):
            return self.ctx == other.ctx and self._terms == other._terms
        if isinstance(other, LaurentPoly) or _is_scalar(other):
            return self._terms == FreeAlgElement.scalar(self.ctx, other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for w, c in self.sorted_terms():
            word = " ".join(self.ctx.gen_name(g) for g in w)
            if not word:
                pieces.append(f"({c})" if len(c) > 1 else str(c))
            elif c == 1:
                pieces.append(word)
            elif c == -1:
                pieces.append("-" + word)
            elif len(c) == 1:
                pieces.append(f"{c} * {word}")
            else:
                pieces.append(f"({c}) * {word}")
        out = pieces[0]
        for p in pieces[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"FreeAlgElement({self})"

    def to_json(self) -> list:
        return [
            {"word": [self.ctx.gen_name(g) for g in w], "coefficient": str(c)}
            for w, c in self.sorted_terms()
        ]


def fa_mul(a: FreeAlgElement, b: FreeAlgElement) -> FreeAlgElement:
    return a * b


class Endomorphism:
    """R-algebra endomorphism given by the images of the generators it moves.

    Generators without an explicit image are fixed unless ``total`` is set, in
    which case a missing image is an error.
    """

    __slots__ = ("ctx", "images", "total")

    def __init__(self, ctx: Context, images: Mapping[Gen, FreeAlgElement], total: bool = False):
        for g, img in images.items():
            if not ctx.valid(g):
                raise UsageError(f"{g} is not a generator of {ctx}")
            if img.ctx != ctx:
                raise UsageError(f"image of {g} lives in {img.ctx}, expected {ctx}")
        self.ctx = ctx
        self.images = dict(images)
        self.total = total

    @classmethod
    def identity(cls, ctx: Context) -> "Endomorphism":
        return cls(ctx, {})

    def image(self, g: Gen) -> FreeAlgElement:
        img = self.images.get(g)
        if img is not None:
            return img
        if self.total:
            raise UsageError(f"no image for {self.ctx.gen_name(g)}")
        return FreeAlgElement.gen(self.ctx, *g)

    def __call__(self, x: FreeAlgElement) -> FreeAlgElement:
        return apply_endo(self, x)

    def compose(self, inner: "Endomorphism") -> "Endomorphism":
        """``self ∘ inner``: apply ``inner`` first."""
        if inner.ctx != self.ctx:
            raise UsageError("cannot compose endomorphisms of different contexts")
        images = {g: apply_endo(self, inner.image(g)) for g in self.ctx.generators()}
        return Endomorphism(self.ctx, images)

    def same_as(self, other: "Endomorphism") -> bool:
        return all(self.image(g) == other.image(g) for g in self.ctx.generators())


def apply_endo(e: Endomorphism, x: FreeAlgElement) -> FreeAlgElement:
    """Apply the algebra endomorphism ``e`` to ``x``.

    Products of images are cached per word prefix, so words sharing a prefix
    are expanded once.
    """
    if x.ctx != e.ctx:
        raise UsageError(f"context mismatch: {x.ctx} vs {e.ctx}")
    ctx = e.ctx
    prefix: dict[Word, FreeAlgElement] = {(): FreeAlgElement.scalar(ctx, 1)}

    def expand(w: Word) -> FreeAlgElement:
        got = prefix.get(w)
        if got is None:
            got = expand(w[:-1]) * e.image(w[-1])
            prefix[w] = got
        return got

    acc: dict = {}
    for w, c in x.items():
        for w2, c2 in expand(w).items():
            v = c2 * c
            prev = acc.get(w2)
            acc[w2] = v if prev is None else prev + v
    return FreeAlgElement._raw(ctx, {w: c for w, c in acc.items() if c})


def left_star_coefficients(x: FreeAlgElement) -> list[FreeAlgElement]:
    """Coefficients ``c_j`` (j = 1..n) with ``x = sum_j c_j * a[j,*]``.

    Every word must end in a single ``a[j,*]`` and contain no other starred
    letter; otherwise :class:`StructureError` is raised.
    """
    ctx = x.ctx
    if not ctx.star:
        raise UsageError("left_star_coefficients needs a context with a starred strand")
    star = ctx.n + 1
    plain = ctx.unstarred()
    rows: list[dict] = [dict() for _ in range(ctx.n)]
    for w, c in x.items():
        if not w or w[-1][1] != star or w[-1][0] == star:
            raise StructureError(f"term {c} * {[ctx.gen_name(g) for g in w]} does not end in a[j,*]")
        head = w[:-1]
        if any(ctx.is_starred(g) for g in head):
            raise StructureError(f"term {[ctx.gen_name(g) for g in w]} has a starred letter before the last position")
        rows[w[-1][0] - 1][head] = c
    return [FreeAlgElement._raw(plain, r) for r in rows]


def assemble_star(coeffs: Iterable[FreeAlgElement], ctx: Context) -> FreeAlgElement:
    """Inverse of :func:`left_star_coefficients`: ``sum_j c_j * a[j,*]``."""
    total = FreeAlgElement.scalar(ctx, 0)
    for j, c in enumerate(coeffs, start=1):
        total = total + c.with_context(ctx) * FreeAlgElement.gen(ctx, j, ctx.n + 1)
    return total
