"""Braid words, closure permutations and the braid action on the free algebra."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DomainError, ParseError, UsageError
from .freealg import Context, Endomorphism, FreeAlgElement, apply_endo


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of the braid group on ``strands`` strands.

    Letter ``k > 0`` is sigma_k, letter ``k < 0`` is sigma_|k|^-1.
    """

    strands: int
    letters: tuple[int, ...] = ()
    writhe: int = field(init=False)

    def __post_init__(self):
        if self.strands < 1:
            raise ParseError(f"strand count must be positive, got {self.strands}")
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if x == 0 or abs(x) > self.strands - 1:
                raise ParseError(f"letter {x} out of range for {self.strands} strands")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "writhe", sum(1 if x > 0 else -1 for x in letters))

    def __str__(self):
        return " ".join(str(x) for x in self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        n = max(self.strands, other.strands)
        return BraidWord(n, self.letters + other.letters)

    def embed(self, strands: int) -> "BraidWord":
        """The same word read in a braid group with more strands (extra strands appended)."""
        if strands < self.strands:
            raise UsageError(f"cannot embed a {self.strands}-strand braid in {strands} strands")
        return BraidWord(strands, self.letters)

    def permutation(self) -> tuple[int, ...]:
        return closure_permutation(self)


def parse_braid(text: str, strands: int) -> BraidWord:
    """Parse whitespace-separated nonzero integers (commas are accepted too)."""
    tokens = text.replace(",", " ").split()
    letters = []
    for tok in tokens:
        try:
            letters.append(int(tok))
        except ValueError:
            raise ParseError(f"not an integer: {tok!r}") from None
    return BraidWord(strands, tuple(letters))


def closure_permutation(b: BraidWord) -> tuple[int, ...]:
    """``perm[i]`` is the bottom position (0-based) reached by the strand starting at ``i``."""
    pos = list(range(b.strands))  # pos[s] = current position of strand s
    at = list(range(b.strands))  # at[p] = strand currently at position p
    for x in b.letters:
        k = abs(x) - 1
        s, t = at[k], at[k + 1]
        at[k], at[k + 1] = t, s
        pos[s], pos[t] = k + 1, k
    return tuple(pos)


def closure_is_knot(b: BraidWord) -> tuple[bool, tuple[int, ...]]:
    """Whether the closure is connected, i.e. the permutation is one n-cycle."""
    perm = closure_permutation(b)
    seen, i, length = set(), 0, 0
    while i not in seen:
        seen.add(i)
        i = perm[i]
        length += 1
    return length == b.strands, perm


def _table(k: int, sign: int, ctx: Context) -> dict:
    N = ctx.size
    if not 1 <= k <= N - 1:
        raise UsageError(f"sigma_{k} does not act on {N} strands")
    g = lambda i, j: FreeAlgElement.gen(ctx, i, j)  # noqa: E731
    k1 = k + 1
    images = {}
    for i, j in ctx.generators():
        if i not in (k, k1) and j not in (k, k1):
            images[(i, j)] = g(i, j)
    others = [i for i in range(1, N + 1) if i not in (k, k1)]
    images[(k, k1)] = -g(k1, k)
    images[(k1, k)] = -g(k, k1)
    if sign > 0:
        for i in others:
            images[(k1, i)] = g(k, i)
            images[(i, k1)] = g(i, k)
            images[(k, i)] = g(k1, i) - g(k1, k) * g(k, i)
            images[(i, k)] = g(i, k1) - g(i, k) * g(k, k1)
    else:
        # Inverse obtained by solving the positive table for a[k+1,i] and a[i,k+1].
        for i in others:
            images[(k, i)] = g(k1, i)
            images[(i, k)] = g(i, k1)
            images[(k1, i)] = g(k, i) - g(k, k1) * g(k1, i)
            images[(i, k1)] = g(i, k) - g(i, k1) * g(k1, k)
    return images


def phi_generator(k: int, sign: int, ctx: Context) -> Endomorphism:
    """The automorphism attached to sigma_k (``sign=+1``) or its inverse (``sign=-1``)."""
    if sign not in (1, -1):
        raise UsageError(f"sign must be ±1, got {sign}")
    return Endomorphism(ctx, _table(k, sign, ctx), total=True)


def phi_braid(b: BraidWord, ctx: Context | None = None) -> Endomorphism:
    """The automorphism of a braid, with ``phi(B B') = phi(B) ∘ phi(B')``.

    The image table is built one letter at a time: appending sigma on the
    right gives ``phi(B sigma)(g) = phi(B)(phi(sigma)(g))``, so only the short
    images of a single generator are ever expanded.
    """
    if ctx is None:
        ctx = Context(b.strands)
    if ctx.size < b.strands:
        raise UsageError(f"context {ctx} has fewer than {b.strands} strands")
    current = Endomorphism.identity(ctx)
    gens = ctx.generators()
    for x in b.letters:
        step = _table(abs(x), 1 if x > 0 else -1, ctx)
        current = Endomorphism(ctx, {g: apply_endo(current, step[g]) for g in gens}, total=True)
    return current
