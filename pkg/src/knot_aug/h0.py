"""Matrices A, Â, Λ, Φ^L of a braid and the commutative presentation of HC_0^ab."""

from __future__ import annotations

from dataclasses import dataclass

from .braid import BraidWord, closure_is_knot, phi_braid
from .errors import DomainError, UsageError
from .freealg import Context, Endomorphism, FreeAlgElement, left_star_coefficients
from .rings import LAMBDA, MU, ONE, U, CommPoly, LaurentPoly

Matrix = list[list[FreeAlgElement]]


def variable_names(n: int) -> tuple[str, ...]:
    """Row-major names ``a[i,j]`` of the commutative polynomial ring on n strands."""
    return tuple(f"a[{i},{j}]" for i in range(1, n + 1) for j in range(1, n + 1) if i != j)


def _check_knot(b: BraidWord) -> tuple[int, ...]:
    ok, perm = closure_is_knot(b)
    if not ok:
        raise DomainError(
            f"closure is a link, not a knot (permutation {list(perm)}); "
            "Λ exponent non-integral / multi-component closure"
        )
    # a single n-cycle has sign (-1)^(n-1), so the word length is n-1 mod 2
    assert (b.writhe - b.strands + 1) % 2 == 0
    return perm


def lambda_entry(b: BraidWord) -> LaurentPoly:
    """Λ_{1,1} = lambda * mu^w * U^(-(w-n+1)/2)."""
    _check_knot(b)
    w, n = b.writhe, b.strands
    return LaurentPoly.monomial(1, lam=1, mu=w, U=-(w - n + 1) // 2)


def build_matrices(b: BraidWord):
    """Return ``(A, Ahat, Lambda)``; Lambda is the list of diagonal entries."""
    _check_knot(b)
    n = b.strands
    ctx = Context(n)
    A: Matrix = []
    Ahat: Matrix = []
    for i in range(1, n + 1):
        row, hrow = [], []
        for j in range(1, n + 1):
            if i == j:
                row.append(FreeAlgElement.scalar(ctx, ONE - MU))
                hrow.append(FreeAlgElement.scalar(ctx, U - MU))
            elif i < j:
                a = FreeAlgElement.gen(ctx, i, j)
                row.append(a)
                hrow.append(a * U)
            else:
                a = FreeAlgElement.gen(ctx, i, j) * (-MU)
                row.append(a)
                hrow.append(a)
        A.append(row)
        Ahat.append(hrow)
    Lambda = [lambda_entry(b)] + [ONE] * (n - 1)
    return A, Ahat, Lambda


def phiL_matrix(b: BraidWord, phi: Endomorphism | None = None) -> Matrix:
    """Rows of Φ^L_B read off from phi_B(a[i,*]) on n+1 strands."""
    _check_knot(b)
    n = b.strands
    ctx = Context(n, star=True)
    if phi is None:
        phi = phi_braid(b, ctx)
    return [left_star_coefficients(phi.image((i, n + 1))) for i in range(1, n + 1)]


def _restrict(x: FreeAlgElement, ctx: Context) -> FreeAlgElement:
    return x.with_context(ctx)


def h0_generators(b: BraidWord, phi: Endomorphism | None = None) -> tuple[Matrix, Matrix]:
    """The matrices ``A - Λ phi_B(A) Λ^-1`` and ``Â - Λ Φ^L A``, entrywise in the free algebra."""
    A, Ahat, Lam = build_matrices(b)
    n = b.strands
    sctx = Context(n, star=True)
    ctx = Context(n)
    if phi is None:
        phi = phi_braid(b, sctx)
    PhiL = phiL_matrix(b, phi)
    lam_inv = [x.inverse() for x in Lam]

    first: Matrix = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                image = A[i][j]  # scalar entry, fixed by phi
            else:
                image = _restrict(phi(A[i][j].with_context(sctx)), ctx)
            row.append(A[i][j] - image * (Lam[i] * lam_inv[j]))
        first.append(row)

    second: Matrix = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = FreeAlgElement.scalar(ctx, 0)
            for k in range(n):
                if PhiL[i][k]:
                    acc = acc + PhiL[i][k] * A[k][j]
            row.append(Ahat[i][j] - acc * Lam[i])
        second.append(row)
    return first, second


def abelianize(x: FreeAlgElement, variables: tuple[str, ...] | None = None) -> CommPoly:
    """Image under the commutative quotient map a[i,j] -> a[i,j]."""
    ctx = x.ctx
    if any(ctx.is_starred(g) for g in x.letters()):
        raise UsageError("abelianize is defined on unstarred elements only")
    if variables is None:
        variables = variable_names(ctx.n)
    index = {}
    for pos, name in enumerate(variables):
        index[name] = pos
    nv = len(variables)
    out: dict = {}
    for w, c in x.items():
        e = [0] * nv
        for g in w:
            name = f"a[{g[0]},{g[1]}]"
            if name not in index:
                raise UsageError(f"{name} is not among the target variables")
            e[index[name]] += 1
        key = tuple(e)
        prev = out.get(key)
        out[key] = c if prev is None else prev + c
    return CommPoly(variables, out)


@dataclass
class H0Presentation:
    braid: BraidWord
    A: Matrix
    Ahat: Matrix
    Lambda: list[LaurentPoly]
    PhiL: Matrix
    first: Matrix
    second: Matrix
    variables: tuple[str, ...]
    generators: list[CommPoly]
    permutation: tuple[int, ...]

    @property
    def writhe(self) -> int:
        return self.braid.writhe

    def entry(self, which: int, i: int, j: int) -> CommPoly:
        """Abelianized (i, j) entry (1-based) of the first (``which=1``) or second matrix."""
        m = self.first if which == 1 else self.second
        return abelianize(m[i - 1][j - 1], self.variables)

    def to_json(self) -> dict:
        def mat(m):
            return [[str(x) for x in row] for row in m]

        return {
            "strands": self.braid.strands,
            "word": list(self.braid.letters),
            "writhe": self.writhe,
            "permutation": list(self.permutation),
            "variables": list(self.variables),
            "matrices": {
                "A": mat(self.A),
                "Ahat": mat(self.Ahat),
                "Lambda": [str(x) for x in self.Lambda],
                "PhiL": mat(self.PhiL),
                "A - Lambda phi(A) Lambda^-1": mat(self.first),
                "Ahat - Lambda PhiL A": mat(self.second),
            },
            "generators": [str(g) for g in self.generators],
        }


def presentation(b: BraidWord) -> H0Presentation:
    """Full record for a braid with knot closure; zero generators are dropped."""
    perm = _check_knot(b)
    n = b.strands
    phi = phi_braid(b, Context(n, star=True))
    A, Ahat, Lam = build_matrices(b)
    PhiL = phiL_matrix(b, phi)
    first, second = h0_generators(b, phi)
    variables = variable_names(n)
    gens = []
    for m in (first, second):
        for row in m:
            for x in row:
                g = abelianize(x, variables)
                if g:
                    gens.append(g)
    return H0Presentation(b, A, Ahat, Lam, PhiL, first, second, variables, gens, perm)
