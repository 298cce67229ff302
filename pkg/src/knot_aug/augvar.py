"""Augmentation varieties over prime fields and the tools acting on them."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DomainError, ResourceError, UsageError
from .h0 import H0Presentation
from .rings import CommPoly, PrimeFieldElem, is_prime

DEFAULT_BUDGET = 10**8

Point = tuple[int, int, int]


def budget_from_env() -> int:
    raw = os.environ.get("KNOTAUG_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass(frozen=True)
class VarietyPointSet:
    """Points ``(x, y, Z) = (eps(lambda), eps(mu), eps(U))`` in (F_p^*)^3."""

    p: int
    points: frozenset
    witnesses: dict | None = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        for pt in self.points:
            if len(pt) != 3 or any(c % self.p == 0 or not 0 < c < self.p for c in pt):
                raise DomainError(f"{pt} is not a point of (F_{self.p}^*)^3")

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(sorted(self.points))

    def __contains__(self, pt):
        return tuple(pt) in self.points

    def project_yZ(self) -> set:
        return {(y, Z) for _, y, Z in self.points}

    def to_json(self) -> dict:
        out = {"p": self.p, "points": [list(pt) for pt in sorted(self.points)]}
        if self.witnesses is not None:
            out["witnesses"] = {",".join(map(str, pt)): self.witnesses[pt] for pt in sorted(self.witnesses)}
        return out


def _check_prime(p: int):
    if not isinstance(p, int) or p < 2 or not is_prime(p):
        raise DomainError(f"{p} is not prime")


# ---------------------------------------------------------------------------
# compiling a presentation into kernel arrays
# ---------------------------------------------------------------------------


@dataclass
class CompiledSystem:
    p: int
    names: list[str]  # search order; first three are lambda, mu, U
    lo: np.ndarray
    coef: np.ndarray
    texp: np.ndarray
    gptr: np.ndarray
    lptr: np.ndarray
    pw: np.ndarray
    inconsistent: bool
    full_space: int


def _reduce_generator(g: CommPoly, p: int):
    """Terms of ``g`` mod p as ``(coef, (e_lambda, e_mu, e_U, *e_vars))``, shifted to
    nonnegative Laurent exponents (multiplying by a unit does not move the zero set)."""
    raw = []
    for evars, c in g.items():
        for (el, em, eu), k in c.items():
            if isinstance(k, int):
                r = k % p
            else:
                if k.denominator % p == 0:
                    raise DomainError(f"coefficient {k} is undefined mod {p}")
                r = k.numerator * pow(k.denominator, -1, p) % p
            raw.append((r, (el, em, eu) + tuple(evars)))
    if not raw:
        return []
    mins = [min(e[i] for _, e in raw) for i in range(3)]
    merged: dict = {}
    for r, e in raw:
        key = (e[0] - mins[0], e[1] - mins[1], e[2] - mins[2]) + e[3:]
        merged[key] = (merged.get(key, 0) + r) % p
    return [(r, e) for e, r in merged.items() if r]


def _order_variables(gens: list, nvars: int) -> list[int]:
    """Outer three fixed, remaining variables chosen greedily so generators close early."""
    supports = [{i for _, e in terms for i in range(nvars) if e[i]} for terms in gens]
    chosen = [0, 1, 2]
    rest = list(range(3, nvars))
    while rest:
        have = set(chosen)

        def score(v):
            closed = sum(1 for s in supports if v in s and s <= have | {v})
            touching = sum(1 for s in supports if v in s)
            return (closed, touching, -v)

        best = max(rest, key=score)
        chosen.append(best)
        rest.remove(best)
    return chosen


def compile_system(generators: list[CommPoly], p: int) -> CompiledSystem:
    _check_prime(p)
    if not generators:
        raise UsageError("empty generator list")
    variables = generators[0].variables
    for g in generators:
        if g.variables != variables:
            raise UsageError("generators live in different rings")
    names_all = ["lambda", "mu", "U"] + list(variables)
    nvars = len(names_all)
    reduced = [_reduce_generator(g, p) for g in generators]
    reduced = [r for r in reduced if r]
    inconsistent = False
    nonconst = []
    for terms in reduced:
        if all(not any(e) for _, e in terms):
            inconsistent = True  # nonzero constant times a unit
        else:
            nonconst.append(terms)
    order = _order_variables(nonconst, nvars)
    pos = {v: k for k, v in enumerate(order)}
    entries = []
    for terms in nonconst:
        level = max(pos[i] for _, e in terms for i in range(nvars) if e[i])
        entries.append((level, terms))
    entries.sort(key=lambda t: t[0])
    coef, texp, gptr = [], [], [0]
    lptr = np.zeros(nvars + 1, dtype=np.int64)
    for level, terms in entries:
        for r, e in terms:
            coef.append(r)
            texp.append([e[order[k]] for k in range(nvars)])
        gptr.append(len(coef))
        lptr[level + 1] += 1
    lptr = np.cumsum(lptr)
    texp_arr = np.array(texp, dtype=np.int64).reshape(len(texp), nvars)
    max_exp = int(texp_arr.max()) if texp_arr.size else 1
    lo = np.array([1 if k < 3 else 0 for k in range(nvars)], dtype=np.int64)
    return CompiledSystem(
        p=p,
        names=[names_all[v] for v in order],
        lo=lo,
        coef=np.array(coef, dtype=np.int64),
        texp=texp_arr,
        gptr=np.array(gptr, dtype=np.int64),
        lptr=lptr.astype(np.int64),
        pw=_kernels.power_table(p, max(max_exp, 1)),
        inconsistent=inconsistent,
        full_space=(p - 1) ** 3 * p ** (nvars - 3),
    )


def enumerate_system(
    generators: list[CommPoly],
    p: int,
    *,
    witnesses: bool = False,
    budget: int | None = None,
    backend: str | None = None,
) -> VarietyPointSet:
    """Zero locus of the generators in (F_p^*)^3 x F_p^k, projected to (lambda, mu, U)."""
    budget = budget_from_env() if budget is None else budget
    backend = backend or _kernels.default_backend()
    sysm = compile_system(generators, p)
    if sysm.inconsistent:
        return VarietyPointSet(p, frozenset(), {} if witnesses else None)
    sols, visited, exceeded = _kernels.search(
        backend, p, sysm.lo, sysm.coef, sysm.texp, sysm.gptr, sysm.lptr, sysm.pw, 3, budget
    )
    if exceeded:
        raise ResourceError(
            f"enumeration over F_{p} exceeded the budget of {budget} evaluated assignments "
            f"(full search space {sysm.full_space})",
            required=sysm.full_space,
        )
    points = {}
    for row in sols:
        assignment = dict(zip(sysm.names, (int(v) for v in row)))
        pt = (assignment["lambda"], assignment["mu"], assignment["U"])
        points.setdefault(pt, assignment)
    wit = None
    if witnesses:
        wit = {pt: {k: points[pt][k] for k in sorted(points[pt])} for pt in points}
    return VarietyPointSet(p, frozenset(points), wit)


def enumerate_variety(
    pres: H0Presentation,
    p: int,
    *,
    witnesses: bool = False,
    budget: int | None = None,
    backend: str | None = None,
) -> VarietyPointSet:
    """V_{F_p}(K) from the abelianized presentation of a braid closure."""
    gens = pres.generators
    if not gens:
        gens = [CommPoly.const(pres.variables, 0)]
    return enumerate_system(gens, p, witnesses=witnesses, budget=budget, backend=backend)


def check_witness(pres: H0Presentation, p: int, assignment: dict) -> bool:
    """Re-evaluate every generator at a witness with exact F_p arithmetic."""
    vals = {k: PrimeFieldElem(p, v) for k, v in assignment.items()}
    return all(g.evaluate(vals) == 0 for g in pres.generators)


def unknot_variety(p: int) -> VarietyPointSet:
    """Closed form of {Z - x - y + xy = 0} in (F_p^*)^3."""
    _check_prime(p)
    pts = set()
    for x in range(1, p):
        pts.add((x, 1, 1))
    for y in range(2, p):
        inv = pow(1 - y, -1, p)
        for Z in range(1, p):
            x = (Z - y) * inv % p
            if x:
                pts.add((x, y, Z))
    return VarietyPointSet(p, frozenset(pts))


def monomial_map(V: VarietyPointSet, a: int, b: int, c: int, d: int) -> VarietyPointSet:
    """Image of ``(x, y, Z) -> (x^a y^b Z^c, y^a Z^d, Z)``."""
    if a not in (1, -1):
        raise UsageError(f"a must be ±1, got {a}")
    p = V.p
    out = set()
    for x, y, Z in V.points:
        out.add((pow(x, a, p) * pow(y, b, p) * pow(Z, c, p) % p, pow(y, a, p) * pow(Z, d, p) % p, Z))
    return VarietyPointSet(p, frozenset(out))


def unknot_witness(p: int, y: int, Z: int, a: int, d: int) -> Point:
    """The unknot point (eps(lambda), (y Z^-d)^a, Z) whose image has (y, Z)-projection (y, Z)."""
    t = pow(y * pow(Z, -d, p) % p, a, p)
    if t == 1 or t == Z % p:
        raise DomainError(f"y = {y} is a power of Z = {Z} in F_{p}")
    lam = (Z - t) * pow(1 - t, -1, p) % p
    return (lam, t, Z % p)


# ---------------------------------------------------------------------------
# containment
# ---------------------------------------------------------------------------


@dataclass
class ContainmentReport:
    p: int
    checked: int
    violations: list = field(default_factory=list)
    roots: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "checked": self.checked,
            "ok": self.ok,
            "violations": [list(v) for v in self.violations],
        }


def specialization_roots_mod_p(P: CommPoly, y: int, Z: int, p: int) -> list[int]:
    """Roots in F_p of P(mu = y, U = Z) as a polynomial in T, by scanning residues."""
    coeffs = []
    assign = {"mu": PrimeFieldElem(p, y), "U": PrimeFieldElem(p, Z), "lambda": PrimeFieldElem(p, 1)}
    for c in P.univariate_coefficients("T"):
        coeffs.append(int(c.evaluate(assign)))
    roots = []
    for t in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * t + c) % p
        if acc == 0:
            roots.append(t)
    return roots


def containment_check(V: VarietyPointSet, P: CommPoly) -> ContainmentReport:
    """Confirm that P(mu = y, U = Z) has a root in F_p for every point of V."""
    rep = ContainmentReport(V.p, 0)
    cache: dict = {}
    for x, y, Z in sorted(V.points):
        rep.checked += 1
        if (y, Z) not in cache:
            cache[(y, Z)] = specialization_roots_mod_p(P, y, Z, V.p)
        roots = cache[(y, Z)]
        rep.roots[(y, Z)] = roots
        if not roots:
            rep.violations.append((x, y, Z))
    return rep
