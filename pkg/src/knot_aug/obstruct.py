"""Rational obstruction certificates.

A certificate for ``(y0, Z0)`` records that ``y0`` is not an integer power of
``Z0`` and that the specialization ``P(mu=y0, U=Z0)`` has no rational root,
with the full candidate list of the rational root theorem and the nonzero
value at every candidate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable

from .errors import DomainError, UsageError, VerificationError
from .families import figure_eight_P_derived, figure_eight_P_transcribed, torus_family
from .rings import CommPoly, RationalUniPoly, primitive_integer_coefficients, root_candidates

PUBLISHED_FIG8_VALUES = {
    Fraction(1, 2): Fraction(1),
    Fraction(-1, 2): Fraction(3),
    Fraction(1, 4): Fraction(51, 32),
    Fraction(-1, 4): Fraction(77, 32),
}


@dataclass
class PowerCheck:
    y0: Fraction
    Z0: Fraction
    result: bool
    exponents: str
    witness: int | None = None

    def __bool__(self):
        return self.result

    def to_json(self) -> dict:
        return {
            "y0": str(self.y0),
            "Z0": str(self.Z0),
            "not_a_power": self.result,
            "exponents_examined": self.exponents,
            "witness_exponent": self.witness,
        }


def not_a_power(y0, Z0) -> PowerCheck:
    """Decide exactly whether ``y0 != Z0**n`` for every integer n."""
    y0, Z0 = Fraction(y0), Fraction(Z0)
    if y0 == 0 or Z0 == 0:
        raise DomainError("not_a_power needs nonzero rationals")
    if abs(Z0) == 1:
        orbit = {0: Fraction(1), 1: Fraction(-1)} if Z0 == -1 else {0: Fraction(1)}
        for n, v in orbit.items():
            if v == y0:
                return PowerCheck(y0, Z0, False, f"orbit of {Z0} (period {len(orbit)})", n)
        return PowerCheck(y0, Z0, True, f"orbit of {Z0} (period {len(orbit)})")
    # |Z0| != 1: a^n / b^n in lowest terms grows at least like 2^|n|
    bound = max(abs(y0.numerator).bit_length(), y0.denominator.bit_length(), 1)
    for n in range(-bound, bound + 1):
        if Z0**n == y0:
            return PowerCheck(y0, Z0, False, f"[{-bound}, {bound}]", n)
    return PowerCheck(y0, Z0, True, f"[{-bound}, {bound}]")


@dataclass
class Certificate:
    family: str
    m: int | None
    y0: Fraction
    Z0: Fraction
    specialization: RationalUniPoly
    cleared: list[int]
    candidates: list[tuple[Fraction, Fraction]]
    power_check: PowerCheck | None

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "m": self.m,
            "y0": str(self.y0),
            "Z0": str(self.Z0),
            "specialization": str(self.specialization),
            "cleared_integer_polynomial": str(RationalUniPoly(self.cleared)),
            "cleared_coefficients_low_to_high": [str(c) for c in self.cleared],
            "candidates": [{"root": str(r), "value": str(v)} for r, v in self.candidates],
            "power_check": self.power_check.to_json() if self.power_check else None,
        }


@dataclass
class Refusal:
    family: str
    m: int | None
    y0: Fraction
    Z0: Fraction
    specialization: RationalUniPoly
    root: Fraction

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "m": self.m,
            "y0": str(self.y0),
            "Z0": str(self.Z0),
            "specialization": str(self.specialization),
            "rational_root": str(self.root),
        }


def specialize(P: CommPoly, y0, Z0) -> RationalUniPoly:
    return P.specialize({"mu": Fraction(y0), "U": Fraction(Z0)}).to_uni("T")


def _certify(family, m, y0, Z0, spec: RationalUniPoly, power: PowerCheck | None):
    if spec.is_zero():
        raise DomainError(f"specialization at mu={y0}, U={Z0} vanishes identically")
    if spec.coeffs[0] == 0:
        return Refusal(family, m, y0, Z0, spec, Fraction(0))
    ints = primitive_integer_coefficients(spec)
    # positive scaling only, so the cleared polynomial keeps the signs of P
    den = lcm(*(c.denominator for c in spec.coeffs))
    cleared = [int(c * den) for c in spec.coeffs]
    tested = []
    if len(ints) > 1:
        for r in root_candidates(ints):
            v = spec(r)
            if v == 0:
                return Refusal(family, m, y0, Z0, spec, r)
            tested.append((r, v))
    return Certificate(family, m, y0, Z0, spec, cleared, tested, power)


def _g(a, b):
    while b:
        a, b = b, a % b
    return a


def torus_certificate(m: int, y0=2, Z0=3) -> Certificate | Refusal:
    """Certificate that P_m(mu=y0, U=Z0) has no rational root, or the root found."""
    if m < 1:
        raise DomainError(f"m must be at least 1, got {m}")
    y0, Z0 = Fraction(y0), Fraction(Z0)
    if y0 in (0, 1):
        raise DomainError(f"side condition y0 not in {{0, 1}} violated (y0 = {y0})")
    if Z0 == 0:
        raise DomainError("side condition Z0 != 0 violated")
    power = not_a_power(y0, Z0)
    if not power:
        raise DomainError(f"side condition violated: y0 = {y0} equals Z0^{power.witness} for Z0 = {Z0}")
    return _certify("torus", m, y0, Z0, specialize(torus_family(m).P, y0, Z0), power)


def figure_eight_certificate(source: str = "published") -> Certificate:
    """Certificate at (mu, U) = (-1, -2) for the figure-eight polynomial.

    ``source="published"`` uses the published closed form and checks the recorded
    values; ``source="derived"`` uses the polynomial re-derived from the braid.
    """
    y0, Z0 = Fraction(-1), Fraction(-2)
    if source == "published":
        P = figure_eight_P_transcribed()
    elif source == "derived":
        P = figure_eight_P_derived()
    else:
        raise UsageError(f"unknown source {source!r}")
    spec = specialize(P, y0, Z0)
    family = "figure-eight" if source == "published" else "figure-eight (derived)"
    cert = _certify(family, None, y0, Z0, spec, not_a_power(y0, Z0))
    if not isinstance(cert, Certificate):
        raise VerificationError(f"P({y0}, {Z0}) has the rational root {cert.root}")
    if source == "published":
        if cert.cleared != [4, -3, 0, -4]:
            raise VerificationError(f"doubled specialization is {RationalUniPoly(cert.cleared)}, expected 4 - 3T - 4T^3")
        values = dict(cert.candidates)
        for r, v in PUBLISHED_FIG8_VALUES.items():
            if values.get(r) != v:
                raise VerificationError(f"P̄({r}) = {values.get(r)}, expected {v}")
    return cert


def reverify(cert: Certificate) -> bool:
    """Re-check a certificate with integer arithmetic only.

    Rebuilds the divisor lists by trial division, confirms every ±p/q is in
    the certificate, and evaluates ``q^d * f(p/q)`` on the cleared integer
    coefficients.
    """
    cs = list(cert.cleared)
    if cs[0] == 0:
        return False
    content = 0
    for c in cs:
        content = _g(content, abs(c))
    prim = [c // content for c in cs]
    d = len(prim) - 1
    if d == 0:
        return True

    def divs(n):
        n = abs(n)
        out = []
        i = 1
        while i * i <= n:
            if n % i == 0:
                out.append(i)
                if i != n // i:
                    out.append(n // i)
            i += 1
        return out

    listed = {r for r, _ in cert.candidates}
    for p in divs(prim[0]):
        for q in divs(prim[-1]):
            for s in (1, -1):
                if Fraction(s * p, q) not in listed:
                    return False
                num = sum(c * (s * p) ** i * q ** (d - i) for i, c in enumerate(prim))
                if num == 0:
                    return False
    return True


@dataclass
class SearchReport:
    m: int
    y0: Fraction
    certificate: Certificate | None
    log: list = field(default_factory=list)

    @property
    def exhausted(self) -> bool:
        return self.certificate is None

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "y0": str(self.y0),
            "certificate": self.certificate.to_json() if self.certificate else None,
            "exhausted": self.exhausted,
            "log": [{"Z0": str(z), "status": s, "detail": d} for z, s, d in self.log],
        }


def certificate_search(m: int, y0, Z_range: Iterable) -> SearchReport:
    """First Z0 in ``Z_range`` (scan order) that yields a certificate."""
    if m < 1:
        raise DomainError(f"m must be at least 1, got {m}")
    values = [Fraction(z) for z in Z_range]
    if not values:
        raise UsageError("empty Z range")
    y0 = Fraction(y0)
    rep = SearchReport(m, y0, None)
    for z in values:
        if y0 in (0, 1):
            rep.log.append((z, "skipped", f"y0 = {y0} excluded"))
            continue
        if z == 0:
            rep.log.append((z, "skipped", "Z0 = 0"))
            continue
        pc = not_a_power(y0, z)
        if not pc:
            rep.log.append((z, "skipped", f"y0 = Z0^{pc.witness}"))
            continue
        out = torus_certificate(m, y0, z)
        if isinstance(out, Certificate):
            rep.log.append((z, "certificate", str(out.specialization)))
            rep.certificate = out
            break
        rep.log.append((z, "refused", f"rational root {out.root}"))
    return rep


def parse_range(text: str) -> list[Fraction]:
    """``"2..50"`` (inclusive integers) or a comma/space separated list of rationals."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        try:
            a, b = int(lo), int(hi)
        except ValueError:
            raise UsageError(f"bad range {text!r}") from None
        return [Fraction(k) for k in range(a, b + 1)]
    try:
        return [Fraction(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"bad value list {text!r}") from None
