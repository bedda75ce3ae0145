"""Canonical symbolic algebra of parafermion polynomials.

Operators are stored in normal order: every element is a finite linear
combination of ordered monomials C_I = c_1^{a_1} ... c_L^{a_L} with exponents
mod n, keyed by their exponent vector.  Products, adjoints, reflection and
gauge transformations all re-canonicalize eagerly, so equality of operators
is equality of coefficient maps.

Every phase produced by these operations is a power of the primitive 2n-th
root of unity zeta = e^{i pi / n} (zeta^2 = omega).  Phase exponents are
computed with exact integer arithmetic mod 2n and converted to complex
numbers through a per-order table of exactly-constructed roots, so repeated
products do not accumulate phase drift beyond a single rounding per factor.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .exponents import (
    ExponentVector,
    add,
    circ,
    complement,
    degree,
    reflect_vector,
    zero_vector,
)

COEFF_TOL = 1e-12


@lru_cache(maxsize=None)
def _zeta_table(n: int) -> tuple[complex, ...]:
    return tuple(cmath.exp(1j * math.pi * k / n) for k in range(2 * n))


def zeta_power(n: int, k: int) -> complex:
    """zeta^k with zeta = e^{i pi / n}, the primitive 2n-th root of unity."""
    return _zeta_table(n)[k % (2 * n)]


def omega_power(n: int, k: int) -> complex:
    """omega^k with omega = e^{2 pi i / n} = zeta^2."""
    return _zeta_table(n)[(2 * k) % (2 * n)]


@dataclass(frozen=True)
class PhaseExponent:
    """Exact root-of-unity phase zeta^value, value an integer mod 2n."""

    value: int
    order: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % (2 * self.order))

    @classmethod
    def one(cls, n: int) -> "PhaseExponent":
        return cls(0, n)

    @classmethod
    def minus_one(cls, n: int) -> "PhaseExponent":
        return cls(n, n)

    @classmethod
    def from_omega(cls, n: int, k: int) -> "PhaseExponent":
        return cls(2 * k, n)

    def __mul__(self, other: "PhaseExponent") -> "PhaseExponent":
        if self.order != other.order:
            raise ValueError("phase exponents of different order")
        return PhaseExponent(self.value + other.value, self.order)

    def inverse(self) -> "PhaseExponent":
        return PhaseExponent(-self.value, self.order)

    def is_one(self) -> bool:
        return self.value == 0

    def to_complex(self) -> complex:
        return zeta_power(self.order, self.value)


class Side(Enum):
    MINUS = "minus"
    PLUS = "plus"
    CROSSING = "crossing"
    SCALAR = "scalar"


@dataclass(frozen=True)
class SideClass:
    side: Side
    observable: bool


class Polynomial:
    """Normal-ordered polynomial in parafermion generators.

    Immutable; ``terms`` maps ExponentVector -> nonzero complex coefficient.
    """

    __slots__ = ("terms", "order", "sites")

    def __init__(self, terms, n: int, L: int, _drop_tol: float = 0.0):
        clean: dict[ExponentVector, complex] = {}
        for vec, coeff in dict(terms).items():
            if vec.order != n or vec.sites != L:
                raise ValueError("term key does not match polynomial n, L")
            c = complex(coeff)
            if c != 0 and abs(c) > _drop_tol:
                clean[vec] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "order", n)
        object.__setattr__(self, "sites", L)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n: int, L: int) -> "Polynomial":
        return cls({}, n, L)

    @classmethod
    def identity(cls, n: int, L: int) -> "Polynomial":
        return cls({zero_vector(n, L): 1.0 + 0.0j}, n, L)

    @classmethod
    def monomial(cls, coeff: complex, vec: ExponentVector) -> "Polynomial":
        return cls({vec: coeff}, vec.order, vec.sites)

    # -- linear structure ---------------------------------------------

    def _require_same_space(self, other: "Polynomial") -> None:
        if self.order != other.order or self.sites != other.sites:
            raise ValueError("polynomials on different algebras")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._require_same_space(other)
        out = dict(self.terms)
        for vec, c in other.terms.items():
            s = out.get(vec, 0) + c
            if s == 0:
                out.pop(vec, None)
            else:
                out[vec] = s
        return Polynomial(out, self.order, self.sites)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "Polynomial":
        s = complex(scalar)
        return Polynomial(
            {v: s * c for v, c in self.terms.items()}, self.order, self.sites
        )

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return canonical_product(self, other)
        return complex(other) * self

    def __neg__(self) -> "Polynomial":
        return (-1) * self

    # -- queries --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, vec: ExponentVector) -> complex:
        return self.terms.get(vec, 0j)

    def constant_term(self) -> complex:
        return self.terms.get(zero_vector(self.order, self.sites), 0j)

    def norm1(self) -> float:
        return sum(abs(c) for c in self.terms.values())

    def almost_equal(self, other: "Polynomial", tol: float = COEFF_TOL) -> bool:
        self._require_same_space(other)
        keys = set(self.terms) | set(other.terms)
        scale = 1.0 + max(self.norm1(), other.norm1())
        return all(
            abs(self.terms.get(k, 0) - other.terms.get(k, 0)) <= tol * scale
            for k in keys
        )

    def __repr__(self):
        if not self.terms:
            return f"Polynomial.zero(n={self.order}, L={self.sites})"
        parts = [f"{c!r}*C{v.entries}" for v, c in sorted(
            self.terms.items(), key=lambda kv: kv[0].entries)]
        return " + ".join(parts)


# -- core operations ----------------------------------------------------


def canonical_product(p: Polynomial, q: Polynomial) -> Polynomial:
    """Normal-ordered product: C_I C_J = omega^{-circ(I, J)} C_{I+J}."""
    p._require_same_space(q)
    n, L = p.order, p.sites
    out: dict[ExponentVector, complex] = {}
    for vi, ci in p.terms.items():
        for vj, cj in q.terms.items():
            phase = omega_power(n, -circ(vi, vj))
            key = add(vi, vj)
            s = out.get(key, 0) + ci * cj * phase
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
    return Polynomial(out, n, L)


def adjoint(p: Polynomial) -> Polynomial:
    """Hermitian adjoint: C_I^* = omega^{-circ(I, I)} C_{I^c}."""
    n, L = p.order, p.sites
    out: dict[ExponentVector, complex] = {}
    for vec, c in p.terms.items():
        key = complement(vec)
        out[key] = out.get(key, 0) + c.conjugate() * omega_power(n, -circ(vec, vec))
    return Polynomial(out, n, L)


def reflect(p: Polynomial) -> Polynomial:
    """Anti-linear reflection automorphism.

    Sends c_i to c_{L-i+1}^{n-1}; on monomials
    C_I -> omega^{-circ(I, I)} C_{reverse(I^c)} with conjugated coefficient.
    """
    n, L = p.order, p.sites
    out: dict[ExponentVector, complex] = {}
    for vec, c in p.terms.items():
        key = reflect_vector(complement(vec))
        out[key] = out.get(key, 0) + c.conjugate() * omega_power(n, -circ(vec, vec))
    return Polynomial(out, n, L)


def gauge_apply(p: Polynomial, site: int | None = None) -> Polynomial:
    """Gauge automorphism: local U_site scales a term by omega^{a_site};
    the global transformation (site=None) scales by omega^{degree}."""
    n, L = p.order, p.sites
    if site is not None and not 1 <= site <= L:
        raise ValueError(f"site {site} outside 1..{L}")
    out = {}
    for vec, c in p.terms.items():
        k = degree(vec) if site is None else vec.entries[site - 1]
        out[vec] = c * omega_power(n, k)
    return Polynomial(out, n, L)


def classify(p: Polynomial) -> SideClass:
    """Side membership relative to the reflection cut, plus observability.

    A polynomial is observable when every term has degree divisible by n
    (global gauge invariance).
    """
    observable = all(degree(v) % p.order == 0 for v in p.terms)
    nonscalar = [v for v in p.terms if not v.is_zero()]
    if not nonscalar:
        return SideClass(Side.SCALAR, observable)
    if all(v.supported_on_minus() for v in nonscalar):
        return SideClass(Side.MINUS, observable)
    if all(v.supported_on_plus() for v in nonscalar):
        return SideClass(Side.PLUS, observable)
    return SideClass(Side.CROSSING, observable)


def build_X(vec: ExponentVector, coupling: float) -> Polynomial:
    """Reflection- and gauge-invariant crossing monomial
    J * omega^{d^2/2} C_I theta(C_I), with d = degree(I) and I on the minus half.
    """
    if not vec.supported_on_minus():
        raise ValueError("exponent vector must be supported on sites 1..L/2")
    d = degree(vec)
    if d == 0:
        raise ValueError("degree must be positive")
    n = vec.order
    c_i = Polynomial.monomial(1.0, vec)
    body = canonical_product(c_i, reflect(c_i))
    phase = zeta_power(n, d * d)
    return (coupling * phase) * body


def hermiticity_condition(vec: ExponentVector) -> bool:
    """True iff the crossing monomial built on I can be hermitian: I^c = I,
    i.e. every nonzero entry equals n/2 (so n must be even)."""
    n = vec.order
    if n % 2 != 0:
        return False
    return all(e == 0 or e == n // 2 for e in vec.entries)


def hermitian_pair(p: Polynomial) -> Polynomial:
    """p + p^*, reflection symmetry preserved and always hermitian."""
    return p + adjoint(p)


# -- textual serialization ----------------------------------------------


def to_text(p: Polynomial) -> str:
    """One term per line, ``(re+imj) * c1^a1 c2^a2 ...``; the identity term
    is written ``(re+imj) * 1``.  Round-trips exactly (float repr)."""
    lines = [f"# n={p.order} L={p.sites}"]
    for vec in sorted(p.terms, key=lambda v: v.entries):
        c = p.terms[vec]
        factors = " ".join(
            f"c{j + 1}^{e}" for j, e in enumerate(vec.entries) if e != 0
        )
        lines.append(f"{c!r} * {factors if factors else '1'}")
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Polynomial:
    header = None
    terms: dict[ExponentVector, complex] = {}
    n = L = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if header is None:
                fields = dict(f.split("=") for f in line[1:].split())
                n, L = int(fields["n"]), int(fields["L"])
                header = lineno
            continue
        if n is None:
            raise ValueError(f"line {lineno}: term before '# n=.. L=..' header")
        coeff_str, _, mono_str = line.partition("*")
        coeff = complex(coeff_str.strip())
        entries = [0] * L
        mono_str = mono_str.strip()
        if mono_str != "1":
            for factor in mono_str.split():
                site_str, _, exp_str = factor.partition("^")
                if not site_str.startswith("c"):
                    raise ValueError(f"line {lineno}: bad factor {factor!r}")
                entries[int(site_str[1:]) - 1] = int(exp_str)
        vec = ExponentVector(tuple(entries), n)
        terms[vec] = terms.get(vec, 0) + coeff
    if n is None:
        raise ValueError("missing '# n=.. L=..' header")
    return Polynomial(terms, n, L)
