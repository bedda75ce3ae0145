"""Explicit irreducible matrix representation of the parafermion algebra.

The representation acts on (C^n)^{tensor L/2} and is built from the clock
matrix sigma = diag(1, omega, ..., omega^{n-1}) and the shift matrix tau
(cyclic permutation), which satisfy sigma tau = omega tau sigma.  Generators:

    c_{2a-1} = tau^{x(a-1)} (x) sigma      (x) Id ...
    c_{2a}   = zeta^{n-1} tau^{x(a-1)} (x) (sigma tau) (x) Id ...

where tau^{x(a-1)} means tau on each of the first a-1 factors.  The
zeta^{n-1} prefactor (zeta = e^{i pi / n}) fixes c^n = Id for every parity
of n, since (sigma tau)^n = (-1)^{n-1} Id.

This module is the numerical oracle for every symbolic identity in
:mod:`pararp.algebra`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .algebra import Polynomial, zeta_power
from .exponents import ExponentVector, zero_vector

DEFAULT_DIM_CAP = 4096
DEFAULT_ENUM_CAP = 100_000


class DimensionCapError(RuntimeError):
    """Requested representation exceeds the configured resource cap."""


def clock_shift(n: int) -> tuple[np.ndarray, np.ndarray]:
    """The n x n clock and shift matrices (sigma, tau)."""
    if n < 2:
        raise ValueError(f"order must be >= 2, got {n}")
    omega = np.exp(2j * np.pi / n)
    sigma = np.diag(omega ** np.arange(n))
    tau = np.zeros((n, n), dtype=complex)
    for k in range(n):
        tau[(k + 1) % n, k] = 1.0
    return sigma, tau


@dataclass
class Representation:
    """L generator matrices of size n^{L/2} acting on the full chain."""

    order: int
    sites: int
    dim: int
    generators: list[np.ndarray]
    _monomial_cache: dict[tuple[int, ...], np.ndarray] = field(
        default_factory=dict, repr=False
    )

    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex)

    def monomial_matrix(self, vec: ExponentVector) -> np.ndarray:
        """Matrix of the ordered monomial C_I, cached per exponent tuple."""
        if vec.order != self.order or vec.sites != self.sites:
            raise ValueError("exponent vector does not match representation")
        key = vec.entries
        cached = self._monomial_cache.get(key)
        if cached is not None:
            return cached
        m = self.identity()
        for j, e in enumerate(vec.entries):
            if e:
                m = m @ np.linalg.matrix_power(self.generators[j], e)
        self._monomial_cache[key] = m
        return m


def build_generators(
    n: int, L: int, dim_cap: int = DEFAULT_DIM_CAP
) -> Representation:
    """Construct the clock/shift ladder representation for L (even) sites."""
    if n < 2:
        raise ValueError(f"order must be >= 2, got {n}")
    if L < 2 or L % 2 != 0:
        raise ValueError(f"number of sites must be even and >= 2, got {L}")
    half = L // 2
    dim = n**half
    if dim > dim_cap:
        raise DimensionCapError(
            f"representation dimension {dim} exceeds cap {dim_cap}"
        )
    sigma, tau = clock_shift(n)
    eye = np.eye(n, dtype=complex)
    prefactor = zeta_power(n, n - 1)
    generators = []
    for a in range(half):
        odd_factors = [tau] * a + [sigma] + [eye] * (half - a - 1)
        even_factors = [tau] * a + [sigma @ tau] + [eye] * (half - a - 1)
        m_odd = odd_factors[0]
        m_even = even_factors[0]
        for f_o, f_e in zip(odd_factors[1:], even_factors[1:]):
            m_odd = np.kron(m_odd, f_o)
            m_even = np.kron(m_even, f_e)
        generators.append(m_odd)
        generators.append(prefactor * m_even)
    return Representation(order=n, sites=L, dim=dim, generators=generators)


def to_matrix(p: Polynomial, rep: Representation) -> np.ndarray:
    """Evaluate a normal-ordered polynomial in the representation."""
    if p.order != rep.order or p.sites != rep.sites:
        raise ValueError("polynomial does not match representation")
    m = np.zeros((rep.dim, rep.dim), dtype=complex)
    for vec, coeff in p.terms.items():
        m += coeff * rep.monomial_matrix(vec)
    return m


def trace_monomial(vec: ExponentVector) -> complex:
    """Analytic trace of C_I: n^{L/2} for the identity, else 0."""
    if vec.is_zero():
        return complex(vec.order ** (vec.sites // 2))
    return 0j


def all_exponent_vectors(n: int, L: int):
    """Iterate all n^L exponent vectors in lexicographic order."""
    for entries in itertools.product(range(n), repeat=L):
        yield ExponentVector(entries, n)


def decompose(
    a: np.ndarray, rep: Representation, enum_cap: int = DEFAULT_ENUM_CAP,
    tol: float = 1e-12,
) -> Polynomial:
    """Expand a matrix in the monomial basis: coefficients
    Tr(C_I^* A) / n^{L/2}.  Enumerates all n^L monomials."""
    n, L = rep.order, rep.sites
    if a.shape != (rep.dim, rep.dim):
        raise ValueError(
            f"matrix shape {a.shape} does not match dimension {rep.dim}"
        )
    if n**L > enum_cap:
        raise DimensionCapError(
            f"basis size {n**L} exceeds enumeration cap {enum_cap}"
        )
    scale = 1.0 + float(np.abs(a).max(initial=0.0))
    terms = {}
    for vec in all_exponent_vectors(n, L):
        c_i = rep.monomial_matrix(vec)
        coeff = np.trace(c_i.conj().T @ a) / rep.dim
        if abs(coeff) > tol * scale:
            terms[vec] = coeff
    return Polynomial(terms, n, L)


def verify_yamazaki(rep: Representation) -> dict[str, float]:
    """Max residuals of the defining relations; reported, never raised."""
    n = rep.order
    eye = rep.identity()
    omega = np.exp(2j * np.pi / n)
    r_order = 0.0
    r_unitary = 0.0
    r_commute = 0.0
    for j, g in enumerate(rep.generators):
        r_order = max(r_order, _opnorm(np.linalg.matrix_power(g, n) - eye))
        r_unitary = max(r_unitary, _opnorm(g @ g.conj().T - eye))
        for gp in rep.generators[j + 1:]:
            r_commute = max(r_commute, _opnorm(g @ gp - omega * gp @ g))
    return {
        "order_residual": r_order,
        "unitarity_residual": r_unitary,
        "commutation_residual": r_commute,
    }


def _opnorm(a: np.ndarray) -> float:
    """Frobenius norm, a conservative stand-in for the operator norm."""
    return float(np.linalg.norm(a))


def matrix_dump(a: np.ndarray) -> str:
    """Row-major text grid with `re+im i` entries, for debugging."""
    rows = []
    for row in a:
        rows.append("  ".join(f"{z.real:+.6e}{z.imag:+.6e}i" for z in row))
    return "\n".join(rows) + "\n"


def identity_polynomial_matrix(rep: Representation) -> np.ndarray:
    return to_matrix(Polynomial.identity(rep.order, rep.sites), rep)


def zero_exponent(rep: Representation) -> ExponentVector:
    return zero_vector(rep.order, rep.sites)
