"""Reflection-positivity verification engine.

Everything here evaluates trace functionals of the form

    f(A, B) = Tr(A theta(B) e^{-H})

against explicit matrices: positivity of f on the diagonal over the
observable algebra of the minus half, Gram positive-semidefiniteness and
the Schwarz inequality, Trotter product approximants of e^{-H}, the
conservation law behind the positivity proof, reflection bounds, the
known f(c) counterexample on the non-gauge-invariant algebra, and loop
operator expectations in ground states.

Positivity tolerances are relative: a value v counts as a violation when
it falls below -tol * (1 + |v|).  Aggregate report statistics are stored in
the same normalized units so the report invariant (no violations iff all
aggregates within tolerance) holds exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .algebra import (
    Polynomial,
    Side,
    canonical_product,
    classify,
    omega_power,
    reflect,
    zeta_power,
)
from .exponents import ExponentVector, degree, unit_vector
from .hamiltonian import CouplingTable, HamiltonianSpec, assemble
from .representation import (
    Representation,
    all_exponent_vectors,
    build_generators,
    to_matrix,
)

DEFAULT_TOL = 1e-9


class OverflowError_(RuntimeError):
    """Matrix exponential overflowed."""


def matrix_exp(a: np.ndarray) -> np.ndarray:
    """Matrix exponential (scaling-and-squaring with Pade approximant)."""
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    if not np.any(a):
        return np.eye(a.shape[0], dtype=complex)
    e = scipy.linalg.expm(np.asarray(a, dtype=complex))
    if not np.all(np.isfinite(e)):
        raise OverflowError_("matrix exponential overflowed")
    return e


@dataclass
class RPReport:
    """Structured verification result.

    ``min_diagonal_real`` and ``max_diagonal_imag_abs`` are normalized by
    1 + |f(A, A)| per sample; ``gram_min_eigenvalue`` by 1 + max |G_ab|.
    """

    partition_function: complex
    min_diagonal_real: float
    max_diagonal_imag_abs: float
    gram_min_eigenvalue: float
    samples: int
    seed: int
    tolerance: float
    violations: list = field(default_factory=list)

    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "partition_function": [
                self.partition_function.real,
                self.partition_function.imag,
            ],
            "min_diagonal_real": self.min_diagonal_real,
            "max_diagonal_imag_abs": self.max_diagonal_imag_abs,
            "gram_min_eigenvalue": self.gram_min_eigenvalue,
            "samples": self.samples,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "violations": self.violations,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


# -- sampling -------------------------------------------------------------


def random_minus_vector(
    n: int, L: int, rng: np.random.Generator, observable: bool,
    nonzero: bool = False,
) -> ExponentVector:
    """Uniform exponent vector supported on sites 1..L/2, optionally
    conditioned on degree = 0 mod n and/or on being nonzero."""
    half = L // 2
    while True:
        entries = [int(e) for e in rng.integers(0, n, size=half)] + [0] * half
        if observable and sum(entries) % n != 0:
            continue
        if nonzero and not any(entries):
            continue
        return ExponentVector(tuple(entries), n)


def random_minus_observable(
    n: int, L: int, rng: np.random.Generator, max_terms: int = 8
) -> Polynomial:
    """Random element of the gauge-invariant minus algebra: up to
    ``max_terms`` observable monomials with standard complex Gaussian
    coefficients."""
    n_terms = int(rng.integers(1, max_terms + 1))
    terms: dict[ExponentVector, complex] = {}
    for _ in range(n_terms):
        vec = random_minus_vector(n, L, rng, observable=True)
        coeff = complex(rng.normal(), rng.normal())
        terms[vec] = terms.get(vec, 0) + coeff
    return Polynomial(terms, n, L)


def minus_monomials_of_degree(n: int, L: int, d: int):
    """All exponent vectors on sites 1..L/2 with total degree exactly d."""
    import itertools

    half = L // 2
    for head in itertools.product(range(n), repeat=half):
        if sum(head) == d:
            yield ExponentVector(tuple(head) + (0,) * half, n)


def structured_observables(n: int, L: int) -> list[tuple[str, Polynomial]]:
    """Identity plus every degree-n monomial on the minus half."""
    out = [("identity", Polynomial.identity(n, L))]
    for vec in minus_monomials_of_degree(n, L, n):
        out.append((f"C{vec.entries}", Polynomial.monomial(1.0, vec)))
    return out


# -- trace functionals ----------------------------------------------------


def _compatible_sides(a: Polynomial, b: Polynomial) -> bool:
    sa, sb = classify(a).side, classify(b).side
    if Side.CROSSING in (sa, sb):
        return False
    return sa == sb or Side.SCALAR in (sa, sb)


def rp_functional(
    a: Polynomial,
    b: Polynomial,
    spec: HamiltonianSpec,
    rep: Representation,
    boltzmann: np.ndarray | None = None,
) -> complex:
    """f(A, B) = Tr(A theta(B) e^{-H}); linear in A, anti-linear in B."""
    if not _compatible_sides(a, b):
        raise ValueError("A and B must be localized on the same side")
    if boltzmann is None:
        boltzmann = matrix_exp(-to_matrix(spec.total(), rep))
    ma = to_matrix(a, rep)
    mtb = to_matrix(reflect(b), rep)
    return complex(np.trace(ma @ mtb @ boltzmann))


def check_rp(
    spec: HamiltonianSpec,
    rep: Representation,
    samples: int = 500,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> RPReport:
    """Sample the diagonal of f over the minus observable algebra.

    Evaluates f(A, A) on a structured set (identity and all degree-n
    monomials on the minus half) and on ``samples`` random observables,
    checks Re f >= 0 and Im f = 0 (relative tolerance), the symmetric
    equality Tr(A theta(A) e^{-H}) = Tr(theta(A) A e^{-H}), positivity of
    the partition function, and PSD-ness of the structured Gram matrix.
    """
    n, L = spec.order, spec.sites
    rng = np.random.default_rng(seed)
    boltzmann = matrix_exp(-to_matrix(spec.total(), rep))
    violations: list = []

    z = complex(np.trace(boltzmann))
    zscale = 1.0 + abs(z)
    if abs(z.imag) > tol * zscale or z.real <= 0:
        violations.append(["partition_function", z.imag if z.real > 0 else z.real])

    probes = structured_observables(n, L)
    probes += [
        (f"random[{i}]", random_minus_observable(n, L, rng))
        for i in range(samples)
    ]

    min_diag = math.inf
    max_imag = 0.0
    for label, a in probes:
        ma = to_matrix(a, rep)
        mta = to_matrix(reflect(a), rep)
        val = complex(np.trace(ma @ mta @ boltzmann))
        sym = complex(np.trace(mta @ ma @ boltzmann))
        scale = 1.0 + abs(val)
        re_n = val.real / scale
        im_n = abs(val.imag) / scale
        min_diag = min(min_diag, re_n)
        max_imag = max(max_imag, im_n)
        if re_n < -tol:
            violations.append([f"{label}:diagonal_real", re_n])
        if im_n > tol:
            violations.append([f"{label}:diagonal_imag", im_n])
        if abs(val - sym) > tol * scale:
            violations.append([f"{label}:symmetry", abs(val - sym)])

    basis = [p for _, p in structured_observables(n, L)]
    _, min_eig = gram_psd(spec, rep, basis, boltzmann=boltzmann)
    if min_eig < -tol:
        violations.append(["gram", min_eig])

    return RPReport(
        partition_function=z,
        min_diagonal_real=min_diag,
        max_diagonal_imag_abs=max_imag,
        gram_min_eigenvalue=min_eig,
        samples=samples,
        seed=seed,
        tolerance=tol,
        violations=violations,
    )


def gram_psd(
    spec: HamiltonianSpec,
    rep: Representation,
    basis: list[Polynomial],
    boltzmann: np.ndarray | None = None,
) -> tuple[np.ndarray, float]:
    """Hermitized Gram matrix G_ab = f(A_a, A_b) and its normalized minimum
    eigenvalue (divided by 1 + max |G_ab|)."""
    if boltzmann is None:
        boltzmann = matrix_exp(-to_matrix(spec.total(), rep))
    mats = [to_matrix(p, rep) for p in basis]
    refl = [to_matrix(reflect(p), rep) for p in basis]
    m = len(basis)
    g = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            g[i, j] = np.trace(mats[i] @ refl[j] @ boltzmann)
    gh = (g + g.conj().T) / 2
    scale = 1.0 + float(np.abs(gh).max(initial=0.0))
    min_eig = float(np.linalg.eigvalsh(gh).min()) / scale
    return gh, min_eig


# -- Trotter --------------------------------------------------------------


def trotter_approximant(
    spec: HamiltonianSpec, rep: Representation, k: int
) -> np.ndarray:
    """[(Id - H_0/k) e^{-H_-/k} e^{-theta(H_-)/k}]^k."""
    if k < 1:
        raise ValueError("k must be >= 1")
    eye = rep.identity()
    h0 = to_matrix(spec.h_zero, rep)
    hm = to_matrix(spec.h_minus, rep)
    hp = to_matrix(spec.h_plus, rep)
    step = (eye - h0 / k) @ matrix_exp(-hm / k) @ matrix_exp(-hp / k)
    return np.linalg.matrix_power(step, k)


def trotter_convergence(
    spec: HamiltonianSpec, rep: Representation, ks
) -> dict:
    """Errors ||approximant(k) - e^{-H}|| and consecutive ratios."""
    exact = matrix_exp(-to_matrix(spec.total(), rep))
    errors = {
        int(k): float(np.linalg.norm(trotter_approximant(spec, rep, k) - exact))
        for k in ks
    }
    ks_sorted = sorted(errors)
    ratios = {
        int(k): errors[k] / errors[k2] if errors[k2] > 0 else math.inf
        for k, k2 in zip(ks_sorted, ks_sorted[1:])
        if 2 * k == k2
    }
    return {"errors": errors, "ratios": ratios}


# -- conservation law and rearrangement ----------------------------------


def conservation_law_check(
    rep: Representation,
    n: int,
    L: int,
    trials: int = 200,
    seed: int = 0,
) -> dict:
    """Sample tuples (I_1, ..., I_k) on the minus half with random
    observables A, B_j, and verify:

    * the rearrangement identity
      A theta(A) prod_j [C_{I_j} theta(C_{I_j}) B_j theta(B_j)]
      = omega^{sum_{j<j'} |I_j||I_j'|} (A D) theta(A D)
      with D = prod_j C_{I_j} B_j, compared as matrices;
    * Tr((A D) theta(A D)) = 0 whenever sum_j |I_j| != 0 mod n.

    Gaps are normalized by the size of the matrices involved.
    """
    rng = np.random.default_rng(seed)
    max_phase_gap = 0.0
    max_forbidden_trace = 0.0
    forbidden = 0
    for _ in range(trials):
        k = int(rng.integers(1, 4))
        i_vecs = [
            random_minus_vector(n, L, rng, observable=False, nonzero=True)
            for _ in range(k)
        ]
        a = random_minus_observable(n, L, rng, max_terms=3)
        bs = [random_minus_observable(n, L, rng, max_terms=2) for _ in range(k)]

        d = Polynomial.identity(n, L)
        lhs = to_matrix(a, rep) @ to_matrix(reflect(a), rep)
        for vec, b in zip(i_vecs, bs):
            c_i = Polynomial.monomial(1.0, vec)
            lhs = lhs @ to_matrix(c_i, rep) @ to_matrix(reflect(c_i), rep)
            lhs = lhs @ to_matrix(b, rep) @ to_matrix(reflect(b), rep)
            d = canonical_product(d, canonical_product(c_i, b))

        ad = canonical_product(a, d)
        m_ad = to_matrix(ad, rep)
        m_tad = to_matrix(reflect(ad), rep)
        degs = [degree(v) for v in i_vecs]
        phase_exp = sum(
            degs[j] * degs[jp] for j in range(k) for jp in range(j + 1, k)
        )
        rhs = omega_power(n, phase_exp) * (m_ad @ m_tad)
        scale = 1.0 + float(np.linalg.norm(lhs)) + float(np.linalg.norm(rhs))
        max_phase_gap = max(
            max_phase_gap, float(np.linalg.norm(lhs - rhs)) / scale
        )

        if sum(degs) % n != 0:
            forbidden += 1
            tr = abs(complex(np.trace(m_ad @ m_tad)))
            tscale = 1.0 + float(
                np.linalg.norm(m_ad) * np.linalg.norm(m_tad)
            )
            max_forbidden_trace = max(max_forbidden_trace, tr / tscale)

    return {
        "trials": trials,
        "forbidden_degree_tuples": forbidden,
        "max_phase_identity_gap": max_phase_gap,
        "max_forbidden_trace": max_forbidden_trace,
    }


# -- reflection bounds ----------------------------------------------------


def rp_bounds_check(
    a: Polynomial,
    b: Polynomial,
    spec: HamiltonianSpec,
    rep: Representation,
    tol: float = DEFAULT_TOL,
) -> dict:
    """Check |f(A, B)| <= ||A||_- ||B||_+ and |f(A, B)| <= ||A||_+ ||B||_-
    for A, B in the plus observable algebra, plus the A = B = I partition
    function bound.

    The auxiliary norms use the Hamiltonians H_- + H_0 + theta(H_-) and
    theta(H_+) + H_0 + H_+.
    """
    for name, p in (("A", a), ("B", b)):
        sc = classify(p)
        if sc.side not in (Side.PLUS, Side.SCALAR) or not sc.observable:
            raise ValueError(f"{name} must be in the plus observable algebra")

    h_m_aux = spec.h_minus + spec.h_zero + reflect(spec.h_minus)
    h_p_aux = reflect(spec.h_plus) + spec.h_zero + spec.h_plus
    e_full = matrix_exp(-to_matrix(spec.total(), rep))
    e_minus = matrix_exp(-to_matrix(h_m_aux, rep))
    e_plus = matrix_exp(-to_matrix(h_p_aux, rep))

    def norm_sq(p: Polynomial, boltzmann: np.ndarray, label: str) -> float:
        val = complex(
            np.trace(
                to_matrix(p, rep) @ to_matrix(reflect(p), rep) @ boltzmann
            )
        )
        if val.real < -tol * (1 + abs(val)):
            raise ValueError(
                f"auxiliary Hamiltonian for {label} is RP-violating: "
                f"||.||^2 = {val}"
            )
        return max(val.real, 0.0)

    f_ab = complex(
        np.trace(to_matrix(a, rep) @ to_matrix(reflect(b), rep) @ e_full)
    )
    na_m = math.sqrt(norm_sq(a, e_minus, "minus"))
    na_p = math.sqrt(norm_sq(a, e_plus, "plus"))
    nb_m = math.sqrt(norm_sq(b, e_minus, "minus"))
    nb_p = math.sqrt(norm_sq(b, e_plus, "plus"))

    bound1 = na_m * nb_p
    bound2 = na_p * nb_m
    z = abs(complex(np.trace(e_full)))
    z_bound = math.sqrt(
        max(np.trace(e_minus).real, 0.0) * max(np.trace(e_plus).real, 0.0)
    )
    margin1 = (bound1 - abs(f_ab)) / (1.0 + bound1)
    margin2 = (bound2 - abs(f_ab)) / (1.0 + bound2)
    margin_z = (z_bound - z) / (1.0 + z_bound)
    return {
        "f_ab": [f_ab.real, f_ab.imag],
        "bound1": bound1,
        "bound2": bound2,
        "margin1": margin1,
        "margin2": margin2,
        "partition_margin": margin_z,
        "ok": margin1 >= -tol and margin2 >= -tol and margin_z >= -tol,
    }


# -- the section-7 counterexample and positivity families -----------------


def crossing_only_spec(n: int) -> HamiltonianSpec:
    """H = H_0 = zeta * c theta(c) on two sites (J = 1, degree 1)."""
    couplings = CouplingTable({unit_vector(n, 2, 1): 1.0})
    return assemble(Polynomial.zero(n, 2), couplings)


def series_sum(n: int) -> float:
    """S_n = sum_{l >= 1} 1 / (l n - 1)!, truncated below 1e-18.

    S_2 = sinh(1); for n > 2 this generalizes the closed form."""
    total = 0.0
    ell = 1
    while True:
        term = 1.0 / math.factorial(ell * n - 1)
        total += term
        if term < 1e-18:
            return total
        ell += 1


def counterexample_reference(n: int) -> complex:
    """Series value omega^{(n-1)/2} S_n Tr(I) for f(c) on two sites."""
    return zeta_power(n, n - 1) * series_sum(n) * n


def counterexample_f(
    n: int, j: int, rep: Representation | None = None
) -> complex:
    """f(c^j) = Tr(c^j theta(c^j) e^{-H}) for H = zeta c theta(c), L = 2."""
    if not 1 <= j <= n:
        raise ValueError(f"j must be in 1..{n}, got {j}")
    if rep is None:
        rep = build_generators(n, 2)
    spec = crossing_only_spec(n)
    boltzmann = matrix_exp(-to_matrix(spec.total(), rep))
    a = Polynomial.monomial(1.0, unit_vector(n, 2, 1, power=j))
    ma = to_matrix(a, rep)
    mta = to_matrix(reflect(a), rep)
    return complex(np.trace(ma @ mta @ boltzmann))


FAMILY_DESCRIPTIONS = {
    1: "n = k^3, j = k^2",
    2: "n = 2 k^2, j = 2 k j' with 1 <= j' < k",
    3: "n = k^2, j = j' k with k odd and 1 <= j' < k",
}


def family_pair(family: int, k: int, jprime: int | None = None) -> tuple[int, int]:
    """Resolve a (family, k, j') triple into the pair (n, j)."""
    if family == 1:
        if k < 1:
            raise ValueError("family 1 needs k >= 1")
        return k**3, k**2
    if family == 2:
        if jprime is None or not 1 <= jprime < k:
            raise ValueError("family 2 needs 1 <= j' < k")
        return 2 * k**2, 2 * k * jprime
    if family == 3:
        if k % 2 == 0:
            raise ValueError("family 3 needs odd k")
        if jprime is None or not 1 <= jprime < k:
            raise ValueError("family 3 needs 1 <= j' < k")
        return k**2, jprime * k
    raise ValueError(f"unknown family {family}")


def family_check(
    family: int,
    k: int,
    jprime: int | None = None,
    tol: float = DEFAULT_TOL,
) -> tuple[bool, complex]:
    """Evaluate f(c^j) for one of the known positive (n, j) families and
    report whether it is real and non-negative."""
    n, j = family_pair(family, k, jprime)
    val = counterexample_f(n, j)
    scale = 1.0 + abs(val)
    ok = val.real >= -tol * scale and abs(val.imag) <= tol * scale
    return ok, val


# -- loop operators and ground states -------------------------------------


def loop_expectation(
    a: Polynomial,
    spec: HamiltonianSpec,
    rep: Representation,
    herm_tol: float = 1e-10,
    ground_tol: float = 1e-8,
) -> dict:
    """Ground-state expectations of the loop operator W_A = A theta(A).

    Requires a hermitian Hamiltonian and A in the minus observable algebra.
    Reports whether W_A leaves the ground space diagonal (no transitions
    between ground states) and, if so, whether all expectations are
    non-negative.
    """
    sc = classify(a)
    if sc.side not in (Side.MINUS, Side.SCALAR) or not sc.observable:
        raise ValueError("A must be in the minus observable algebra")
    h = to_matrix(spec.total(), rep)
    h_gap = float(np.linalg.norm(h - h.conj().T))
    if h_gap > herm_tol * (1.0 + float(np.linalg.norm(h))):
        raise ValueError(
            f"Hamiltonian is not hermitian (gap {h_gap:.3e}); unsupported"
        )
    evals, evecs = np.linalg.eigh((h + h.conj().T) / 2)
    width = float(evals[-1] - evals[0])
    mask = evals - evals[0] <= ground_tol * max(1.0, width)
    ground = evecs[:, mask]

    w = to_matrix(canonical_product(a, reflect(a)), rep)
    block = ground.conj().T @ w @ ground
    off = block - np.diag(np.diag(block))
    w_scale = 1.0 + float(np.linalg.norm(w))
    w_order = float(np.linalg.norm(off)) <= ground_tol * w_scale
    expectations = [complex(x) for x in np.diag(block)]
    positive = w_order and all(
        x.real >= -ground_tol * w_scale and abs(x.imag) <= ground_tol * w_scale
        for x in expectations
    )
    return {
        "ground_degeneracy": int(mask.sum()),
        "ground_energy": float(evals[0]),
        "w_order": w_order,
        "expectations": [[x.real, x.imag] for x in expectations],
        "positive": positive,
    }
