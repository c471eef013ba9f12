"""The two explicit families of bicrossed braces.

Family 1: B = Z/p^m, C = Z/p^n acting by the scalars (1+p^(m-k))^c and
(1+p^(n-l))^b.  Family 2: B = (Z/2)^m, C = (Z/p)^n with c acting through
P^(first coordinate of c) and b through E^(first coordinate of b), where
E = diag(1, eps_2, ..., eps_n).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .bicrossed import BicrossedData, certify_bicrossed
from .errors import ParameterError
from .groups import elementary_abelian, make_cyclic
from .matrices import MatrixModM, cri_hypothesis, gl_order, is_prime, mat_order, mat_pow

__all__ = [
    "Family1Params", "Family2Params", "family1_data", "family2_data", "matrix_action_data",
    "enumerate_quadruples", "quadruple_violations", "multiplicative_order", "family1_scalar_criterion",
    "cri_hypothesis", "EXAMPLE_MATRICES",
]

# Word-size guard for the scalar arithmetic used in tables.
MAX_MODULUS = 2 ** 62


def multiplicative_order(a: int, modulus: int) -> int:
    """Least e >= 1 with a^e = 1 mod modulus (a must be a unit)."""
    if np.gcd(a, modulus) != 1:
        raise ValueError(f"{a} is not a unit mod {modulus}")
    x, e = a % modulus, 1
    while x != 1 % modulus:
        x = x * a % modulus
        e += 1
    return e


def quadruple_violations(m: int, n: int, k: int, l: int) -> list[str]:
    """Names of the violated constraints among k <= min(m,n), l <= min(m,n), k <= n-l."""
    out = []
    if k > min(m, n):
        out.append("k <= min(m, n)")
    if l > min(m, n):
        out.append("l <= min(m, n)")
    if k > n - l:
        out.append("k <= n-l")
    return out


def enumerate_quadruples(max_value: int, require_nontrivial: bool = False) -> list[tuple[int, int, int, int]]:
    """All (m, n, k, l) in [1, max_value]^4 meeting the constraints, sorted.

    With ``require_nontrivial`` also k <= m-1 and l <= n-1.
    """
    if max_value < 1:
        raise ParameterError("max must be at least 1")
    rng = range(1, max_value + 1)
    out = []
    for m, n, k, l in itertools.product(rng, repeat=4):
        if k > min(m, n) or l > min(m, n) or k > n - l:
            continue
        if require_nontrivial and (k > m - 1 or l > n - 1):
            continue
        out.append((m, n, k, l))
    return out


@dataclass(frozen=True)
class Family1Params:
    p: int
    m: int
    n: int
    k: int
    l: int

    def validate(self) -> None:
        if self.p == 2 or not is_prime(self.p):
            raise ParameterError(f"p must be an odd prime, got {self.p}")
        if min(self.m, self.n, self.k, self.l) < 1:
            raise ParameterError("m, n, k, l must be positive")
        bad = quadruple_violations(self.m, self.n, self.k, self.l)
        if bad:
            raise ParameterError("violated constraint: " + ", ".join(bad), bad)
        if self.p ** max(self.m, self.n) >= MAX_MODULUS:
            raise ParameterError(f"p^max(m,n) exceeds {MAX_MODULUS}")

    @property
    def phi_multiplier(self) -> int:
        return 1 + self.p ** (self.m - self.k)

    @property
    def psi_multiplier(self) -> int:
        return 1 + self.p ** (self.n - self.l)


def family1_data(params: Family1Params) -> BicrossedData:
    """Certified data for the first family.

    Raises CertificationError for k = m or l = n: the literal multiplier 2
    has no p-power order, so the action is not a homomorphism.
    """
    params.validate()
    p, m, n = params.p, params.m, params.n
    bm, cn = p ** m, p ** n
    B, C = make_cyclic(bm), make_cyclic(cn)
    xs, ys = np.arange(bm, dtype=np.int64), np.arange(cn, dtype=np.int64)
    phi_scalars = np.array([pow(params.phi_multiplier, c, bm) for c in range(cn)], dtype=np.int64)
    psi_scalars = np.array([pow(params.psi_multiplier, b, cn) for b in range(bm)], dtype=np.int64)
    phi = (phi_scalars[:, None] * xs[None, :]) % bm
    psi = (psi_scalars[:, None] * ys[None, :]) % cn
    label = f"family1(p={p},m={m},n={n},k={params.k},l={params.l})"
    return certify_bicrossed(BicrossedData(B, C, phi, psi, label=label))


def family1_scalar_criterion(params: Family1Params) -> bool:
    """The meta-triviality criterion in scalar form, by exponent arithmetic only.

    Checks ((1+p^(n-l))^(((1+p^(m-k))^c1 - 1) b1) - 1) * ((1+p^(n-l))^b2 - 1) * c2 == 0
    mod p^n for every quadruple.
    """
    params.validate()
    bm, cn = params.p ** params.m, params.p ** params.n
    u, w = params.phi_multiplier, params.psi_multiplier
    first = set()
    for c1 in range(cn):
        shift = pow(u, c1, bm) - 1
        for b1 in range(bm):
            first.add((pow(w, shift * b1 % bm, cn) - 1) % cn)
    second = {(pow(w, b2, cn) - 1) * c2 % cn for b2 in range(bm) for c2 in range(cn)}
    return all(x * y % cn == 0 for x in first for y in second)


@dataclass(frozen=True)
class Family2Params:
    p: int
    m: int
    P: MatrixModM
    n: int = 2
    eps: tuple[int, ...] = (1, -1)

    def validate(self) -> None:
        if self.p == 2 or not is_prime(self.p):
            raise ParameterError(f"p must be an odd prime, got {self.p}")
        if self.n < 2:
            raise ParameterError(f"n must be at least 2, got {self.n}")
        if len(self.eps) != self.n or any(e not in (1, -1) for e in self.eps):
            raise ParameterError(f"eps must be {self.n} signs")
        if self.eps[0] != 1:
            raise ParameterError("first diagonal entry of E must be +1")
        if all(e == 1 for e in self.eps):
            raise ParameterError("E must not be the identity")
        if (self.P.rows, self.P.cols, self.P.modulus) != (self.m, self.m, 2):
            raise ParameterError(f"P must be {self.m}x{self.m} over Z/2")
        if gl_order(self.m) % self.p:
            raise ParameterError(f"{self.p} does not divide |GL_{self.m}(Z/2)|")
        order = mat_order(self.P)
        if order != self.p:
            raise ParameterError(f"P has order {order}, expected {self.p}")

    @property
    def E(self) -> MatrixModM:
        return MatrixModM.diagonal(self.eps, self.p)


def _bits(index: int, width: int, base: int) -> list[int]:
    """Digits of ``index`` with the first coordinate most significant."""
    out = []
    for _ in range(width):
        index, r = divmod(index, base)
        out.append(r)
    return out[::-1]


def matrix_action_data(P: MatrixModM, p: int, eps: Sequence[int], label: str = "") -> BicrossedData:
    """Uncertified second-family data for arbitrary P and diagonal signs.

    No parameter checks: certification is where bad choices surface.
    """
    m, n = P.rows, len(eps)
    B, C = elementary_abelian(2, m), elementary_abelian(p, n)
    vecs_b = np.array([_bits(i, m, 2) for i in range(B.order)], dtype=np.int64)
    vecs_c = np.array([_bits(i, n, p) for i in range(C.order)], dtype=np.int64)
    weights_b = 2 ** np.arange(m - 1, -1, -1)
    weights_c = p ** np.arange(n - 1, -1, -1)

    powers = [mat_pow(P, v).as_array() for v in range(p)]
    phi_by_v = np.stack([((vecs_b @ Pv.T) % 2) @ weights_b for Pv in powers])
    phi = phi_by_v[vecs_c[:, 0]]

    diag = np.array(eps, dtype=np.int64)
    flipped = ((vecs_c * diag[None, :]) % p) @ weights_c
    psi_by_u = np.stack([np.arange(C.order), flipped])
    psi = psi_by_u[vecs_b[:, 0]]
    return BicrossedData(B, C, phi, psi, label=label or f"family2(p={p},m={m},n={n})")


def family2_data(params: Family2Params) -> BicrossedData:
    params.validate()
    label = f"family2(p={params.p},m={params.m},P={params.P},n={params.n},eps={''.join('+' if e > 0 else '-' for e in params.eps)})"
    return certify_bicrossed(matrix_action_data(params.P, params.p, params.eps, label))


# The six example matrices (m, p, rows).
EXAMPLE_MATRICES: dict[int, tuple[int, int, tuple[str, ...]]] = {
    1: (2, 3, ("01", "11")),
    2: (3, 3, ("001", "100", "010")),
    3: (3, 7, ("001", "110", "010")),
    4: (4, 3, ("0111", "1101", "0010", "0100")),
    5: (4, 5, ("0100", "1111", "1101", "1100")),
    6: (4, 7, ("0001", "1010", "0110", "0010")),
}


def example_params(number: int, n: int = 2, eps: Optional[Sequence[int]] = None) -> Family2Params:
    m, p, rows = EXAMPLE_MATRICES[number]
    P = MatrixModM.from_rows([[int(ch) for ch in r] for r in rows], 2)
    return Family2Params(p, m, P, n, tuple(eps) if eps is not None else (1,) + (-1,) * (n - 1))
