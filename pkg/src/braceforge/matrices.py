"""Small integer matrices modulo m and the search for order-p elements of GL_m(Z/2)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import DomainError, NoSolutionError, ParameterError, ShapeError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class MatrixModM:
    rows: int
    cols: int
    modulus: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1 or self.modulus < 2:
            raise ShapeError(f"bad matrix shape {self.rows}x{self.cols} mod {self.modulus}")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(f"expected {self.rows * self.cols} entries, got {len(self.entries)}")
        reduced = tuple(int(x) % self.modulus for x in self.entries)
        object.__setattr__(self, "entries", reduced)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], modulus: int) -> "MatrixModM":
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise ShapeError("ragged matrix rows")
        return cls(len(rows), widths.pop(), modulus, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int, modulus: int) -> "MatrixModM":
        return cls(n, n, modulus, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[int], modulus: int) -> "MatrixModM":
        n = len(diag)
        return cls(n, n, modulus, tuple(diag[i] if i == j else 0 for i in range(n) for j in range(n)))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64).reshape(self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __sub__(self, other: "MatrixModM") -> "MatrixModM":
        if (self.rows, self.cols, self.modulus) != (other.rows, other.cols, other.modulus):
            raise ShapeError("dimension or modulus mismatch")
        return MatrixModM(self.rows, self.cols, self.modulus,
                          tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __matmul__(self, other: "MatrixModM") -> "MatrixModM":
        return mat_mul(self, other)

    def __str__(self) -> str:
        return ";".join("".join(str(x) for x in self.row(i)) for i in range(self.rows))


def mat_mul(a: MatrixModM, b: MatrixModM) -> MatrixModM:
    if a.modulus != b.modulus or a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} mod {a.modulus} by {b.rows}x{b.cols} mod {b.modulus}")
    out = []
    for i in range(a.rows):
        ra = a.row(i)
        for j in range(b.cols):
            out.append(sum(ra[k] * b.entries[k * b.cols + j] for k in range(a.cols)))
    return MatrixModM(a.rows, b.cols, a.modulus, tuple(out))


def mat_pow(a: MatrixModM, e: int) -> MatrixModM:
    if not a.is_square():
        raise ShapeError("power of a non-square matrix")
    if e < 0:
        raise ValueError("negative exponent")
    result = MatrixModM.identity(a.rows, a.modulus)
    base = a
    while e:
        if e & 1:
            result = mat_mul(result, base)
        base = mat_mul(base, base)
        e >>= 1
    return result


def mat_order(a: MatrixModM, cap: Optional[int] = None) -> Optional[int]:
    """Least e >= 1 with a^e = I, or None when no such e <= cap exists.

    The default cap is ``2 * modulus**rows``.
    """
    if not a.is_square():
        raise ShapeError("order of a non-square matrix")
    if cap is None:
        cap = 2 * a.modulus ** a.rows
    ident = MatrixModM.identity(a.rows, a.modulus)
    x = a
    for e in range(1, cap + 1):
        if x == ident:
            return e
        x = mat_mul(x, a)
    return None


def gl_order(m: int, q: int = 2) -> int:
    """|GL_m(Z/q)| for prime q: q^(m choose 2) * prod (q^i - 1)."""
    total = q ** (m * (m - 1) // 2)
    for i in range(1, m + 1):
        total *= q ** i - 1
    return total


def first_row_witness(P: MatrixModM, p: int) -> Optional[int]:
    """Least v in [1, p) such that P^v - I has a non-zero entry in its first row."""
    ident = MatrixModM.identity(P.rows, P.modulus)
    power = MatrixModM.identity(P.rows, P.modulus)
    for v in range(1, p):
        power = mat_mul(power, P)
        if any((power - ident).row(0)):
            return v
    return None


@dataclass(frozen=True)
class OrderPCandidate:
    matrix: MatrixModM
    order: int
    witness_v: Optional[int]


def _batch_matmul_mod2(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.einsum("nij,njk->nik", x, y) & 1


def _candidate_batches(m: int, batch: int) -> Iterator[np.ndarray]:
    it = itertools.product((0, 1), repeat=m * m)
    while True:
        chunk = list(itertools.islice(it, batch))
        if not chunk:
            return
        yield np.array(chunk, dtype=np.int64).reshape(-1, m, m)


def search_gl2_order(m: int, p: int, budget: int = 8) -> list[OrderPCandidate]:
    """Up to ``budget`` matrices in GL_m(Z/2) of exact order p.

    Candidates are scanned in lexicographic order of their row-major entries,
    so the result is deterministic.
    """
    if m < 1 or budget < 1:
        raise ParameterError("m and budget must be positive")
    if p == 2 or not is_prime(p):
        raise ParameterError(f"p must be an odd prime, got {p}")
    if gl_order(m) % p:
        raise NoSolutionError(f"{p} does not divide |GL_{m}(Z/2)| = {gl_order(m)}")
    ident = np.eye(m, dtype=np.int64)
    found: list[OrderPCandidate] = []
    for batch in _candidate_batches(m, 4096):
        # p is prime, so P^p = I with P != I means order exactly p
        result = np.broadcast_to(ident, batch.shape).copy()
        base, e = batch.copy(), p
        while e:
            if e & 1:
                result = _batch_matmul_mod2(result, base)
            base = _batch_matmul_mod2(base, base)
            e >>= 1
        hits = (result == ident).all(axis=(1, 2)) & ~(batch == ident).all(axis=(1, 2))
        for idx in np.flatnonzero(hits):
            P = MatrixModM(m, m, 2, tuple(int(x) for x in batch[idx].ravel()))
            found.append(OrderPCandidate(P, p, first_row_witness(P, p)))
            if len(found) >= budget:
                return found
    return found


def parse_binary_rows(spec: str) -> MatrixModM:
    """Parse ``"01;11"`` into a 2x2 matrix over Z/2."""
    rows = [r.strip() for r in spec.split(";") if r.strip()]
    if not rows or any(set(r) - {"0", "1"} for r in rows):
        raise ParameterError(f"bad binary matrix spec {spec!r}")
    return MatrixModM.from_rows([[int(ch) for ch in r] for r in rows], 2)


def cri_hypothesis(P: MatrixModM, p: int) -> Optional[int]:
    """Least v in [1, p) with P^v - I_m having a non-zero first-row entry.

    ``P`` must be a matrix over Z/2 of order exactly p.
    """
    if P.modulus != 2 or not P.is_square():
        raise DomainError("P must be a square matrix over Z/2")
    if mat_order(P) != p:
        raise DomainError(f"P does not have order {p}", str(P))
    return first_row_witness(P, p)
