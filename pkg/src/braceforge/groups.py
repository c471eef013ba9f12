"""Finite groups stored as explicit Cayley tables.

Elements are the dense indices ``0 .. order-1``; ``mul[a, b]`` is the index of
the product ``a*b`` (row = left factor).  Subsets of a carrier are passed
around as ``frozenset[int]``.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import CapacityError, CertificationError, DomainError, InvalidOrderError, ShapeError

DEFAULT_CARRIER_CAP = 4096
CAP_ENV_VAR = "BRACEFORGE_CARRIER_CAP"


def carrier_cap() -> int:
    """Largest carrier we agree to tabulate (env override, default 4096)."""
    raw = os.environ.get(CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_CARRIER_CAP
    cap = int(raw)
    if cap < 1:
        raise ValueError(f"{CAP_ENV_VAR} must be positive, got {raw!r}")
    return cap


def check_capacity(order: int) -> None:
    cap = carrier_cap()
    if order > cap:
        raise CapacityError(f"carrier of order {order} exceeds cap {cap}")


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.intp)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class GroupTable:
    mul: np.ndarray
    identity: int
    inv: np.ndarray
    label: str = ""

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    @classmethod
    def from_mul(cls, mul: Sequence[Sequence[int]] | np.ndarray, label: str = "") -> "GroupTable":
        """Wrap a raw table, deriving identity and inverses.

        Nothing is validated here: a missing identity or inverse is stored
        as -1 and left for :func:`validate_group` to report.
        """
        table = np.asarray(mul, dtype=np.intp)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise ShapeError(f"multiplication table must be square and non-empty, got shape {table.shape}")
        n = table.shape[0]
        ar = np.arange(n)
        identity = -1
        for e in range(n):
            if np.array_equal(table[e], ar) and np.array_equal(table[:, e], ar):
                identity = e
                break
        inv = np.full(n, -1, dtype=np.intp)
        if identity >= 0:
            hits = (table == identity) & (table.T == identity)
            for a in range(n):
                row = np.flatnonzero(hits[a])
                if row.size:
                    inv[a] = row[0]
        return cls(_frozen(table), identity, _frozen(inv), label)

    def elements(self) -> frozenset[int]:
        return frozenset(range(self.order))

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = int(self.inv[a]), -k
        result, base = self.identity, a
        while k:
            if k & 1:
                result = int(self.mul[result, base])
            base = int(self.mul[base, base])
            k >>= 1
        return result

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = int(self.mul[x, a])
            k += 1
        return k

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def opposite(self) -> "GroupTable":
        return GroupTable(_frozen(self.mul.T), self.identity, self.inv, f"{self.label}^op")

    def same_table(self, other: "GroupTable") -> bool:
        return self.identity == other.identity and np.array_equal(self.mul, other.mul)


@dataclass(frozen=True)
class GroupValidation:
    ok: bool
    axiom: Optional[str] = None
    witness: Optional[tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.ok


def validate_group(t: GroupTable) -> GroupValidation:
    """Report the first violated group axiom, checking associativity on all triples."""
    n = t.order
    mul = t.mul
    bad = np.argwhere((mul < 0) | (mul >= n))
    if bad.size:
        return GroupValidation(False, "closure", tuple(int(x) for x in bad[0]))
    e = t.identity
    ar = np.arange(n)
    if not (0 <= e < n) or not (np.array_equal(mul[e], ar) and np.array_equal(mul[:, e], ar)):
        return GroupValidation(False, "identity", (int(e),))
    for a in range(n):
        b = int(t.inv[a])
        if not (0 <= b < n) or mul[a, b] != e or mul[b, a] != e:
            return GroupValidation(False, "inverse", (a,))
    for a in range(n):
        left = mul[mul[a]]  # (a*b)*c at [b, c]
        right = np.take(mul[a], mul)  # a*(b*c) at [b, c]
        if not np.array_equal(left, right):
            b, c = np.argwhere(left != right)[0]
            return GroupValidation(False, "associativity", (a, int(b), int(c)))
    return GroupValidation(True)


def _require_valid(t: GroupTable) -> GroupTable:
    report = validate_group(t)
    if not report:
        raise DomainError(f"{t.label or 'table'}: {report.axiom} fails", report.witness)
    return t


def make_cyclic(n: int) -> GroupTable:
    """Z/nZ with residue i stored at index i."""
    if n < 1:
        raise InvalidOrderError(f"cyclic group order must be positive, got {n}")
    check_capacity(n)
    ar = np.arange(n)
    t = GroupTable.from_mul((ar[:, None] + ar[None, :]) % n, f"Z/{n}")
    return _require_valid(t)


def direct_product(g: GroupTable, h: GroupTable, label: str | None = None) -> GroupTable:
    """Componentwise product; the pair (i, j) is stored at ``i * h.order + j``."""
    n = g.order * h.order
    check_capacity(n)
    gi, hj = np.divmod(np.arange(n), h.order)
    mul = g.mul[gi[:, None], gi[None, :]] * h.order + h.mul[hj[:, None], hj[None, :]]
    inv = g.inv[gi] * h.order + h.inv[hj]
    identity = g.identity * h.order + h.identity
    return GroupTable(_frozen(mul), int(identity), _frozen(inv), label or f"({g.label} x {h.label})")


def elementary_abelian(p: int, k: int) -> GroupTable:
    """(Z/p)^k; the vector (u1, ..., uk) sits at index sum(u_i * p**(k-i))."""
    if k < 1:
        raise InvalidOrderError(f"rank must be positive, got {k}")
    g = make_cyclic(p)
    for _ in range(k - 1):
        g = direct_product(make_cyclic(p), g)
    return replace(g, label=f"(Z/{p})^{k}")


def symmetric_elements(n: int) -> list[tuple[int, ...]]:
    """Permutations of range(n) in index order (identity first)."""
    return list(itertools.permutations(range(n)))


def symmetric_group(n: int) -> GroupTable:
    """S_n with (s*t)(x) = s(t(x))."""
    perms = symmetric_elements(n)
    check_capacity(len(perms))
    index = {p: i for i, p in enumerate(perms)}
    mul = [[index[tuple(s[t[x]] for x in range(n))] for t in perms] for s in perms]
    return _require_valid(GroupTable.from_mul(mul, f"S{n}"))


def dihedral_group(n: int) -> GroupTable:
    """Dihedral group of order 2n; r^k s^e is stored at ``k + n*e``.

    So the rotation r is index 1 and the reflection s is index n.
    """
    if n < 1:
        raise InvalidOrderError(f"dihedral parameter must be positive, got {n}")
    check_capacity(2 * n)
    mul = np.empty((2 * n, 2 * n), dtype=np.intp)
    for x in range(2 * n):
        a, e = x % n, x // n
        for y in range(2 * n):
            b, f = y % n, y // n
            mul[x, y] = (a + (-b if e else b)) % n + n * ((e + f) % 2)
    return _require_valid(GroupTable.from_mul(mul, f"D{n}"))


QUATERNION_NAMES = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")


def quaternion_group() -> GroupTable:
    """Q8 with elements ordered as in ``QUATERNION_NAMES``."""
    units = {
        "1": (1, 0, 0, 0), "i": (0, 1, 0, 0), "j": (0, 0, 1, 0), "k": (0, 0, 0, 1),
    }
    vecs = []
    for name in QUATERNION_NAMES:
        sign = -1 if name.startswith("-") else 1
        vecs.append(tuple(sign * x for x in units[name.lstrip("-")]))

    def qmul(p, q):
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return (
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    index = {v: i for i, v in enumerate(vecs)}
    mul = [[index[qmul(p, q)] for q in vecs] for p in vecs]
    return _require_valid(GroupTable.from_mul(mul, "Q8"))


# Subgroups

def _check_indices(g: GroupTable, xs: Iterable[int]) -> np.ndarray:
    arr = np.array(sorted({int(x) for x in xs}), dtype=np.intp)
    if arr.size and (arr[0] < 0 or arr[-1] >= g.order):
        raise DomainError(f"element index out of range for {g.label}", int(arr[0] if arr[0] < 0 else arr[-1]))
    return arr


def closure_mask(g: GroupTable, gens: np.ndarray) -> np.ndarray:
    """Membership bitmap of the subgroup generated by ``gens``."""
    member = np.zeros(g.order, dtype=bool)
    member[g.identity] = True
    if gens.size == 0:
        return member
    frontier = np.array([g.identity], dtype=np.intp)
    while frontier.size:
        prods = g.mul[frontier[:, None], gens[None, :]].ravel()
        new = np.unique(prods[~member[prods]])
        member[new] = True
        frontier = new
    return member


def mask_to_set(mask: np.ndarray) -> frozenset[int]:
    return frozenset(np.flatnonzero(mask).tolist())


def set_to_mask(order: int, s: Iterable[int]) -> np.ndarray:
    mask = np.zeros(order, dtype=bool)
    idx = list(s)
    if idx:
        mask[np.asarray(idx, dtype=np.intp)] = True
    return mask


def generated_subgroup(g: GroupTable, gens: Iterable[int]) -> frozenset[int]:
    return mask_to_set(closure_mask(g, _check_indices(g, gens)))


def is_subgroup(g: GroupTable, s: Iterable[int]) -> bool:
    arr = _check_indices(g, s)
    if arr.size == 0:
        return False
    mask = set_to_mask(g.order, arr)
    if not mask[g.identity] or not mask[g.inv[arr]].all():
        return False
    return bool(mask[g.mul[arr[:, None], arr[None, :]]].all())


def is_normal(g: GroupTable, s: Iterable[int]) -> bool:
    arr = _check_indices(g, s)
    if not is_subgroup(g, arr):
        raise DomainError(f"not a subgroup of {g.label}", tuple(arr.tolist()))
    mask = set_to_mask(g.order, arr)
    everything = np.arange(g.order)
    conj = g.mul[g.mul[everything[:, None], arr[None, :]], g.inv[everything][:, None]]
    return bool(mask[conj].all())


def commutators(g: GroupTable, xs: Iterable[int] | None = None, ys: Iterable[int] | None = None) -> np.ndarray:
    """All aba^-1b^-1 for a in xs, b in ys (default: whole group), deduplicated."""
    a = np.arange(g.order) if xs is None else _check_indices(g, xs)
    b = np.arange(g.order) if ys is None else _check_indices(g, ys)
    ab = g.mul[a[:, None], b[None, :]]
    return np.unique(g.mul[g.mul[ab, g.inv[a][:, None]], g.inv[b][None, :]])


def commutator_subgroup(g: GroupTable, xs: Iterable[int] | None = None, ys: Iterable[int] | None = None) -> frozenset[int]:
    """[X, Y] as a subgroup; with no arguments this is [G, G]."""
    return mask_to_set(closure_mask(g, commutators(g, xs, ys)))


def subset_product(g: GroupTable, xs: Iterable[int], ys: Iterable[int]) -> frozenset[int]:
    a = _check_indices(g, xs)
    b = _check_indices(g, ys)
    return frozenset(np.unique(g.mul[a[:, None], b[None, :]]).tolist())


# Homomorphisms

@dataclass(frozen=True)
class GroupHomTable:
    domain: GroupTable
    codomain: GroupTable
    image: tuple[int, ...]
    certified: bool = False

    def __call__(self, a: int) -> int:
        return self.image[a]


def certify_hom(h: GroupHomTable) -> GroupHomTable:
    """Return a certified copy, or raise with the first pair (a, b) breaking the law."""
    if len(h.image) != h.domain.order:
        raise ShapeError(f"image has length {len(h.image)}, domain has order {h.domain.order}")
    img = np.asarray(h.image, dtype=np.intp)
    if img.size and (img.min() < 0 or img.max() >= h.codomain.order):
        raise ShapeError("image entries out of codomain range")
    lhs = img[h.domain.mul]
    rhs = h.codomain.mul[img[:, None], img[None, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        a, b = (int(x) for x in bad[0])
        raise CertificationError(f"hom law fails at ({a}, {b})", (a, b))
    return replace(h, certified=True)
