"""Skew braces on B x C built from a pair of mutually compatible actions.

Given groups B and C (C abelian) with actions phi: C -> Aut(B) and
psi: B -> Aut(C) satisfying phi[psi_b(c)] == phi[c], the carrier B x C gets

    (b1, c1) . (b2, c2) = (b1 phi_c1(b2), c1 c2)
    (b1, c1) o (b2, c2) = (b1 b2, c1 psi_b1(c2))

The pair (b, c) is stored at index ``b * |C| + c``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .brace import SkewBrace, build_brace
from .errors import CertificationError, DomainError, ShapeError
from .groups import GroupTable, check_capacity


@dataclass(frozen=True, eq=False)
class BicrossedData:
    """``phi[c, x] = phi_c(x)`` (shape |C| x |B|) and ``psi[b, y] = psi_b(y)`` (shape |B| x |C|)."""

    b_group: GroupTable
    c_group: GroupTable
    phi: np.ndarray
    psi: np.ndarray
    compat_certified: bool = False
    label: str = ""

    @property
    def order(self) -> int:
        return self.b_group.order * self.c_group.order

    def encode(self, b: int, c: int) -> int:
        return b * self.c_group.order + c

    def decode(self, a: int) -> tuple[int, int]:
        return divmod(a, self.c_group.order)

    def b_factor(self) -> frozenset[int]:
        """B x 1."""
        return frozenset(self.encode(b, self.c_group.identity) for b in range(self.b_group.order))

    def c_factor(self) -> frozenset[int]:
        """1 x C."""
        return frozenset(self.encode(self.b_group.identity, c) for c in range(self.c_group.order))

    def phi_trivial(self) -> bool:
        return bool((self.phi == np.arange(self.b_group.order)[None, :]).all())

    def psi_trivial(self) -> bool:
        return bool((self.psi == np.arange(self.c_group.order)[None, :]).all())


def _action_witness(acting: GroupTable, target: GroupTable, table: np.ndarray, name: str) -> Optional[tuple]:
    """Check that ``g -> table[g]`` is a homomorphism into Aut(target)."""
    n = target.order
    ar = np.arange(n)
    for g in range(acting.order):
        row = table[g]
        if not np.array_equal(np.sort(row), ar):
            return (f"{name}[{g}] is not a bijection", g)
        bad = np.argwhere(row[target.mul] != target.mul[row[:, None], row[None, :]])
        if bad.size:
            return (f"{name}[{g}] is not a homomorphism", g, int(bad[0][0]), int(bad[0][1]))
    composed = table[:, table]  # [g1, g2, x] -> table[g1][table[g2][x]]
    direct = table[acting.mul]  # [g1, g2, x] -> table[g1 g2][x]
    bad = np.argwhere((composed != direct).any(axis=2))
    if bad.size:
        return (f"{name} is not a homomorphism", int(bad[0][0]), int(bad[0][1]))
    return None


def certify_bicrossed(data: BicrossedData) -> BicrossedData:
    """Verify abelian C, both action laws, and phi[psi_b(c)] == phi[c]."""
    nb, nc = data.b_group.order, data.c_group.order
    if data.phi.shape != (nc, nb) or data.psi.shape != (nb, nc):
        raise ShapeError(f"phi must be {nc}x{nb} and psi {nb}x{nc}")
    if not data.c_group.is_abelian():
        bad = np.argwhere(data.c_group.mul != data.c_group.mul.T)[0]
        raise DomainError("C is not abelian", (int(bad[0]), int(bad[1])))
    for acting, target, table, name in (
        (data.c_group, data.b_group, data.phi, "phi"),
        (data.b_group, data.c_group, data.psi, "psi"),
    ):
        witness = _action_witness(acting, target, table, name)
        if witness is not None:
            raise CertificationError(witness[0], witness)
    # compat[b, c, x] = phi[psi_b(c)][x]
    compat = data.phi[data.psi]
    bad = np.argwhere((compat != data.phi[None, :, :]).any(axis=2))
    if bad.size:
        b, c = (int(x) for x in bad[0])
        raise CertificationError(f"phi[psi_{b}({c})] != phi[{c}]", (b, c))
    return replace(data, phi=_ro(data.phi), psi=_ro(data.psi), compat_certified=True)


def _ro(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.intp)
    arr.setflags(write=False)
    return arr


def build_bicrossed_brace(data: BicrossedData) -> SkewBrace:
    if not data.compat_certified:
        raise DomainError("bicrossed data must be certified before construction")
    n = data.order
    check_capacity(n)
    B, C = data.b_group, data.c_group
    nc = C.order
    bi, ci = np.divmod(np.arange(n), nc)
    b1, b2 = bi[:, None], bi[None, :]
    c1, c2 = ci[:, None], ci[None, :]
    cprod = C.mul[c1, c2]
    dot_mul = B.mul[b1, data.phi[c1, b2]] * nc + cprod
    circ_mul = B.mul[b1, b2] * nc + C.mul[c1, data.psi[b1, c2]]
    identity = B.identity * nc + C.identity
    cinv = C.inv[ci]
    dot_inv = data.phi[cinv, B.inv[bi]] * nc + cinv
    binv = B.inv[bi]
    circ_inv = binv * nc + data.psi[binv, C.inv[ci]]
    tag = data.label or f"{B.label} x {C.label}"
    dot = GroupTable(_ro(dot_mul), int(identity), _ro(dot_inv), f"{B.label} x|phi {C.label}")
    circle = GroupTable(_ro(circ_mul), int(identity), _ro(circ_inv), f"{B.label} |x psi {C.label}")
    return build_brace(dot, circle, tag, check_groups=True)


def criterion_meta_trivial(data: BicrossedData) -> bool:
    """Meta-triviality decided on the action data alone.

    True iff psi_{phi_c1(b1) b1^-1}(psi_b2(c2) c2^-1) == psi_b2(c2) c2^-1 for
    every quadruple (b1, c1, b2, c2).
    """
    if not data.compat_certified:
        raise DomainError("criterion needs certified data")
    B, C = data.b_group, data.c_group
    # d[b1, c1] = phi_c1(b1) b1^-1 ;  e[b2, c2] = psi_b2(c2) c2^-1
    d = B.mul[data.phi.T, B.inv[:, None]]
    e = C.mul[data.psi, C.inv[None, :]].ravel()
    for row in d:
        if not (data.psi[row[:, None], e[None, :]] == e[None, :]).all():
            return False
    return True


def ideal_profile(data: BicrossedData) -> dict[str, dict[str, bool]]:
    """Predicted one-sided ideal status of B x 1 and 1 x C in A and in its opposite."""
    phi_triv, psi_triv = data.phi_trivial(), data.psi_trivial()
    return {
        "B": {"left_ideal": True, "right_ideal": psi_triv, "left_ideal_op": True, "right_ideal_op": psi_triv},
        "C": {"left_ideal": True, "right_ideal": phi_triv, "left_ideal_op": phi_triv, "right_ideal_op": True},
    }


def star_generators(data: BicrossedData) -> tuple[frozenset[int], frozenset[int]]:
    """{(1, psi_b(c) c^-1)} and {(phi_{c^-1}(b) b^-1, 1)} as encoded element sets."""
    B, C = data.b_group, data.c_group
    e = np.unique(C.mul[data.psi, C.inv[None, :]])
    d = np.unique(B.mul[data.phi[C.inv][:, :].T, B.inv[:, None]])
    xc = frozenset(data.encode(B.identity, int(y)) for y in e)
    xb = frozenset(data.encode(int(x), C.identity) for x in d)
    return xc, xb


def product_data(b_group: GroupTable, c_group: GroupTable) -> BicrossedData:
    """Both actions trivial: the brace is the trivial one on B x C."""
    phi = np.broadcast_to(np.arange(b_group.order), (c_group.order, b_group.order)).copy()
    psi = np.broadcast_to(np.arange(c_group.order), (b_group.order, c_group.order)).copy()
    return BicrossedData(b_group, c_group, phi, psi, label=f"{b_group.label} x {c_group.label}")
