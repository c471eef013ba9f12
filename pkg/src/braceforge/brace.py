"""Skew braces on a shared carrier: axioms, lambda maps, the star operation,
derived subgroups, ideals, and the opposite brace."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Iterable, Mapping, Optional

import numpy as np

from .errors import BraceAxiomError, DomainError, ShapeError
from .groups import (
    GroupTable,
    _check_indices,
    closure_mask,
    is_normal,
    is_subgroup,
    mask_to_set,
    set_to_mask,
    validate_group,
)


@dataclass(frozen=True, eq=False)
class SkewBrace:
    """A validated skew brace with cached lambda tables.

    ``lam[a, b] = a^-1 (a o b)``, ``lam_op[a, b] = (a o b) a^-1`` and
    ``star_table[a, b] = a^-1 (a o b) b^-1``.  Build through :func:`build_brace`.
    """

    dot: GroupTable
    circle: GroupTable
    lam: np.ndarray
    lam_op: np.ndarray
    star_table: np.ndarray
    label: str = ""

    @property
    def order(self) -> int:
        return self.dot.order

    @property
    def identity(self) -> int:
        return self.dot.identity

    def elements(self) -> frozenset[int]:
        return frozenset(range(self.order))

    def star(self, a: int, b: int) -> int:
        return int(self.star_table[a, b])

    def same_tables(self, other: "SkewBrace") -> bool:
        return self.dot.same_table(other.dot) and self.circle.same_table(other.circle)


def _ro(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.intp)
    arr.setflags(write=False)
    return arr


def brace_relation_witness(dot: GroupTable, circle: GroupTable) -> Optional[tuple[int, int, int]]:
    """First (a, b, c) with a o (b c) != (a o b) a^-1 (a o c), or None."""
    dmul, cmul, inv = dot.mul, circle.mul, dot.inv
    for a in range(dot.order):
        ca = cmul[a]
        lhs = np.take(ca, dmul)
        left = dmul[ca, inv[a]]
        rhs = np.take(dmul[left], ca, axis=1)
        if not np.array_equal(lhs, rhs):
            b, c = np.argwhere(lhs != rhs)[0]
            return (a, int(b), int(c))
    return None


def build_brace(dot: GroupTable, circle: GroupTable, label: str = "", *, check_groups: bool = True) -> SkewBrace:
    """Validate the brace relation over every triple and cache lambda tables."""
    if dot.order != circle.order:
        raise ShapeError(f"carriers differ: {dot.order} vs {circle.order}")
    if dot.identity != circle.identity:
        raise ShapeError(f"identities differ: {dot.identity} vs {circle.identity}",
                         (dot.identity, circle.identity))
    if check_groups:
        for name, g in (("dot", dot), ("circle", circle)):
            report = validate_group(g)
            if not report:
                raise DomainError(f"{name} table: {report.axiom} fails", report.witness)
    witness = brace_relation_witness(dot, circle)
    if witness is not None:
        raise BraceAxiomError(f"brace relation fails at {witness}", witness)
    inv = dot.inv
    lam = dot.mul[inv[:, None], circle.mul]
    lam_op = dot.mul[circle.mul, inv[:, None]]
    star = dot.mul[lam, inv[None, :]]
    return SkewBrace(dot, circle, _ro(lam), _ro(lam_op), _ro(star), label or f"({dot.label}, {circle.label})")


def trivial_from_group(g: GroupTable) -> SkewBrace:
    return build_brace(g, g, f"triv({g.label})", check_groups=False)


def almost_trivial_from_group(g: GroupTable) -> SkewBrace:
    """a o b = b a."""
    return build_brace(g, g.opposite(), f"atriv({g.label})", check_groups=False)


def opposite(br: SkewBrace) -> SkewBrace:
    label = br.label[:-3] if br.label.endswith("^op") else f"{br.label}^op"
    dot = br.dot.opposite()
    if br.dot.label.endswith("^op"):
        dot = GroupTable(dot.mul, dot.identity, dot.inv, br.dot.label[:-3])
    return build_brace(dot, br.circle, label, check_groups=False)


def star(br: SkewBrace, a: int, b: int) -> int:
    return br.star(a, b)


def _star_gens(br: SkewBrace, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    if xs.size == 0 or ys.size == 0:
        return np.empty(0, dtype=np.intp)
    return np.unique(br.star_table[xs[:, None], ys[None, :]])


def star_subgroup(br: SkewBrace, xs: Iterable[int], ys: Iterable[int]) -> frozenset[int]:
    """X * Y: the dot-subgroup generated by every x * y."""
    gens = _star_gens(br, _check_indices(br.dot, xs), _check_indices(br.dot, ys))
    return mask_to_set(closure_mask(br.dot, gens))


def derived_series3(br: SkewBrace) -> tuple[frozenset[int], frozenset[int], frozenset[int]]:
    """(A', A^3, A^(3)) = (A*A, A*A', A'*A)."""
    everything = br.elements()
    derived = star_subgroup(br, everything, everything)
    return derived, star_subgroup(br, everything, derived), star_subgroup(br, derived, everything)


# Predicates

def is_trivial(br: SkewBrace) -> bool:
    return bool(np.array_equal(br.circle.mul, br.dot.mul))


def is_almost_trivial(br: SkewBrace) -> bool:
    return bool(np.array_equal(br.circle.mul, br.dot.mul.T))


def is_meta_trivial(br: SkewBrace) -> bool:
    derived = _check_indices(br.dot, derived_series3(br)[0])
    return bool((br.star_table[derived[:, None], derived[None, :]] == br.identity).all())


def is_left_nilpotent3(br: SkewBrace) -> bool:
    return derived_series3(br)[1] == {br.identity}


def is_right_nilpotent3(br: SkewBrace) -> bool:
    return derived_series3(br)[2] == {br.identity}


def two_sided_witness(br: SkewBrace) -> Optional[tuple[int, int, int]]:
    """First (a, b, c) with (a b) o c != (a o c) c^-1 (b o c), or None."""
    dmul, cmul, inv = br.dot.mul, br.circle.mul, br.dot.inv
    for c in range(br.order):
        col = np.ascontiguousarray(cmul[:, c])
        lhs = np.take(col, dmul)
        left = dmul[col, inv[c]]
        rhs = np.take(dmul[left], col, axis=1)
        if not np.array_equal(lhs, rhs):
            a, b = np.argwhere(lhs != rhs)[0]
            return (int(a), int(b), c)
    return None


def is_two_sided(br: SkewBrace) -> bool:
    return two_sided_witness(br) is None


# Subsets

@dataclass(frozen=True)
class SubsetStatus:
    sub_skew_brace: bool
    ideal: bool
    left_ideal: bool
    right_ideal: bool
    left_ideal_op: bool
    right_ideal_op: bool

    def as_dict(self) -> dict[str, bool]:
        return asdict(self)


def subset_status(br: SkewBrace, s: Iterable[int]) -> SubsetStatus:
    """Sub-brace and ideal membership of ``s`` in A and in the opposite brace.

    The one-sided ideal notions presuppose a subgroup of (A, .); when ``s``
    is not one they are all reported False.
    """
    arr = _check_indices(br.dot, s)
    mask = set_to_mask(br.order, arr)
    dot_sub = is_subgroup(br.dot, arr)
    circ_sub = is_subgroup(br.circle, arr)
    if not dot_sub:
        return SubsetStatus(False, False, False, False, False, False)
    left = bool(mask[br.lam[:, arr]].all())
    right = bool(mask[br.star_table[arr, :]].all())
    left_op = bool(mask[br.lam_op[:, arr]].all())
    right_op = bool(mask[br.dot.mul[br.dot.inv[None, :], br.lam_op[arr, :]]].all())
    ideal = False
    if circ_sub and is_normal(br.dot, arr) and is_normal(br.circle, arr):
        dot_cosets = np.sort(br.dot.mul[:, arr], axis=1)
        circ_cosets = np.sort(br.circle.mul[:, arr], axis=1)
        ideal = bool(np.array_equal(dot_cosets, circ_cosets))
    return SubsetStatus(dot_sub and circ_sub, ideal, left, right, left_op, right_op)


@dataclass(frozen=True)
class Factorization:
    dot_product: bool
    circle_product: bool
    exact: bool


def factorization_check(br: SkewBrace, b: Iterable[int], c: Iterable[int]) -> Factorization:
    """Whether A = B.C and A = B o C, and whether B and C meet trivially."""
    bs = _check_indices(br.dot, b)
    cs = _check_indices(br.dot, c)
    for name, s in (("B", bs), ("C", cs)):
        if not (is_subgroup(br.dot, s) and is_subgroup(br.circle, s)):
            raise DomainError(f"{name} is not a sub-skew brace", tuple(s.tolist()))
    n = br.order
    dot_cover = np.unique(br.dot.mul[bs[:, None], cs[None, :]]).size == n
    circ_cover = np.unique(br.circle.mul[bs[:, None], cs[None, :]]).size == n
    exact = np.intersect1d(bs, cs).size == 1
    return Factorization(bool(dot_cover), bool(circ_cover), bool(exact))


def is_trivial_subbrace(br: SkewBrace, s: Iterable[int]) -> bool:
    """``s`` is a sub-skew brace on which o agrees with ."""
    arr = _check_indices(br.dot, s)
    if not (is_subgroup(br.dot, arr) and is_subgroup(br.circle, arr)):
        return False
    return bool((br.star_table[arr[:, None], arr[None, :]] == br.identity).all())


# Structural scans; each returns None on success or a failing witness.

def lambda_homomorphism_witness(br: SkewBrace) -> Optional[tuple[int, int]]:
    """lam[a o b] == lam[a] after lam[b] for all a, b."""
    for a in range(br.order):
        lhs = br.lam[br.circle.mul[a]]  # rows lam[a o b]
        rhs = np.take(br.lam[a], br.lam)  # rows lam[a](lam[b](.))
        if not np.array_equal(lhs, rhs):
            return (a, int(np.flatnonzero((lhs != rhs).any(axis=1))[0]))
    return None


def lambda_automorphism_witness(br: SkewBrace) -> Optional[tuple[int, int, int]]:
    """lam[a](x y) == lam[a](x) lam[a](y) for all a, x, y."""
    dmul = br.dot.mul
    for a in range(br.order):
        row = br.lam[a]
        lhs = np.take(row, dmul)
        rhs = np.take(dmul[row], row, axis=1)
        if not np.array_equal(lhs, rhs):
            x, y = np.argwhere(lhs != rhs)[0]
            return (a, int(x), int(y))
    return None


def identity_web_witness(br: SkewBrace) -> Optional[tuple[str, int, int]]:
    """a o b = a lam_a(b) = lam_op_a(b) a;  a b = a o lam_{abar}(b);  a*b = lam_a(b) b^-1."""
    dmul, cmul = br.dot.mul, br.circle.mul
    inv, cinv = br.dot.inv, br.circle.inv
    ar = np.arange(br.order)
    checks = {
        "circle_via_lam": dmul[ar[:, None], br.lam] == cmul,
        "circle_via_lam_op": dmul[br.lam_op, ar[:, None]] == cmul,
        "dot_via_lam": cmul[ar[:, None], br.lam[cinv]] == dmul,
        "star_via_lam": dmul[br.lam, inv[None, :]] == br.star_table,
    }
    for name, ok in checks.items():
        bad = np.argwhere(~ok)
        if bad.size:
            return (name, int(bad[0][0]), int(bad[0][1]))
    return None


def derived_ideal_witness(br: SkewBrace) -> Optional[tuple[int, int]]:
    """A' is an ideal and a.b, a o b share an A'-coset for all a, b."""
    derived = derived_series3(br)[0]
    if not subset_status(br, derived).ideal:
        return (-1, -1)
    mask = set_to_mask(br.order, derived)
    quotient = br.dot.mul[br.dot.inv[br.dot.mul], br.circle.mul]
    bad = np.argwhere(~mask[quotient])
    if bad.size:
        return (int(bad[0][0]), int(bad[0][1]))
    return None


# Reports

@dataclass
class AnalysisReport:
    label: str
    order: int
    is_trivial: bool
    is_almost_trivial: bool
    is_two_sided: bool
    is_meta_trivial: bool
    is_left_nilpotent3: bool
    is_right_nilpotent3: bool
    derived: list[int]
    left3: list[int]
    right3: list[int]
    ideal_facts: dict[str, dict[str, bool]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["sizes"] = {"derived": len(self.derived), "left3": len(self.left3), "right3": len(self.right3)}
        return d


def analyze(br: SkewBrace, subsets: Optional[Mapping[str, Iterable[int]]] = None) -> AnalysisReport:
    derived, left3, right3 = derived_series3(br)
    idx = _check_indices(br.dot, derived)
    meta = bool((br.star_table[idx[:, None], idx[None, :]] == br.identity).all())
    facts = {name: subset_status(br, s).as_dict() for name, s in (subsets or {}).items()}
    return AnalysisReport(
        label=br.label,
        order=br.order,
        is_trivial=is_trivial(br),
        is_almost_trivial=is_almost_trivial(br),
        is_two_sided=is_two_sided(br),
        is_meta_trivial=meta,
        is_left_nilpotent3=left3 == {br.identity},
        is_right_nilpotent3=right3 == {br.identity},
        derived=sorted(derived),
        left3=sorted(left3),
        right3=sorted(right3),
        ideal_facts=facts,
    )
