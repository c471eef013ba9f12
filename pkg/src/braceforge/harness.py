"""Brute-force checks of the brace identities and the factorization theorems.

Every conditional statement is reported as a :class:`TheoremReport`: each
hypothesis is evaluated separately, and the conclusion is evaluated even when
a hypothesis fails, so that sharpness examples show up as
"not applicable, conclusion false".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Optional

import numpy as np

from .brace import (
    SkewBrace,
    derived_series3,
    factorization_check,
    is_two_sided,
    star_subgroup,
)
from .errors import CapacityError, DomainError
from .groups import (
    GroupTable,
    _check_indices,
    commutator_subgroup,
    generated_subgroup,
    is_normal,
    is_subgroup,
    set_to_mask,
    subset_product,
)

DEFAULT_TRIPLE_SCAN_CAP = 200


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None

    def to_dict(self) -> dict:
        d = {"id": self.name, "status": "pass" if self.passed else "fail"}
        if not self.passed:
            d["witness"] = _jsonable(self.witness)
        return d


@dataclass
class TheoremReport:
    theorem: str
    hypotheses: list[Check]
    conclusion: Check
    instance: str = ""

    @property
    def applicable(self) -> bool:
        return all(h.passed for h in self.hypotheses)

    @property
    def red_alert(self) -> bool:
        return self.applicable and not self.conclusion.passed

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "instance": self.instance,
            "applicable": self.applicable,
            "red_alert": self.red_alert,
            "hypotheses": [h.to_dict() for h in self.hypotheses],
            "conclusion": self.conclusion.to_dict(),
        }


@dataclass
class SuiteReport:
    label: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _jsonable(x: Any) -> Any:
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (tuple, list)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    return x


def _first_bad(ok: np.ndarray) -> Optional[tuple[int, ...]]:
    if ok.all():
        return None
    return tuple(int(i) for i in np.argwhere(~ok)[0])


# Identities

def verify_lemma_suite(br: SkewBrace, cap: int = DEFAULT_TRIPLE_SCAN_CAP) -> SuiteReport:
    """Check the star-operation identities over every triple (a, b, c)."""
    if br.order > cap:
        raise CapacityError(f"order {br.order} exceeds triple-scan cap {cap}")
    D, C, S, lam = br.dot.mul, br.circle.mul, br.star_table, br.lam
    inv, cinv = br.dot.inv, br.circle.inv
    ar = np.arange(br.order)
    witnesses: dict[str, Optional[tuple]] = {
        "star_of_dot_product": None,
        "star_of_circle_product": None,
        "conjugated_star": None,
        "lambda_of_star": None,
    }
    two_sided = is_two_sided(br)
    if two_sided:
        witnesses["two_sided_star"] = None

    def note(name: str, a: int, ok: np.ndarray) -> None:
        if witnesses[name] is None:
            bad = _first_bad(ok)
            if bad is not None:
                witnesses[name] = (a,) + bad

    for a in range(br.order):
        sa = S[a]
        # a*(bc) = (a*b) b (a*c) b^-1
        lhs = np.take(sa, D)
        u = D[sa, ar]
        rhs = D[D[u[:, None], sa[None, :]], inv[:, None]]
        note("star_of_dot_product", a, lhs == rhs)
        # (a o b)*c = (a*(b*c)) (b*c) (a*c)
        lhs = S[C[a]]
        rhs = D[D[np.take(sa, S), S], sa[None, :]]
        note("star_of_circle_product", a, lhs == rhs)
        # a (b*c) a^-1 = (b*a)^-1 (b*(ac))
        lhs = D[np.take(D[a], S), inv[a]]
        rhs = D[inv[S[:, a]][:, None], S[:, D[a]]]
        note("conjugated_star", a, lhs == rhs)
        # lam_a(b*c) = (a o b o abar) * lam_a(c)
        lhs = np.take(lam[a], S)
        conj = C[C[a], cinv[a]]
        rhs = S[conj[:, None], lam[a][None, :]]
        note("lambda_of_star", a, lhs == rhs)
        if two_sided:
            # (ab)*c = b^-1 (a*c) b (b*c)
            lhs = S[D[a]]
            rhs = D[D[D[inv[:, None], sa[None, :]], ar[:, None]], S]
            note("two_sided_star", a, lhs == rhs)

    report = SuiteReport(br.label)
    for name, w in witnesses.items():
        report.checks.append(Check(name, w is None, w))
    if not two_sided:
        report.checks.append(Check("two_sided_star_skipped", True))
    return report


# Hypothesis helpers returning (passed, witness)

def _is_trivial_witness(br: SkewBrace, s: np.ndarray) -> Optional[tuple]:
    bad = _first_bad(br.star_table[s[:, None], s[None, :]] == br.identity)
    return None if bad is None else (int(s[bad[0]]), int(s[bad[1]]))


def _contained(mask: np.ndarray, values: np.ndarray, rows: np.ndarray, cols: np.ndarray) -> Optional[tuple]:
    bad = _first_bad(mask[values])
    return None if bad is None else (int(rows[bad[0]]), int(cols[bad[1]]))


def left_ideal_witness(br: SkewBrace, s: Iterable[int], *, op: bool = False) -> Optional[tuple]:
    """(a, x) with lam_a(x) outside s (lam_op for the opposite brace)."""
    arr = _check_indices(br.dot, s)
    mask = set_to_mask(br.order, arr)
    table = br.lam_op if op else br.lam
    ar = np.arange(br.order)
    return _contained(mask, table[:, arr], ar, arr)


def right_ideal_witness(br: SkewBrace, s: Iterable[int], *, op: bool = False) -> Optional[tuple]:
    """(x, a) with x*a (or a^-1 lam_op_x(a)) outside s."""
    arr = _check_indices(br.dot, s)
    mask = set_to_mask(br.order, arr)
    ar = np.arange(br.order)
    if op:
        values = br.dot.mul[br.dot.inv[None, :], br.lam_op[arr, :]]
    else:
        values = br.star_table[arr, :]
    return _contained(mask, values, arr, ar)


def _check(name: str, witness: Optional[Any]) -> Check:
    return Check(name, witness is None, witness)


def _flag(name: str, ok: bool, witness: Any = None) -> Check:
    return Check(name, bool(ok), None if ok else witness)


def _normal_check(g: GroupTable, s: np.ndarray, name: str) -> Check:
    return _flag(name, is_normal(g, s), tuple(s.tolist()))


def _require_subbraces(br: SkewBrace, **sets: np.ndarray) -> None:
    for name, s in sets.items():
        if not (is_subgroup(br.dot, s) and is_subgroup(br.circle, s)):
            raise DomainError(f"{name} is not a sub-skew brace", tuple(s.tolist()))


def _star_is_trivial(br: SkewBrace, xs: np.ndarray, ys: np.ndarray) -> Optional[tuple]:
    if xs.size == 0 or ys.size == 0:
        return None
    bad = _first_bad(br.star_table[xs[:, None], ys[None, :]] == br.identity)
    return None if bad is None else (int(xs[bad[0]]), int(ys[bad[1]]))


# Generator reductions

def verify_prop_gen(br: SkewBrace, b_set: Iterable[int], c_set: Iterable[int],
                    x_gens: Iterable[int], y_gens: Iterable[int]) -> list[TheoremReport]:
    """Whether B*C = 1 can be read off generators X of B and Y of C."""
    B = _check_indices(br.dot, b_set)
    C = _check_indices(br.dot, c_set)
    X = _check_indices(br.dot, x_gens)
    Y = _check_indices(br.dot, y_gens)
    for name, gens, target in (("X", X, B), ("Y", Y, C)):
        got = generated_subgroup(br.dot, gens)
        if got != set(target.tolist()):
            raise DomainError(f"{name} does not generate the given subgroup", sorted(got ^ set(target.tolist())))

    conclusion = _check("B*C = 1", _star_is_trivial(br, B, C))
    xmask = set_to_mask(br.order, X)
    cinv = br.circle.inv

    def closed_under(table: np.ndarray) -> Optional[tuple]:
        for x in X:
            img = table[cinv[x]][X]
            if not xmask[img].all():
                return (int(x), int(X[np.flatnonzero(~xmask[img])[0]]))
        return None

    cond_i, cond_ii = closed_under(br.lam), closed_under(br.lam_op)
    either = _flag("condition (i) or (ii)", cond_i is None or cond_ii is None, {"i": cond_i, "ii": cond_ii})
    name = br.label
    return [
        TheoremReport("prop_gen_a", [_check("b*y = 1 for b in B, y in Y", _star_is_trivial(br, B, Y))], conclusion, name),
        TheoremReport("prop_gen_b", [either, _check("x*c = 1 for x in X, c in C", _star_is_trivial(br, X, C))], conclusion, name),
        TheoremReport("prop_gen_c", [either, _check("x*y = 1 for x in X, y in Y", _star_is_trivial(br, X, Y))], conclusion, name),
        TheoremReport("cor_gen", [_flag("X subset of Y", set(X.tolist()) <= set(Y.tolist()), sorted(set(X.tolist()) - set(Y.tolist()))),
                                  _check("x*y = 1 for x in X, y in Y", _star_is_trivial(br, X, Y))], conclusion, name),
    ]


def verify_lemma_product(br: SkewBrace, b_set: Iterable[int], c_set: Iterable[int]) -> list[TheoremReport]:
    """One factorization plus a one-sided ideal condition on B gives the other factorization."""
    B = _check_indices(br.dot, b_set)
    C = _check_indices(br.dot, c_set)
    fac = factorization_check(br, B, C)
    dot_f = _flag("A = B.C", fac.dot_product)
    circ_f = _flag("A = B o C", fac.circle_product)
    name = br.label
    return [
        TheoremReport("lem_product_a", [dot_f, _check("B left ideal in A", left_ideal_witness(br, B))], circ_f, name),
        TheoremReport("lem_product_a_op", [dot_f, _check("B left ideal in A^op", left_ideal_witness(br, B, op=True))], circ_f, name),
        TheoremReport("lem_product_b", [circ_f, _check("B right ideal in A", right_ideal_witness(br, B))], dot_f, name),
        TheoremReport("lem_product_b_op", [circ_f, _check("B right ideal in A^op", right_ideal_witness(br, B, op=True))], dot_f, name),
    ]


def verify_star_factors(br: SkewBrace, b_set: Iterable[int], c_set: Iterable[int]) -> list[TheoremReport]:
    """Normality and left-ideal status of B*C, and A' = (B*C).(C*B)."""
    B = _check_indices(br.dot, b_set)
    C = _check_indices(br.dot, c_set)
    _require_subbraces(br, B=B, C=C)
    fac = factorization_check(br, B, C)
    dot_f = _flag("A = B.C", fac.dot_product)
    circ_f = _flag("A = B o C", fac.circle_product)
    b_triv = _check("B trivial", _is_trivial_witness(br, B))
    c_triv = _check("C trivial", _is_trivial_witness(br, C))
    bc = star_subgroup(br, B, C)
    cb = star_subgroup(br, C, B)
    bc_arr = _check_indices(br.dot, bc)
    name = br.label

    bc_normal = _normal_check(br.dot, bc_arr, "B*C normal in (A,.)")
    bc_left = _check("B*C left ideal in A", left_ideal_witness(br, bc_arr))
    derived = derived_series3(br)[0]
    product = subset_product(br.dot, bc, cb)
    a_prime = _flag("A' = (B*C).(C*B)", derived == product, sorted(derived ^ product))
    return [
        TheoremReport("lem_normal", [dot_f, b_triv], bc_normal, name),
        TheoremReport("lem_invariant_a", [dot_f, c_triv, _check("C left ideal in A", left_ideal_witness(br, C))], bc_left, name),
        TheoremReport("lem_invariant_b", [dot_f, b_triv, _normal_check(br.circle, B, "B normal in (A,o)")], bc_left, name),
        TheoremReport("prop_a_prime", [dot_f, circ_f, b_triv, c_triv], a_prime, name),
    ]


THEOREMS = ("left", "right", "ito")


def verify_theorem(br: SkewBrace, which: str, b_set: Iterable[int], c_set: Iterable[int]) -> TheoremReport:
    B = _check_indices(br.dot, b_set)
    C = _check_indices(br.dot, c_set)
    _require_subbraces(br, B=B, C=C)
    fac = factorization_check(br, B, C)
    hyps = [_check("B trivial", _is_trivial_witness(br, B)), _check("C trivial", _is_trivial_witness(br, C))]
    derived, left3, right3 = derived_series3(br)
    one = {br.identity}
    if which == "left":
        hyps += [
            _normal_check(br.circle, B, "B normal in (A,o)"),
            _normal_check(br.circle, C, "C normal in (A,o)"),
            _check("B right ideal in A", right_ideal_witness(br, B)),
            _check("C right ideal in A", right_ideal_witness(br, C)),
            _flag("A = B o C", fac.circle_product),
        ]
        concl = _flag("A^3 = 1", left3 == one, sorted(left3))
    elif which == "right":
        hyps += [
            _normal_check(br.dot, B, "B normal in (A,.)"),
            _normal_check(br.dot, C, "C normal in (A,.)"),
            _check("B left ideal in A", left_ideal_witness(br, B)),
            _check("C left ideal in A", left_ideal_witness(br, C)),
            _flag("A = B.C", fac.dot_product),
        ]
        concl = _flag("A^(3) = 1", right3 == one, sorted(right3))
    elif which == "ito":
        hyps += [
            _check("B left ideal in A^op", left_ideal_witness(br, B, op=True)),
            _check("C left ideal in A^op", left_ideal_witness(br, C, op=True)),
            _check("B right ideal in A^op", right_ideal_witness(br, B, op=True)),
            _check("C right ideal in A^op", right_ideal_witness(br, C, op=True)),
            _flag("A = B.C or A = B o C", fac.dot_product or fac.circle_product),
        ]
        d = _check_indices(br.dot, derived)
        concl = _check("A'*A' = 1", _star_is_trivial(br, d, d))
    else:
        raise ValueError(f"unknown theorem {which!r}; expected one of {THEOREMS}")
    return TheoremReport(f"thm_{which}", hyps, concl, br.label)


def verify_group_ito(g: GroupTable, h_set: Iterable[int], k_set: Iterable[int]) -> list[TheoremReport]:
    """Metabelian (and, with normal factors, class <= 2) for G = HK with H, K abelian."""
    H = _check_indices(g, h_set)
    K = _check_indices(g, k_set)

    def abelian_subgroup(s: np.ndarray, name: str) -> Check:
        if not is_subgroup(g, s):
            return Check(f"{name} subgroup", False, tuple(s.tolist()))
        comm = g.mul[s[:, None], s[None, :]] == g.mul[s[None, :], s[:, None]]
        bad = _first_bad(comm)
        return Check(f"{name} abelian subgroup", bad is None, None if bad is None else (int(s[bad[0]]), int(s[bad[1]])))

    hyps = [
        abelian_subgroup(H, "H"),
        abelian_subgroup(K, "K"),
        _flag("HK = G", len(subset_product(g, H, K)) == g.order),
    ]
    derived = commutator_subgroup(g)
    d = _check_indices(g, derived)
    comm = g.mul[d[:, None], d[None, :]] == g.mul[d[None, :], d[:, None]]
    metabelian = _flag("[G,G] abelian", bool(comm.all()), sorted(derived))
    class2 = commutator_subgroup(g, derived, None)
    nilpotent = _flag("[[G,G],G] = 1", class2 == {g.identity}, sorted(class2))

    def normal(s: np.ndarray, name: str) -> Check:
        return _flag(f"{name} normal", is_subgroup(g, s) and is_normal(g, s), tuple(s.tolist()))

    return [
        TheoremReport("prop_metabelian", hyps, metabelian, g.label),
        TheoremReport("prop_class2", hyps + [normal(H, "H"), normal(K, "K")], nilpotent, g.label),
    ]
