"""The fixed instance corpus and the checks run over it."""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .bicrossed import (
    BicrossedData,
    build_bicrossed_brace,
    certify_bicrossed,
    criterion_meta_trivial,
    ideal_profile,
    product_data,
    star_generators,
)
from .brace import (
    SkewBrace,
    almost_trivial_from_group,
    derived_ideal_witness,
    derived_series3,
    identity_web_witness,
    is_meta_trivial,
    lambda_automorphism_witness,
    lambda_homomorphism_witness,
    opposite,
    star_subgroup,
    subset_status,
    trivial_from_group,
)
from .errors import CertificationError
from .families import Family1Params, enumerate_quadruples, example_params, family1_data, family2_data
from .groups import (
    GroupTable,
    dihedral_group,
    direct_product,
    generated_subgroup,
    make_cyclic,
    quaternion_group,
    subset_product,
    symmetric_elements,
    symmetric_group,
)
from .matrices import mat_order
from .harness import (
    THEOREMS,
    Check,
    TheoremReport,
    verify_group_ito,
    verify_lemma_product,
    verify_lemma_suite,
    verify_star_factors,
    verify_theorem,
)

BUILD_LIMIT = 1000
LEMMA_LIMIT = 100


@dataclass
class CorpusEntry:
    name: str
    make: Callable[[], SkewBrace] | None = None
    data: Optional[BicrossedData] = None
    b_set: frozenset[int] = frozenset()
    c_set: frozenset[int] = frozenset()
    group: Optional[GroupTable] = None
    expect_meta_trivial: Optional[bool] = None
    _brace: Optional[SkewBrace] = field(default=None, repr=False)

    @property
    def order(self) -> int:
        if self.data is not None:
            return self.data.order
        return self.group.order if self.group is not None else self.brace.order

    @property
    def buildable(self) -> bool:
        return self.order <= BUILD_LIMIT

    @property
    def brace(self) -> SkewBrace:
        if self._brace is None:
            if self.data is not None:
                self._brace = build_bicrossed_brace(self.data)
            else:
                assert self.make is not None
                self._brace = self.make()
        return self._brace


def _group_entries() -> list[CorpusEntry]:
    s3 = symmetric_group(3)
    perms = symmetric_elements(3)
    cyc3 = perms.index((1, 2, 0))
    swap = perms.index((1, 0, 2))
    d4 = dihedral_group(4)
    q8 = quaternion_group()
    klein = direct_product(make_cyclic(2), make_cyclic(2), "V4")
    z6, z9 = make_cyclic(6), make_cyclic(9)
    factored = [
        (z6, {2}, {3}),
        (z9, set(range(9)), set()),
        (klein, {2}, {1}),
        (s3, {cyc3}, {swap}),
        (d4, {1}, {4}),
        (q8, {2}, {4}),
    ]
    out = []
    for g, hg, kg in factored:
        H = generated_subgroup(g, hg)
        K = generated_subgroup(g, kg)
        out.append(CorpusEntry(f"triv({g.label})", functools.partial(trivial_from_group, g), b_set=H, c_set=K))
        out.append(CorpusEntry(f"atriv({g.label})", functools.partial(almost_trivial_from_group, g), b_set=H, c_set=K, group=g))
    return out


def _bicrossed_entry(data: BicrossedData, expect: Optional[bool] = None) -> CorpusEntry:
    return CorpusEntry(data.label, data=data, b_set=data.b_factor(), c_set=data.c_factor(), expect_meta_trivial=expect)


def s3_z6_data() -> BicrossedData:
    """B = S3, C = Z/6; c acts by conjugation with (0 1)^c, b by the sign of b."""
    s3, z6 = symmetric_group(3), make_cyclic(6)
    perms = symmetric_elements(3)
    t = perms.index((1, 0, 2))
    conj = s3.mul[s3.mul[t], t]  # x -> t x t^-1 (t is an involution)
    ident = np.arange(6)
    phi = np.stack([conj if c % 2 else np.arange(6) for c in range(6)])

    def sign(p):
        return sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j]) % 2

    negate = (-ident) % 6
    psi = np.stack([negate if sign(p) else ident for p in perms])
    return certify_bicrossed(BicrossedData(s3, z6, phi, psi, label="S3 x| Z/6 (sign)"))


def random_cyclic_data(rng: random.Random, count: int, max_order: int = 12) -> list[BicrossedData]:
    """Certified data on Z/m x Z/n with scalar actions, found by rejection sampling."""
    out: list[BicrossedData] = []
    seen = set()
    attempts = 0
    while len(out) < count and attempts < 5000:
        attempts += 1
        m, n = rng.randint(2, max_order), rng.randint(2, max_order)
        units_m = [u for u in range(1, m) if np.gcd(u, m) == 1 and pow(u, n, m) == 1 % m]
        units_n = [w for w in range(1, n) if np.gcd(w, n) == 1 and pow(w, m, n) == 1 % n]
        u, w = rng.choice(units_m), rng.choice(units_n)
        if (m, n, u, w) in seen or (u == 1 and w == 1):
            continue
        seen.add((m, n, u, w))
        xs, ys = np.arange(m), np.arange(n)
        phi = np.stack([pow(u, c, m) * xs % m for c in range(n)])
        psi = np.stack([pow(w, b, n) * ys % n for b in range(m)])
        data = BicrossedData(make_cyclic(m), make_cyclic(n), phi, psi, label=f"cyclic(m={m},n={n},u={u},w={w})")
        try:
            out.append(certify_bicrossed(data))
        except CertificationError:
            continue
    return out


@functools.lru_cache(maxsize=1)
def corpus(seed: int = 20240501, random_count: int = 12) -> tuple[CorpusEntry, ...]:
    entries = _group_entries()
    for p in (3, 5):
        for q in enumerate_quadruples(3, require_nontrivial=True):
            entries.append(_bicrossed_entry(family1_data(Family1Params(p, *q)), expect=True))
    for number in range(1, 7):
        params = example_params(number)
        if mat_order(params.P) != params.p:
            # The matrix as recorded does not have the stated order; no sound
            # family-2 instance exists for these parameters.
            continue
        entry = _bicrossed_entry(family2_data(params), expect=False)
        entry.name = f"family2-example({number})"
        entries.append(entry)
    entries.append(_bicrossed_entry(s3_z6_data()))
    entries.append(_bicrossed_entry(certify_bicrossed(product_data(make_cyclic(3), make_cyclic(4)))))
    for data in random_cyclic_data(random.Random(seed), random_count):
        entries.append(_bicrossed_entry(data))
    return tuple(entries)


def entry(name: str) -> CorpusEntry:
    for e in corpus():
        if e.name == name:
            return e
    raise KeyError(name)


# Per-instance checks

def structural_checks(e: CorpusEntry) -> list[Check]:
    """Table-level invariants that hold on every brace, plus the B x C facts."""
    br = e.brace
    checks = [
        Check("opposite_involution", opposite(opposite(br)).same_tables(br)),
        Check("lambda_homomorphism", (w := lambda_homomorphism_witness(br)) is None, w),
        Check("lambda_automorphism", (w := lambda_automorphism_witness(br)) is None, w),
        Check("identity_web", (w := identity_web_witness(br)) is None, w),
        Check("derived_is_ideal", (w := derived_ideal_witness(br)) is None, w),
    ]
    if e.data is not None:
        data = e.data
        B, C = data.b_factor(), data.c_factor()
        bc, cb = star_subgroup(br, B, C), star_subgroup(br, C, B)
        derived = derived_series3(br)[0]
        checks.append(Check("derived_equals_product", derived == subset_product(br.dot, bc, cb)))
        xc, xb = star_generators(data)
        got_bc = {br.star(b, c) for b in B for c in C}
        got_cb = {br.star(c, b) for c in C for b in B}
        checks.append(Check("star_generator_formulas", got_bc == set(xc) and got_cb == set(xb)))
        checks.append(Check("derived_generated_by_formulas", generated_subgroup(br.dot, xc | xb) == derived))
    return checks


def profile_check(e: CorpusEntry) -> Check:
    """ideal_profile predictions against subset_status on the built brace."""
    predicted = ideal_profile(e.data)
    actual = {}
    for key, s in (("B", e.b_set), ("C", e.c_set)):
        st = subset_status(e.brace, s).as_dict()
        actual[key] = {k: st[k] for k in predicted[key]}
    return Check("ideal_profile", predicted == actual, {"predicted": predicted, "actual": actual})


def criterion_check(e: CorpusEntry) -> Check:
    crit = criterion_meta_trivial(e.data)
    brute = is_meta_trivial(e.brace)
    return Check("criterion_equivalence", crit == brute, {"criterion": crit, "brute_force": brute})


def theorem_reports(e: CorpusEntry) -> list[TheoremReport]:
    br = e.brace
    reports = [verify_theorem(br, which, e.b_set, e.c_set) for which in THEOREMS]
    reports += verify_star_factors(br, e.b_set, e.c_set)
    reports += verify_lemma_product(br, e.b_set, e.c_set)
    if e.group is not None:
        reports += verify_group_ito(e.group, e.b_set, e.c_set)
    for r in reports:
        r.instance = e.name
    return reports


@dataclass
class CorpusResult:
    checks: list[tuple[str, Check]] = field(default_factory=list)
    theorems: list[TheoremReport] = field(default_factory=list)

    @property
    def red_alerts(self) -> list[TheoremReport]:
        return [r for r in self.theorems if r.red_alert]

    @property
    def failed_checks(self) -> list[tuple[str, Check]]:
        return [(n, c) for n, c in self.checks if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.red_alerts and not self.failed_checks


def run_corpus(entries: Optional[tuple[CorpusEntry, ...]] = None) -> CorpusResult:
    result = CorpusResult()
    for e in entries if entries is not None else corpus():
        if e.expect_meta_trivial is not None:
            crit = criterion_meta_trivial(e.data)
            result.checks.append((e.name, Check("expected_meta_triviality", crit == e.expect_meta_trivial, crit)))
        if e.data is not None and not e.buildable:
            continue
        br = e.brace
        if br.order <= LEMMA_LIMIT:
            for c in verify_lemma_suite(br).checks:
                result.checks.append((e.name, c))
        for c in structural_checks(e):
            result.checks.append((e.name, c))
        if e.data is not None:
            result.checks.append((e.name, criterion_check(e)))
            result.checks.append((e.name, profile_check(e)))
        result.theorems.extend(theorem_reports(e))
    return result

