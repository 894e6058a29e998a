"""Reproduction checks, grouped into suites for the CLI and the acceptance tests."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from . import catalog, obstruction, steenrod
from .fp import FpElement, Prime, ZeroInverse, fp_inv, is_prime, rational_to_fp, reduce_rational
from .graded import Ambiguous
from .steenrod import RootModel


@dataclass
class CheckResult:
    key: str
    title: str
    citation: str
    passed: bool = True
    checked: int = 0
    failures: List[str] = field(default_factory=list)
    elapsed: float = 0.0
    budget: Optional[float] = None

    def fail(self, msg: str):
        self.passed = False
        self.failures.append(msg)

    def line(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        extra = f"; {len(self.failures)} failing, first: {self.failures[0]}" if self.failures else ""
        return f"{state} [{self.key}] {self.title} ({self.checked} checks, {self.elapsed:.1f}s){extra}"

    def to_json(self) -> dict:
        return {"key": self.key, "title": self.title, "citation": self.citation,
                "passed": self.passed, "checked": self.checked, "failures": self.failures}


def _odd_primes(lo: int, hi: int) -> List[int]:
    return [p for p in range(max(lo, 3), hi) if is_prime(p)]


def _timed(fn):
    def run(*args, **kw):
        t = time.perf_counter()
        res = fn(*args, **kw)
        res.elapsed = time.perf_counter() - t
        if res.budget is not None and res.elapsed > res.budget:
            res.fail(f"runtime {res.elapsed:.1f}s exceeds {res.budget:.0f}s")
        return res
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


# ---------------------------------------------------------------- arith

@_timed
def check_field_arithmetic(grid: str = "full") -> CheckResult:
    r = CheckResult("arith", "prime-field inverses and rational reduction", "F_p arithmetic")
    bound = 101 if grid == "full" else 31
    for p in _odd_primes(2, bound + 1) + [2]:
        P = Prime(p)
        for a in range(1, p):
            x = FpElement(a, P)
            r.checked += 1
            if fp_inv(fp_inv(x)) != x or x * fp_inv(x) != 1:
                r.fail(f"inverse of {a} mod {p}")
        try:
            fp_inv(FpElement(0, P))
            r.fail(f"0 inverted mod {p}")
        except ZeroInverse:
            pass
    for num, den, p, want in [(-18, 5, 7, 2), (1, 12, 13, 12)]:
        r.checked += 1
        if rational_to_fp(num, den, p) != want:
            r.fail(f"{num}/{den} mod {p}")
    try:
        rational_to_fp(1, 12, 3)
        r.fail("1/12 mod 3 accepted")
    except ZeroDivisionError:
        r.checked += 1
    return r


# ---------------------------------------------------------------- oracle

@_timed
def check_oracle_chern(grid: str = "full") -> CheckResult:
    r = CheckResult("1", "Wu formula = root oracle (Chern)", steenrod_cite("wu_chern"), budget=60)
    nmax = 8 if grid == "full" else 5
    for n in range(2, nmax + 1):
        for p in (3, 5, 7, 11, 13):
            model = RootModel("chern", n)
            for k in range(2, n + 1):
                r.checked += 1
                wu = steenrod.p1_wu_chern(n, k, p)
                roots = steenrod.p1_generator_roots(model, f"c{k}", p)
                if wu != roots:
                    r.fail(f"BSU({n}) c{k} p={p}: wu={wu} roots={roots}")
    return r


@_timed
def check_oracle_pontrjagin(grid: str = "full") -> CheckResult:
    r = CheckResult("2", "Wu formula = root oracle (Pontrjagin)", steenrod_cite("wu_pont"), budget=120)
    nmax = 7 if grid == "full" else 4
    for n in range(1, nmax + 1):
        for p in (3, 5, 7, 11, 13):
            model = RootModel("pontrjagin", n)
            for k in range(1, n + 1):
                r.checked += 1
                wu = steenrod.p1_wu_pontrjagin(n, k, p)
                roots = steenrod.p1_generator_roots(model, f"p{k}", p)
                if wu != roots:
                    r.fail(f"BSO({2 * n + 1}) p{k} p={p}: wu={wu} roots={roots}")
    return r


def steenrod_cite(key: str) -> str:
    return catalog.CITE[key]


def naturality_maps(n: int, p: int):
    """(name, map, source model, target model) for c*, c'* and j* at size n."""
    out = []
    for fam, m, name in (("SU_SO", n, "c*"), ("SU_Sp", n, "c'*"), ("SO_even", n, "j*")):
        try:
            pair = catalog.instantiate_pair(fam, m, p)
        except catalog.BadParameter:
            continue
        out.append((f"{name}[{pair.label}]", pair.restriction, pair.G.root_model, pair.H.root_model))
    src = RootModel("pontrjagin", n)
    out.append((f"j*[BSO({2 * n + 1})->BSO({2 * n})]", steenrod.orthogonal_restriction(n, p) if n >= 2 else None,
                src, RootModel("pontrjagin_euler", n) if n >= 2 else None))
    return [o for o in out if o[1] is not None]


@_timed
def check_naturality(grid: str = "full") -> CheckResult:
    r = CheckResult("10", "naturality of P^1 under c*, c'*, j*", "restriction maps commute with P^1")
    nmax = 6 if grid == "full" else 3
    for n in range(1, nmax + 1):
        for p in (3, 5, 7, 11, 13):
            for name, f, src, tgt in naturality_maps(n, p):
                act_src = steenrod.root_action(src, p)
                act_tgt = steenrod.root_action(tgt, p)
                for g in f.source.names:
                    r.checked += 1
                    lhs = f(act_src(f.source.gen(g)))
                    rhs = act_tgt(f(f.source.gen(g)))
                    if lhs != rhs:
                        r.fail(f"{name} p={p} on {g}")
    return r


# ---------------------------------------------------------------- lemmas

def _coeff(P, mono: str) -> int:
    return P.coefficient(P.algebra.parse_monomial(mono))


def _cmono(*parts) -> str:
    return "*".join(f"c{i}^{e}" for i, e in parts if e)


@_timed
def check_lemma_su(grid: str = "full") -> CheckResult:
    r = CheckResult("3", "P^1 on BSU: stated monomials", steenrod_cite("wu_chern"))
    nmax = 6 if grid == "full" else 3
    for n in range(1, nmax + 1):
        for k in (2, 3):
            N = 2 * n + 1
            for p in _odd_primes((k - 1) * N, k * N):
                s = p - (k - 1) * N + 1
                if p == k * N - 1:
                    mono, want = _cmono((N, k)), Fraction((-1) ** (k - 1), k)
                else:
                    if not 2 <= s <= N:
                        continue
                    mono, want = _merge(_cmono((N, k - 1)) + f"*c{s}"), Fraction((-1) ** (k - 1))
                _expect(r, steenrod.p1_wu_chern(N, 2, p), mono, want, p, f"BSU({N}) c2 k={k}")
        if N >= 4 and is_prime(N):
            _expect(r, steenrod.p1_wu_chern(N, 4, N), f"c{N}*c3", Fraction(-3), N, f"BSU({N}) c4")
        if n >= 2:
            N = 2 * n
            for k in (2, 3):
                for p in _odd_primes(2 * (k - 1) * n, 2 * k * n - 1):
                    s = p - 2 * (k - 1) * n + 2
                    if not 2 <= s <= N:
                        continue
                    mono = "*".join(x for x in (_cmono((N, k - 2)), f"c{N - 1}", f"c{s}") if x)
                    _expect(r, steenrod.p1_wu_chern(N, 2, p), _merge(mono), Fraction((-1) ** (k - 1) * (k - 1)),
                            p, f"BSU({N}) c2 k={k}")
                p = 2 * (k - 1) * n - 1
                if is_prime(p) and p > 2 and N >= 4:
                    mono = "*".join(x for x in (_cmono((N, k - 2)), f"c{N - 1}", "c3") if x)
                    _expect(r, steenrod.p1_wu_chern(N, 4, p), _merge(mono),
                            Fraction((-1) ** (k - 1) * 3 * (k - 1)), p, f"BSU({N}) c4 k={k}")
    # the headline value
    _expect(r, steenrod.p1_wu_chern(7, 2, 13), "c7^2", Fraction(-1, 2), 13, "BSU(7) c2")
    return r


def _merge(mono: str) -> str:
    """Normalize a product string with repeated factors (c5*c5 -> c5^2)."""
    counts: Dict[str, int] = {}
    for f in mono.split("*"):
        name, _, e = f.partition("^")
        counts[name] = counts.get(name, 0) + (int(e) if e else 1)
    return "*".join(f"{g}^{e}" if e > 1 else g for g, e in counts.items())


def _expect(r: CheckResult, P, mono: str, want, p: int, label: str, require_nonzero=False):
    try:
        w = reduce_rational(want, p)
    except ZeroDivisionError:
        return
    if require_nonzero and w == 0:
        return
    r.checked += 1
    got = _coeff(P, mono)
    if got != w:
        r.fail(f"{label} p={p}: coefficient of {mono} is {got}, expected {w}")


@_timed
def check_lemma_so15(grid: str = "full") -> CheckResult:
    r = CheckResult("4", "P^1 on BSO(15): stated monomials", steenrod_cite("wu_pont"))
    model = RootModel("pontrjagin", 7)
    entries = [("p1", 7, 2, Fraction(5, 12)), ("p1", 11, 0, Fraction(1)), ("p2", 13, 0, Fraction(3)),
               ("p4", 13, 2, Fraction(29, 12)), ("p4", 17, 0, Fraction(7))]
    for k in (2, 3):
        for g, off, extra, c in entries:
            p = 12 * k - off
            if not is_prime(p):
                continue
            mono = "*".join(x for x in ("p7", f"p6^{k - 2}" if k > 2 else "", f"p{extra}" if extra else "") if x)
            sign = (-1) ** (k + (p - 1) // 2)
            _expect(r, steenrod.p1_generator(model, g, p), mono, sign * c, p, f"{g} k={k}",
                    require_nonzero=True)
    # the vanishing entry at k = 2, p = 7
    r.checked += 1
    if _coeff(steenrod.p1_generator(model, "p4", 7), "p7") != 0:
        r.fail("p4 at p=7: coefficient of p7 should vanish")
    return r


@_timed
def check_lemma_so_even(grid: str = "full") -> CheckResult:
    r = CheckResult("5", "P^1 on BSO(2n) and BSO(8): stated monomials", steenrod_cite("wu_pont"))
    for n in (4, 5, 6):
        model = RootModel("pontrjagin_euler", n)
        k = 3
        for p in _odd_primes(2 * (k - 2) * (n - 1) + 2, 2 * (k - 1) * (n - 1) + 2):
            s = (p - 1) // 2 - (k - 2) * (n - 1)
            mono = _merge("*".join(x for x in (f"p{n - 1}^{k - 3}" if k > 3 else "", f"p{s}", f"e{n}^2") if x))
            _expect(r, steenrod.p1_generator(model, "p1", p), mono,
                    Fraction((-1) ** (k + (p - 1) // 2) * (k - 2)), p, f"BSO({2 * n}) p1 k={k}")
        for p in _odd_primes(3, 2 * n):
            g = f"p{n - (p - 1) // 2}"
            _expect(r, steenrod.p1_generator(model, g, p), f"e{n}^2",
                    Fraction((-1) ** ((p - 1) // 2) * 2 * n), p, f"BSO({2 * n}) {g}")
    so8 = RootModel("pontrjagin_euler", 4)
    for k in (2, 3):
        p3 = f"p3^{k - 2}*" if k > 2 else ""
        p = 6 * k - 5
        if is_prime(p):
            _expect(r, steenrod.p1_generator(so8, "p1", p), f"{p3}p2^2",
                    (-1) ** (k + (p - 1) // 2) * Fraction(1, 12), p, f"BSO(8) p1 k={k}", require_nonzero=True)
        p = 6 * k - 7
        if is_prime(p):
            _expect(r, steenrod.p1_generator(so8, "p2", p), f"{p3}p2^2",
                    (-1) ** (k + (p + 1) // 2) * Fraction(1, 4), p, f"BSO(8) p2 k={k}", require_nonzero=True)
    for g, p, mono, want in (("p1", 7, "p2^2", 4), ("p2", 5, "p2^2", 1), ("p2", 5, "e4^2", 3)):
        r.checked += 1
        got = _coeff(steenrod.p1_generator(so8, g, p), mono)
        if got != want:
            r.fail(f"BSO(8) {g} p={p}: {mono} has {got}, expected {want}")
    return r


EXCEPTIONAL_ENTRIES = [
    # group, generator, p = 12k - off, monomial stem, sign exponent shift, coefficient / 60^(k-1)
    ("E8", "x4", 7, "x36", -1, Fraction(5, 96)),
    ("E8", "x4", 11, "x28", 1, Fraction(1, 8)),
    ("E8", "x16", 13, "x36", -1, Fraction(35, 8)),
    ("E8", "x16", 17, "x28", -1, Fraction(7, 8)),
    ("E6", "x4", 7, "x18^2", 1, Fraction(25, 48)),
    ("E6", "x4", 11, "x18*x10", 1, Fraction(5)),
    ("E6", "x16", 13, "x18^2", 1, Fraction(175, 4)),
    ("E6", "x16", 17, "x18*x10", -1, Fraction(35)),
]


def exceptional_expectation(entry, k: int):
    group, g, off, stem, shift, c = entry
    p = 12 * k - off
    mono = stem if k == 2 else f"x24^{k - 2}*{stem}"
    sign = (-1) ** (k + (p + shift) // 2)
    return p, mono, sign * c / 60 ** (k - 1)


@_timed
def check_exceptional(grid: str = "full") -> CheckResult:
    r = CheckResult("6", "P^1 on BE8 and BE6 at k = 2", f'{catalog.CITE["e8"]}; {catalog.CITE["e6"]}', budget=120)
    for entry in EXCEPTIONAL_ENTRIES:
        group, g = entry[0], entry[1]
        p, mono, want = exceptional_expectation(entry, 2)
        r.checked += 1
        sol = steenrod.p1_exceptional(group, g, p)
        state, value = sol.status(mono)
        w = reduce_rational(want, p)
        if state != "unique":
            r.fail(f"{group} {g} p={p}: {mono} is {state}")
        elif value != w:
            r.fail(f"{group} {g} p={p}: {mono} = {value}, expected {w}")
    return r


# ---------------------------------------------------------------- table, cells

@_timed
def check_table(grid: str = "full") -> CheckResult:
    r = CheckResult("7", "a_k and b_k table", catalog.CITE["a_k"])
    from .cli import table_rows
    closed = {
        "SU_SO": lambda n, k: k * (2 * n + 1),
        "SU_Sp": lambda n, k: 2 * k * n - 1,
        "SO_even": lambda n, k: 2 * (k - 1) * (n - 1) + n,
        "E6_F4": lambda n, k: 12 * k - 5,
        "Spin8_G2": lambda n, k: 6 * k - 2,
    }
    ml = {
        "SU_SO": lambda n: (2 * n + 1, 2 * n + 1), "SU_Sp": lambda n: (2 * n, 2 * n - 1),
        "SO_even": lambda n: (2 * n - 2, n), "E6_F4": lambda n: (12, 9), "Spin8_G2": lambda n: (6, 4),
    }
    rows = table_rows(list(closed), range(1, 9), 6)
    for row in rows:
        fam, n, k = row["family"], row["parameter"], row["k"]
        r.checked += 1
        if row["a_k"] != closed[fam](n, k):
            r.fail(f"{fam} n={n} k={k}: a_k={row['a_k']}")
        if k >= 2:
            m, l = ml[fam](n)
            b = max((k - 1) * m + l, k * l)
            if row["b_k"] != b:
                r.fail(f"{fam} n={n} k={k}: b_k={row['b_k']} expected {b}")
            if row["a_k"] != b - (2 if fam == "E6_F4" else 0):
                r.fail(f"{fam} n={n} k={k}: a_k - b_k relation")
    return r


def _pair_params(fam: str, nmax: int):
    if fam in ("E6_F4", "Spin8_G2"):
        return [None]
    lo = {"SU_SO": 1, "SU_Sp": 2, "SO_even": 2}[fam]
    return list(range(lo, nmax + 1))


@_timed
def check_cells(grid: str = "full") -> CheckResult:
    r = CheckResult("9", "cell dimensions of X: max = 2 b_k, E6 gap", catalog.CITE["cells"], budget=30)
    nmax = 8 if grid == "full" else 4
    for fam in catalog.FAMILIES:
        for n in _pair_params(fam, nmax):
            for k in range(2, 7):
                p = next(q for q in range(k + 1, 10 ** 4) if is_prime(q) and catalog.valid_prime(fam, q))
                pair = catalog.instantiate_pair(fam, n, p) if fam != "E6_F4" or p >= 5 else None
                cells = obstruction.x_cells(pair, k, p)
                r.checked += 1
                if cells.max != 2 * pair.b(k):
                    r.fail(f"{fam} n={n} k={k}: max {cells.max} != {2 * pair.b(k)}")
    for k in (2, 3):
        p = next(q for q in range(12 * k - 5, 10 ** 4) if is_prime(q))
        pair = catalog.instantiate_pair("E6_F4", None, p)
        cells = obstruction.x_cells(pair, k, p)
        r.checked += 1
        inside = cells.between(24 * k - 12, 24 * k - 6)
        if inside:
            r.fail(f"E6 k={k}: cells {inside} inside ({24 * k - 12}, {24 * k - 6})")
    return r


# ---------------------------------------------------------------- criterion

def criterion_grid(nmax: int = 4):
    """(family, parameter, k, p, expected) over the consistency region."""
    for fam in ("SU_SO", "SU_Sp", "E6_F4", "Spin8_G2"):
        for n in _pair_params(fam, nmax):
            for k in (2, 3):
                lo, hi = catalog.a_value(fam, n, k - 1), catalog.a_value(fam, n, k)
                top = catalog.a_value(fam, n, k + 1)
                for p in _odd_primes(lo, top):
                    if not catalog.valid_prime(fam, p):
                        continue
                    if p < hi:
                        pair = catalog.instantiate_pair(fam, n, p)
                        if pair.fact_for(p, k) is not None:
                            continue
                        yield fam, n, k, p, "obstructed"
                    else:
                        yield fam, n, k, p, "inconclusive"


@_timed
def check_criterion(grid: str = "full") -> CheckResult:
    r = CheckResult("8", "criterion agrees with the threshold a_k", catalog.CITE["criterion"], budget=600)
    nmax = 4 if grid == "full" else 2
    for fam, n, k, p, want in criterion_grid(nmax):
        pair = catalog.instantiate_pair(fam, n, p)
        cv = obstruction.criterion_check(pair, p, k)
        r.checked += 1
        if cv.status != want:
            why = cv.witness_str() if cv.obstructed else "; ".join(cv.warnings[:1]) or cv.reason
            r.fail(f"{fam} n={n} k={k} p={p}: {cv.status} ({why}), expected {want}")
    return r


SUITES: Dict[str, List[Callable[..., CheckResult]]] = {
    "arith": [check_field_arithmetic],
    "oracle": [check_oracle_chern, check_oracle_pontrjagin, check_naturality],
    "lemmas": [check_lemma_su, check_lemma_so15, check_lemma_so_even, check_exceptional],
    "criterion": [check_criterion],
    "cells": [check_table, check_cells],
}

ACCEPTANCE = {
    "1": check_oracle_chern, "2": check_oracle_pontrjagin, "3": check_lemma_su, "4": check_lemma_so15,
    "5": check_lemma_so_even, "6": check_exceptional, "7": check_table, "8": check_criterion,
    "9": check_cells, "10": check_naturality,
}


def run_suite(name: str, grid: str = "full") -> List[CheckResult]:
    names = list(SUITES) if name == "all" else [name]
    return [check(grid) for n in names for check in SUITES[n]]
