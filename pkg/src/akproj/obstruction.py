"""Cell counts, the P^1 obstruction criterion and A_k verdicts."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .catalog import CITE, FactEntry, GroupModel, PairModel, UnsupportedPrime, valid_prime
from .fp import FieldError, Prime, as_prime
from .graded import Ambiguous, GeneratorIdeal, Monomial, Polynomial, basis_of_degree
from . import steenrod


class LExceedsPMinusOne(ValueError):
    pass


class DegreeGuardExceeded(ArithmeticError):
    pass


# ---------------------------------------------------------------- cells

@dataclass(frozen=True)
class CellSet:
    dims: Tuple[int, ...]

    def __post_init__(self):
        dims = tuple(sorted(set(self.dims)))
        if any(d <= 0 or d % 2 for d in dims):
            raise ValueError("cell dimensions must be positive and even")
        object.__setattr__(self, "dims", dims)

    @property
    def max(self) -> int:
        return self.dims[-1] if self.dims else 0

    def __iter__(self):
        return iter(self.dims)

    def __contains__(self, d):
        return d in self.dims

    def __len__(self):
        return len(self.dims)

    def between(self, lo: int, hi: int) -> List[int]:
        """Dimensions strictly between lo and hi."""
        return [d for d in self.dims if lo < d < hi]


def projective_cells(n: int, l: int, p) -> CellSet:
    """Cells of the l-th projective space of S^(2n-1) at p: dims 2n, 4n, ..., 2ln."""
    p = as_prime(p).value
    if l < 0 or n < 1:
        raise ValueError("need n >= 1 and l >= 0")
    if l > p - 1:
        raise LExceedsPMinusOne(f"l = {l} exceeds p - 1 = {p - 1}")
    return CellSet(tuple(2 * j * n for j in range(1, l + 1)))


def _sums_by_count(types: Iterable[int], top: int) -> List[set]:
    """out[c] = {sum a_r t_r : sum a_r = c} for c <= top."""
    out = [set() for _ in range(top + 1)]
    out[0].add(0)
    for t in types:
        for c in range(1, top + 1):
            out[c] |= {s + t for s in out[c - 1]}
    return out


def x_cells(pair: PairModel, k: int, p=None) -> CellSet:
    """Cells of the complex X built from P^i of H's spheres times P^j of the quotient's, i + j = k, i < k.

    A cell picks a_r cells' worth from the r-th H-sphere and b_s from the s-th
    quotient sphere with sum(a) <= k - 1, sum(b) >= 1 and sum(a) + sum(b) <= k;
    its dimension is 2(sum a_r m_r + sum b_s l_s).
    """
    p = as_prime(p if p is not None else pair.prime)
    if k < 2:
        raise ValueError("k >= 2")
    for t in set(pair.H.type_sequence) | set(pair.quotient_types):
        projective_cells(t, k, p)
    hs = _sums_by_count(pair.H.type_sequence, k - 1)
    qs = _sums_by_count(pair.quotient_types, k)
    dims = set()
    for ca in range(k):
        for cb in range(1, k - ca + 1):
            dims |= {2 * (a + b) for a in hs[ca] for b in qs[cb]}
    return CellSet(tuple(dims))


def e6_exception(p: int, i: int) -> bool:
    """pi_(2i-1)(BE6) vanishes at p = 12k-5 for i = 12k-3."""
    return (p + 5) % 12 == 0 and i == p + 2


def clearance(G: GroupModel, cells: CellSet, p=None) -> Tuple[bool, List[int]]:
    p = as_prime(p if p is not None else G.prime).value
    failing = []
    for d in cells:
        if d % 2:
            raise ValueError("odd cell dimension")
        i = d // 2
        if i <= p or (G.family == "E6" and e6_exception(p, i)):
            continue
        failing.append(d)
    return not failing, failing


# ---------------------------------------------------------------- criterion

@dataclass
class CriterionVerdict:
    status: str                       # "obstructed" | "inconclusive"
    m_k: Optional[int] = None
    generator: Optional[str] = None
    monomial: Optional[Monomial] = None
    coefficient: Optional[int] = None
    ideal: Optional[GeneratorIdeal] = None
    reason: str = ""
    warnings: List[str] = field(default_factory=list)
    rejected: List[Tuple[str, str]] = field(default_factory=list)
    pair: Optional[PairModel] = None
    k: int = 0

    @property
    def obstructed(self) -> bool:
        return self.status == "obstructed"

    def witness_str(self) -> str:
        if not self.obstructed:
            return ""
        A = self.pair.G.algebra
        return f"{self.coefficient}*{A.mono_str(self.monomial)}"

    def to_json(self) -> dict:
        out = {"status": self.status, "k": self.k, "warnings": list(self.warnings)}
        if self.obstructed:
            A = self.pair.G.algebra
            out.update({
                "m_k": self.m_k,
                "generator": self.generator,
                "M": A.mono_str(self.monomial),
                "coefficient": self.coefficient,
                "I": str(self.ideal),
                "citation": CITE["criterion"],
            })
        else:
            out["reason"] = self.reason
        return out


def _is_type_sum(x: int, types: Iterable[int]) -> bool:
    """Is x a nonempty sum (with repetition) of members of ``types``?"""
    if x <= 0:
        return False
    types = sorted(set(types))
    reach = [False] * (x + 1)
    reach[0] = True
    for s in range(1, x + 1):
        reach[s] = any(t <= s and reach[s - t] for t in types)
    return reach[x]


def condition_one(G: GroupModel, M: Monomial, m_k: int) -> bool:
    A = G.algebra
    halves = sorted(G.generator_types[A.names[i]] for i in A.factors(M))
    if not halves:
        return False
    if any(h <= m_k for h in halves[1:]):
        return False
    return not _is_type_sum(m_k - halves[0], G.type_sequence)


def criterion_ideal(G: GroupModel, M: Monomial, m_k: int) -> GeneratorIdeal:
    """Generators of type <= m_k, minus the lowest factor of M."""
    A = G.algebra
    first = min(A.factors(M), key=lambda i: (G.generator_types[A.names[i]], i))
    members = {g for g in A.names if G.generator_types[g] <= m_k and g != A.names[first]}
    return GeneratorIdeal(A, members)


# symbolic coefficients: {sorted tuple of alpha ids: residue}
Sym = Dict[Tuple[int, ...], int]


def _sym_mul(a: Sym, b: Sym, p: int) -> Sym:
    out: Sym = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            key = tuple(sorted(ka + kb))
            out[key] = (out.get(key, 0) + va * vb) % p
    return {k: v for k, v in out.items() if v}


def _sym_add(a: Sym, b: Sym, p: int) -> Sym:
    out = dict(a)
    for k, v in b.items():
        out[k] = (out.get(k, 0) + v) % p
    return {k: v for k, v in out.items() if v}


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minus(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


class _GenericImages:
    """Generic f(y) = eps*x + sum(alpha_U * U), restricted to monomials U dividing M."""

    def __init__(self, pair: PairModel, M: Monomial):
        GA, HA = pair.G.algebra, pair.H.algebra
        self.p = GA.p
        self.ys = list(HA.names)
        self.degrees = [HA.degrees[HA.index[y]] for y in self.ys]
        self.lead: List[Optional[Monomial]] = []
        self.pert: List[List[Tuple[Monomial, int]]] = []
        self.sign_slots: List[int] = []
        next_alpha = 0
        for j, y in enumerate(self.ys):
            x = pair.matching[y]
            xm = GA.monomial({x: 1})
            self.lead.append(xm if _divides(xm, M) else None)
            if self.lead[-1] is not None:
                self.sign_slots.append(j)
            terms = []
            for U in basis_of_degree(GA, self.degrees[j]):
                if U != xm and _divides(U, M):
                    terms.append((U, next_alpha))
                    next_alpha += 1
            self.pert.append(terms)

    def terms(self, j: int, eps: Dict[int, int]) -> List[Tuple[Monomial, Sym]]:
        out = [(U, {(a,): 1}) for U, a in self.pert[j]]
        if self.lead[j] is not None:
            out.append((self.lead[j], {(): eps[j] % self.p}))
        return out


def _multisets(degrees: List[int], total: int) -> Iterable[Tuple[int, ...]]:
    """Multisets of generator indices (nondecreasing tuples) whose degrees sum to total."""
    def rec(start, rest, acc):
        if rest == 0:
            yield tuple(acc)
            return
        for j in range(start, len(degrees)):
            if degrees[j] <= rest:
                acc.append(j)
                yield from rec(j, rest - degrees[j], acc)
                acc.pop()
    yield from rec(0, total, [])


def _product_coefficient(gi: _GenericImages, factors: Tuple[int, ...], M: Monomial, eps) -> Sym:
    """Coefficient of M in prod f(y_j), restricted to divisor terms (recursive)."""
    p = gi.p
    memo = {}

    def rec(pos, rest):
        if pos == len(factors):
            return {(): 1} if not any(rest) else {}
        key = (pos, rest)
        if key in memo:
            return memo[key]
        acc: Sym = {}
        for U, c in gi.terms(factors[pos], eps):
            if _divides(U, rest):
                sub = rec(pos + 1, _minus(rest, U))
                if sub:
                    acc = _sym_add(acc, _sym_mul(c, sub, p), p)
        memo[key] = acc
        return acc

    return rec(0, M)


def _sign_vectors(slots: List[int]):
    for signs in itertools.product((1, -1), repeat=len(slots)):
        yield dict(zip(slots, signs))


def condition_two(pair: PairModel, M: Monomial) -> Tuple[bool, str]:
    """True if no generic graded f has an image product containing M.

    Raises DegreeGuardExceeded when a nonzero symbolic coefficient has total
    degree >= p, where vanishing as a function is not decided.
    """
    GA = pair.G.algebra
    gi = _GenericImages(pair, M)
    d = GA.degree(M)
    p = GA.p
    for factors in _multisets(gi.degrees, d):
        for eps in _sign_vectors(gi.sign_slots):
            coeff = _product_coefficient(gi, factors, M, eps)
            if not coeff:
                continue
            deg = max(len(k) for k in coeff)
            if deg >= p:
                raise DegreeGuardExceeded(f"alpha-degree {deg} >= p = {p}")
            prod = "*".join(f"f({gi.ys[j]})" for j in factors)
            return False, f"{prod} can contain {GA.mono_str(M)}"
    return True, ""


def _p1_candidates(pair: PairModel, x: str, p: int):
    """(monomial, coefficient or None if ambiguous) pairs of P^1 x, highest first."""
    G = pair.G
    if G.root_model is not None:
        P = steenrod.p1_generator(G.root_model, x, p)
        return [(m, c) for m, c in P.sorted_terms()], []
    sol = steenrod.p1_exceptional(G.family, x, p)
    out = []
    for m in sol.basis_monomials:
        state, value = sol.status(m)
        if state == "unique":
            if value:
                out.append((m, value))
        else:
            out.append((m, None))
    return out, list(sol.notes)


def criterion_check(pair: PairModel, p=None, k: int = 2) -> CriterionVerdict:
    p = as_prime(p if p is not None else pair.prime)
    if k < 2:
        raise ValueError("k >= 2")
    if not pair.has_cohomology or p.value != pair.prime.value:
        return CriterionVerdict("inconclusive", reason=f"no cohomology model of {pair.label} at p = {p.value}",
                                pair=pair, k=k)
    G, H = pair.G, pair.H
    GA = G.algebra
    warnings: List[str] = []
    rejected: List[Tuple[str, str]] = []
    for m_k in sorted(set(H.type_sequence)):
        ys = [y for y in H.algebra.names if H.generator_types[y] == m_k]
        for y in ys:
            x = pair.matching[y]
            try:
                cands, notes = _p1_candidates(pair, x, p.value)
            except ValueError as e:
                warnings.append(f"P^1 {x} unavailable: {e}")
                continue
            for m, c in cands:
                if sum(m) != k:
                    continue
                label = GA.mono_str(m)
                if c is None:
                    warnings.append(f"Ambiguous: coefficient of {label} in P^1 {x}")
                    continue
                if not condition_one(G, m, m_k):
                    rejected.append((label, "condition (1)"))
                    continue
                try:
                    ok, why = condition_two(pair, m)
                except DegreeGuardExceeded as e:
                    warnings.append(f"DegreeGuardExceeded for {label}: {e}")
                    continue
                if not ok:
                    rejected.append((label, f"condition (2): {why}"))
                    continue
                I = criterion_ideal(G, m, m_k)
                verdict = CriterionVerdict("obstructed", m_k, x, m, c, I, warnings=warnings,
                                           rejected=rejected, pair=pair, k=k)
                reverify(verdict)
                return verdict
    return CriterionVerdict("inconclusive", reason="no monomial satisfies both conditions",
                            warnings=warnings, rejected=rejected, pair=pair, k=k)


# ---------------------------------------------------------------- re-verification

def _coefficient_independent(pair: PairModel, x: str, M: Monomial, p: int) -> int:
    G = pair.G
    if G.root_model is not None:
        return steenrod.p1_generator_roots(G.root_model, x, p).coefficient(M)
    return steenrod.p1_exceptional(G.family, x, p).coefficient(M)


def _brute_condition_two(pair: PairModel, M: Monomial) -> bool:
    """Expand each product of generic images term by term; no memoization or pruning."""
    GA, HA = pair.G.algebra, pair.H.algebra
    p = GA.p
    d = GA.degree(M)
    ys = list(HA.names)
    alpha = itertools.count()
    images = []
    for y in ys:
        deg = HA.degrees[HA.index[y]]
        lead = GA.monomial({pair.matching[y]: 1})
        pert = [(U, next(alpha)) for U in basis_of_degree(GA, deg) if U != lead and _divides(U, M)]
        images.append((lead, pert))
    degs = [HA.degrees[HA.index[y]] for y in ys]

    def partitions(rest, start):
        if rest == 0:
            yield ()
            return
        for j in range(start, len(ys)):
            if degs[j] <= rest:
                for tail in partitions(rest - degs[j], j):
                    yield (j,) + tail

    for factors in partitions(d, 0):
        leads_in = sorted({j for j in factors if _divides(images[j][0], M)})
        for signs in itertools.product((1, -1), repeat=len(leads_in)):
            eps = dict(zip(leads_in, signs))
            choices = []
            for j in factors:
                opts = [(U, (a,), 1) for U, a in images[j][1]]
                if j in eps:
                    opts.append((images[j][0], (), eps[j]))
                choices.append(opts)
            total: Sym = {}
            for pick in itertools.product(*choices):
                mono = tuple(map(sum, zip(*[U for U, _, _ in pick])))
                if mono != M:
                    continue
                key = tuple(sorted(sum((a for _, a, _ in pick), ())))
                c = 1
                for _, _, s in pick:
                    c *= s
                total[key] = (total.get(key, 0) + c) % p
            if any(total.values()):
                return False
    return True


def reverify(v: CriterionVerdict) -> None:
    """Re-check a witness from its stored data alone."""
    pair, M, m_k = v.pair, v.monomial, v.m_k
    G = pair.G
    A = G.algebra
    p = A.p
    assert sum(M) == v.k, "witness must have exactly k factors"
    assert v.coefficient % p != 0
    assert _coefficient_independent(pair, v.generator, M, p) == v.coefficient % p
    halves = sorted(G.generator_types[A.names[i]] for i in A.factors(M))
    assert all(h > m_k for h in halves[1:])
    diff = m_k - halves[0]
    assert diff <= 0 or all(sum(c) != diff for r in range(1, diff + 1)
                            for c in itertools.combinations_with_replacement(G.type_sequence, r))
    assert not v.ideal.contains_monomial(M), "witness lies in the ideal I"
    assert _brute_condition_two(pair, M), "condition (2) failed on re-check"


# ---------------------------------------------------------------- verdicts

@dataclass
class Verdict:
    status: str                     # "is_Ak" | "not_Ak" | "unknown"
    k: int
    prime: int
    pair: PairModel
    reasons: List[Tuple[str, str]] = field(default_factory=list)
    metadata: Dict[str, object] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "k": self.k,
            "prime": self.prime,
            "pair": self.pair.family,
            "parameter": self.pair.parameter,
            "label": self.pair.label,
            "reasons": [{"rule": r, "citation": c} for r, c in self.reasons],
            **self.metadata,
        }


def _not_ak_threshold(pair: PairModel, k: int) -> int:
    """Smallest p for which the theorem no longer rules A_k out."""
    if pair.family == "SO_even":
        return pair.a(k) - pair.parameter + 2
    return pair.a(k)


def max_ak(pair: PairModel, p: int) -> int:
    """Largest k with p >= a_k (1 if none: every map is A_1)."""
    k = 1
    while pair.a(k + 1) <= p:
        k += 1
    return k


def ak_verdict(pair: PairModel, p=None, k: int = 2, run_criterion: bool = True) -> Verdict:
    p = as_prime(p if p is not None else pair.prime).value
    if not valid_prime(pair.family, p):
        raise UnsupportedPrime(f"p = {p} is not admissible for {pair.family}")
    if k < 2:
        raise ValueError("k >= 2")
    a, b = pair.a(k), pair.b(k)
    v = Verdict("unknown", k, p, pair)
    v.metadata["a_k"] = a
    v.metadata["b_k"] = b
    v.metadata["max_k"] = max_ak(pair, p)
    if pair.family == "SU_SO":
        v.metadata["corollary"] = CITE["c_k"]
    if p >= a:
        v.status = "is_Ak"
        v.reasons.append((f"p >= a_{k} = {a}", CITE["iff"]))
        if p >= b:
            v.reasons.append((f"p >= b_{k} = {b}", CITE["b_k"]))
        else:
            v.reasons.append((f"E6 special extension at p = 12k-5 = {p}", CITE["e6_ext"]))
        return v
    if p >= _not_ak_threshold(pair, k):
        v.reasons.append((f"gap [{_not_ak_threshold(pair, k)},{a})", CITE["so_even_gap"]))
        if run_criterion and pair.has_cohomology:
            cv = criterion_check(pair, p, k)
            if cv.obstructed:
                v.metadata["informational"] = {
                    "criterion": cv.to_json(),
                    "note": "criterion obstructs here, stronger than the theorem's range",
                }
        return v
    v.status = "not_Ak"
    kk = next(j for j in range(1, k + 1) if p < _not_ak_threshold(pair, j))
    v.metadata["failing_k"] = kk
    label = f"p < a_{kk} = {pair.a(kk)}" if pair.family != "SO_even" else \
        f"p < a_{kk} - n + 2 = {_not_ak_threshold(pair, kk)}"
    v.reasons.append((label, CITE["iff"] if pair.family != "SO_even" else CITE["so_even_no"]))
    if kk >= 2 and run_criterion and pair.has_cohomology:
        cv = criterion_check(pair, p, kk)
        if cv.obstructed:
            v.reasons.append((f"P^1 criterion at k = {kk}: M = {cv.witness_str()}, I = {cv.ideal}",
                              CITE["criterion"]))
            v.metadata["criterion"] = cv.to_json()
            return v
        v.metadata["criterion"] = cv.to_json()
    fact = pair.fact_for(p, max(kk, 2))
    if fact is not None:
        v.reasons.append(("cited fact", fact.citation))
    return v
