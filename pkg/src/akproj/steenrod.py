"""The first reduced power P^1 on cohomology of classifying spaces.

Two independent routes compute P^1 of Chern and Pontrjagin classes:

* root models: classes are elementary symmetric functions of degree-2 roots,
  P^1 t = t^p on each root, extended as a derivation;
* the closed mod-p Wu formulas, evaluated term by term over exponent tuples.

P^1 on the exceptional groups E8 and E6 is obtained by pulling back along
BSpin(15) -> BE8 and BE6 -> BE8 and solving linear systems.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterator, List, Optional, Tuple

from .fp import DenominatorDivisibleByP, EvenPrime, as_prime, reduce_rational
from .graded import (AlgebraMap, GeneratorIdeal, GradedAlgebra, Monomial, Polynomial,
                     NoSolution, SolutionSet, basis_of_degree, mul_terms,
                     solve_in_subalgebra)


class NotSymmetric(ValueError):
    pass


class NotInSubring(ValueError):
    pass


class NoRootModel(LookupError):
    pass


class UnknownGeneratorAction(LookupError):
    pass


# ------------------------------------------------------------------ root models

@dataclass(frozen=True)
class RootModel:
    """Splitting-principle model of a classifying space.

    ``chern``: c_k = e_k(t_1..t_n), with e_1 = 0 when ``special``.
    ``pontrjagin``: classes e_k(u_1^2..u_n^2) named ``prefix`` + k.
    ``pontrjagin_euler``: as above for k < n plus the Euler class u_1...u_n.
    """

    kind: str
    n: int
    special: bool = True
    prefix: str = ""

    def __post_init__(self):
        if self.kind not in ("chern", "pontrjagin", "pontrjagin_euler"):
            raise ValueError(self.kind)
        if not self.prefix:
            object.__setattr__(self, "prefix", "c" if self.kind == "chern" else "p")
        if self.n < 1 or (self.kind == "pontrjagin_euler" and self.n < 2):
            raise ValueError(f"bad root count {self.n}")

    @property
    def root_count(self) -> int:
        return self.n

    @property
    def euler(self) -> str:
        return f"e{self.n}"

    def generators(self) -> List[Tuple[str, int]]:
        if self.kind == "chern":
            lo = 2 if self.special else 1
            return [(f"{self.prefix}{i}", 2 * i) for i in range(lo, self.n + 1)]
        if self.kind == "pontrjagin":
            return [(f"{self.prefix}{i}", 4 * i) for i in range(1, self.n + 1)]
        gens = [(f"{self.prefix}{i}", 4 * i) for i in range(1, self.n)]
        return gens + [(self.euler, 2 * self.n)]

    def algebra(self, p) -> GradedAlgebra:
        return _model_algebra(self, as_prime(p).value)

    def elementary(self, i: int, p) -> Polynomial:
        """e_i of the squared roots (Pontrjagin kinds) or the roots (Chern), as a class."""
        A = self.algebra(p)
        if i == 0:
            return A.one()
        if i < 0 or i > self.n:
            return A.zero()
        if self.kind == "chern":
            if i == 1 and self.special:
                return A.zero()
            return A.gen(f"{self.prefix}{i}")
        if self.kind == "pontrjagin_euler" and i == self.n:
            return A.gen(self.euler) ** 2
        return A.gen(f"{self.prefix}{i}")


@lru_cache(maxsize=None)
def _model_algebra(model: RootModel, p: int) -> GradedAlgebra:
    return GradedAlgebra(model.generators(), p, label=f"{model.kind}({model.n})")


# --------------------------------------------------------- explicit root algebra

RootPoly = Dict[Tuple[int, ...], int]


def _root_elementary(n: int, k: int) -> RootPoly:
    from itertools import combinations
    out = {}
    for idx in combinations(range(n), k):
        m = [0] * n
        for i in idx:
            m[i] = 1
        out[tuple(m)] = 1
    return out


def root_elementary(n: int, k: int, p: int) -> RootPoly:
    return {m: c % p for m, c in _root_elementary(n, k).items()}


def root_p1(poly: RootPoly, p: int) -> RootPoly:
    """P^1 on a polynomial in degree-2 roots: derivation with t -> t^p."""
    out: RootPoly = {}
    for m, c in poly.items():
        for i, a in enumerate(m):
            if a:
                mm = list(m)
                mm[i] += p - 1
                mm = tuple(mm)
                out[mm] = (out.get(mm, 0) + c * a) % p
    return {m: c for m, c in out.items() if c}


def _is_symmetric(S: RootPoly, n: int) -> bool:
    for i in range(n - 1):
        for m, c in S.items():
            sw = list(m)
            sw[i], sw[i + 1] = sw[i + 1], sw[i]
            if S.get(tuple(sw), 0) != c:
                return False
    return True


def elementary_decompose(S: RootPoly, n: int, p: int) -> Dict[Tuple[int, ...], int]:
    """Write a symmetric polynomial in n variables as a polynomial in e_1..e_n.

    Returns exponent tuples (a_1..a_n) of e_1^a_1...e_n^a_n. Leading-term
    reduction in lex order.
    """
    S = {m: c % p for m, c in S.items() if c % p}
    elem = [None] + [root_elementary(n, i, p) for i in range(1, n + 1)]
    cache: Dict[Tuple[int, ...], RootPoly] = {(0,) * n: {(0,) * n: 1}}

    def eprod(b):
        if b in cache:
            return cache[b]
        i = next(j for j in range(n) if b[j])
        rest = list(b)
        rest[i] -= 1
        val = mul_terms(eprod(tuple(rest)), elem[i + 1], p)
        cache[b] = val
        return val

    out: Dict[Tuple[int, ...], int] = {}
    while S:
        lead = max(S)
        c = S[lead]
        if any(lead[i] < lead[i + 1] for i in range(n - 1)):
            raise NotSymmetric("leading monomial is not a partition")
        b = tuple(lead[i] - (lead[i + 1] if i + 1 < n else 0) for i in range(n))
        out[b] = (out.get(b, 0) + c) % p
        for m, v in eprod(b).items():
            r = (S.get(m, 0) - c * v) % p
            if r:
                S[m] = r
            else:
                S.pop(m, None)
    return {b: c for b, c in out.items() if c}


def symmetric_to_basis(S: RootPoly, model: RootModel, p) -> Polynomial:
    """Express a root polynomial in the model's generator basis."""
    p = as_prime(p).require_odd().value
    n = model.n
    if any(len(m) != n for m in S):
        raise ValueError("root count mismatch")
    S = {m: c % p for m, c in S.items() if c % p}
    if not _is_symmetric(S, n):
        raise NotSymmetric("not invariant under root permutations")
    A = model.algebra(p)

    def from_e(dec, euler_power=0):
        out = A.zero()
        for b, c in dec.items():
            term = A.const(c)
            for i, a in enumerate(b):
                if a:
                    term = term * model.elementary(i + 1, p) ** a
            if euler_power:
                term = term * A.gen(model.euler) ** euler_power
            out = out + term
        return out

    if model.kind == "chern":
        dec = elementary_decompose(S, n, p)
        if model.special:
            dec = {b: c for b, c in dec.items() if b[0] == 0}
        return from_e(dec)
    even = {m: c for m, c in S.items() if all(a % 2 == 0 for a in m)}
    odd = {m: c for m, c in S.items() if all(a % 2 == 1 for a in m)}
    if len(even) + len(odd) != len(S):
        raise NotInSubring("monomial with mixed root parities")
    if model.kind == "pontrjagin":
        if odd and n > 0 and any(odd):
            raise NotInSubring("odd powers of roots outside the Pontrjagin subring")
        halved = {tuple(a // 2 for a in m): c for m, c in even.items()}
        return from_e(elementary_decompose(halved, n, p))
    halved = {tuple(a // 2 for a in m): c for m, c in even.items()}
    result = from_e(elementary_decompose(halved, n, p))
    if odd:
        halved = {tuple((a - 1) // 2 for a in m): c for m, c in odd.items()}
        result = result + from_e(elementary_decompose(halved, n, p), euler_power=1)
    return result


def generator_in_roots(model: RootModel, g: str, p: int) -> RootPoly:
    """A model generator as a polynomial in the degree-2 roots."""
    n = model.n
    if model.kind == "chern":
        return root_elementary(n, int(g[len(model.prefix):]), p)
    if model.kind == "pontrjagin_euler" and g == model.euler:
        return {(1,) * n: 1}
    k = int(g[len(model.prefix):])
    return {tuple(2 * a for a in m): c for m, c in root_elementary(n, k, p).items()}


# ------------------------------------------------------------- Newton route

class _PowerSums:
    """Power sums of the roots (Chern) or squared roots (Pontrjagin kinds)."""

    def __init__(self, model: RootModel, p: int):
        self.model, self.p = model, p
        self.s: List[Polynomial] = [model.algebra(p).const(model.n)]
        self.e = [model.elementary(i, p) for i in range(model.n + 1)]

    def __getitem__(self, m: int) -> Polynomial:
        A = self.model.algebra(self.p)
        while len(self.s) <= m:
            j = len(self.s)
            acc = A.zero()
            for i in range(1, min(j - 1, self.model.n) + 1):
                if self.e[i]:
                    t = self.e[i] * self.s[j - i]
                    acc = acc + t if i % 2 == 1 else acc - t
            if j <= self.model.n and self.e[j]:
                t = self.e[j].scale(j)
                acc = acc + t if j % 2 == 1 else acc - t
            self.s.append(acc)
        return self.s[m]


@lru_cache(maxsize=None)
def _power_sums(model: RootModel, p: int) -> _PowerSums:
    return _PowerSums(model, p)


def _sum_shifted(model: RootModel, p: int, k: int, shift: int) -> Polynomial:
    """sum_i w_i^shift * e_{k-1}(w without w_i), w the (squared) roots."""
    ps = _power_sums(model, p)
    A = model.algebra(p)
    acc = A.zero()
    for j in range(k):
        e = model.elementary(k - 1 - j, p)
        if e:
            t = e * ps[shift + j]
            acc = acc + t if j % 2 == 0 else acc - t
    return acc


@lru_cache(maxsize=None)
def _p1_newton(model: RootModel, p: int, g: str) -> Polynomial:
    if model.kind == "chern":
        k = int(g[len(model.prefix):])
        return _sum_shifted(model, p, k, p)
    if model.kind == "pontrjagin_euler" and g == model.euler:
        return model.algebra(p).gen(model.euler) * _power_sums(model, p)[(p - 1) // 2]
    k = int(g[len(model.prefix):])
    return _sum_shifted(model, p, k, (p + 1) // 2).scale(2)


@lru_cache(maxsize=None)
def _p1_explicit(model: RootModel, p: int, g: str) -> Polynomial:
    return symmetric_to_basis(root_p1(generator_in_roots(model, g, p), p), model, p)


def _model_of(space) -> RootModel:
    if isinstance(space, RootModel):
        return space
    model = getattr(space, "root_model", None)
    if model is None:
        raise NoRootModel(f"{space} has no root model; use p1_exceptional")
    return model


def p1_generator_roots(space, g: str, p=None, method: str = "newton") -> Polynomial:
    """P^1 of a generator computed from the unstable axiom on roots.

    ``method="newton"`` expands through power sums of the roots;
    ``method="explicit"`` expands in the roots and reduces symmetric functions
    directly (small cases only).
    """
    model = _model_of(space)
    p = as_prime(p if p is not None else space.prime).require_odd().value
    if g not in model.algebra(p).index:
        raise KeyError(f"{g} is not a generator of {model.algebra(p)!r}")
    if method == "newton":
        return _p1_newton(model, p, g)
    if method == "explicit":
        return _p1_explicit(model, p, g)
    raise ValueError(method)


class P1Action:
    """P^1 on an algebra, determined by its values on generators."""

    def __init__(self, algebra: GradedAlgebra, values: Dict[str, Optional[Polynomial]]):
        self.algebra = algebra
        self.values = dict(values)
        shift = 2 * (algebra.p - 1)
        for g, v in self.values.items():
            if v is not None:
                v.require_homogeneous(algebra.degrees[algebra.index[g]] + shift)

    def of_generator(self, g: str) -> Polynomial:
        v = self.values.get(g)
        if v is None:
            raise UnknownGeneratorAction(f"P^1 {g} is not known")
        return v

    def __call__(self, P: Polynomial) -> Polynomial:
        return p1_derivation(self, P)


def root_action(space, p=None) -> P1Action:
    model = _model_of(space)
    p = as_prime(p if p is not None else space.prime).require_odd().value
    A = model.algebra(p)
    return P1Action(A, {g: _p1_newton(model, p, g) for g in A.names})


def p1_derivation(action: P1Action, P: Polynomial) -> Polynomial:
    """Extend P^1 from generators by additivity and the Leibniz rule."""
    A = action.algebra
    if P.algebra != A:
        raise ValueError("polynomial is not in the acted-on algebra")
    p = A.p
    out: Dict[Monomial, int] = {}
    for m, c in P.terms.items():
        for i, a in enumerate(m):
            if not a:
                continue
            coef = c * a % p
            if not coef:
                continue
            rest = list(m)
            rest[i] -= 1
            rest = tuple(rest)
            val = action.of_generator(A.names[i])
            for mm, cc in val.terms.items():
                key = tuple(x + y for x, y in zip(rest, mm))
                out[key] = (out.get(key, 0) + coef * cc) % p
    return Polynomial(A, {m: c for m, c in out.items() if c})


# ------------------------------------------------------------- Wu formulas

def weighted_tuples(total: int, weights: List[int]) -> Iterator[Tuple[int, ...]]:
    """All non-negative (i_1..i_r) with sum_j weights[j] * i_j == total."""
    r = len(weights)
    cur = [0] * r

    def rec(j, rest):
        if j == r:
            if rest == 0:
                yield tuple(cur)
            return
        w = weights[j]
        for e in range(rest // w + 1):
            cur[j] = e
            yield from rec(j + 1, rest - e * w)
        cur[j] = 0

    yield from rec(0, total)


def _wu_coefficient(tup, weights, bracket_const, bracket_weights, sign_offset):
    """Exact rational coefficient of one Wu-formula term.

    ``bracket_const`` is the integer lift (k+p-1, resp. 2k+p-1) of the constant
    k-1 (resp. 2k-1). The two agree mod p on every p-integral term, but only the
    lift is correct when p divides i_2!...i_n!, e.g. the c2^3 term of P^1 c4 at p=3.
    """
    S = sum(tup)
    sign = -1 if (S + sign_offset) % 2 else 1
    denom = 1
    for e in tup:
        denom *= factorial(e)
    if S == 1:
        # the lone index exceeds every bracket index, so the fraction drops out
        return Fraction(sign * bracket_const)
    X = sum(w * e for w, e in zip(bracket_weights, tup))
    return sign * Fraction(factorial(S - 1), denom) * (bracket_const - Fraction(X, S - 1))


@lru_cache(maxsize=None)
def p1_wu_chern(n: int, k: int, p) -> Polynomial:
    """P^1 c_k in H^*(BSU(n)) from the closed mod-p Wu formula."""
    p = as_prime(p).require_odd().value
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    model = RootModel("chern", n)
    A = model.algebra(p)
    weights = list(range(2, n + 1))
    # bracket sum runs over j = 2..k-1 with weight k+p-1-j
    bw = [(k + p - 1 - j) if j <= k - 1 else 0 for j in weights]
    terms = {}
    for tup in weighted_tuples(k + p - 1, weights):
        q = _wu_coefficient(tup, weights, k + p - 1, bw, sign_offset=-1)
        c = reduce_rational(q, p, context=f"exponent tuple {dict(zip(A.names, tup))}")
        if c:
            terms[tup] = c
    return Polynomial(A, terms)


@lru_cache(maxsize=None)
def p1_wu_pontrjagin(n: int, k: int, p, prefix: str = "p") -> Polynomial:
    """P^1 p_k in H^*(BSO(2n+1)) from the closed mod-p Wu formula."""
    p = as_prime(p).require_odd().value
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    model = RootModel("pontrjagin", n, prefix=prefix)
    A = model.algebra(p)
    weights = list(range(1, n + 1))
    bw = [(2 * k + p - 1 - 2 * j) if j <= k - 1 else 0 for j in weights]
    terms = {}
    for tup in weighted_tuples(k + (p - 1) // 2, weights):
        q = _wu_coefficient(tup, weights, 2 * k + p - 1, bw, sign_offset=(p + 1) // 2)
        c = reduce_rational(q, p, context=f"exponent tuple {dict(zip(A.names, tup))}")
        if c:
            terms[tup] = c
    return Polynomial(A, terms)


def p1_wu(space, g: str, p=None) -> Polynomial:
    """Wu-formula value of P^1 on a generator of a classical root model.

    Even orthogonal groups go through BSO(2n+1) -> BSO(2n) (p_n -> e_n^2);
    the Euler class has no Wu formula and raises ``NoRootModel``.
    """
    model = _model_of(space)
    p = as_prime(p if p is not None else space.prime).require_odd().value
    A = model.algebra(p)
    if model.kind == "chern":
        if not model.special:
            raise NoRootModel("the Wu formula here is for special unitary groups")
        return p1_wu_chern(model.n, int(g[len(model.prefix):]), p)
    if model.kind == "pontrjagin":
        return p1_wu_pontrjagin(model.n, int(g[len(model.prefix):]), p, model.prefix)
    if g == model.euler:
        raise NoRootModel("no Wu formula for the Euler class")
    k = int(g[len(model.prefix):])
    odd = p1_wu_pontrjagin(model.n, k, p, model.prefix)
    return orthogonal_restriction(model.n, p, model.prefix)(odd)


@lru_cache(maxsize=None)
def orthogonal_restriction(n: int, p: int, prefix: str = "p") -> AlgebraMap:
    """j^*: H^*(BSO(2n+1)) -> H^*(BSO(2n)), p_i -> p_i, p_n -> e_n^2."""
    src = RootModel("pontrjagin", n, prefix=prefix).algebra(p)
    tgt = RootModel("pontrjagin_euler", n, prefix=prefix).algebra(p)
    imgs = {f"{prefix}{i}": tgt.gen(f"{prefix}{i}") for i in range(1, n)}
    imgs[f"{prefix}{n}"] = tgt.gen(f"e{n}") ** 2
    return AlgebraMap(src, tgt, imgs, name="j*")


def p1_generator(space, g: str, p=None) -> Polynomial:
    """P^1 on a generator by the fastest available route."""
    model = _model_of(space)
    p = as_prime(p if p is not None else space.prime).require_odd().value
    try:
        return p1_wu(model, g, p)
    except NoRootModel:
        return p1_generator_roots(model, g, p)


# ------------------------------------------------------------- exceptional groups

def e8_anchor(d: int, bso15: GradedAlgebra) -> Optional[Monomial]:
    """p7 p6^(k-2) p2 in degree d = 24k - 12 with k >= 3, else None."""
    if d < 60 or (d - 36) % 24:
        return None
    k = (d - 36) // 24 + 2
    return bso15.monomial(p7=1, p6=k - 2, p2=1)


@lru_cache(maxsize=None)
def _p1_e8(g: str, p: int) -> SolutionSet:
    from . import catalog
    j2 = catalog.j2_star(p)
    bso15 = j2.target
    action = root_action(RootModel("pontrjagin", 7), p)
    target = p1_derivation(action, j2.images[g])
    d = target.require_homogeneous()
    if d < 0:
        d = j2.source.degrees[j2.source.index[g]] + 2 * (p - 1)
    basis = basis_of_degree(j2.source, d)
    i36 = j2.source.index["x36"]
    p1_ideal = GeneratorIdeal(bso15, {"p1"})
    quotient = p1_ideal if any(m[i36] for m in basis) else None
    try:
        sol = solve_in_subalgebra(target, j2, quotient=quotient, degree=d)
    except NoSolution:
        if quotient is not None:
            raise
        # the j2* images are only reliable modulo p1; retry there
        sol = solve_in_subalgebra(target, j2, quotient=p1_ideal, degree=d)
        sol.notes.append("exact system inconsistent; solved modulo (p1)")
    anchor = e8_anchor(d, bso15)
    if anchor is not None:
        sol.notes.append(f"anchor row {bso15.mono_str(anchor)}")
    return sol


def _may_touch(image_of_known: Dict[Monomial, int], T: Monomial) -> bool:
    return any(all(a <= b for a, b in zip(U, T)) for U in image_of_known)


@lru_cache(maxsize=None)
def _p1_e6(g: str, p: int) -> SolutionSet:
    from . import catalog
    sol8 = _p1_e8(g, p)
    i2 = catalog.i2_star(p)
    E8, E6 = i2.source, i2.target
    unknown = {E8.index[x] for x in i2.unknown()}
    d = sol8.degree
    basis6 = basis_of_degree(E6, d)
    pos6 = {m: j for j, m in enumerate(basis6)}

    def pullback(vector):
        """Known part of i2^*(vector) as a coefficient list plus risky pieces."""
        coords = [0] * len(basis6)
        risky = []
        for m, c in zip(sol8.basis_monomials, vector):
            if not c:
                continue
            if any(m[i] for i in unknown):
                known = tuple(0 if i in unknown else e for i, e in enumerate(m))
                risky.append(i2.apply_monomial(known))
                continue
            for mm, cc in i2.apply_monomial(m).items():
                coords[pos6[mm]] = (coords[pos6[mm]] + c * cc) % p
        return coords, risky

    particular, risky0 = pullback(sol8.particular)
    kernels = [pullback(v) for v in sol8.kernel_basis]
    status = {}
    for j, T in enumerate(basis6):
        ambiguous = any(_may_touch(r, T) for r in risky0)
        for coords, risky in kernels:
            if coords[j] or any(_may_touch(r, T) for r in risky):
                ambiguous = True
                break
        status[T] = ("ambiguous", None) if ambiguous else ("unique", particular[j])
    clean = [coords for coords, risky in kernels if not risky]
    return SolutionSet(E6, d, basis6, particular, clean, per_monomial_status=status,
                       notes=list(sol8.notes))


def p1_exceptional(group: str, g: str, p) -> SolutionSet:
    """P^1 of x4 or x16 in H^*(BE8) or H^*(BE6), with per-monomial certainty."""
    p = as_prime(p).require_odd().value
    if p <= 5:
        from .catalog import UnsupportedPrime
        raise UnsupportedPrime(f"exceptional cohomology models need p > 5, got {p}")
    if g not in ("x4", "x16"):
        raise ValueError(f"P^1 {g} on B{group} is not available (only x4, x16)")
    group = group.upper().lstrip("B")
    if group == "E8":
        return _p1_e8(g, p)
    if group == "E6":
        return _p1_e6(g, p)
    raise ValueError(f"unknown exceptional group {group}")
