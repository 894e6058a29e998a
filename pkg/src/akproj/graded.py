"""Sparse graded polynomial algebras over F_p.

Monomials are exponent tuples aligned with the algebra's canonical generator
order (ascending degree, then name). Coefficients are stored as residues in
``[1, p-1]``; zero terms are never stored.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .fp import FpElement, Prime, as_prime, inv_mod, reduce_rational

Monomial = Tuple[int, ...]


class AlgebraMismatch(ValueError):
    pass


class InhomogeneousError(ValueError):
    pass


class NoSolution(ArithmeticError):
    """Target is not in the image of the map: the catalog data is inconsistent."""


class Ambiguous(LookupError):
    """A requested coefficient is not constant on the affine solution set."""


class UnknownImage(LookupError):
    pass


class GradedAlgebra:
    """Polynomial algebra F_p[g_1, ..., g_r] on even-degree generators."""

    def __init__(self, generators: Iterable[Tuple[str, int]], p, label: str = ""):
        gens = sorted(generators, key=lambda g: (g[1], g[0]))
        names = [g[0] for g in gens]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        for name, deg in gens:
            if deg <= 0 or deg % 2:
                raise ValueError(f"generator {name} has degree {deg}; need positive even")
        self.names: Tuple[str, ...] = tuple(names)
        self.degrees: Tuple[int, ...] = tuple(g[1] for g in gens)
        self.prime: Prime = as_prime(p)
        self.p: int = self.prime.value
        self.label = label
        self.index: Dict[str, int] = {n: i for i, n in enumerate(names)}
        self._basis_cache: Dict[int, List[Monomial]] = {}

    @property
    def ngens(self) -> int:
        return len(self.names)

    def __eq__(self, other):
        return (isinstance(other, GradedAlgebra) and self.names == other.names
                and self.degrees == other.degrees and self.p == other.p)

    def __hash__(self):
        return hash((self.names, self.degrees, self.p))

    def __repr__(self):
        label = f"{self.label} " if self.label else ""
        return f"<{label}Z/{self.p}[{', '.join(self.names)}]>"

    # -- construction helpers
    def unit_monomial(self) -> Monomial:
        return (0,) * self.ngens

    def monomial(self, exps: Dict[str, int] | None = None, **kw) -> Monomial:
        exps = dict(exps or {}, **kw)
        m = [0] * self.ngens
        for name, e in exps.items():
            if e < 0:
                raise ValueError("negative exponent")
            m[self.index[name]] += e
        return tuple(m)

    def gen(self, name: str) -> "Polynomial":
        return Polynomial(self, {self.monomial({name: 1}): 1})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self.unit_monomial(): 1})

    def const(self, c) -> "Polynomial":
        return Polynomial(self, {self.unit_monomial(): reduce_rational(c, self.p)})

    def poly(self, terms: Dict[Monomial, object]) -> "Polynomial":
        p = self.p
        out = {}
        for m, c in terms.items():
            r = reduce_rational(c, p) if not isinstance(c, FpElement) else c.residue
            if r:
                out[tuple(m)] = r
        return Polynomial(self, out)

    def degree(self, m: Monomial) -> int:
        return sum(e * d for e, d in zip(m, self.degrees))

    def mono_str(self, m: Monomial) -> str:
        parts = []
        for i in reversed(range(self.ngens)):
            e = m[i]
            if e == 1:
                parts.append(self.names[i])
            elif e > 1:
                parts.append(f"{self.names[i]}^{e}")
        return "*".join(parts) if parts else "1"

    def factors(self, m: Monomial) -> List[int]:
        """Generator indices of ``m`` with multiplicity, ascending."""
        out = []
        for i, e in enumerate(m):
            out.extend([i] * e)
        return out

    def parse_monomial(self, text: str) -> Monomial:
        text = text.strip()
        if text in ("", "1"):
            return self.unit_monomial()
        m = [0] * self.ngens
        for factor in re.split(r"\*", text):
            factor = factor.strip()
            name, _, e = factor.partition("^")
            if name not in self.index:
                raise KeyError(f"unknown generator {name!r} in {self!r}")
            m[self.index[name]] += int(e) if e else 1
        return tuple(m)

    def parse(self, text: str) -> "Polynomial":
        """Parse e.g. ``"2*c2^3 + 2*c3^2 - 1/6*x16*x12"``."""
        text = text.replace(" ", "")
        if not text or text == "0":
            return self.zero()
        if text[0] not in "+-":
            text = "+" + text
        terms: Dict[Monomial, int] = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", text):
            coeff: object = 1
            factors = body.split("*")
            if re.fullmatch(r"\d+(/\d+)?", factors[0]):
                coeff = Fraction(factors.pop(0))
            mono = self.parse_monomial("*".join(factors)) if factors else self.unit_monomial()
            c = reduce_rational(coeff, self.p)
            if sign == "-":
                c = -c
            terms[mono] = (terms.get(mono, 0) + c) % self.p
        return Polynomial(self, {m: c for m, c in terms.items() if c})


def term_key(alg: GradedAlgebra, m: Monomial):
    """Graded order, comparing exponents from the highest generator down."""
    return (alg.degree(m), m[::-1])


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps monomial -> nonzero residue."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: GradedAlgebra, terms: Dict[Monomial, int]):
        self.algebra = algebra
        self.terms = terms

    # -- arithmetic
    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise TypeError(other)
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatch(f"{self.algebra!r} vs {other.algebra!r}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, FpElement)):
            c = other.residue if isinstance(other, FpElement) else other
            return self.algebra.const(c)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.algebra.p
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.algebra.p
        return Polynomial(self.algebra, {m: p - c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        p = self.algebra.p
        c = c.residue if isinstance(c, FpElement) else reduce_rational(c, p)
        if c == 0:
            return self.algebra.zero()
        return Polynomial(self.algebra, {m: v * c % p for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FpElement)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        return Polynomial(self.algebra, mul_terms(self.terms, other.terms, self.algebra.p))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, FpElement)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.algebra.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.algebra.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- queries
    def homogeneous_degree(self) -> Optional[int]:
        """Common degree of all terms; ``None`` for mixed. Zero has degree -1 by convention."""
        degs = {self.algebra.degree(m) for m in self.terms}
        if not degs:
            return -1
        return degs.pop() if len(degs) == 1 else None

    def require_homogeneous(self, degree: Optional[int] = None) -> int:
        d = self.homogeneous_degree()
        if d is None:
            raise InhomogeneousError(f"{self} is not homogeneous")
        if degree is not None and d not in (-1, degree):
            raise InhomogeneousError(f"{self} has degree {d}, expected {degree}")
        return d

    def coefficient(self, m: Monomial) -> int:
        return self.terms.get(tuple(m), 0)

    def sorted_terms(self) -> List[Tuple[Monomial, int]]:
        alg = self.algebra
        return sorted(self.terms.items(), key=lambda t: term_key(alg, t[0]), reverse=True)

    def generators_used(self) -> set:
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    def to_json(self) -> List[dict]:
        return [{"monomial": self.algebra.mono_str(m), "coefficient": c}
                for m, c in self.sorted_terms()]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            ms = self.algebra.mono_str(m)
            if ms == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(ms)
            else:
                parts.append(f"{c}*{ms}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


def mul_terms(a: Dict[Monomial, int], b: Dict[Monomial, int], p: int) -> Dict[Monomial, int]:
    out: Dict[Monomial, int] = {}
    get = out.get
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = (get(m, 0) + ca * cb) % p
    return {m: c for m, c in out.items() if c}


def coefficient_of(P: Polynomial, M) -> FpElement:
    if isinstance(M, str):
        M = P.algebra.parse_monomial(M)
    return FpElement(P.coefficient(M), P.algebra.prime)


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


@dataclass(frozen=True)
class GeneratorIdeal:
    algebra: GradedAlgebra
    members: frozenset = frozenset()

    def __post_init__(self):
        bad = set(self.members) - set(self.algebra.names)
        if bad:
            raise KeyError(f"not generators of {self.algebra!r}: {sorted(bad)}")
        object.__setattr__(self, "members", frozenset(self.members))
        object.__setattr__(self, "_idx", frozenset(self.algebra.index[n] for n in self.members))

    def contains_monomial(self, m: Monomial) -> bool:
        return any(m[i] for i in self._idx)

    def reduce_terms(self, terms: Dict[Monomial, int]) -> Dict[Monomial, int]:
        if not self._idx:
            return terms
        return {m: c for m, c in terms.items() if not self.contains_monomial(m)}

    def reduce(self, P: Polynomial) -> Polynomial:
        return Polynomial(P.algebra, self.reduce_terms(P.terms))

    def __le__(self, other: "GeneratorIdeal"):
        return self.members <= other.members

    def sorted_members(self) -> List[str]:
        return [n for n in self.algebra.names if n in self.members]

    def __str__(self):
        return "(" + ", ".join(self.sorted_members()) + ")"


def reduce_mod_ideal(P: Polynomial, I: GeneratorIdeal) -> Polynomial:
    return I.reduce(P)


def basis_of_degree(A: GradedAlgebra, d: int) -> List[Monomial]:
    """All monomials of degree exactly ``d``, highest in term order first."""
    if d < 0:
        raise ValueError("negative degree")
    if d in A._basis_cache:
        return list(A._basis_cache[d])
    out: List[Monomial] = []
    degs = A.degrees
    n = len(degs)
    cur = [0] * n

    def rec(i, rest):
        if i < 0:
            if rest == 0:
                out.append(tuple(cur))
            return
        g = degs[i]
        for e in range(rest // g, -1, -1):
            cur[i] = e
            rec(i - 1, rest - e * g)
        cur[i] = 0

    rec(n - 1, d)
    out.sort(key=lambda m: term_key(A, m), reverse=True)
    A._basis_cache[d] = out
    return list(out)


class AlgebraMap:
    """Degree-preserving algebra homomorphism given by generator images.

    ``images[g] is None`` marks a generator whose image is unknown. ``modulo[g]``
    marks an image known only modulo a generator ideal of the target.
    """

    def __init__(self, source: GradedAlgebra, target: GradedAlgebra,
                 images: Dict[str, Optional[Polynomial]],
                 modulo: Optional[Dict[str, GeneratorIdeal]] = None, name: str = "",
                 excluded: Optional[Dict[str, set]] = None):
        if source.p != target.p:
            raise AlgebraMismatch("source and target over different primes")
        missing = set(source.names) - set(images)
        if missing:
            raise ValueError(f"no image given for {sorted(missing)}")
        self.source, self.target, self.name = source, target, name
        self.images: Dict[str, Optional[Polynomial]] = {}
        for g in source.names:
            img = images[g]
            if img is not None:
                if isinstance(img, (int, Fraction)):
                    img = target.const(img)
                img._check(target.zero())
                img.require_homogeneous(source.degrees[source.index[g]])
            self.images[g] = img
        self.modulo = dict(modulo or {})
        # target monomials known to be absent from an otherwise unknown image
        self.excluded = dict(excluded or {})
        self._powers: Dict[Tuple[int, int], Dict[Monomial, int]] = {}

    def unknown(self) -> set:
        return {g for g, v in self.images.items() if v is None}

    def _power(self, i: int, e: int) -> Dict[Monomial, int]:
        key = (i, e)
        if key not in self._powers:
            img = self.images[self.source.names[i]]
            if img is None:
                raise UnknownImage(f"image of {self.source.names[i]} under {self.name or 'map'} is unknown")
            if e == 1:
                self._powers[key] = img.terms
            else:
                self._powers[key] = mul_terms(self._power(i, e - 1), img.terms, self.target.p)
        return self._powers[key]

    def apply_monomial(self, m: Monomial) -> Dict[Monomial, int]:
        p = self.target.p
        acc = {self.target.unit_monomial(): 1}
        for i, e in enumerate(m):
            if e:
                acc = mul_terms(acc, self._power(i, e), p)
                if not acc:
                    break
        return acc

    def __call__(self, P: Polynomial) -> Polynomial:
        return apply_map(self, P)

    def compose(self, other: "AlgebraMap", name: str = "") -> "AlgebraMap":
        """``self`` after ``other``: source of ``other`` -> target of ``self``."""
        if other.target != self.source:
            raise AlgebraMismatch("cannot compose")
        imgs = {}
        for g, img in other.images.items():
            try:
                imgs[g] = None if img is None else apply_map(self, img)
            except UnknownImage:
                imgs[g] = None
        return AlgebraMap(other.source, self.target, imgs, name=name)


def apply_map(f: AlgebraMap, P: Polynomial) -> Polynomial:
    if P.algebra != f.source:
        raise AlgebraMismatch(f"{P.algebra!r} is not the source of {f.name or 'map'}")
    p = f.target.p
    out: Dict[Monomial, int] = {}
    for m, c in P.terms.items():
        for mm, cc in f.apply_monomial(m).items():
            out[mm] = (out.get(mm, 0) + c * cc) % p
    return Polynomial(f.target, {m: c for m, c in out.items() if c})


# ---------------------------------------------------------------- linear algebra

def solve_linear_mod_p(columns: List[Dict[object, int]], rhs: Dict[object, int], rows: List[object], p: int):
    """Solve ``sum_j v_j columns[j] = rhs`` restricted to ``rows``.

    Returns ``(particular, kernel_basis)`` or ``None`` if inconsistent.
    """
    ncol = len(columns)
    mat = [[col.get(r, 0) % p for col in columns] + [rhs.get(r, 0) % p] for r in rows]
    pivots: List[int] = []
    rank = 0
    for c in range(ncol):
        piv = next((i for i in range(rank, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = inv_mod(mat[rank][c], p)
        mat[rank] = [x * inv % p for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][c]:
                f = mat[i][c]
                ri = mat[i]
                rr = mat[rank]
                mat[i] = [(a - f * b) % p for a, b in zip(ri, rr)]
        pivots.append(c)
        rank += 1
    for i in range(rank, len(mat)):
        if mat[i][ncol]:
            return None
    particular = [0] * ncol
    for i, c in enumerate(pivots):
        particular[c] = mat[i][ncol]
    free = [c for c in range(ncol) if c not in set(pivots)]
    kernel = []
    for fcol in free:
        v = [0] * ncol
        v[fcol] = 1
        for i, c in enumerate(pivots):
            v[c] = (-mat[i][fcol]) % p
        kernel.append(v)
    return particular, kernel


@dataclass
class SolutionSet:
    """Affine set of coordinate vectors over ``basis_monomials``."""

    algebra: GradedAlgebra
    degree: int
    basis_monomials: List[Monomial]
    particular: List[int]
    kernel_basis: List[List[int]]
    per_monomial_status: Dict[Monomial, Tuple[str, Optional[int]]] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.per_monomial_status:
            for j, m in enumerate(self.basis_monomials):
                if all(v[j] == 0 for v in self.kernel_basis):
                    self.per_monomial_status[m] = ("unique", self.particular[j])
                else:
                    self.per_monomial_status[m] = ("ambiguous", None)

    def status(self, m) -> Tuple[str, Optional[int]]:
        if isinstance(m, str):
            m = self.algebra.parse_monomial(m)
        if m in self.per_monomial_status:
            return self.per_monomial_status[m]
        if self.algebra.degree(m) != self.degree:
            return ("unique", 0)
        raise KeyError(m)

    def coefficient(self, m) -> int:
        state, value = self.status(m)
        if state != "unique":
            raise Ambiguous(f"coefficient of {m if isinstance(m, str) else self.algebra.mono_str(m)} is not determined")
        return value

    def is_unique(self, m) -> bool:
        return self.status(m)[0] == "unique"

    def polynomial(self, vector: Optional[List[int]] = None) -> Polynomial:
        vector = self.particular if vector is None else vector
        return self.algebra.poly({m: c for m, c in zip(self.basis_monomials, vector) if c})

    def unique_part(self) -> Polynomial:
        return self.algebra.poly({m: v for m, (s, v) in self.per_monomial_status.items()
                                  if s == "unique" and v})

    def ambiguous_monomials(self) -> List[Monomial]:
        return [m for m in self.basis_monomials if self.per_monomial_status[m][0] == "ambiguous"]

    def to_json(self) -> List[dict]:
        alg = self.algebra
        rows = []
        for m in self.basis_monomials:
            state, value = self.per_monomial_status[m]
            if state == "unique" and not value:
                continue
            rows.append({"monomial": alg.mono_str(m), "coefficient": value, "status": state})
        return rows


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _quotient(a: Monomial, b: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def _vanishes_on(f: AlgebraMap, m: Monomial, unknown_idx, quotient: "GeneratorIdeal", T: Monomial) -> bool:
    """Is the T-coefficient of f(m) provably zero although m has an unknown factor?"""
    unknown = [i for i in unknown_idx if m[i]]
    known = tuple(0 if i in unknown_idx else e for i, e in enumerate(m))
    support = [U for U in quotient.reduce_terms(f.apply_monomial(known)) if _divides(U, T)]
    if not support:
        return True
    if len(unknown) != 1 or m[unknown[0]] != 1:
        return False
    excluded = f.excluded.get(f.source.names[unknown[0]], set())
    return all(_quotient(U, T) in excluded for U in support)


def solve_in_subalgebra(target: Polynomial, f: AlgebraMap, quotient: Optional[GeneratorIdeal] = None,
                        anchor: Optional[Monomial] = None, degree: Optional[int] = None) -> SolutionSet:
    """Express ``target`` as ``f(Q)`` for ``Q`` homogeneous in the source.

    Both sides are reduced modulo ``quotient``. Source monomials with a factor of
    unknown image contribute unknown columns; only target rows on which every
    such column provably vanishes enter the system. ``anchor`` restricts the
    system to that single row, which must be one of them.
    """
    if target.algebra != f.target:
        raise AlgebraMismatch("target polynomial is not in the map's target")
    d = target.require_homogeneous(degree)
    quotient = quotient or GeneratorIdeal(f.target)
    if quotient.algebra != f.target:
        raise AlgebraMismatch("quotient ideal lives in the wrong algebra")
    src = f.source
    if d < 0:
        d = degree if degree is not None else 0
    basis = basis_of_degree(src, d)
    unknown_idx = {src.index[g] for g in f.unknown()}
    for g, J in f.modulo.items():
        i = src.index[g]
        if any(m[i] for m in basis) and not J <= quotient:
            raise ValueError(f"image of {g} is only known modulo {J}; quotient must contain it")
    cols: List[Dict[Monomial, int]] = []
    risky: List[Monomial] = []
    for m in basis:
        if any(m[i] for i in unknown_idx):
            cols.append({})
            risky.append(m)
        else:
            cols.append(quotient.reduce_terms(f.apply_monomial(m)))
    rhs = quotient.reduce_terms(target.terms)
    seen = set(rhs)
    for c in cols:
        seen.update(c)
    if anchor is not None:
        anchor = tuple(anchor)
        if quotient.contains_monomial(anchor):
            raise ValueError("anchor monomial lies in the quotient ideal")
        seen = {anchor}
    rows = [T for T in seen if all(_vanishes_on(f, m, unknown_idx, quotient, T) for m in risky)]
    if anchor is not None and not rows:
        raise ValueError("anchor row is not isolated from the unknown images")
    rows.sort(key=lambda m: term_key(f.target, m), reverse=True)
    solved = solve_linear_mod_p(cols, rhs, rows, src.p)
    if solved is None:
        raise NoSolution(f"target of degree {d} is not in the image of {f.name or 'the map'}")
    particular, kernel = solved
    return SolutionSet(src, d, basis, particular, kernel)
