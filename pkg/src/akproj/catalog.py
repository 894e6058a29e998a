"""Groups, pairs (G, H), restriction maps and prime thresholds."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .fp import FieldError, Prime, as_prime
from .graded import AlgebraMap, GeneratorIdeal, GradedAlgebra, Polynomial
from .steenrod import RootModel


class UnsupportedPrime(FieldError):
    pass


class BadParameter(ValueError):
    pass


class ExcludedPair(BadParameter):
    pass


FAMILIES = ("SU_SO", "SU_Sp", "SO_even", "E6_F4", "Spin8_G2")
PARAMETRIC = ("SU_SO", "SU_Sp", "SO_even")

# Citation keys attached to every emitted claim.
CITE = {
    "a_k": "threshold a_k (closed form per family)",
    "b_k": "sufficiency bound b_k = max((k-1)m + l, kl)",
    "e6_ext": "E6 extension at p = 12k-5: X = X^(24k-12) u e^(24k-6), pi_(2i-1)(BE6) = 0 for i <= 12k-6 and i = 12k-3",
    "criterion": "P^1 obstruction criterion (monomial M, ideal I)",
    "so_even_gap": "SO(2n) family: undecided for a_k - n + 2 <= p < a_k",
    "so_even_no": "SO(2n) family: not A_k for p < a_k - n + 2",
    "iff": "A_k iff p >= a_k",
    "c_k": "A_k for SU(2n+1) -> SO(2n+1) is equivalent to SU(2n+1) being Sugawara/Williams C_k",
    "cells": "P^l S^(2n-1) = S^2n u e^4n u ... u e^2ln for l <= p-1",
    "clearance": "pi_(2i-1)(BG) = 0 for i <= p (p-regular G)",
    "wu_chern": "mod-p Wu formula for P^1 c_k",
    "wu_pont": "mod-p Wu formula for P^1 p_k",
    "roots": "unstable axiom on degree-2 roots",
    "e8": "pullback along BSpin(15) -> BE8",
    "e6": "pullback along BE6 -> BE8",
}


@dataclass(frozen=True)
class FactEntry:
    """A cited non-A_k fact. Carries no computed content."""

    prime: int
    k: int
    citation: str
    verdict: str = "not_Ak"

    def covers(self, p: int, k: int) -> bool:
        return self.prime == p and k >= self.k


@dataclass
class GroupModel:
    family: str
    parameter: Optional[int]
    prime: Prime
    type_sequence: Tuple[int, ...]
    algebra: Optional[GradedAlgebra] = None
    root_model: Optional[RootModel] = None
    generator_types: Dict[str, int] = field(default_factory=dict)
    name: str = ""

    @property
    def p_regular(self) -> bool:
        return self.prime.value > max(self.type_sequence)

    def __str__(self):
        return self.name or self.family


def _types_from_algebra(alg: GradedAlgebra) -> Dict[str, int]:
    return {n: d // 2 for n, d in zip(alg.names, alg.degrees)}


def _exceptional_algebra(degs, p, label) -> GradedAlgebra:
    return GradedAlgebra([(f"x{d}", d) for d in degs], p, label=label)


E8_DEGREES = (4, 16, 24, 28, 36, 40, 48, 60)
E6_DEGREES = (4, 10, 12, 16, 18, 24)
F4_DEGREES = (4, 12, 16, 24)
G2_DEGREES = (4, 12)


@lru_cache(maxsize=None)
def e8_algebra(p: int) -> GradedAlgebra:
    return _exceptional_algebra(E8_DEGREES, p, "BE8")


@lru_cache(maxsize=None)
def e6_algebra(p: int) -> GradedAlgebra:
    return _exceptional_algebra(E6_DEGREES, p, "BE6")


def _group(family: str, parameter, p: Prime, with_algebra: bool) -> GroupModel:
    n = parameter
    odd = p.odd
    root = None
    exc: Optional[Tuple[int, ...]] = None
    min_p = 3
    if family == "SU":
        if n is None or n < 2:
            raise BadParameter("SU(n) needs n >= 2")
        types = tuple(range(2, n + 1))
        root = RootModel("chern", n)
        name = f"SU({n})"
    elif family == "SO_odd":
        if n is None or n < 1:
            raise BadParameter("SO(2n+1) needs n >= 1")
        types = tuple(range(2, 2 * n + 1, 2))
        root = RootModel("pontrjagin", n)
        name = f"SO({2 * n + 1})"
    elif family == "SO_even":
        if n is None or n < 2:
            raise BadParameter("SO(2n) needs n >= 2")
        types = tuple(sorted(list(range(2, 2 * n - 1, 2)) + [n]))
        root = RootModel("pontrjagin_euler", n)
        name = f"SO({2 * n})"
    elif family == "Sp":
        if n is None or n < 1:
            raise BadParameter("Sp(n) needs n >= 1")
        types = tuple(range(2, 2 * n + 1, 2))
        root = RootModel("pontrjagin", n, prefix="q")
        name = f"Sp({n})"
    elif family == "Spin8":
        types = (2, 4, 4, 6)
        root = RootModel("pontrjagin_euler", 4)
        name = "Spin(8)"
    elif family == "G2":
        types, exc, name = (2, 6), G2_DEGREES, "G2"
    elif family == "F4":
        types, exc, name, min_p = (2, 6, 8, 12), F4_DEGREES, "F4", 5
    elif family == "E6":
        types, exc, name, min_p = (2, 5, 6, 8, 9, 12), E6_DEGREES, "E6", 7
    elif family == "E8":
        types, exc, name, min_p = (2, 8, 12, 14, 18, 20, 24, 30), E8_DEGREES, "E8", 7
    else:
        raise BadParameter(f"unknown family {family}")
    if family in ("G2", "F4", "E6", "E8", "Spin8"):
        parameter = None
    g = GroupModel(family, parameter, p, types, root_model=root, name=name)
    if not with_algebra:
        return g
    if not odd or p.value < min_p:
        raise UnsupportedPrime(f"no cohomology model of B{name} at p = {p.value}")
    if root is not None:
        g.algebra = root.algebra(p.value)
    elif family == "E8":
        g.algebra = e8_algebra(p.value)
    elif family == "E6":
        g.algebra = e6_algebra(p.value)
    else:
        g.algebra = _exceptional_algebra(exc, p.value, f"B{name}")
    g.generator_types = _types_from_algebra(g.algebra)
    assert sorted(g.generator_types.values()) == list(types), (name, g.generator_types)
    return g


def instantiate_group(family: str, parameter=None, p=3) -> GroupModel:
    return _group(family, parameter, as_prime(p), with_algebra=True)


# ---------------------------------------------------------------- exceptional data

def _bso(n: int, p: int) -> GradedAlgebra:
    return RootModel("pontrjagin", n).algebra(p)


@lru_cache(maxsize=None)
def j2_star(p: int) -> AlgebraMap:
    """H^*(BE8) -> H^*(BSpin(15)) = H^*(BSO(15)); x36 known modulo (p1)."""
    B = _bso(7, p)
    E8 = e8_algebra(p)
    images = {
        "x4": B.parse("p1"),
        "x16": B.parse("12*p4 - 18/5*p3*p1 + p2^2 + 1/10*p2*p1^2"),
        "x24": B.parse("60*p6 - 5*p5*p1 - 5*p4*p2 + 3*p3^2 - p3*p2*p1 + 5/36*p2^3"),
        "x28": B.parse("480*p7 + 40*p5*p2 - 12*p4*p3 - p3*p2^2 - 3*p4*p2*p1"
                       " + 24/5*p3^2*p1 + 11/36*p2^3*p1"),
        "x36": B.parse("480*p7*p2 + 72*p6*p3 - 30*p5*p4 - 25/2*p5*p2^2 + 9*p4*p3*p2"
                       " - 18/5*p3^3 - 1/4*p3*p2^3"),
        "x40": None, "x48": None, "x60": None,
    }
    # x60 is normalized so that its restriction has no p7*p6*p2 term
    return AlgebraMap(E8, B, images, modulo={"x36": GeneratorIdeal(B, {"p1"})}, name="j2*",
                      excluded={"x60": {B.monomial(p7=1, p6=1, p2=1)}})


@lru_cache(maxsize=None)
def i2_star(p: int) -> AlgebraMap:
    """H^*(BE8) -> H^*(BE6)."""
    E8, E6 = e8_algebra(p), e6_algebra(p)
    images = {
        "x4": E6.gen("x4"), "x16": E6.gen("x16"), "x24": E6.gen("x24"),
        "x28": E6.parse("40*x18*x10 + 1/6*x16*x12"),
        "x36": E6.parse("-10*x18^2 - 5/2*x16*x10^2"),
        "x40": None, "x48": None, "x60": None,
    }
    return AlgebraMap(E8, E6, images, name="i2*")


@lru_cache(maxsize=None)
def i1_star(p: int) -> AlgebraMap:
    """H^*(BSO(15)) -> H^*(BSO(10))."""
    B15 = _bso(7, p)
    B10 = RootModel("pontrjagin_euler", 5).algebra(p)
    imgs = {f"p{i}": B10.gen(f"p{i}") for i in range(1, 5)}
    imgs["p5"] = B10.gen("e5") ** 2
    imgs["p6"] = B10.zero()
    imgs["p7"] = B10.zero()
    return AlgebraMap(B15, B10, imgs, name="i1*")


@lru_cache(maxsize=None)
def j1_star(p: int) -> AlgebraMap:
    """H^*(BE6) -> H^*(BSO(10)).

    x10, x12, x18 are given directly; x4, x16, x24 go through BE8 and BSO(15).
    """
    E6 = e6_algebra(p)
    B10 = RootModel("pontrjagin_euler", 5).algebra(p)
    j2, i1 = j2_star(p), i1_star(p)
    imgs = {
        "x10": B10.gen("e5"),
        "x12": B10.parse("-6*p3 + p2*p1"),
        "x18": B10.parse("p2*e5"),
    }
    for g in ("x4", "x16", "x24"):
        imgs[g] = i1(j2.images[g])
    return AlgebraMap(E6, B10, imgs, name="j1*")


# ---------------------------------------------------------------- pairs

@dataclass
class PairModel:
    family: str
    parameter: Optional[int]
    prime: Prime
    G: GroupModel
    H: GroupModel
    quotient_types: Tuple[int, ...]
    m_l: Tuple[int, int]
    restriction: Optional[AlgebraMap] = None
    matching: Dict[str, str] = field(default_factory=dict)
    facts: List[FactEntry] = field(default_factory=list)

    @property
    def has_cohomology(self) -> bool:
        return self.restriction is not None

    def a(self, k: int) -> int:
        return a_value(self.family, self.parameter, k)

    def b(self, k: int) -> int:
        return b_value(self.family, self.parameter, k)

    def fact_for(self, p: int, k: int) -> Optional[FactEntry]:
        return next((f for f in self.facts if f.covers(p, k)), None)

    @property
    def label(self) -> str:
        return f"({self.G}, {self.H})"


def valid_prime(family: str, p: int) -> bool:
    p = int(p)
    from .fp import is_prime
    if not is_prime(p):
        return False
    if family in PARAMETRIC:
        return p >= 3
    if family == "E6_F4":
        return p >= 5
    if family == "Spin8_G2":
        return p != 3
    raise BadParameter(f"unknown pair family {family}")


def _check_param(family: str, n):
    if family in PARAMETRIC:
        if n is None:
            raise BadParameter(f"{family} needs a parameter")
        n = int(n)
        if family == "SU_SO" and n < 1:
            raise BadParameter("need n >= 1")
        if family == "SU_Sp":
            if n == 1:
                raise ExcludedPair("(SU(2), Sp(1)) is excluded")
            if n < 1:
                raise BadParameter("need n >= 2")
        if family == "SO_even" and n < 2:
            raise BadParameter("need n >= 2")
        return n
    if family not in FAMILIES:
        raise BadParameter(f"unknown pair family {family}")
    return None


def m_l_value(family: str, n=None) -> Tuple[int, int]:
    n = _check_param(family, n)
    return {
        "SU_SO": lambda: (2 * n + 1, 2 * n + 1),
        "SU_Sp": lambda: (2 * n, 2 * n - 1),
        "SO_even": lambda: (2 * n - 2, n),
        "E6_F4": lambda: (12, 9),
        "Spin8_G2": lambda: (6, 4),
    }[family]()


def a_value(family: str, n, k: int) -> int:
    n = _check_param(family, n)
    if k < 1:
        raise ValueError("k >= 1")
    return {
        "SU_SO": lambda: k * (2 * n + 1),
        "SU_Sp": lambda: 2 * k * n - 1,
        "SO_even": lambda: 2 * (k - 1) * (n - 1) + n,
        "E6_F4": lambda: 12 * k - 5,
        "Spin8_G2": lambda: 6 * k - 2,
    }[family]()


def b_value(family: str, n, k: int) -> int:
    if k < 2:
        raise ValueError("b_k is defined for k >= 2")
    m, l = m_l_value(family, n)
    return max((k - 1) * m + l, k * l)


def a_threshold(pair: PairModel, k: int) -> int:
    return pair.a(k)


def b_threshold(pair: PairModel, k: int) -> int:
    return pair.b(k)


def _facts(family: str, n, p: int) -> List[FactEntry]:
    out = []
    a1 = a_value(family, n, 1)
    if family == "SU_SO" and p < a1:
        out.append(FactEntry(p, 2, f"p < a_1 = {a1}: nontrivial Samelson product <e_(2n-p+1), e_(p-1)> in SU({2 * n + 1})"))
    elif family == "SU_Sp" and p < a1:
        out.append(FactEntry(p, 2, f"p < a_1 = {a1}: nontrivial Samelson product <e_(2n-p+1), e_(p-1)> in SU({2 * n})"))
    elif family == "E6_F4":
        if p == 5:
            out.append(FactEntry(5, 2, "p = 5 < a_1: E6 = F4 x B(9,17), Samelson product on the bottom cell S^9"))
        if p == 7:
            out.append(FactEntry(7, 2, "p = 7: E6 = F4 x S^9 x S^17, <e, e> nontrivial for e: S^17 -> E6"))
    elif family == "Spin8_G2" and p == 2:
        out.append(FactEntry(2, 2, "p = 2: q_*(<[iota_7], [iota_7]>) != 0 in pi_14(G2)"))
    elif family == "SO_even" and p == n:
        out.append(FactEntry(p, 2, f"p = n = {n}: Samelson product <theta, theta> in SO({2 * n}) survives the projection"))
    return out


def instantiate_pair(family: str, parameter=None, p=3) -> PairModel:
    n = _check_param(family, parameter)
    p = as_prime(p)
    if not valid_prime(family, p.value):
        raise UnsupportedPrime(f"p = {p.value} is not admissible for {family}")
    gfam, hfam, gpar, hpar, quot = {
        "SU_SO": lambda: ("SU", "SO_odd", 2 * n + 1, n, tuple(range(3, 2 * n + 2, 2))),
        "SU_Sp": lambda: ("SU", "Sp", 2 * n, n, tuple(range(3, 2 * n, 2))),
        "SO_even": lambda: ("SO_even", "SO_odd", n, n - 1, (n,)),
        "E6_F4": lambda: ("E6", "F4", None, None, (5, 9)),
        "Spin8_G2": lambda: ("Spin8", "G2", None, None, (4, 4)),
    }[family]()
    try:
        G = _group(gfam, gpar, p, True)
        H = _group(hfam, hpar, p, True)
        cohomology = True
    except UnsupportedPrime:
        G = _group(gfam, gpar, p, False)
        H = _group(hfam, hpar, p, False)
        cohomology = False
    pair = PairModel(family, n, p, G, H, quot, m_l_value(family, n), facts=_facts(family, n, p.value))
    if cohomology:
        pair.restriction, pair.matching = _restriction(family, n, G, H)
        check_generator_hypothesis(pair)
    return pair


def _restriction(family, n, G: GroupModel, H: GroupModel):
    GA, HA = G.algebra, H.algebra
    imgs: Dict[str, Polynomial] = {}
    match: Dict[str, str] = {}
    if family in ("SU_SO", "SU_Sp"):
        pre = "p" if family == "SU_SO" else "q"
        for g in GA.names:
            i = int(g[1:])
            if i % 2 == 0:
                y = f"{pre}{i // 2}"
                imgs[g] = HA.gen(y).scale(-1 if (i // 2) % 2 else 1)
                match[y] = g
            else:
                imgs[g] = HA.zero()
    elif family == "SO_even":
        for g in GA.names:
            if g.startswith("e"):
                imgs[g] = HA.zero()
            else:
                imgs[g] = HA.gen(g)
                match[g] = g
    elif family == "E6_F4":
        for g in GA.names:
            if g in HA.index:
                imgs[g] = HA.gen(g)
                match[g] = g
            else:
                imgs[g] = HA.zero()
    elif family == "Spin8_G2":
        imgs = {"p1": HA.gen("x4"), "p2": HA.zero(), "p3": HA.gen("x12"), "e4": HA.zero()}
        match = {"x4": "p1", "x12": "p3"}
    return AlgebraMap(GA, HA, imgs, name="restriction"), match


def check_generator_hypothesis(pair: PairModel):
    """Each G-generator maps to +-(matching H-generator) or 0, types agreeing."""
    f = pair.restriction
    GA, HA = pair.G.algebra, pair.H.algebra
    inverse = {g: y for y, g in pair.matching.items()}
    assert set(pair.matching) == set(HA.names), "every H-generator needs a partner"
    for g in GA.names:
        img = f.images[g]
        if g in inverse:
            y = inverse[g]
            expected = HA.gen(y)
            assert img == expected or img == -expected, (g, img)
            assert pair.G.generator_types[g] == pair.H.generator_types[y]
        else:
            assert img.is_zero(), (g, img)
    return True
