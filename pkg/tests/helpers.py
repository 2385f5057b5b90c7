"""Shared test utilities that do rely on the package."""

import random
from itertools import combinations

from oracles import expand
from torusgit.chambers import chamber_of, is_simple_chi
from torusgit.polynomials import MultiPoly, chi_names


def all_subsets(n):
    return [frozenset(S) for k in range(n + 1) for S in combinations(range(1, n + 1), k)]


def same_chamber_points(cfg, chamber, count, seed=0):
    """``count`` integral simple points in ``chamber`` other than its representative."""
    rng = random.Random(seed)
    rep = chamber.representative
    out = []
    scale = 2
    while len(out) < count:
        eta = [scale * x + rng.randint(-1, 1) for x in rep]
        if eta != list(rep) and is_simple_chi(cfg, eta) and chamber_of(cfg, eta).signs == chamber.signs:
            out.append(eta)
        scale = 2 + len(out) + rng.randint(0, 2)
    return out


def poly(text, n):
    """MultiPoly from a sympy-parsable expression in x1..xn."""
    names = chi_names(n)
    out = MultiPoly.zero(names)
    for e, c in expand(text, n).items():
        term = MultiPoly.const(names, c)
        for i, k in enumerate(e):
            term = term * MultiPoly.var(names, i) ** k
        out = out + term
    return out
