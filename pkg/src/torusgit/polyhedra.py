"""Flipped polyhedra {x : eps_i(A) (x . a_i + chi_i) >= 0 for all i}.

Vertices come from brute force over d-subsets of the normals, volumes from
Lawrence's vertex formula with a generic linear functional.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Optional, Sequence

from .configuration import VectorConfiguration, epsilon, f_to_h
from .exact import GE, GT, CapacityExceeded, dot, lp_feasible, rank, rat_vector, solve, determinant

MAX_BASES = 5000


class PolytopeError(ValueError):
    pass


class Empty(PolytopeError):
    pass


class Unbounded(PolytopeError):
    pass


class NotSimple(PolytopeError):
    pass


@dataclass(frozen=True)
class VertexData:
    point: tuple  # Fractions
    tight_set: frozenset  # 1-based indices with x . a_i + chi_i = 0


class FlippedPolytope:
    """The polyhedron Delta^chi_A; with A empty this is Delta^chi."""

    def __init__(self, cfg: VectorConfiguration, chi: Sequence, A=()):
        self.cfg = cfg
        self.chi = tuple(rat_vector(chi))
        if len(self.chi) != cfg.n:
            raise ValueError(f"chi: expected {cfg.n} entries, got {len(self.chi)}")
        self.A = frozenset(A)
        self._vertices: Optional[list[VertexData]] = None

    def __repr__(self):
        return f"FlippedPolytope({self.cfg.name}, chi={[str(c) for c in self.chi]}, A={sorted(self.A)})"

    def eps(self, i: int) -> int:
        return epsilon(self.A, i)

    def normal(self, i: int) -> list[int]:
        """Inward normal eps_i a_i of the i-th half-space."""
        e = self.eps(i)
        return [e * x for x in self.cfg.a[i - 1]]

    def slack(self, x: Sequence, i: int) -> Fraction:
        """x . a_i + chi_i (unsigned)."""
        return self.cfg.pair(x, i) + self.chi[i - 1]

    def contains(self, x: Sequence) -> bool:
        return all(self.eps(i) * self.slack(x, i) >= 0 for i in range(1, self.cfg.n + 1))

    def system(self, strict: bool = False):
        """(rows, relations, rhs) of eps_i a_i . x REL -eps_i chi_i."""
        rows, rhs = [], []
        for i in range(1, self.cfg.n + 1):
            rows.append(self.normal(i))
            rhs.append(-self.eps(i) * self.chi[i - 1])
        return rows, [GT if strict else GE] * len(rows), rhs

    def vertices(self) -> list[VertexData]:
        if self._vertices is None:
            self._vertices = vertices(self)
        return self._vertices


def bases(cfg: VectorConfiguration) -> list[tuple[int, ...]]:
    """All d-subsets of indices whose vectors form a basis of Q^d."""
    if "bases" not in cfg._cache:
        if comb(cfg.n, cfg.d) > MAX_BASES:
            raise CapacityExceeded(f"C({cfg.n},{cfg.d}) bases exceed the budget of {MAX_BASES}")
        cfg._cache["bases"] = [
            B for B in combinations(range(1, cfg.n + 1), cfg.d)
            if rank([list(cfg.a[i - 1]) for i in B]) == cfg.d
        ]
    return cfg._cache["bases"]


def basis_solutions(cfg: VectorConfiguration, chi: Sequence) -> list[tuple[frozenset, tuple]]:
    """(B, point) for every basis B, with x . a_i = -chi_i for i in B."""
    chi = tuple(Fraction(x) for x in chi)
    key = ("basis_solutions", chi)
    if key not in cfg._cache:
        out = []
        for B in bases(cfg):
            M = [list(cfg.a[i - 1]) for i in B]
            x = solve(M, [-chi[i - 1] for i in B])
            out.append((frozenset(B), tuple(x)))
        cfg._cache[key] = out
    return cfg._cache[key]


def vertices(P: FlippedPolytope) -> list[VertexData]:
    merged: dict[tuple, set] = {}
    for _, x in basis_solutions(P.cfg, P.chi):
        if not P.contains(x):
            continue
        tight = {i for i in range(1, P.cfg.n + 1) if P.slack(x, i) == 0}
        merged.setdefault(x, set()).update(tight)
    return [VertexData(x, frozenset(t)) for x, t in sorted(merged.items())]


def is_empty(P: FlippedPolytope) -> bool:
    return not lp_feasible(*P.system(), nvars=P.cfg.d).feasible


def recession_direction(cfg: VectorConfiguration, A) -> Optional[list[Fraction]]:
    """A nonzero x with eps_i x . a_i >= 0 for all i, or None if the cone is {0}."""
    A = frozenset(A)
    base = [[epsilon(A, i + 1) * x for x in v] for i, v in enumerate(cfg.a)]
    for r in range(cfg.d):
        for s in (1, -1):
            unit = [0] * cfg.d
            unit[r] = s
            res = lp_feasible(base + [unit], [GE] * cfg.n + [GT], [0] * cfg.n + [0], nvars=cfg.d)
            if res.feasible:
                return res.witness
    return None


def is_bounded(P: FlippedPolytope) -> bool:
    """Triviality of the recession cone {x : eps_i x . a_i >= 0}."""
    return recession_direction(P.cfg, P.A) is None


def is_full_dimensional(P: FlippedPolytope) -> bool:
    return lp_feasible(*P.system(strict=True), nvars=P.cfg.d).feasible


def is_simple_poly(P: FlippedPolytope) -> bool:
    """Nonempty, of dimension d, and exactly d facets through every vertex."""
    if not is_full_dimensional(P):
        return False
    return all(len(v.tight_set) == P.cfg.d for v in P.vertices())


def _require_simple_polytope(P: FlippedPolytope) -> list[VertexData]:
    if is_empty(P):
        raise Empty(f"{P!r} is empty")
    if not is_bounded(P):
        raise Unbounded(f"{P!r} is unbounded")
    if not is_simple_poly(P):
        raise NotSimple(f"{P!r} is not simple of dimension {P.cfg.d}")
    return P.vertices()


def face_numbers(P: FlippedPolytope) -> tuple[list[int], list[int]]:
    """(f_0..f_{d-1}, h_0..h_d) of a simple polytope.

    A k-face of a simple polytope is determined by the (d-k)-subset of facets
    containing it, and every such subset of a vertex's tight set is a face.
    """
    verts = _require_simple_polytope(P)
    d = P.cfg.d
    f = []
    for k in range(d):
        faces = set()
        for v in verts:
            faces.update(frozenset(S) for S in combinations(sorted(v.tight_set), d - k))
        f.append(len(faces))
    # The dual simplicial polytope has f*_{j-1} = f_{d-j}; feed (1, f*_0, ..., f*_{d-1}).
    dual = [1] + [f[d - j] for j in range(1, d + 1)]
    return f, f_to_h(dual, d)


def _outward_rows(P: FlippedPolytope, B) -> list[list[int]]:
    return [[-x for x in P.normal(i)] for i in sorted(B)]


def lawrence_term(M: Sequence[Sequence], c: Sequence) -> Optional[Fraction]:
    """1 / (d! |det M| prod gamma) for outward normals M at a vertex, or None
    when c is orthogonal to an edge (some gamma = 0)."""
    d = len(M)
    gamma = solve([[row[r] for row in M] for r in range(d)], c)
    prod = Fraction(1)
    for g in gamma:
        if g == 0:
            return None
        prod *= g
    return 1 / (factorial(d) * abs(determinant(M)) * prod)


def random_functional(rng: random.Random, d: int, bound: int = 1000) -> list[Fraction]:
    return [Fraction(rng.randint(-bound, bound), rng.randint(1, 97)) for _ in range(d)]


def volume(P: FlippedPolytope, c: Optional[Sequence] = None, seed: int = 0) -> Fraction:
    """Exact Euclidean volume by Lawrence's formula.

    Vol = sum_v <c, v>^d / (d! |det M_v| prod gamma_v) with M_v the outward
    normals at v and c = sum gamma_v,i M_v,i.  If ``c`` is None a seeded
    random functional is drawn until it separates the vertices and no gamma
    vanishes.
    """
    verts = _require_simple_polytope(P)
    d = P.cfg.d
    rng = random.Random(seed)
    fixed = c is not None
    for _ in range(1000):
        cc = rat_vector(c) if fixed else random_functional(rng, d)
        heights = [dot(cc, v.point) for v in verts]
        if not fixed and len(set(heights)) < len(heights):
            continue
        total = Fraction(0)
        for v, h in zip(verts, heights):
            t = lawrence_term(_outward_rows(P, v.tight_set), cc)
            if t is None:
                break
            total += h ** d * t
        else:
            return total
        if fixed:
            raise ValueError("functional c is orthogonal to an edge direction")
    raise RuntimeError("failed to draw a generic functional")
