"""Vector configurations: the matroid, circuits, Gale dual and admissible flip-sets.

Indices are 1-based at every public boundary (flip-sets, supports, circuit
supports) and 0-based internally.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .exact import EQ, GE, kernel_basis, lp_feasible, primitive, rank


class ConfigurationError(ValueError):
    """Invalid configuration input; the message names the offending field."""


FlipSet = frozenset  # of 1-based indices


def flip_set(members: Iterable[int], n: int) -> frozenset:
    out = frozenset(int(i) for i in members)
    bad = sorted(i for i in out if not 1 <= i <= n)
    if bad:
        raise ConfigurationError(f"flip: indices {bad} outside 1..{n}")
    return out


def epsilon(A: Iterable[int], i: int) -> int:
    """-1 when the (1-based) index ``i`` is flipped, +1 otherwise."""
    return -1 if i in A else 1


@dataclass(frozen=True)
class Circuit:
    support: tuple[int, ...]  # 1-based, sorted
    coeffs: tuple[int, ...]   # length n, zero off the support

    def value(self, chi: Sequence) -> Fraction:
        return sum((Fraction(c) * Fraction(x) for c, x in zip(self.coeffs, chi)), Fraction(0))


@dataclass(frozen=True)
class VectorConfiguration:
    name: str
    d: int
    n: int
    a: tuple[tuple[int, ...], ...]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise ConfigurationError("d: must be a positive integer")
        if not isinstance(self.n, int) or self.n < self.d:
            raise ConfigurationError("n: must be an integer with n >= d")
        if len(self.a) != self.n:
            raise ConfigurationError(f"a: expected {self.n} vectors, got {len(self.a)}")
        for i, v in enumerate(self.a, 1):
            if len(v) != self.d:
                raise ConfigurationError(f"a: vector {i} has length {len(v)}, expected {self.d}")
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in v):
                raise ConfigurationError(f"a: vector {i} has non-integer entries")
            if all(x == 0 for x in v):
                raise ConfigurationError(f"a: vector {i} is zero")
        if rank(self.matrix) != self.d:
            raise ConfigurationError("a: vectors do not span Q^d (action not effective)")

    @classmethod
    def from_vectors(cls, a: Sequence[Sequence[int]], name: str = "cfg") -> "VectorConfiguration":
        a = tuple(tuple(int(x) for x in v) for v in a)
        if not a:
            raise ConfigurationError("a: empty configuration")
        return cls(name=name, d=len(a[0]), n=len(a), a=a)

    @classmethod
    def from_json(cls, doc: dict) -> "VectorConfiguration":
        for key in ("d", "n", "a"):
            if key not in doc:
                raise ConfigurationError(f"{key}: missing")
        a = doc["a"]
        if not isinstance(a, list) or not all(isinstance(v, list) for v in a):
            raise ConfigurationError("a: must be a list of integer lists")
        return cls(
            name=str(doc.get("name", "cfg")),
            d=doc["d"],
            n=doc["n"],
            a=tuple(tuple(v) for v in a),
        )

    @classmethod
    def load(cls, path) -> "VectorConfiguration":
        with open(path, encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigurationError(f"config: not valid JSON ({exc})") from exc
        if not isinstance(doc, dict):
            raise ConfigurationError("config: top level must be an object")
        return cls.from_json(doc)

    def to_json(self) -> dict:
        return {"name": self.name, "d": self.d, "n": self.n, "a": [list(v) for v in self.a]}

    @property
    def matrix(self) -> list[list[int]]:
        """The d x n matrix whose columns are the a_i."""
        return [[v[r] for v in self.a] for r in range(self.d)]

    def scaled(self, factors: Sequence[int]) -> "VectorConfiguration":
        return VectorConfiguration.from_vectors(
            [[f * x for x in v] for f, v in zip(factors, self.a)], name=self.name
        )

    def pair(self, x: Sequence, i: int) -> Fraction:
        """x . a_i for a 1-based index."""
        return sum((Fraction(c) * Fraction(y) for c, y in zip(self.a[i - 1], x)), Fraction(0))

    # Cached combinatorial data -------------------------------------------------

    @cached_property
    def kernel(self) -> list[list[int]]:
        """Canonical primitive basis of ker(c -> sum c_i a_i), n - d vectors."""
        return kernel_basis(self.matrix, self.n)

    @cached_property
    def circuits(self) -> list[Circuit]:
        return circuits(self)


def is_independent(cfg: VectorConfiguration, subset: Iterable[int]) -> bool:
    subset = list(subset)
    if not subset:
        return True
    return rank([list(cfg.a[i - 1]) for i in subset]) == len(subset)


def circuits(cfg: VectorConfiguration) -> list[Circuit]:
    """All circuits with primitive, sign-normalized coefficient vectors,
    ordered by support size and then lexicographically.

    A subset C is a circuit iff rank(C) = |C| - 1 and its one-dimensional
    dependency has full support on C.
    """
    found = []
    for size in range(2, cfg.d + 2):
        for C in combinations(range(cfg.n), size):
            cols = [[cfg.a[i][r] for i in C] for r in range(cfg.d)]
            ker = kernel_basis(cols, size)
            if len(ker) != 1 or any(x == 0 for x in ker[0]):
                continue
            c = [0] * cfg.n
            for i, x in zip(C, ker[0]):
                c[i] = x
            c = primitive(c)
            if next(x for x in c if x != 0) < 0:
                c = [-x for x in c]
            found.append(Circuit(tuple(i + 1 for i in C), tuple(c)))
    found.sort(key=lambda circ: (len(circ.support), circ.support))
    return found


def gale_dual(cfg: VectorConfiguration) -> list[tuple[int, ...]]:
    """b_i = i-th column of the kernel basis matrix."""
    K = cfg.kernel
    return [tuple(row[i] for row in K) for i in range(cfg.n)]


def is_admissible(cfg: VectorConfiguration, A: Iterable[int]) -> bool:
    """Whether the signed vectors eps_i(A) a_i positively span R^d.

    Decided as: the a_i span R^d, and some lambda >= 1 gives
    sum lambda_i eps_i a_i = 0.
    """
    A = frozenset(A)
    key = ("admissible", A)
    if key in cfg._cache:
        return cfg._cache[key]
    signed = [[epsilon(A, i + 1) * x for x in v] for i, v in enumerate(cfg.a)]
    ok = rank(signed) == cfg.d
    if ok:
        rows = [[signed[i][r] for i in range(cfg.n)] for r in range(cfg.d)]
        rels = [EQ] * cfg.d
        rhs = [0] * cfg.d
        for i in range(cfg.n):
            unit = [0] * cfg.n
            unit[i] = 1
            rows.append(unit)
            rels.append(GE)
            rhs.append(1)
        ok = lp_feasible(rows, rels, rhs, nvars=cfg.n).feasible
    cfg._cache[key] = ok
    return ok


def admissible_sets(cfg: VectorConfiguration) -> list[frozenset]:
    """All admissible flip-sets, ordered by size then lexicographically."""
    out = []
    for size in range(cfg.n + 1):
        for A in combinations(range(1, cfg.n + 1), size):
            if is_admissible(cfg, A):
                out.append(frozenset(A))
    return out


def independence_f_vector(cfg: VectorConfiguration) -> list[int]:
    """f_{-1}, f_0, ..., f_{d-1}: numbers of independent sets of size 0..d."""
    return [
        sum(1 for S in combinations(range(1, cfg.n + 1), k) if is_independent(cfg, S))
        for k in range(cfg.d + 1)
    ]


def f_to_h(f: Sequence[int], d: int) -> list[int]:
    """h-vector from f = (f_{-1}, ..., f_{d-1}) via sum f_{i-1}(x-1)^{d-i} = sum h_k x^{d-k}."""
    h = [0] * (d + 1)
    for i, fi in enumerate(f):
        # (x-1)^(d-i) contributes to x^(d-k) with k = i + j
        for j in range(d - i + 1):
            h[i + j] += fi * comb(d - i, j) * (-1) ** j
    return h


def matroid_h_vector(cfg: VectorConfiguration) -> list[int]:
    return f_to_h(independence_f_vector(cfg), cfg.d)
