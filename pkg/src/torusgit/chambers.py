"""Walls and chambers of chi-space.

Every wall is the hyperplane sum_i c_i chi_i = 0 of a circuit c.  Since a
circuit vector lies in the kernel of the a-matrix, its value on chi depends
only on the restricted character K chi (K = kernel basis), so chambers are
enumerated in that (n - d)-dimensional space and lifted back.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence

from .configuration import Circuit, VectorConfiguration
from .exact import GT, CapacityExceeded, dot, lp_feasible, rat_vector, sign, solve, transpose
from .polyhedra import NotSimple

MAX_WALLS = 40

Wall = Circuit


@dataclass(frozen=True)
class Chamber:
    signs: tuple[int, ...]          # +1 / -1 per wall, in wall order
    representative: tuple[int, ...]  # integral simple chi

    def signs_text(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    def to_json(self) -> dict:
        return {"signs": self.signs_text(), "representative": list(self.representative)}


def walls(cfg: VectorConfiguration) -> list[Wall]:
    """One wall per circuit, deduplicated by normal."""
    seen, out = set(), []
    for circ in cfg.circuits:
        if circ.coeffs not in seen:
            seen.add(circ.coeffs)
            out.append(circ)
    return out


def wall_values(cfg: VectorConfiguration, chi: Sequence) -> list[Fraction]:
    chi = rat_vector(chi)
    return [w.value(chi) for w in walls(cfg)]


def is_simple_chi(cfg: VectorConfiguration, chi: Sequence) -> bool:
    """chi avoids every circuit wall."""
    return all(v != 0 for v in wall_values(cfg, chi))


def _integralize(chi: Sequence[Fraction]) -> tuple[int, ...]:
    den = reduce(lcm, (Fraction(x).denominator for x in chi), 1)
    return tuple(int(Fraction(x) * den) for x in chi)


def chamber_of(cfg: VectorConfiguration, chi: Sequence) -> Chamber:
    values = wall_values(cfg, chi)
    if any(v == 0 for v in values):
        raise NotSimple(f"chi={[str(x) for x in rat_vector(chi)]} lies on a wall")
    return Chamber(tuple(sign(v) for v in values), _integralize(rat_vector(chi)))


def _reduced_normals(cfg: VectorConfiguration, ws: list[Wall]) -> list[list[Fraction]]:
    """mu_w with c_w = sum_r mu_w,r K_r, so that c_w . chi = mu_w . (K chi)."""
    KT = transpose(cfg.kernel)
    return [solve(KT, list(w.coeffs)) for w in ws]


def _lift(cfg: VectorConfiguration, y: Sequence[Fraction]) -> tuple[int, ...]:
    """Primitive integral chi with K chi a positive multiple of y."""
    if cfg.n == cfg.d:
        return (0,) * cfg.n
    chi = solve(cfg.kernel, y)
    ints = _integralize(chi)
    g = reduce(gcd, (abs(x) for x in ints), 0)
    return tuple(x // g for x in ints) if g else ints


def enumerate_chambers(cfg: VectorConfiguration, max_walls: int = MAX_WALLS) -> list[Chamber]:
    """All realizable sign vectors over the walls, each with an integral representative.

    Depth-first over walls; a partial sign pattern is extended only while the
    open cone it describes is nonempty.  The witness of a feasible node
    already decides one child, so only the opposite sign needs an LP.
    """
    ws = walls(cfg)
    if len(ws) > max_walls:
        raise CapacityExceeded(f"{len(ws)} walls exceed the budget of {max_walls}")
    if "chambers" in cfg._cache:
        return cfg._cache["chambers"]
    k = cfg.n - cfg.d
    mus = _reduced_normals(cfg, ws)
    found: list[tuple[tuple[int, ...], list[Fraction]]] = []

    def feasible(signs):
        rows = [[s * x for x in mu] for s, mu in zip(signs, mus)]
        res = lp_feasible(rows, [GT] * len(rows), [0] * len(rows), nvars=k)
        return res.witness if res.feasible else None

    stack: list[tuple[tuple[int, ...], list[Fraction]]] = [((), [Fraction(0)] * k)]
    while stack:
        signs, wit = stack.pop()
        depth = len(signs)
        if depth == len(ws):
            found.append((signs, wit))
            continue
        v = dot(mus[depth], wit)
        for s in (1, -1):
            child = signs + (s,)
            if v * s > 0:
                stack.append((child, wit))
            else:
                w = feasible(child)
                if w is not None:
                    stack.append((child, w))

    chambers = []
    for signs, wit in found:
        rep = _lift(cfg, wit)
        values = wall_values(cfg, rep)
        if [sign(x) for x in values] != list(signs):
            # Lifting keeps K chi on the witness ray, so this cannot trigger
            # unless the lift is broken.
            raise AssertionError(f"representative {rep} left its chamber {signs}")
        chambers.append(Chamber(signs, rep))
    chambers.sort(key=lambda c: tuple(-s for s in c.signs))
    cfg._cache["chambers"] = chambers
    return chambers


def translate(cfg: VectorConfiguration, chi: Sequence, v: Sequence) -> list[Fraction]:
    """chi + (v . a_1, ..., v . a_n)."""
    return [Fraction(c) + cfg.pair(v, i) for i, c in enumerate(rat_vector(chi), 1)]
