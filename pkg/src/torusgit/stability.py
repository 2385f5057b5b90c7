"""GIT stability of coordinate supports for the torus G acting linearly on k^n.

With b_i the Gale dual weights and chi_G = sum_i chi_i b_i the restricted
character, a point with support sigma is semistable iff chi_G lies in
Cone{b_i : i in sigma}, and stable iff moreover the b_i (i in sigma) span
and chi_G is a strictly positive combination of them (the relative
interior of a finitely generated cone is exactly its set of strictly
positive combinations).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .chambers import enumerate_chambers
from .configuration import VectorConfiguration, gale_dual
from .exact import EQ, GE, GT, CapacityExceeded, lp_feasible, rank, rat_vector

MAX_SUPPORT_N = 14


def restrict_character(cfg: VectorConfiguration, chi: Sequence) -> tuple[int, ...]:
    chi = rat_vector(chi)
    if any(x.denominator != 1 for x in chi):
        raise ValueError("chi: must be integral")
    return tuple(int(sum(c * x for c, x in zip(row, chi))) for row in cfg.kernel)


def _cone_membership(cfg: VectorConfiguration, sigma: Sequence[int], target, strict: bool) -> bool:
    """Whether target = sum_{i in sigma} lambda_i b_i with lambda >= 0 (or > 0)."""
    b = gale_dual(cfg)
    k = cfg.n - cfg.d
    sigma = sorted(sigma)
    if not sigma:
        return all(t == 0 for t in target)
    rows = [[b[i - 1][r] for i in sigma] for r in range(k)]
    rels = [EQ] * k
    rhs = list(target)
    for j in range(len(sigma)):
        unit = [0] * len(sigma)
        unit[j] = 1
        rows.append(unit)
        rels.append(GT if strict else GE)
        rhs.append(0)
    return lp_feasible(rows, rels, rhs, nvars=len(sigma)).feasible


def spans(cfg: VectorConfiguration, sigma: Iterable[int]) -> bool:
    sigma = sorted(sigma)
    k = cfg.n - cfg.d
    if k == 0:
        return True
    if not sigma:
        return False
    b = gale_dual(cfg)
    return rank([list(b[i - 1]) for i in sigma]) == k


def is_semistable(cfg: VectorConfiguration, sigma: Iterable[int], chi: Sequence) -> bool:
    return _cone_membership(cfg, list(sigma), restrict_character(cfg, chi), strict=False)


def is_stable(cfg: VectorConfiguration, sigma: Iterable[int], chi: Sequence) -> bool:
    sigma = list(sigma)
    return spans(cfg, sigma) and _cone_membership(cfg, sigma, restrict_character(cfg, chi), strict=True)


def all_supports(cfg: VectorConfiguration) -> list[frozenset]:
    if cfg.n > MAX_SUPPORT_N:
        raise CapacityExceeded(f"n={cfg.n} exceeds the support budget of {MAX_SUPPORT_N}")
    return [frozenset(S) for k in range(cfg.n + 1) for S in combinations(range(1, cfg.n + 1), k)]


def stable_supports(cfg: VectorConfiguration, chi: Sequence) -> list[frozenset]:
    return [s for s in all_supports(cfg) if is_stable(cfg, s, chi)]


def semistable_supports(cfg: VectorConfiguration, chi: Sequence) -> list[frozenset]:
    return [s for s in all_supports(cfg) if is_semistable(cfg, s, chi)]


def is_nice(cfg: VectorConfiguration, chi: Sequence) -> bool:
    """Every semistable support is stable, and some support is stable."""
    any_stable = False
    for s in all_supports(cfg):
        if is_semistable(cfg, s, chi):
            if not is_stable(cfg, s, chi):
                return False
            any_stable = True
    return any_stable


def locally_free_supports(cfg: VectorConfiguration) -> list[frozenset]:
    """Supports with finite stabilizer: the b_i on the support span Q^{n-d}."""
    return [s for s in all_supports(cfg) if spans(cfg, s)]


@dataclass(frozen=True)
class OverlapGraph:
    chambers: list
    matrix: list[list[bool]]

    def to_json(self) -> dict:
        return {
            "chambers": [c.to_json() for c in self.chambers],
            "adjacency": self.matrix,
        }


def overlap_matrix(cfg: VectorConfiguration) -> OverlapGraph:
    """(i, j) is true iff some support is stable for both chamber representatives."""
    chambers = enumerate_chambers(cfg)
    stable = [set(stable_supports(cfg, c.representative)) for c in chambers]
    m = [[bool(si & sj) for sj in stable] for si in stable]
    return OverlapGraph(chambers, m)


def support_text(sigma: Iterable[int]) -> str:
    return "{" + ",".join(map(str, sorted(sigma))) + "}"
