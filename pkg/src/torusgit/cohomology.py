"""Apolarity quotients Sym t / Ann(W) realized through ranks of pairings.

The operator space t = ker(c -> sum c_i a_i) acts on chi-polynomials by
directional derivatives: y_r acts as sum_i c^r_i d/dchi_i.  Everything below
(Hilbert functions, socles, spans) is exact linear algebra over Q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .chambers import Chamber, enumerate_chambers
from .configuration import VectorConfiguration, admissible_sets, is_admissible
from .exact import rank
from .polynomials import MultiPoly, monomials, span_basis, span_contains
from .volpoly import check_translation_invariance, volume_polynomial


class NotProjective(ValueError):
    """The empty flip-set is not admissible, so the GIT quotients are not projective."""


class EmptyQuotient(ValueError):
    pass


def operator_names(k: int) -> tuple[str, ...]:
    return tuple(f"y{r}" for r in range(1, k + 1))


@dataclass
class InverseSystem:
    """A finite family of chi-polynomials together with the operator directions.

    ``degree`` is the top degree of the quotient; it defaults to the largest
    degree in ``polys``.
    """

    polys: list[MultiPoly]
    ops: list[list[int]]
    degree: Optional[int] = None
    _images: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        if self.degree is None:
            self.degree = max((p.degree() for p in self.polys), default=0)
            self.degree = max(self.degree, 0)

    @classmethod
    def for_configuration(cls, cfg: VectorConfiguration, polys: Sequence[MultiPoly]) -> "InverseSystem":
        polys = list(polys)
        for p in polys:
            if p and not p.is_homogeneous(cfg.d):
                raise ValueError(f"{p!r} is not homogeneous of degree {cfg.d}")
            if not check_translation_invariance(cfg, p):
                raise ValueError(f"{p!r} is not translation invariant")
        return cls(polys, [list(c) for c in cfg.kernel], cfg.d)

    @property
    def nops(self) -> int:
        return len(self.ops)

    def images(self, k: int) -> dict[tuple, list[MultiPoly]]:
        """Map from each degree-k operator monomial to its images (D . P for P in W)."""
        if k not in self._images:
            if k == 0:
                self._images[0] = {(0,) * self.nops: list(self.polys)}
            else:
                prev = self.images(k - 1)
                out = {}
                for e in monomials(self.nops, k):
                    r = next(i for i, x in enumerate(e) if x)
                    base = list(e)
                    base[r] -= 1
                    out[e] = [p.directional(self.ops[r]) for p in prev[tuple(base)]]
                self._images[k] = out
        return self._images[k]


def apolar_action(D: MultiPoly, P: MultiPoly, ops: Sequence[Sequence[int]]) -> MultiPoly:
    """Apply the operator polynomial D(y_1..y_k), with y_r -> sum_i ops[r]_i d/dchi_i, to P."""
    if D.nvars != len(ops):
        raise ValueError("operator polynomial must have one variable per operator")
    out = MultiPoly.zero(P.names)
    for e, c in D.terms.items():
        img = P
        for r, k in enumerate(e):
            for _ in range(k):
                img = img.directional(ops[r])
        out = out + img * c
    return out


def _pairing_rank(rows: list[list[MultiPoly]]) -> int:
    """Rank of the matrix whose row j concatenates the coefficients of rows[j]."""
    keys = sorted({(j, e) for row in rows for j, p in enumerate(row) for e in p.terms})
    if not keys:
        return 0
    index = {k: i for i, k in enumerate(keys)}
    dense = []
    for row in rows:
        vec = [0] * len(keys)
        for j, p in enumerate(row):
            for e, c in p.terms.items():
                vec[index[(j, e)]] = c
        dense.append(vec)
    return rank(dense)


def hilbert_function(S: InverseSystem) -> list[int]:
    """q_k = rank of degree-k operators -> (D . P)_{P in W}, for k = 0..degree."""
    return [_pairing_rank(list(S.images(k).values())) for k in range(S.degree + 1)]


def socle_dimensions(S: InverseSystem) -> list[int]:
    """s_k = q_k - rank(D -> (y_r D . P)_{r, P}) on degree-k operators."""
    q = hilbert_function(S)
    s = []
    for k in range(S.degree + 1):
        rows = []
        for imgs in S.images(k).values():
            rows.append([p.directional(op) for op in S.ops for p in imgs])
        s.append(q[k] - _pairing_rank(rows))
    return s


def is_level(S: InverseSystem) -> bool:
    """Socle concentrated in the top degree."""
    return all(x == 0 for x in socle_dimensions(S)[:-1])


def admissible_span_U(cfg: VectorConfiguration, chi: Sequence) -> list[MultiPoly]:
    """Reduced basis of span{P^chi_A : A admissible}."""
    return span_basis([volume_polynomial(cfg, chi, A).poly for A in admissible_sets(cfg)])


def _require_projective(cfg: VectorConfiguration):
    if not is_admissible(cfg, ()):
        raise NotProjective(
            f"{cfg.name}: the empty flip-set is inadmissible (a_i do not positively span), "
            "so the quotients are not projective"
        )


@dataclass(frozen=True)
class InjectivityVerdict:
    U_dim: int
    V_dim: int
    U_in_V: bool
    V_in_U: bool
    chamber_count: int

    @property
    def equal(self) -> bool:
        return self.U_in_V and self.V_in_U

    def to_json(self) -> dict:
        return {
            "U_dim": self.U_dim,
            "V_dim": self.V_dim,
            "U_in_V": self.U_in_V,
            "V_in_U": self.V_in_U,
            "equal": self.equal,
            "chamber_count": self.chamber_count,
        }


def chamber_polynomials(cfg: VectorConfiguration) -> list[MultiPoly]:
    """P^rep for the representative of every chamber (zero where Delta is empty)."""
    return [volume_polynomial(cfg, ch.representative).poly for ch in enumerate_chambers(cfg)]


def verify_injectivity(cfg: VectorConfiguration) -> InjectivityVerdict:
    """Compare U (at one chamber) with V = span of the chamber polynomials P^chi.

    Injectivity of the restriction map is equivalent to U = V in degree d.
    """
    _require_projective(cfg)
    chambers = enumerate_chambers(cfg)
    U = admissible_span_U(cfg, chambers[0].representative)
    V = span_basis(chamber_polynomials(cfg))
    return InjectivityVerdict(
        U_dim=len(U),
        V_dim=len(V),
        U_in_V=span_contains(V, U),
        V_in_U=span_contains(U, V),
        chamber_count=len(chambers),
    )


def toric_system(cfg: VectorConfiguration, chamber: Chamber) -> InverseSystem:
    P = volume_polynomial(cfg, chamber.representative).poly
    if not P:
        raise EmptyQuotient(f"Delta is empty on chamber {chamber.signs_text()}")
    return InverseSystem.for_configuration(cfg, [P])


def toric_betti(cfg: VectorConfiguration, chamber: Chamber) -> list[int]:
    return hilbert_function(toric_system(cfg, chamber))


def hypertoric_system(cfg: VectorConfiguration, chi: Optional[Sequence] = None) -> InverseSystem:
    _require_projective(cfg)
    if chi is None:
        chi = enumerate_chambers(cfg)[0].representative
    polys = [volume_polynomial(cfg, chi, A).poly for A in admissible_sets(cfg)]
    return InverseSystem.for_configuration(cfg, polys)


def hypertoric_betti(cfg: VectorConfiguration, chi: Optional[Sequence] = None) -> list[int]:
    return hilbert_function(hypertoric_system(cfg, chi))
