"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

from .exact import rat_str, rref, to_rat

Exponent = tuple[int, ...]


class DegreeMismatch(ValueError):
    pass


def chi_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(1, n + 1))


class MultiPoly:
    """Immutable polynomial: a map from exponent tuples to nonzero Fractions."""

    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        self.names = tuple(names)
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            if len(e) != len(self.names):
                raise ValueError("exponent length does not match the variables")
            c = to_rat(c)
            if c != 0:
                clean[tuple(e)] = c
        self.terms = clean

    # Constructors ---------------------------------------------------------------

    @classmethod
    def zero(cls, names) -> "MultiPoly":
        return cls(names)

    @classmethod
    def const(cls, names, value) -> "MultiPoly":
        return cls(names, {(0,) * len(names): value})

    @classmethod
    def var(cls, names, idx: int) -> "MultiPoly":
        e = [0] * len(names)
        e[idx] = 1
        return cls(names, {tuple(e): 1})

    @classmethod
    def linear(cls, names, coeffs: Sequence, constant=0) -> "MultiPoly":
        terms = {}
        k = len(names)
        for i, c in enumerate(coeffs):
            e = [0] * k
            e[i] = 1
            terms[tuple(e)] = c
        if constant:
            terms[(0,) * k] = constant
        return cls(names, terms)

    # Basic protocol -----------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.names != other.names:
            raise ValueError(f"variable mismatch: {self.names} vs {other.names}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.const(self.names, other)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.names == other.names and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.const(self.names, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r})"

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultiPoly(self.names, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = to_rat(other)
            return MultiPoly(self.names, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly(self.names, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiPoly":
        result = MultiPoly.const(self.names, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # Structure ------------------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.names)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    def depends_on(self, idx: int) -> bool:
        return any(e[idx] for e in self.terms)

    def coefficient(self, exponent: Exponent) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    def derivative(self, idx: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            if e[idx]:
                f = list(e)
                f[idx] -= 1
                out[tuple(f)] = c * e[idx]
        return MultiPoly(self.names, out)

    def directional(self, direction: Sequence) -> "MultiPoly":
        """sum_i direction_i * dP/dx_i."""
        out = MultiPoly.zero(self.names)
        for i, v in enumerate(direction):
            if v:
                out = out + self.derivative(i) * v
        return out

    def evaluate(self, point: Sequence) -> Fraction:
        point = [to_rat(p) for p in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def substitute(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Replace variable i by ``images[i]`` (all images share one variable set)."""
        if len(images) != self.nvars:
            raise ValueError("one image per variable is required")
        target = images[0].names if images else ()
        out = MultiPoly.zero(target)
        powers: dict[tuple[int, int], MultiPoly] = {}
        for e, c in self.terms.items():
            term = MultiPoly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in powers:
                        powers[(i, k)] = images[i] ** k
                    term = term * powers[(i, k)]
            out = out + term
        return out

    def rename(self, names: Sequence[str]) -> "MultiPoly":
        if len(names) != self.nvars:
            raise ValueError("rename needs one name per variable")
        return MultiPoly(names, self.terms)

    def extend(self, names: Sequence[str]) -> "MultiPoly":
        """Embed into a larger variable list containing all current names."""
        names = tuple(names)
        pos = [names.index(v) for v in self.names]
        out = {}
        for e, c in self.terms.items():
            f = [0] * len(names)
            for p, k in zip(pos, e):
                f[p] = k
            out[tuple(f)] = c
        return MultiPoly(names, out)

    def restrict(self, names: Sequence[str]) -> "MultiPoly":
        """Drop variables that do not occur; raises if a dropped one does."""
        names = tuple(names)
        keep = [self.names.index(v) for v in names]
        dropped = [i for i in range(self.nvars) if i not in keep]
        for i in dropped:
            if self.depends_on(i):
                raise ValueError(f"polynomial still depends on {self.names[i]}")
        return MultiPoly(names, {tuple(e[i] for i in keep): c for e, c in self.terms.items()})

    # Serialization -------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Graded reverse order: higher degree first, then lexicographically larger exponents."""
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def to_json(self) -> dict[str, str]:
        return {",".join(map(str, e)): rat_str(c) for e, c in self.sorted_terms()}

    @classmethod
    def from_json(cls, names, doc: Mapping[str, str]) -> "MultiPoly":
        return cls(names, {tuple(int(x) for x in k.split(",")): to_rat(v) for k, v in doc.items()})

    def to_text(self) -> str:
        """Expanded human-readable form, e.g. ``1/2*x1^2 - x1*x2 + 3``."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(self.names, e) if k
            )
            mag = abs(c)
            if not mono:
                body = rat_str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{rat_str(mag)}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for s, body in parts[1:]:
            text += f" {s} {body}"
        return text


def monomials(nvars: int, degree: int) -> list[Exponent]:
    """All exponents of the given total degree, in a fixed order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def coefficient_rows(polys: Sequence[MultiPoly]) -> tuple[list[Exponent], list[list[Fraction]]]:
    """Dense coefficient matrix over the union monomial frame (sorted)."""
    frame = sorted({e for p in polys for e in p.terms}, reverse=True)
    return frame, [[p.coefficient(e) for e in frame] for p in polys]


def span_basis(polys: Sequence[MultiPoly]) -> list[MultiPoly]:
    """Reduced-echelon basis of the linear span; canonical for a given span."""
    polys = list(polys)
    if not polys:
        return []
    names = polys[0].names
    degs = {p.degree() for p in polys if p}
    if len(degs) > 1 or not all(p.is_homogeneous() for p in polys):
        raise DegreeMismatch(f"span_basis needs homogeneous polynomials of one degree, got {sorted(degs)}")
    for p in polys:
        if p.names != names:
            raise ValueError("span_basis needs a shared variable list")
    if not degs:
        return []
    deg = degs.pop()
    frame = monomials(len(names), deg)
    R, _ = rref([[p.coefficient(e) for e in frame] for p in polys], len(frame))
    return [MultiPoly(names, dict(zip(frame, row))) for row in R]


def span_dimension(polys: Sequence[MultiPoly]) -> int:
    return len(span_basis(polys))


def spans_equal(first: Sequence[MultiPoly], second: Sequence[MultiPoly]) -> bool:
    """Exact equality of the two linear spans (via canonical reduced bases)."""
    return span_basis(first) == span_basis(second)


def span_contains(big: Sequence[MultiPoly], small: Sequence[MultiPoly]) -> bool:
    return span_dimension(list(big) + list(small)) == span_dimension(big)
