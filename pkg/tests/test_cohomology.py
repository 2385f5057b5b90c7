import pytest

from helpers import poly
from torusgit.chambers import chamber_of, enumerate_chambers
from torusgit.cohomology import (
    EmptyQuotient,
    InverseSystem,
    NotProjective,
    admissible_span_U,
    apolar_action,
    hilbert_function,
    hypertoric_betti,
    hypertoric_system,
    is_level,
    operator_names,
    socle_dimensions,
    toric_betti,
    verify_injectivity,
)
from torusgit.polynomials import MultiPoly, chi_names, spans_equal


def op(text, k):
    return poly(text.replace("y", "x"), k).rename(operator_names(k))


class TestApolarAction:
    def test_first_derivative(self, cfg_b):
        P = poly("(x1+x2+x3)**2/2", 3)
        assert apolar_action(op("y1", 1), P, cfg_b.kernel) == poly("3*(x1+x2+x3)", 3)

    def test_second_derivative(self, cfg_b):
        P = poly("(x1+x2+x3)**2/2", 3)
        assert apolar_action(op("y1**2", 1), P, cfg_b.kernel) == poly("9", 3)

    def test_constant(self, cfg_b):
        assert not apolar_action(op("y1", 1), poly("5", 3), cfg_b.kernel)

    def test_operator_arity_checked(self, cfg_b):
        with pytest.raises(ValueError):
            apolar_action(op("y1*y2", 2), poly("x1", 3), cfg_b.kernel)


class TestHilbert:
    def test_cfg_b_toric(self, cfg_b):
        ch = chamber_of(cfg_b, (1, 1, 1))
        assert toric_betti(cfg_b, ch) == [1, 1, 1]

    def test_cfg_c_toric(self, cfg_c):
        assert toric_betti(cfg_c, chamber_of(cfg_c, (0, 1, 1, 0))) == [1, 1, 1]
        assert toric_betti(cfg_c, chamber_of(cfg_c, (1, 1, 1, 1))) == [1, 2, 1]

    def test_cfg_c_hypertoric(self, cfg_c):
        assert hypertoric_betti(cfg_c) == [1, 2, 2]
        assert hypertoric_betti(cfg_c, (0, 1, 1, 0)) == [1, 2, 2]

    def test_zero_system(self, cfg_c):
        S = InverseSystem([MultiPoly.zero(chi_names(4))], cfg_c.kernel, 2)
        assert hilbert_function(S) == [0, 0, 0]

    def test_empty_toric_quotient(self, cfg_a):
        # chamber "-" of CFG-A has an empty Delta
        minus = next(c for c in enumerate_chambers(cfg_a) if c.signs == (-1,))
        with pytest.raises(EmptyQuotient):
            toric_betti(cfg_a, minus)

    def test_first_betti_is_corank(self, corpus):
        for cfg in corpus:
            assert hypertoric_betti(cfg)[1] == cfg.n - cfg.d


class TestSocle:
    def test_cfg_a(self, cfg_a):
        S = hypertoric_system(cfg_a)
        assert socle_dimensions(S) == [0, 1] and is_level(S)

    def test_cfg_c(self, cfg_c):
        S = hypertoric_system(cfg_c)
        assert socle_dimensions(S) == [0, 0, 2] and is_level(S)

    def test_non_level_fixture(self):
        # W = {x1^2, x2}: y2 kills x1^2 and sends x2 to 1, so y2 is a degree-1 socle class
        names = chi_names(2)
        W = [poly("x1**2", 2), MultiPoly.var(names, 1)]
        S = InverseSystem(W, [[1, 0], [0, 1]])
        assert hilbert_function(S) == [1, 2, 1]
        assert socle_dimensions(S) == [0, 1, 1]
        assert not is_level(S)

    def test_homogeneous_single_generator_is_level(self):
        S = InverseSystem([poly("x1**2", 2)], [[1, 0], [0, 1]])
        assert socle_dimensions(S) == [0, 0, 1]


class TestSpanU:
    def test_cfg_a(self, cfg_a):
        assert spans_equal(admissible_span_U(cfg_a, (1, 1)), [poly("x1+x2", 2)])
        assert spans_equal(admissible_span_U(cfg_a, (-1, -1)), [poly("x1+x2", 2)])

    def test_cfg_c(self, cfg_c):
        assert len(admissible_span_U(cfg_c, (0, 1, 1, 0))) == 2

    def test_chamber_independence(self, corpus):
        for cfg in corpus[:12]:
            chambers = enumerate_chambers(cfg)
            first = admissible_span_U(cfg, chambers[0].representative)
            for ch in chambers[1:]:
                assert admissible_span_U(cfg, ch.representative) == first


class TestInjectivity:
    def test_cfg_a(self, cfg_a):
        v = verify_injectivity(cfg_a)
        assert v.equal and v.U_dim == v.V_dim == 1

    def test_cfg_c(self, cfg_c):
        v = verify_injectivity(cfg_c)
        assert v.equal and v.U_dim == v.V_dim == 2 and v.chamber_count == 6

    def test_cfg_d_not_projective(self, cfg_d):
        with pytest.raises(NotProjective):
            verify_injectivity(cfg_d)
        with pytest.raises(NotProjective):
            hypertoric_betti(cfg_d)

    def test_non_invariant_polynomial_rejected(self, cfg_a):
        with pytest.raises(ValueError):
            InverseSystem.for_configuration(cfg_a, [poly("x1", 2)])
