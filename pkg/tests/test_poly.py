import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cpcheck.errors import DivisionByZero, MissingVariable, SortError, UnsupportedConstruct
from cpcheck.poly import (
    ZERO, Add, ArithInterner, Cast, Const, DivConst, IntVar, Monomial, Mul, Neg, Polynomial,
    RealVar, Sub, certify_poly_eq, denote, expr_type, poly_add, poly_mul, poly_neg,
    poly_scale, poly_to_expr, term_to_arith, to_poly,
)
from cpcheck.smtlib import parse_script
from cpcheck.terms import App, Var, REAL

import gen

F = Fraction
x0, x1, x2 = Polynomial.var(0), Polynomial.var(1), Polynomial.var(2)
ONE = Polynomial.const(1)


def P(*pairs):
    return Polynomial.from_terms(pairs)


def scaled_pair():
    # x, y : Int and z : Real;  1 * (x + y) * z / 4  versus  1 / (2 * 2) * (z * y + x * z)
    x, y, z = IntVar(0), IntVar(1), RealVar(0)
    lhs = DivConst(Mul(Mul(Const(1), Cast(Add(x, y))), z), 4)
    rhs = Mul(DivConst(Const(1), 4), Add(Mul(z, Cast(y)), Mul(Cast(x), z)))
    return lhs, rhs


class TestPolyOps:
    def test_like_terms(self):
        assert poly_add(poly_scale(x0, 2), poly_scale(x0, 3)) == poly_scale(x0, 5)

    def test_cancellation(self):
        assert poly_add(x0, poly_neg(x0)) == ZERO
        assert not poly_add(x0, poly_neg(x0))

    def test_length_lex_order(self):
        p = poly_add(P((1, (0, 1)), (1, ())), x2)
        assert [m.vars for m in p.monos] == [(), (2,), (0, 1)]
        assert p.is_canonical()

    def test_mul_examples(self):
        assert poly_mul(poly_scale(x0, 2), poly_scale(x1, 3)) == P((6, (0, 1)))
        assert poly_mul(poly_add(x0, ONE), poly_add(x0, poly_neg(ONE))) == P((1, (0, 0)), (-1, ()))
        assert poly_mul(ZERO, poly_add(x0, ONE)) == ZERO

    def test_zero_scale(self):
        assert poly_scale(x0, 0) == ZERO

    def test_str(self):
        assert str(P((1, (0,)), (F(-1, 2), (0, 1)))) == "x0 + -1/2*x0*x1"
        assert str(ZERO) == "0"


class TestToPoly:
    def test_scaled_product(self):
        lhs, rhs = scaled_pair()
        assert to_poly(lhs) == to_poly(rhs)
        # (1/4) x z + (1/4) y z with x, y at even indices 0, 2 and z at odd index 1
        assert to_poly(lhs) == P((F(1, 4), (0, 1)), (F(1, 4), (1, 2)))

    def test_small(self):
        assert to_poly(Const(0)) == ZERO
        assert to_poly(Neg(IntVar(0))) == P((-1, (0,)))

    def test_index_parity(self):
        assert to_poly(IntVar(3)) == Polynomial.var(6)
        assert to_poly(RealVar(3)) == Polynomial.var(7)


class TestDenote:
    def test_scaled_values(self):
        lhs, rhs = scaled_pair()
        assert denote(lhs, [2, 3], [4]) == 5 == denote(rhs, [2, 3], [4])

    def test_const_and_var(self):
        assert denote(Const(F(7, 2)), [], []) == F(7, 2)
        assert denote(IntVar(0), [-3], []) == F(-3)

    def test_missing_variable(self):
        with pytest.raises(MissingVariable) as ei:
            denote(RealVar(2), [], [1])
        assert ei.value.index == 5
        with pytest.raises(MissingVariable):
            to_poly(IntVar(1)).denote({}, {})


class TestCertify:
    def test_scaled(self):
        assert certify_poly_eq(*scaled_pair()).equal

    def test_off_by_one(self):
        c = certify_poly_eq(RealVar(0), Add(RealVar(0), Const(1)))
        assert not c.equal and c.difference == P((-1, ()))

    def test_distributivity(self):
        a, b, c = RealVar(0), RealVar(1), RealVar(2)
        assert certify_poly_eq(Mul(a, Add(b, c)), Add(Mul(a, b), Mul(a, c))).equal

    def test_int_real_distinct(self):
        # x0 the Int and x0 the Real are different variables
        assert not certify_poly_eq(Cast(IntVar(0)), RealVar(0)).equal


class TestTyping:
    def test_mixed_rejected(self):
        with pytest.raises(SortError):
            certify_poly_eq(Add(IntVar(0), RealVar(0)), Const(0))

    def test_cast_of_real_rejected(self):
        with pytest.raises(SortError):
            expr_type(Cast(RealVar(0)))

    def test_div_at_int_rejected(self):
        with pytest.raises(SortError):
            expr_type(Add(IntVar(0), DivConst(IntVar(1), 2)))

    def test_div_by_zero(self):
        with pytest.raises(DivisionByZero):
            DivConst(RealVar(0), 0)

    def test_constants_adapt(self):
        assert expr_type(Const(3)) is None
        assert expr_type(Add(IntVar(0), Const(3))) == "int"
        assert expr_type(Const(F(1, 2))) == "real"


# -- properties ---------------------------------------------------------------

def canonical_polys():
    mono = st.tuples(st.fractions(max_denominator=6).filter(lambda f: abs(f) < 50),
                     st.lists(st.integers(0, 5), max_size=3).map(sorted))
    return st.lists(mono, max_size=5).map(lambda ps: P(*ps))


def ctx_for(rng):
    return {i: gen.rand_rat(rng, 9, 5) for i in range(6)}


def pden(p, vals):
    # evaluate with a flat index -> value map
    total = F(0)
    for m in p.monos:
        v = m.coeff
        for i in m.vars:
            v *= vals[i]
        total += v
    return total


@given(canonical_polys(), canonical_polys(), gen.seeds)
def test_add_mul_homomorphism(p, q, seed):
    rng = random.Random(seed)
    vals = ctx_for(rng)
    s, m = poly_add(p, q), poly_mul(p, q)
    assert s.is_canonical() and m.is_canonical()
    assert pden(s, vals) == pden(p, vals) + pden(q, vals)
    assert pden(m, vals) == pden(p, vals) * pden(q, vals)
    assert pden(poly_neg(p), vals) == -pden(p, vals)
    assert pden(poly_scale(p, F(1, 3)), vals) == pden(p, vals) / 3


@given(canonical_polys(), canonical_polys(), canonical_polys())
def test_ring_laws(p, q, r):
    assert poly_add(p, q) == poly_add(q, p)
    assert poly_mul(p, q) == poly_mul(q, p)
    assert poly_mul(p, poly_add(q, r)) == poly_add(poly_mul(p, q), poly_mul(p, r))
    assert poly_mul(poly_mul(p, q), r) == poly_mul(p, poly_mul(q, r))


@settings(max_examples=200)
@given(gen.seeds)
def test_to_poly_sound_and_canonical(seed):
    rng = random.Random(seed)
    e = gen.rand_arith(rng, 5, 4)
    p = to_poly(e)
    assert p.is_canonical()
    for _ in range(10):
        ictx, rctx = gen.rand_contexts(rng, 4)
        assert p.denote(ictx, rctx) == denote(e, ictx, rctx)
        assert denote(poly_to_expr(p), ictx, rctx) == denote(e, ictx, rctx)
    assert to_poly(poly_to_expr(p)) == p


@settings(max_examples=200)
@given(gen.seeds)
def test_perturbation_certified(seed):
    rng = random.Random(seed)
    e = gen.rand_arith(rng, 5, 4)
    assert certify_poly_eq(e, gen.perturb(rng, e)).equal


@settings(max_examples=200)
@given(gen.seeds)
def test_difference_is_witness(seed):
    rng = random.Random(seed)
    e1, e2 = gen.rand_arith(rng, 4, 3), gen.rand_arith(rng, 4, 3)
    cert = certify_poly_eq(e1, e2)
    ictx, rctx = gen.rand_contexts(rng, 3)
    assert cert.difference.denote(ictx, rctx) == denote(e1, ictx, rctx) - denote(e2, ictx, rctx)
    assert cert.equal == (not cert.difference)


class TestTermConversion:
    def test_interning_shares_atoms(self):
        s = parse_script("(declare-const x Real)(declare-fun f (Real) Real)"
                         "(assert (= (* (f x) 2.0) (+ (f x) (f x))))")
        lhs, rhs = s.assertions[0].args
        it = ArithInterner()
        assert certify_poly_eq(term_to_arith(lhs, it), term_to_arith(rhs, it)).equal
        assert it.reals == {App(s.fun_decls[0], (Var("x", REAL),)): 0}

    def test_non_arith_rejected(self):
        s = parse_script("(declare-const p Bool)(assert p)")
        with pytest.raises(UnsupportedConstruct):
            ArithInterner().atom(s.assertions[0], s.assertions[0].sort)

    def test_nary_and_unary(self):
        s = parse_script("(declare-const x Int)(assert (= (- x x x) (- x)))")
        lhs, rhs = s.assertions[0].args
        it = ArithInterner()
        assert certify_poly_eq(term_to_arith(lhs, it), term_to_arith(rhs, it)).equal


def test_monomial_str():
    assert str(Monomial(F(-1), (0,))) == "-x0"
    assert str(Monomial(F(3), ())) == "3"
    assert Sub(RealVar(0), RealVar(0)) != Add(RealVar(0), RealVar(0))
