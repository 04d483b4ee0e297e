import random
from fractions import Fraction

import pytest

from mfvc.grading import make_grading_group
from mfvc.polyring import (
    Poly,
    QuotientRing,
    brute_force_piece_dim,
    family_factor,
    family_w,
    groebner,
    mono_key,
    normal_form,
    poly_x,
    poly_y,
)


def test_poly_arithmetic_exact():
    f = Poly({(1, 0): 1, (0, 1): -1})
    g = Poly({(1, 0): 1, (0, 1): 1})
    assert (f * g).terms == {(2, 0): 1, (0, 2): -1}
    assert (f + g).terms == {(1, 0): 2}
    assert not (f - f)
    h = Poly({(0, 0): Fraction(1, 3)})
    assert (3 * h).terms == {(0, 0): 1}


def test_degrevlex_order():
    # x > y, and higher total degree wins
    assert mono_key((1, 0)) > mono_key((0, 1))
    assert mono_key((0, 3)) > mono_key((2, 0))
    assert mono_key((2, 1)) > mono_key((1, 2))


def test_groebner_loop22_example():
    # (x, y*(x+y)) has reduced basis {x, y^2}
    f = family_factor("loop", 2, 2)  # x + y
    gb = groebner([poly_x(), poly_y() * f])
    assert sorted(g.lead()[0] for g in gb) == [(0, 2), (1, 0)]
    assert {frozenset(g.terms.items()) for g in gb} == {
        frozenset({(0, 2): Fraction(1)}.items()),
        frozenset({(1, 0): Fraction(1)}.items()),
    }


def test_groebner_unit_ideal():
    gb = groebner([Poly.constant(1)])
    assert len(gb) == 1 and gb[0].terms == {(0, 0): 1}


def test_groebner_chain34_example():
    # (y, x^3 + y^3) -> {y, x^3}, checked against a by-hand Buchberger run
    gb = groebner([poly_y(), Poly({(3, 0): 1, (0, 3): 1})])
    assert [g.terms for g in gb] == [{(0, 1): 1}, {(3, 0): 1}]


def test_normal_form_is_linear_projection():
    rng = random.Random(5)
    gb = groebner([Poly({(2, 0): 1, (0, 2): -1}), Poly({(1, 1): 1})])
    for _ in range(20):
        f = Poly({(rng.randint(0, 4), rng.randint(0, 4)): rng.randint(-3, 3) for _ in range(4)})
        g = Poly({(rng.randint(0, 4), rng.randint(0, 4)): rng.randint(-3, 3) for _ in range(4)})
        lhs = normal_form(f + g, gb)
        rhs = normal_form(f, gb) + normal_form(g, gb)
        assert lhs == rhs
        assert normal_form(normal_form(f, gb), gb) == normal_form(f, gb)


def test_groebner_idempotent_unique():
    gens = [family_w("loop", 3, 4), Poly({(1, 0): 1})]
    gb1 = groebner(gens)
    gb2 = groebner(list(reversed(gens)))
    assert gb1 == gb2
    assert groebner(gb1) == gb1


# ---------------------------------------------------------------------------
# graded pieces


def test_piece_loop22_y_class():
    g = make_grading_group("loop", 2, 2)
    q = QuotientRing(g, [poly_x(), poly_y(2)])
    basis = q.graded_piece_basis(g.y)
    assert [m for m, _ in basis] == [(0, 1)]


def test_piece_contains_one_in_class_zero():
    g = make_grading_group("chain", 3, 4)
    q = QuotientRing(g, [poly_x(1), poly_y(2)])
    basis = q.graded_piece_basis(g.zero)
    assert ((0, 0), 0) in basis


def test_piece_exceptional_vanishing_loop():
    # (S/(x, y^q))_{a*x} = 0 for 1 <= a <= p-2: Hom-vanishing pattern behind
    # the pairwise orthogonality of the x-axis objects
    for p, q in [(3, 3), (4, 3), (5, 6)]:
        g = make_grading_group("loop", p, q)
        q_ring = QuotientRing(g, [poly_x(), poly_y(q)])
        for a in range(1, p - 1):
            assert q_ring.graded_piece_basis(g.element(a, 0)) == []


def test_unbounded_piece_error():
    g = make_grading_group("loop", 3, 3)
    q = QuotientRing(g, [family_factor("loop", 3, 3)])
    assert not q.is_finite_dimensional()
    with pytest.raises(ValueError):
        q.graded_piece_basis(g.zero)
    # with a bound the enumeration is allowed
    assert ((0, 0), 0) in q.graded_piece_basis(g.zero, bound=9)


def test_brute_force_oracle_examples():
    g = make_grading_group("loop", 2, 2)
    assert brute_force_piece_dim(g, [poly_x(), poly_y(2)], g.zero, g.y, 6) == 1
    assert brute_force_piece_dim(g, [Poly.constant(1)], g.zero, g.y, 6) == 0
    # loop(3,3), ideal (x, y^3): class [x] is empty (a <= p-2, the range
    # the divisibility pattern covers), while class [2x] is spanned by y^2:
    # 2y = 2x exactly in L (x - y is 2-torsion here).
    g33 = make_grading_group("loop", 3, 3)
    assert brute_force_piece_dim(g33, [poly_x(), poly_y(3)], g33.zero, g33.element(1, 0), 10) == 0
    assert brute_force_piece_dim(g33, [poly_x(), poly_y(3)], g33.zero, g33.element(2, 0), 10) == 1


def test_brute_force_warns_when_bound_too_small():
    import warnings

    g = make_grading_group("loop", 3, 3)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        brute_force_piece_dim(g, [poly_x(9)], g.zero, g.zero, 4)
    assert any("staircase" in str(w.message) for w in caught)


def test_graded_piece_matches_oracle_randomized():
    rng = random.Random(2024)
    cases = 0
    while cases < 200:
        family = rng.choice(["loop", "chain", "bp"])
        p = rng.randint(2, 5)
        q = rng.randint(2, 5)
        g = make_grading_group(family, p, q)
        a = rng.randint(1, p)
        b = rng.randint(1, q)
        gens = [poly_x(a), poly_y(b)]
        if rng.random() < 0.5:
            gens.append(family_w(family, p, q))
        if rng.random() < 0.3:
            f = family_factor(family, p, q)
            if f is not None:
                gens.append(poly_x() * f if rng.random() < 0.5 else f)
        delta = g.element(rng.randint(-4, 4), rng.randint(-4, 4), rng.randint(-1, 1))
        ring = QuotientRing(g, gens)
        bound = 3 * p * q
        dim = len(ring.graded_piece_basis(delta, bound=bound))
        oracle = brute_force_piece_dim(g, gens, g.zero, delta, bound)
        assert dim == oracle, (family, p, q, [str(x) for x in gens], delta)
        cases += 1


# ---------------------------------------------------------------------------
# the divisibility facts behind every hom computation

from divisibility_utils import (  # noqa: E402
    chain_divisibility_counterexamples,
    loop_divisibility_counterexamples,
    loop_degree_zero_counterexamples,
)


@pytest.mark.parametrize("p", range(2, 7))
@pytest.mark.parametrize("q", range(2, 7))
def test_loop_divisibility_pattern(p, q):
    assert loop_divisibility_counterexamples(p, q) == []


@pytest.mark.parametrize("p", range(2, 7))
@pytest.mark.parametrize("q", range(2, 7))
def test_loop_degree_zero_pattern(p, q):
    assert loop_degree_zero_counterexamples(p, q) == []


@pytest.mark.parametrize("p", range(2, 7))
@pytest.mark.parametrize("q", range(2, 7))
def test_chain_divisibility_pattern(p, q):
    assert chain_divisibility_counterexamples(p, q) == []
