"""Bornologies: ideal axioms, duals, products, hom spaces.

Oracle notes: verdicts are compared against ground truth known at
construction time (a progression built with a positive step IS unbounded
above, etc.) [DERIVED].  The safety property throughout: a three-valued
verdict may abstain but must never be definitely wrong.
"""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sigmavect.bornology import (
    Verdict,
    agree_on_battery,
    all_subsets,
    bornology_from_record,
    finite_subsets,
    generate,
    hom_bornology,
    order_type_omega,
    perp,
    product_bornology,
    reverse_well_ordered,
    well_ordered,
)
from sigmavect.sets import DescribedSet
from sigmavect.universe import Integers, MonomialUniverse, Naturals, PairUniverse

Z = Integers()
N = Naturals()

NATS = DescribedSet.progression(Z, 0, 1)
NEG_NATS = DescribedSet.progression(Z, 0, -1)
EVENS = DescribedSet.progression(Z, 0, 2)
SMALL = DescribedSet.finite(Z, [-3, 0, 7])


def battery():
    return [
        SMALL,
        DescribedSet.finite(Z, []),
        NATS,
        NEG_NATS,
        EVENS,
        DescribedSet.grid(Z, 1, [3]),
        NATS.union(SMALL),
        NEG_NATS.union(EVENS),
    ]


def test_verdict_is_not_a_bool():
    with pytest.raises(TypeError):
        bool(Verdict.BOUNDED)


def test_basic_bornologies_on_ground_truth():
    assert finite_subsets(Z).is_bounded(SMALL) is Verdict.BOUNDED
    assert finite_subsets(Z).is_bounded(NATS) is Verdict.UNBOUNDED
    assert all_subsets(Z).is_bounded(NATS) is Verdict.BOUNDED
    assert well_ordered(Z).is_bounded(NATS) is Verdict.BOUNDED
    assert well_ordered(Z).is_bounded(NEG_NATS) is Verdict.UNBOUNDED
    assert reverse_well_ordered(Z).is_bounded(NEG_NATS) is Verdict.BOUNDED
    assert reverse_well_ordered(Z).is_bounded(NATS) is Verdict.UNBOUNDED
    assert order_type_omega(Z).is_bounded(EVENS) is Verdict.BOUNDED


def test_singletons_always_bounded():
    for b in (finite_subsets(Z), well_ordered(Z), order_type_omega(Z)):
        assert b.is_bounded(DescribedSet.finite(Z, [42])) is Verdict.BOUNDED


def test_ideal_downward_closure_on_battery():
    # every finite subset of a bounded battery set is bounded
    b = order_type_omega(Z)
    for s in battery():
        if b.is_bounded(s) is Verdict.BOUNDED:
            sub = DescribedSet.finite(Z, list(s.first_n(3)))
            assert b.is_bounded(sub) is Verdict.BOUNDED


def test_perp_decides_directions():
    # the dual of "order type omega" consists of the reverse-well-ordered sets
    d = perp(order_type_omega(Z))
    assert d.is_bounded(NEG_NATS) is Verdict.BOUNDED
    assert d.is_bounded(NATS) is Verdict.UNBOUNDED


def test_biperp_collapses_to_well_ordered():
    dd = perp(perp(order_type_omega(Z)))
    ok, bad = agree_on_battery(dd, well_ordered(Z), battery())
    assert ok, bad


def test_perp_rewrite_table():
    assert perp(finite_subsets(Z)).kind == "all"
    assert perp(all_subsets(Z)).kind == "finite"
    assert perp(well_ordered(Z)).kind == "rwo"
    assert perp(reverse_well_ordered(Z)).kind == "wo"
    assert perp(order_type_omega(Z)).kind == "rwo"


def test_triple_perp_collapse():
    b = generate(Z, [EVENS])
    assert perp(perp(perp(b))).to_record() == perp(b).to_record()


def test_generated_bornology_exact_verdicts():
    b = generate(Z, [EVENS, SMALL])
    assert b.is_bounded(EVENS) is Verdict.BOUNDED
    assert b.is_bounded(DescribedSet.finite(Z, [0, 2, 4])) is Verdict.BOUNDED
    # odds meet the generators finitely, hence definitely unbounded in b
    odds = DescribedSet.progression(Z, 1, 2)
    assert b.is_bounded(odds) is Verdict.UNBOUNDED


def test_perp_of_generated_is_exact():
    b = generate(Z, [EVENS])
    d = perp(b)
    odds = DescribedSet.progression(Z, 1, 2)
    assert d.is_bounded(odds) is Verdict.BOUNDED       # meets evens nowhere
    assert d.is_bounded(SMALL) is Verdict.BOUNDED      # finite
    assert d.is_bounded(EVENS) is Verdict.UNBOUNDED    # meets itself infinitely


# -- products and homs ----------------------------------------------------

NN = PairUniverse(N, N)


def _pair_cases():
    """(set, left projection finite?, right projection finite?) triples."""
    fin_pts = DescribedSet.finite(NN, [(0, 0), (2, 5)])
    col = DescribedSet.product(
        NN, DescribedSet.finite(N, [1]), DescribedSet.progression(N, 0, 1)
    )
    row = DescribedSet.product(
        NN, DescribedSet.progression(N, 0, 1), DescribedSet.finite(N, [2])
    )
    diag = DescribedSet.progression(NN, (0, 0), (1, 1))
    horiz = DescribedSet.progression(NN, (0, 3), (1, 0))
    return [
        (fin_pts, True, True),
        (col, True, False),
        (row, False, True),
        (diag, False, False),
        (horiz, False, True),
    ]


@pytest.mark.parametrize("fk,gk", [("finite", "finite"), ("finite", "all"),
                                   ("all", "finite"), ("all", "all")])
def test_product_bornology_never_wrong(fk, gk):
    kinds = {"finite": finite_subsets(N), "all": all_subsets(N)}
    pb = product_bornology(kinds[fk], kinds[gk], NN)
    for s, lf, rf in _pair_cases():
        truth = (lf or fk == "all") and (rf or gk == "all")
        v = pb.is_bounded(s)
        assert not (v is Verdict.BOUNDED and not truth), s.format()
        assert not (v is Verdict.UNBOUNDED and truth), s.format()


def test_product_bornology_decides_the_diagonal():
    # the diagonal is unbounded when either factor only bounds finite sets
    pb = product_bornology(finite_subsets(N), all_subsets(N), NN)
    diag = DescribedSet.progression(NN, (0, 0), (1, 1))
    assert pb.is_bounded(diag) is Verdict.UNBOUNDED


def test_hom_bornology_rectangles():
    # rectangle A x B is hom-bounded iff A is perp(f)-bounded and B is g-bounded
    f, g = all_subsets(N), finite_subsets(N)
    hb = hom_bornology(f, g, NN)
    fin_rect = DescribedSet.product(
        NN, DescribedSet.finite(N, [0, 1]), DescribedSet.finite(N, [5])
    )
    assert hb.is_bounded(fin_rect) is Verdict.BOUNDED
    wide = DescribedSet.product(
        NN, DescribedSet.progression(N, 0, 1), DescribedSet.finite(N, [5])
    )
    # perp(all) = finite, so an infinite left factor is definitely unbounded
    assert hb.is_bounded(wide) is Verdict.UNBOUNDED


def test_hom_bornology_graph_of_identity():
    # with f = finite and g = finite, the diagonal (graph of the identity)
    # is hom-bounded: every f-bounded set has finite image
    hb = hom_bornology(finite_subsets(N), finite_subsets(N), NN)
    diag = DescribedSet.progression(NN, (0, 0), (1, 1))
    assert hb.is_bounded(diag) is Verdict.BOUNDED


def test_record_roundtrip():
    for b in (finite_subsets(Z), all_subsets(Z), well_ordered(Z),
              reverse_well_ordered(Z), order_type_omega(Z),
              generate(Z, [EVENS])):
        assert bornology_from_record(b.to_record(), Z).to_record() == b.to_record()


@settings(max_examples=40, deadline=None)
@given(st.integers(-4, 4), st.integers(1, 4), st.integers(0, 1))
def test_random_progressions_never_misjudged(start, step, up):
    s = DescribedSet.progression(Z, start, step if up else -step)
    truth_wo = bool(up)  # increasing progressions are well ordered
    v = well_ordered(Z).is_bounded(s)
    assert not (v is Verdict.BOUNDED and not truth_wo)
    assert not (v is Verdict.UNBOUNDED and truth_wo)
