import itertools
import json

import pytest

from thoma2.poset import Poset, chain_poset, ordinal
from thoma2.twocat import (CellError, ChainTwoCategory, CoDual, ExplicitTwoCategory, Product,
                           TwoFunctor, check_iso, check_local_orders, full_sub, materialize,
                           oriental, product_with_interval, terminal, two_functors,
                           validate_two_category, walking_2cell)


def oracle_oriental_counts(n):
    """(objects, 1-cells, 2-cells) of the n-th oriental by counting interior subsets."""
    arrows = cells = 0
    for x in range(n + 1):
        for y in range(x, n + 1):
            inner = max(0, y - x - 1)
            arrows += 2 ** inner if y > x else 1
            # pairs T subset S of the interior, one 2-cell S-chain => T-chain
            cells += 3 ** inner if y > x else 1
    return n + 1, arrows, cells


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_oriental_counts_and_laws(n):
    C = oriental(n)
    assert C.cell_counts() == oracle_oriental_counts(n)
    assert validate_two_category(C).ok


def test_generating_cell_direction():
    # the 2-cell of oriental(2) goes from the finer chain to the coarser one
    C = oriental(2)
    assert C.cells((0, 1, 2), (0, 2)) == [((0, 1, 2), (0, 2))]
    assert C.cells((0, 2), (0, 1, 2)) == []
    assert C.comp((1, 2), (0, 1)) == (0, 1, 2)


@pytest.mark.parametrize("make", [terminal, walking_2cell,
                                  lambda: materialize(oriental(2)),
                                  lambda: CoDual(oriental(2)),
                                  lambda: Product(walking_2cell(), oriental(1)),
                                  lambda: product_with_interval(oriental(1)),
                                  lambda: ChainTwoCategory(chain_poset(ordinal(1))),
                                  lambda: full_sub(oriental(3), [0, 2, 3])])
def test_constructions_satisfy_the_axioms(make):
    rep = validate_two_category(make())
    assert rep.ok, rep.summary()


def test_local_orders_of_chain_model():
    assert check_local_orders(oriental(3)).ok


def test_product_counts():
    P = Product(walking_2cell(), oriental(1))
    w, o = walking_2cell().cell_counts(), oriental(1).cell_counts()
    assert P.cell_counts() == tuple(a * b for a, b in zip(w, o))


def test_composition_errors_are_typed():
    C = oriental(2)
    with pytest.raises(CellError):
        C.comp((0, 1), (1, 2))
    with pytest.raises(CellError):
        walking_2cell().comp("f", "g")


def test_json_round_trip():
    C = materialize(oriental(2))
    D = ExplicitTwoCategory.from_json(json.loads(json.dumps(C.to_json())))
    assert D.cell_counts() == C.cell_counts()
    assert validate_two_category(D).ok


@pytest.mark.parametrize("name", ["comp_table", "vcomp_table", "wpost_table", "wpre_table"])
def test_every_single_table_corruption_is_caught(name):
    base = materialize(oriental(2))
    table = getattr(base, name)
    pool = base.all_arrows() if name == "comp_table" else base.all_cells()
    missed = []
    for key in sorted(table, key=repr):
        for new in pool:
            if new == table[key]:
                continue
            C = base.copy()
            getattr(C, name)[key] = new
            rep = validate_two_category(C)
            if rep.ok:
                missed.append((key, new))
            break  # one wrong value per entry keeps the test quick
    assert not missed


def test_two_functor_counts_against_oracles():
    # 2-functors out of [1] pick a 1-cell; out of the walking 2-cell they pick a 2-cell
    for C in (oriental(2), walking_2cell(), terminal(), oriental(3)):
        assert len(two_functors(oriental(1), C)) == len(C.all_arrows())
        assert len(two_functors(walking_2cell(), C)) == len(C.all_cells())
    for F in two_functors(walking_2cell(), oriental(2)):
        assert F.validate().ok


def test_functor_between_orientals_is_monotone_on_objects():
    # 2-functors oriental(2) -> oriental(1) are determined by monotone maps on objects
    monotone = [m for m in itertools.product(range(2), repeat=3)
                if all(m[i] <= m[i + 1] for i in range(2))]
    assert len(two_functors(oriental(2), oriental(1))) == len(monotone)


def test_check_iso():
    C = oriental(2)
    assert check_iso(TwoFunctor.identity(C)).ok
    collapse = TwoFunctor(C, terminal(), lambda x: 0, lambda f: (0, 0),
                          lambda a: ((0, 0), (0, 0)), "!")
    assert collapse.validate().ok
    assert not check_iso(collapse).ok


def test_functor_validation_locates_errors():
    C = oriental(2)
    F = TwoFunctor(C, C, lambda x: x, lambda f: (0, 2) if f == (0, 1, 2) else f,
                   lambda a: a, "bad")
    rep = F.validate()
    assert not rep.ok
    assert "comp" in rep.failed_checks()


def test_chain_model_on_nonlinear_poset():
    P = Poset(["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    C = ChainTwoCategory(P)
    assert len(C.arrows("a", "d")) == 3  # (a,d), (a,b,d), (a,c,d)
    assert validate_two_category(C).ok
