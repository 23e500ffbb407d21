import random
from fractions import Fraction

import pytest

from pinvkit.errors import InputError
from pinvkit.exact import (
    QMatrix,
    QVector,
    cond_sq_exact,
    frob_norm_sq,
    lsq_exact,
    pinv_exact,
)
from pinvkit.family import (
    Gap,
    closed_forms,
    gap_table,
    make_family_point,
    separation_check,
)


def test_reference_point():
    pt = make_family_point(3, 2, Fraction(1, 2))
    assert pt.A == QMatrix.from_rows([[1, 0], [0, Fraction(1, 2)], [0, 0]])
    assert pt.b == QVector.of(1, 1, 0)


def test_degenerate_point():
    pt = make_family_point(2, 2, 0)
    assert pt.A == QMatrix.from_rows([[1, 0], [0, 0]])
    assert pt.b == QVector.of(1, 1)


def test_wide_point_appends_zero_columns():
    pt = make_family_point(4, 3, 1)
    assert pt.A.shape() == (4, 3)
    assert all(pt.A.at(i, 2).is_zero() for i in range(4))
    assert all(pt.A.at(3, j).is_zero() for j in range(3))
    assert frob_norm_sq(pt.A) == 2


def test_rejects_small_dims_and_negative_eps():
    with pytest.raises(InputError):
        make_family_point(1, 2, Fraction(1, 2))
    with pytest.raises(InputError):
        make_family_point(2, 2, Fraction(-1))


def test_closed_forms_at_one_half():
    cf = closed_forms(make_family_point(3, 2, Fraction(1, 2)))
    assert cf.pinv == QMatrix.from_rows([[1, 0, 0], [0, 2, 0]])
    assert cf.kappa_sq == Fraction(25, 4)
    assert cf.psi_lsq_sq == 0
    assert cf.xhat == QVector.of(1, 2)


def test_closed_forms_at_zero():
    cf = closed_forms(make_family_point(2, 2, 0))
    assert cf.psi_lsq_sq == 1
    assert cf.xhat == QVector.of(1, 0)
    assert cf.kappa_sq == 1
    assert cf.g_norm_sq == 1


def test_closed_forms_blow_up_at_tiny_eps():
    cf = closed_forms(make_family_point(3, 2, Fraction(1, 1 << 10)))
    assert cf.g_norm_sq == 1 + (1 << 20)


def test_closed_forms_agree_with_exact_core():
    rng = random.Random(71)
    eps_values = [Fraction(0), Fraction(1), Fraction(1, 2)]
    eps_values += [Fraction(1, 1 << k) for k in range(2, 25)]
    eps_values += [
        Fraction(rng.randint(1, 40), rng.randint(1, 40)) for _ in range(24)
    ]
    assert len(eps_values) >= 50
    for eps in eps_values:
        for dims in ((2, 2), (3, 2), (4, 3)):
            pt = make_family_point(dims[0], dims[1], eps)
            cf = closed_forms(pt)
            assert cf.pinv == pinv_exact(pt.A)
            assert cf.g_norm_sq == frob_norm_sq(cf.pinv)
            xhat, residual_sq = lsq_exact(pt.A, pt.b)
            assert cf.xhat == xhat
            assert cf.psi_lsq_sq == residual_sq
            assert cf.psi_norm_sq == xhat.norm_sq()
            assert cf.kappa_sq == cond_sq_exact(pt.A)


def test_domain_containment_for_small_eps():
    for k in range(0, 21):
        pt = make_family_point(3, 2, Fraction(1, 1 << k))
        assert frob_norm_sq(pt.A) <= 2
        assert pt.b.norm_sq() == 2


def test_gap_values_match_stated_growth():
    rows = gap_table(5)
    assert [row.gaps["g_inv"].exact_value() for row in rows] == [2, 4, 8, 16, 32]
    assert rows[2].gaps["g_inv"].exact_value() == 8
    assert all(row.gaps["psi_lsq"].exact_value() == 1 for row in rows)
    assert rows[0].gaps["kappa"].exact_value() == Fraction(3, 2)
    # kappa at eps = 2^-n is exactly 2^n + 2^-n: perfect-square radicand.
    assert rows[3].gaps["kappa"].exact_value() == 16 + Fraction(1, 16) - 1


def test_gap_irrational_entries_bound_exactly():
    row = gap_table(1)[0]
    g = row.gaps["g_norm"]
    assert g.exact_value() is None
    assert g.radicand == 5
    assert g.at_least(Fraction(1))
    assert not g.at_least(Fraction(3, 2))  # sqrt(5) - 1 = 1.236...
    lb = g.lower_bound(30)
    assert lb >= 1
    assert (lb + 1) ** 2 <= 5


def test_gap_table_rejects_non_positive():
    with pytest.raises(InputError):
        gap_table(0)


def test_separation_check_all_functions():
    assert separation_check(20)
    assert separation_check(20, ("g_inv",))
    assert separation_check(20, ("psi_lsq",))
    assert separation_check(1, ("kappa",))


def test_separation_check_unknown_function():
    with pytest.raises(InputError):
        separation_check(3, ("nonsense",))


def test_gap_growth_beats_linear_thresholds():
    for row in gap_table(20):
        n = row.n
        assert row.gaps["g_inv"].exact_value() == 1 << n
        assert row.gaps["psi_sol"].exact_value() == 1 << n
        for name in ("g_norm", "psi_norm", "kappa"):
            assert row.gaps[name].at_least(Fraction(n))


def test_gap_render_forms():
    assert Gap(Fraction(4)).render() == "2"
    assert Gap(Fraction(25, 4), Fraction(-1)).render() == "3/2"
    assert Gap(Fraction(5), Fraction(-1)).render() == "sqrt(5)-1"
