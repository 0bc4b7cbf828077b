import numpy as np
import pytest

from conftest import field, variety
from grasscode.errors import SpecParseError
from grasscode.grassmann import ProjSystem, subspace_of_point
from grasscode.indices import enumerate_index_tuples, index_positions
from grasscode.linalg import Mat, row_space_equal, zeros
from grasscode.sections import (
    bruhat_cell_of,
    cell_histogram,
    combinatorial_dimension,
    contraction_matrix,
    enumerate_variety,
    is_isotropic,
    isotropic_count,
    lagrangian_count,
    linear_hull,
    make_spec,
    parse_variety_spec,
    pi_forms,
    schubert_count,
    schubert_member_flag,
    schubert_member_plucker,
    schubert_union_count,
    symplectic_form,
    verify_ffn,
)


def test_spec_parse_and_serialize():
    for text in [
        "grassmann:2,4",
        "schubert:2,4:2,4",
        "union:2,4:1,4;2,3",
        "elambda:2,4:1,2;1,3",
        "lagrangian:2",
        "isotropic:2,3",
        "lag-schubert:2:2,4",
        "lag-union:2:2,4;1,4",
    ]:
        spec = parse_variety_spec(text)
        assert parse_variety_spec(spec.serialize()) == spec

    for bad in ["nope:1", "schubert:2,4", "lagrangian:2,4", "grassmann:0,4", "schubert:2,4:4,5"]:
        with pytest.raises(SpecParseError):
            parse_variety_spec(bad)


def test_symplectic_form_shape():
    for q in (2, 3):
        f = field(q)
        for n in (2, 3):
            form = symplectic_form(n, f)
            gram = form.gram.a
            assert gram.shape == (2 * n, 2 * n)
            assert form.gram.rank() == 2 * n
            assert not gram.diagonal().any()
            assert np.array_equal(gram, f.neg_arr(gram.T))
            for i in range(1, n + 1):
                assert gram[i - 1, 2 * n - i] == 1


def test_is_isotropic_examples():
    f3 = field(3)
    for n in (2, 3):
        form = symplectic_form(n, f3)
        eye = np.eye(2 * n, dtype=np.int64)
        assert is_isotropic(Mat(f3, eye[:n]), form)
        assert not is_isotropic(Mat(f3, eye[[0, 2 * n - 1]]), form)
        for v in ([1] * 2 * n, [2, 1] + [0] * (2 * n - 2)):
            assert is_isotropic(Mat(f3, [v]), form)


def test_contraction_n2():
    for q in (2, 3):
        c = contraction_matrix(2, field(q))
        assert c.a.tolist() == [[0, 0, 1, 1, 0, 0]]  # X14 + X23


def test_contraction_n3_columns():
    pos3 = index_positions(3, 6)
    pos1 = index_positions(1, 6)
    for q in (2, 3):
        c = contraction_matrix(3, field(q)).a
        assert c.shape == (6, 20)
        # no symplectic pair inside (1,2,3): the column vanishes
        assert not c[:, pos3[(1, 2, 3)]].any()
        # (1,2,6) contracts onto e_2 with the sign of moving (1,6) to the front
        col = c[:, pos3[(1, 2, 6)]]
        assert col[pos1[(2,)]] == field(q).from_int(-1)
        assert np.count_nonzero(col) == 1


def test_pi_forms_n2():
    for q in (2, 3):
        assert pi_forms(2, field(q)).a.tolist() == [[0, 0, 1, 1, 0, 0]]


def test_pi_forms_n3():
    f2 = field(2)
    pi = pi_forms(3, f2)
    assert pi.shape == (6, 20)
    pos3 = index_positions(3, 6)
    pos1 = index_positions(1, 6)
    row = pi.a[pos1[(2,)]]
    expected = np.zeros(20, dtype=np.int64)
    expected[pos3[(1, 2, 6)]] = 1  # i=1 term
    expected[pos3[(2, 3, 4)]] = 1  # i=3 term; the i=2 term dies on a repeated index
    assert np.array_equal(row, expected)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", [2, 3])
def test_contraction_kernel_equals_pi_zero_set(n, q):
    f = field(q)
    cmat = contraction_matrix(n, f)
    pimat = pi_forms(n, f)
    assert cmat.right_kernel() == pimat.right_kernel()


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", [2, 3])
def test_lagrangian_counts(n, q):
    system = variety(f"lagrangian:{n}", q)
    assert len(system.points) == lagrangian_count(n, q)


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", [2, 3])
def test_isotropic_counts_and_lagrangian_match(n, q):
    for ell in range(1, n + 1):
        system = variety(f"isotropic:{ell},{n}", q)
        assert len(system.points) == isotropic_count(ell, n, q)
    assert set(variety(f"isotropic:{n},{n}", q).points) == set(
        variety(f"lagrangian:{n}", q).points
    )


def test_isotropic_form_count_matches_codimension():
    # the contraction provides C(2n, l-2) forms for the section
    from math import comb

    for q in (2, 3):
        for n, ell in [(2, 2), (3, 2), (3, 3)]:
            system = variety(f"isotropic:{ell},{n}", q)
            assert system.defining_forms.rows == comb(2 * n, ell - 2)
            assert system.defining_forms.rank() == comb(2 * n, ell - 2)


@pytest.mark.parametrize("q", [2, 3])
def test_schubert_membership_agreement_and_cell_sums(q):
    f = field(q)
    gsys = variety("grassmann:2,4", q)
    for lam in enumerate_index_tuples(2, 4):
        members = 0
        for point in gsys.points:
            basis = subspace_of_point(point, 2, 4, f)
            by_plucker = schubert_member_plucker(point, lam, 2, 4)
            by_flag = schubert_member_flag(basis, lam)
            assert by_plucker == by_flag
            members += by_plucker
        assert members == schubert_count(lam, 4, q)
        assert len(variety(f"schubert:2,4:{','.join(map(str, lam))}", q).points) == members


def test_schubert_examples():
    assert len(variety("schubert:2,4:2,4", 2).points) == 19
    assert schubert_count((2, 4), 4, 2) == 19
    # maximal lambda: the whole Grassmannian
    assert len(variety("schubert:2,4:3,4", 2).points) == 35
    assert len(variety("schubert:2,4:1,2", 2).points) == 1


@pytest.mark.parametrize("q", [2, 3])
def test_schubert_union_counts(q):
    from itertools import combinations

    tuples = enumerate_index_tuples(2, 4)
    for lam1, lam2 in combinations(tuples, 2):
        spec = f"union:2,4:{','.join(map(str, lam1))};{','.join(map(str, lam2))}"
        system = variety(spec, q)
        assert len(set(system.points)) == len(system.points)
        assert len(system.points) == schubert_union_count([lam1, lam2], 4, q)


def test_schubert_union_count_examples():
    assert schubert_union_count([(1, 4), (2, 3)], 4, 2) == 11
    assert schubert_union_count([(3, 4)], 4, 2) == 35
    assert schubert_union_count([(2, 4)], 4, 2) == 19


def test_elambda_example():
    system = variety("elambda:2,4:1,2;1,3", 2)
    assert len(system.points) == 11
    assert verify_ffn(system)
    pos = index_positions(2, 4)
    for point in system.points:
        assert point[pos[(1, 2)]] == 0 and point[pos[(1, 3)]] == 0


def test_elambda_all_coordinates_is_empty():
    all_tuples = enumerate_index_tuples(2, 4)
    system = enumerate_variety(make_spec("elambda", 2, 4, all_tuples), field(2))
    assert len(system.points) == 0


def test_linear_hull_examples():
    f2 = field(2)
    gsys = variety("grassmann:2,4", 2)
    dim, forms = linear_hull(gsys)
    assert dim == 6 and forms.rows == 0

    lsys = variety("lagrangian:2", 2)
    dim, forms = linear_hull(lsys)
    assert dim == 5
    assert row_space_equal(forms, pi_forms(2, f2))

    single = ProjSystem(f2, 6, [gsys.points[0]], zeros(f2, 0, 6), ell=2, m=4)
    assert linear_hull(single)[0] == 1

    with pytest.raises(ValueError):
        linear_hull(ProjSystem(f2, 6, [], zeros(f2, 0, 6)))


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("n", [2, 3])
def test_ffn_lagrangian(n, q):
    assert verify_ffn(variety(f"lagrangian:{n}", q))


def test_ffn_grassmann_trivial():
    assert verify_ffn(variety("grassmann:2,4", 2))


def test_lag_schubert():
    # hand count for lam=(2,4) over GF(2): cells (1,2), (1,3), (2,4) meet the
    # Lagrangian with 1 + 2 + 4 points; cells (1,4) and (2,3) never do
    system = variety("lag-schubert:2:2,4", 2)
    assert len(system.points) == 7
    lag = set(variety("lagrangian:2", 2).points)
    sch = set(variety("schubert:2,4:2,4", 2).points)
    assert set(system.points) == lag & sch
    assert combinatorial_dimension(system) == 2


@pytest.mark.parametrize("q", [2, 3])
def test_lag_schubert_is_lagrangian_cap_schubert(q):
    lag = set(variety("lagrangian:2", q).points)
    for lam in enumerate_index_tuples(2, 4):
        lam_str = ",".join(map(str, lam))
        got = set(variety(f"lag-schubert:2:{lam_str}", q).points)
        sch = set(variety(f"schubert:2,4:{lam_str}", q).points)
        assert got == lag & sch


def test_lag_union_is_set_union():
    union = variety("lag-union:2:2,4;1,4", 2)
    a = set(variety("lag-schubert:2:2,4", 2).points)
    b = set(variety("lag-schubert:2:1,4", 2).points)
    assert set(union.points) == a | b
    # every declared form vanishes on the union (validated at build time too)
    prods = union.field.matmul(union.defining_forms.a, union.point_matrix().a)
    assert not prods.any()


@pytest.mark.parametrize("q", [2, 3])
def test_lagrangian_cell_histogram(q):
    system = variety("lagrangian:2", q)
    hist = cell_histogram(system)
    assert hist == {(1, 2): 1, (1, 3): q, (2, 4): q**2, (3, 4): q**3}
    assert combinatorial_dimension(system) == 3


def test_bruhat_cell_of_matches_pivots():
    f2 = field(2)
    basis = Mat(f2, [[1, 0, 0, 0], [0, 1, 0, 0]])
    assert bruhat_cell_of(basis) == (1, 2)
    basis = Mat(f2, [[1, 1, 0, 0], [0, 0, 1, 1]])
    assert bruhat_cell_of(basis) == (2, 4)


def test_defining_forms_annihilate_points():
    for spec, q in [
        ("schubert:2,4:2,4", 3),
        ("union:2,4:1,4;2,3", 3),
        ("elambda:2,4:1,2;1,3", 3),
        ("lagrangian:3", 3),
        ("isotropic:2,3", 3),
        ("lag-schubert:2:2,4", 3),
    ]:
        system = variety(spec, q)
        if system.defining_forms.rows and system.points:
            prods = system.field.matmul(system.defining_forms.a, system.point_matrix().a)
            assert not prods.any()
