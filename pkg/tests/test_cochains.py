import numpy as np
import pytest

import oracles
from gerst.catalog import STANDARD, builtin
from gerst.cochains import (
    ADJOINT, TRIVIAL, Cochain, cohomology, degree_cap, diff_A, diff_k, differential_matrix,
    differential_sparse, is_coboundary,
)
from gerst.config import ResourceLimitError
from gerst.gerstenhaber import counit_cochain, cup_k, identity_cochain, scalar_cochain, unit_cochain
from gerst.hopf import HopfData, ensure_hopf

SMALL = [n for n in STANDARD if builtin(n).dim <= 9]


def test_degree_zero_differential_vanishes():
    H = builtin("S3")
    assert diff_k(scalar_cochain(H, 5)).is_zero()
    assert differential_matrix(H, 0, TRIVIAL).data.shape == (6, 1)
    assert H.field.is_zero(differential_matrix(H, 0, TRIVIAL).data)


def test_diff_of_counit():
    H = builtin("sweedler")
    eps = counit_cochain(H)
    assert diff_k(eps).tensor.tolist() == H.field.outer(H.counit, H.counit).tolist()


def test_z2_one_cocycle():
    H = builtin("Z2")
    x = Cochain(H, 1, TRIVIAL, [0, 1])
    assert diff_k(x).is_zero()


def test_diff_of_identity_is_multiplication():
    H = builtin("taft:3:2")
    assert diff_A(identity_cochain(H)).tensor.tolist() == H.mult.tolist()
    assert diff_A(unit_cochain(H)).is_zero()


def test_matrix_shapes():
    H = builtin("Z3")
    for n in range(3):
        assert differential_matrix(H, n, TRIVIAL).data.shape == (3 ** (n + 1), 3 ** n)
        assert differential_matrix(H, n, ADJOINT).data.shape == (3 ** (n + 2), 3 ** (n + 1))


@pytest.mark.parametrize("name", SMALL)
def test_square_zero_dense(name):
    H = builtin(name)
    for coeff in (TRIVIAL, ADJOINT):
        for n in range(3 if coeff is TRIVIAL else 2):
            a = differential_matrix(H, n + 1, coeff)
            b = differential_matrix(H, n, coeff)
            assert H.field.is_zero((a @ b).data)


def test_diff_squared_on_random_sweedler_cochain():
    H = builtin("sweedler")
    F = Cochain(H, 1, ADJOINT, H.field.random((4, 4), np.random.default_rng(0)))
    assert diff_A(diff_A(F)).is_zero()


@pytest.mark.parametrize("name", STANDARD)
def test_matrix_matches_formula(name):
    H = builtin(name)
    rng = np.random.default_rng(11)
    degrees = (0, 1, 2) if H.dim <= 9 else (0, 1)
    for coeff, diff in ((TRIVIAL, diff_k), (ADJOINT, diff_A)):
        for n in degrees:
            D = differential_sparse(H, n, coeff)
            shape = (H.dim,) * n + ((H.dim,) if coeff is ADJOINT else ())
            count = 100 if n < 2 else 10
            batch = H.field.random((count,) + shape, rng)
            via_matrix = D @ batch.reshape(count, -1).T
            for k in range(count):
                want = diff(Cochain(H, n, coeff, batch[k])).flat
                assert H.field.equal(np.asarray(via_matrix)[:, k], want), (name, coeff, n, k)


@pytest.mark.parametrize("name", SMALL)
def test_trivial_h0_is_one(name):
    assert cohomology(builtin(name), TRIVIAL, 0).dims == [1]


@pytest.mark.parametrize("name", SMALL + ["double:Z2"])
def test_adjoint_h0_is_center(name):
    H = builtin(name)
    p = H.field.p if H.field.is_prime else None
    mult = [[[H.field.format(x) for x in row] for row in plane] for plane in H.mult.tolist()]
    assert cohomology(H, ADJOINT, 0).dims == [oracles.center_dimension(mult, H.dim, p)]


def test_abelian_center_is_group_order():
    assert cohomology(builtin("Z4"), ADJOINT, 0).dims == [4]


def _permuted(H: HopfData, perm) -> HopfData:
    P = np.asarray(perm)
    # new basis vector i is old basis vector P[i]
    m = H.mult[np.ix_(P, P, P)]
    c = H.comult[np.ix_(P, P, P)]
    S = H.antipode[np.ix_(P, P)]
    return ensure_hopf(HopfData(H.field, H.dim, m, H.unit[P], c, H.counit[P], S, H.name + "'"))


@pytest.mark.parametrize("coeff", [TRIVIAL, ADJOINT])
def test_basis_permutation_invariance(coeff):
    H = builtin("Z3")
    G = _permuted(H, [2, 0, 1])
    top = 4 if coeff is TRIVIAL else 2
    assert cohomology(G, coeff, top).dims == cohomology(H, coeff, top).dims


def test_sweedler_permuted_still_oracle():
    H = builtin("sweedler")
    G = _permuted(H, [3, 1, 0, 2])
    assert cohomology(G, TRIVIAL, 4).dims == oracles.sweedler_cohomology(4)


def test_is_coboundary():
    H = builtin("sweedler")
    zero = Cochain.zero(H, 2, TRIVIAL)
    x = is_coboundary(H, zero)
    assert x is not None and diff_k(x).is_zero()
    rng = np.random.default_rng(4)
    y = Cochain(H, 2, TRIVIAL, H.field.random((4, 4), rng))
    w = is_coboundary(H, diff_k(y))
    assert w is not None and diff_k(w) == diff_k(y)


def test_cup_square_on_z2_is_not_a_coboundary():
    H = builtin("Z2")
    x = Cochain(H, 1, TRIVIAL, [0, 1])
    sq = cup_k(x, x)
    assert diff_k(sq).is_zero()
    assert is_coboundary(H, sq) is None


def test_report_round_trip_and_bases():
    H = builtin("Z3")
    rep = cohomology(H, TRIVIAL, 3)
    assert rep.dims == [1, 1, 1, 1]
    for n, B in enumerate(rep.cocycle_basis(n) for n in range(4)):
        for v in B:
            assert diff_k(Cochain.from_flat(H, n, TRIVIAL, v)).is_zero()
    doc = rep.to_dict(H.field, include_bases=True)
    assert [deg["dim_cohomology"] for deg in doc["degrees"]] == [1, 1, 1, 1]
    assert rep.to_text() == cohomology(H, TRIVIAL, 3).to_text()


def test_degree_cap():
    assert degree_cap(9) == 4 and degree_cap(16) == 2 and degree_cap(36) == -1
    with pytest.raises(ResourceLimitError):
        cohomology(builtin("double:sweedler"), TRIVIAL, 3)
    with pytest.raises(ResourceLimitError):
        cohomology(builtin("double:S3"), TRIVIAL, 0)


def test_entry_guard(monkeypatch):
    monkeypatch.setenv("GERST_MAX_ENTRIES", "100")
    with pytest.raises(ResourceLimitError, match="GERST_MAX_ENTRIES=100"):
        differential_matrix(builtin("S3"), 2, TRIVIAL)


def test_cochain_validation():
    H = builtin("Z3")
    with pytest.raises(ValueError):
        Cochain(H, 1, TRIVIAL, [1, 2])
    with pytest.raises(ValueError):
        Cochain.zero(H, 1, TRIVIAL) + Cochain.zero(H, 1, ADJOINT)
