import numpy as np
import pytest

from gerst.catalog import builtin
from gerst.doubles import antipode_inverse, drinfeld_double
from gerst.hopf import check_hopf_axioms


def test_group_antipode_inverse_is_antipode():
    H = builtin("S3")
    assert H.field.equal(antipode_inverse(H).data, H.antipode)


@pytest.mark.parametrize("name", ["sweedler", "taft:3:2"])
def test_antipode_inverse_product(name):
    H = builtin(name)
    Sinv = antipode_inverse(H).data
    assert H.field.equal(H.field.tensordot(Sinv, H.antipode, ([1], [0])), H.field.eye(H.dim))


def test_double_of_sweedler():
    D = drinfeld_double(builtin("sweedler"))
    assert D.underlying.dim == 16
    assert D.factor_dims == (4, 4)
    assert check_hopf_axioms(D.underlying).passed


def test_double_of_abelian_group_is_commutative():
    D = drinfeld_double(builtin("Z2")).underlying
    assert D.field.equal(D.mult, np.transpose(D.mult, (1, 0, 2)))


def test_double_of_s3_is_not_commutative():
    D = drinfeld_double(builtin("S3")).underlying
    assert not D.field.equal(D.mult, np.transpose(D.mult, (1, 0, 2)))


@pytest.mark.parametrize("name", ["Z3", "sweedler"])
def test_factor_embeddings_are_algebra_maps(name):
    H = builtin(name)
    Hs = builtin("dual:" + name)
    D = drinfeld_double(H).underlying
    d, F = H.dim, H.field
    m = D.mult.reshape(d, d, d, d, d, d)          # [f, a, g, b, out_f, out_a]
    # a -> eps (x) a, where eps is the unit of H*
    ua = np.tensordot(Hs.unit, np.tensordot(Hs.unit, m, ([0], [0])), ([0], [1]))  # [a, b, f', a']
    # f -> f (x) 1
    fa = np.tensordot(H.unit, np.tensordot(H.unit, m, ([0], [1])), ([0], [2]))   # [f, g, f', a']
    for a in range(d):
        for b in range(d):
            want = F.outer(Hs.unit, H.mult[a, b])
            assert F.equal(F.reduce(ua[a, b]), want)
    for f in range(d):
        for g in range(d):
            want = F.outer(Hs.mult[f, g], H.unit)
            assert F.equal(F.reduce(fa[f, g]), want)


@pytest.mark.parametrize("name", ["Z2", "sweedler"])
def test_double_antipode_both_sides(name):
    D = drinfeld_double(builtin(name)).underlying
    F, n = D.field, D.dim
    # m (S (x) id) Delta and m (id (x) S) Delta equal u eps
    left = F.tensordot(F.tensordot(D.comult, D.antipode, ([1], [1])), D.mult, ([2, 1], [0, 1]))
    right = F.tensordot(F.tensordot(D.comult, D.antipode, ([2], [1])), D.mult, ([1, 2], [0, 1]))
    want = F.outer(D.counit, D.unit)
    assert F.equal(left, want) and F.equal(right, want)
