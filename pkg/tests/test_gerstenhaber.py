import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gerst.catalog import builtin
from gerst.cochains import ADJOINT, TRIVIAL, Cochain, diff_A, diff_k
from gerst.gerstenhaber import (
    StructureError, brace_i, brace_i_k, bracket, circ, circ_k, counit_cochain, cup_A, cup_k,
    epsilon_push, hat, identity_cochain, scalar_cochain, unit_cochain,
)

ALGS = ["Z3", "sweedler", "dual:sweedler", "S3"]


def rand(H, n, coeff, rng):
    shape = (H.dim,) * n + ((H.dim,) if coeff is ADJOINT else ())
    return Cochain(H, n, coeff, H.field.random(shape, rng))


def sign(e):
    return -1 if e % 2 else 1


def signed(c, s):
    return c if s > 0 else -c


# -- examples -----------------------------------------------------------------

def test_cup_unit_and_counit():
    H = builtin("sweedler")
    g = rand(H, 2, TRIVIAL, np.random.default_rng(0))
    assert cup_k(scalar_cochain(H, 1), g) == g
    eps = counit_cochain(H)
    assert cup_k(eps, eps).tensor.tolist() == H.field.outer(H.counit, H.counit).tolist()


def test_cup_square_on_z2():
    H = builtin("Z2")
    x = Cochain(H, 1, TRIVIAL, [0, 1])
    assert cup_k(x, x).tensor.tolist() == [[0, 0], [0, 1]]


def test_cup_A_examples():
    H = builtin("taft:3:2")
    G = rand(H, 2, ADJOINT, np.random.default_rng(1))
    assert cup_A(unit_cochain(H), G) == G
    idA = identity_cochain(H)
    assert cup_A(idA, idA).tensor.tolist() == H.mult.tolist()


def test_hat_examples():
    H = builtin("S3")
    assert hat(counit_cochain(H)) == identity_cochain(H)
    assert hat(scalar_cochain(H, 1)) == unit_cochain(H)
    Z2 = builtin("Z2")
    assert hat(Cochain(Z2, 1, TRIVIAL, [0, 1])).tensor.tolist() == [[0, 0], [0, 1]]


def test_epsilon_push_examples():
    H = builtin("sweedler")
    assert epsilon_push(unit_cochain(H)) == scalar_cochain(H, 1)
    assert epsilon_push(identity_cochain(H)) == counit_cochain(H)


def test_brace_examples():
    H = builtin("sweedler")
    rng = np.random.default_rng(2)
    F, G = rand(H, 1, ADJOINT, rng), rand(H, 1, ADJOINT, rng)
    # degree-1 cochains are matrices [input, output]; F o_1 G is "F after G"
    assert brace_i(F, G, 1).tensor.tolist() == H.field.tensordot(G.tensor, F.tensor, ([1], [0])).tolist()
    F3 = rand(H, 3, ADJOINT, rng)
    for i in (1, 2, 3):
        assert brace_i(F3, identity_cochain(H), i) == F3
    f = rand(H, 2, TRIVIAL, rng)
    for i in (1, 2):
        assert brace_i_k(f, identity_cochain(H), i) == f
    g = rand(H, 1, TRIVIAL, rng)
    assert brace_i_k(counit_cochain(H), hat(g), 1) == g


def test_brace_slot_convention():
    H = builtin("S3")
    rng = np.random.default_rng(3)
    F, G = rand(H, 2, ADJOINT, rng), rand(H, 2, ADJOINT, rng)
    a, b1, b2, c = 1, 4, 2, 5
    Gout = G.tensor[b1, b2]
    want2 = H.field.tensordot(Gout, F.tensor[a], ([0], [0]))
    assert brace_i(F, G, 2).tensor[a, b1, b2].tolist() == want2.tolist()
    want1 = H.field.tensordot(Gout, F.tensor[:, c], ([0], [0]))
    assert brace_i(F, G, 1).tensor[b1, b2, c].tolist() == want1.tolist()


def test_z2_hat_composition_and_bracket():
    H = builtin("Z2")
    xh = hat(Cochain(H, 1, TRIVIAL, [0, 1]))
    assert brace_i(xh, xh, 1).tensor.tolist() == [[0, 0], [0, 1]]
    assert bracket(xh, xh).is_zero()


def test_brace_index_errors():
    H = builtin("Z3")
    F = rand(H, 2, ADJOINT, np.random.default_rng(0))
    for i in (0, 3):
        with pytest.raises(StructureError):
            brace_i(F, F, i)
    with pytest.raises(StructureError):
        brace_i(unit_cochain(H), F, 1)
    assert circ(unit_cochain(H), F).is_zero()
    with pytest.raises(ValueError):
        hat(F)


def test_matrix_commutator():
    H = builtin("taft:3:2")
    rng = np.random.default_rng(5)
    F, G = rand(H, 1, ADJOINT, rng), rand(H, 1, ADJOINT, rng)
    FG = H.field.tensordot(G.tensor, F.tensor, ([1], [0]))
    GF = H.field.tensordot(F.tensor, G.tensor, ([1], [0]))
    assert bracket(F, G).tensor.tolist() == H.field.sub(FG, GF).tolist()


# -- identities on random cochains -------------------------------------------------

seeds = st.integers(0, 2**32 - 1)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(ALGS), st.integers(0, 3), seeds)
def test_section(name, n, seed):
    H = builtin(name)
    f = rand(H, n, TRIVIAL, np.random.default_rng(seed))
    assert epsilon_push(hat(f)) == f


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(ALGS), st.integers(0, 2), st.integers(0, 2), seeds)
def test_hat_multiplicative_and_push(name, p, q, seed):
    H = builtin(name)
    rng = np.random.default_rng(seed)
    f, g = rand(H, p, TRIVIAL, rng), rand(H, q, TRIVIAL, rng)
    assert hat(cup_k(f, g)) == cup_A(hat(f), hat(g))
    F, G = rand(H, p, ADJOINT, rng), rand(H, q, ADJOINT, rng)
    assert epsilon_push(cup_A(F, G)) == cup_k(epsilon_push(F), epsilon_push(G))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(ALGS), st.integers(0, 2), seeds)
def test_hat_is_chain_map(name, n, seed):
    H = builtin(name)
    f = rand(H, n, TRIVIAL, np.random.default_rng(seed))
    assert diff_A(hat(f)) == hat(diff_k(f))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(ALGS), st.integers(1, 3), st.integers(0, 2), seeds)
def test_brace_stability(name, p, q, seed):
    H = builtin(name)
    rng = np.random.default_rng(seed)
    f, g = rand(H, p, TRIVIAL, rng), rand(H, q, TRIVIAL, rng)
    for i in range(1, p + 1):
        assert brace_i(hat(f), hat(g), i) == hat(brace_i_k(f, hat(g), i))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(ALGS), st.integers(1, 2), st.integers(1, 2), seeds)
def test_bracket_closure(name, p, q, seed):
    H = builtin(name)
    rng = np.random.default_rng(seed)
    f, g = rand(H, p, TRIVIAL, rng), rand(H, q, TRIVIAL, rng)
    s = sign((p - 1) * (q - 1))
    rhs = hat(circ_k(f, hat(g)) - signed(circ_k(g, hat(f)), s))
    assert bracket(hat(f), hat(g)) == rhs


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(ALGS), st.integers(0, 3), st.integers(0, 3), seeds)
def test_antisymmetry(name, p, q, seed):
    H = builtin(name)
    rng = np.random.default_rng(seed)
    F, G = rand(H, p, ADJOINT, rng), rand(H, q, ADJOINT, rng)
    if p + q == 0:
        return
    assert bracket(F, G) == -signed(bracket(G, F), sign((p - 1) * (q - 1)))


@pytest.mark.parametrize("name", ["Z3", "sweedler"])
@pytest.mark.parametrize("degs", [(1, 1, 1), (2, 1, 1), (1, 2, 2), (2, 2, 1), (3, 1, 1)])
def test_pre_lie_and_jacobi(name, degs):
    H = builtin(name)
    rng = np.random.default_rng(sum(degs))
    p, q, r = degs
    F, G, K = rand(H, p, ADJOINT, rng), rand(H, q, ADJOINT, rng), rand(H, r, ADJOINT, rng)

    def assoc(X, Y, Z):
        return circ(circ(X, Y), Z) - circ(X, circ(Y, Z))

    assert assoc(F, G, K) == signed(assoc(F, K, G), sign((q - 1) * (r - 1)))
    total = (signed(bracket(bracket(F, G), K), sign((p - 1) * (r - 1)))
             + signed(bracket(bracket(G, K), F), sign((q - 1) * (p - 1)))
             + signed(bracket(bracket(K, F), G), sign((r - 1) * (q - 1))))
    assert total.is_zero()


def test_odd_self_bracket_vanishes():
    H = builtin("sweedler")
    rng = np.random.default_rng(9)
    for p in (1, 3):
        F = rand(H, p, ADJOINT, rng)
        assert bracket(F, F).is_zero()


def test_circ_sign_alternative_breaks_pre_lie():
    # with (-1)^(q(i-1)) in place of (-1)^((q-1)(i-1)) the associator symmetry fails
    H = builtin("Z3")
    rng = np.random.default_rng(0)
    F, G, K = rand(H, 2, ADJOINT, rng), rand(H, 1, ADJOINT, rng), rand(H, 1, ADJOINT, rng)

    def alt(X, Y):
        p, q = X.degree, Y.degree
        out = Cochain.zero(H, p + q - 1, ADJOINT)
        for i in range(1, p + 1):
            out = out + signed(brace_i(X, Y, i), sign(q * (i - 1)))
        return out

    def assoc(circ_, X, Y, Z):
        return circ_(circ_(X, Y), Z) - circ_(X, circ_(Y, Z))

    assert assoc(circ, F, G, K) == assoc(circ, F, K, G)
    assert assoc(alt, F, G, K) != assoc(alt, F, K, G)


def test_bracket_of_cocycles_is_cocycle():
    H = builtin("sweedler")
    from gerst.cochains import cocycle_basis
    Z1 = cocycle_basis(H, 1, ADJOINT)
    Z2 = cocycle_basis(H, 2, ADJOINT)
    F = Cochain.from_flat(H, 1, ADJOINT, Z1[-1])
    G = Cochain.from_flat(H, 2, ADJOINT, Z2[-1])
    assert diff_A(bracket(F, G)).is_zero()
