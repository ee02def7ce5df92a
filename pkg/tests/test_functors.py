import random

import pytest
from hypothesis import given, strategies as st

from conftest import get_store
from ringel_hall.functors import AmbiguousUnit, ClassFunction, candidate_units, determine_v_unit, \
    fuzz_shift_identity, ind_fn, ind_shift, random_instance, res_fn, shift_constants, \
    shift_identity_residuals, surviving_units, swap_middle, tensor, theorem_instances, unit_value, \
    verify_main_theorem, verify_shift_identity
from ringel_hall.hall import HallElement, simple_key
from ringel_hall.quiver import dims_up_to, euler_form, preset_quiver, symmetric_euler_form
from ringel_hall.scalar import SqrtQScalar

SHIFT_QUIVERS = ["a2", "kronecker", "jordan", "d4"]


# shift constants -------------------------------------------------------------

def test_zero_instance():
    Q = preset_quiver("a2")
    sc = shift_constants(Q, (0, 0), (0, 0), (0, 0), (0, 0))
    assert sc.M == 0 and len(sc.per_lambda) == 1
    r = sc.per_lambda[0]
    assert (r.N, r.L, r.K) == (0, 0, 0)
    assert verify_shift_identity(Q, (0, 0), (0, 0), (0, 0), (0, 0))


def test_a2_example():
    Q = preset_quiver("a2")
    inst = ((1, 0), (0, 1), (0, 1), (1, 0))
    sc = shift_constants(Q, *inst)
    assert sc.M == 1
    for r in sc.per_lambda:
        assert sc.M - 2 * r.K == r.N - symmetric_euler_form(Q, r.quad.a2, r.quad.b1)


def test_sum_mismatch():
    with pytest.raises(ValueError):
        verify_shift_identity(preset_quiver("a2"), (1, 0), (0, 0), (0, 1), (0, 0))
    with pytest.raises(ValueError):
        shift_identity_residuals(preset_quiver("a2"), (1, 0), (0, 0), (0, 1), (0, 0))


@pytest.mark.parametrize("name", SHIFT_QUIVERS)
def test_fuzz(name):
    assert fuzz_shift_identity(preset_quiver(name), 1000, 42) == (1000, 1000)


@pytest.mark.parametrize("name", SHIFT_QUIVERS)
def test_literal_vertex_term_breaks_identity(name):
    passed, total = fuzz_shift_identity(preset_quiver(name), 200, 42, literal_n_term=True)
    assert passed < total // 2


@pytest.mark.parametrize("name", SHIFT_QUIVERS + ["a3"])
@given(seed=st.integers(0, 10 ** 6), literal=st.booleans())
def test_vectorized_matches_scalar(name, seed, literal):
    Q = preset_quiver(name)
    inst = random_instance(Q, random.Random(seed), 5)
    sc = shift_constants(Q, *inst, literal_n_term=literal)
    ref = [sc.M - 2 * r.K - r.N + symmetric_euler_form(Q, r.quad.a2, r.quad.b1) for r in sc.per_lambda]
    assert ref == shift_identity_residuals(Q, *inst, literal_n_term=literal).tolist()
    assert verify_shift_identity(Q, *inst)


@given(seed=st.integers(0, 10 ** 6))
def test_random_instances_in_range(seed):
    Q = preset_quiver("d4")
    inst = random_instance(Q, random.Random(seed))
    assert inst[0] + inst[1] == inst[2] + inst[3]
    assert all(0 <= x <= 20 for v in inst for x in v)


# ind / res -------------------------------------------------------------------

V2 = SqrtQScalar.sqrt_q(2)


def test_ind_example():
    S = get_store("a2", 2)
    S1, S2 = simple_key(S, "1"), simple_key(S, "2")
    split, P = S.classes((1, 1))
    f = ind_fn(tensor(ClassFunction.delta(S, S1), ClassFunction.delta(S, S2)), 0, V2)
    assert f.values == {(split[1],): V2, (P[1],): V2}


def test_res_example():
    S = get_store("a2", 2)
    split, P = S.classes((1, 1))
    for c in (split, P):
        r = res_fn(ClassFunction.delta(S, c), 0, (1, 0), (0, 1), V2)
        assert r.values == {(0, 0): V2}


def test_res_dimension_mismatch():
    S = get_store("a2", 2)
    with pytest.raises(ValueError):
        res_fn(ClassFunction.delta(S, simple_key(S, "1")), 0, (0, 1), (0, 0), V2)


@pytest.mark.parametrize("name,q", [("a2", 2), ("a2", 3), ("kronecker", 2), ("jordan", 3)])
def test_delta_expansion_matches_hall_product(name, q):
    """ind(delta_a (x) delta_b) and u_a * u_b carry the same Hall numbers; the
    twists differ by 2 sum_h a_{s(h)} b_{t(h)}, which is even."""
    S = get_store(name, q)
    Q = S.quiver
    keys = [k for d in dims_up_to(Q.n, 2) for k in S.classes(d)]
    for name_u, unit in candidate_units(q):
        for a in keys:
            for b in keys:
                if a[0].total + b[0].total > 3:
                    continue
                d = ind_shift(Q, a[0], b[0])
                gap = d - euler_form(Q, a[0], b[0])
                assert gap == 2 * Q.arrow_space_dim(a[0], b[0])
                f = ind_fn(tensor(ClassFunction.delta(S, a), ClassFunction.delta(S, b)), 0, unit)
                prod = HallElement.basis(S, a) * HallElement.basis(S, b)
                vq = SqrtQScalar.v_power(q, -euler_form(Q, a[0], b[0]))
                got = {(a[0] + b[0], k[0]): v * unit ** (-d) for k, v in f.values.items()}
                want = {k: c * vq for k, c in prod.terms.items()}
                assert got == want


@pytest.mark.parametrize("name,q", [("a2", 3), ("kronecker", 2), ("jordan", 2)])
def test_res_ind_unit_degenerations(name, q):
    S = get_store(name, q)
    Q = S.quiver
    unit = unit_value("+1/sqrt(q)", q)
    zero = Q.zero()
    for d in dims_up_to(Q.n, 2):
        for c in S.classes(d):
            f = ClassFunction.delta(S, c).scale(SqrtQScalar(3, 1, q))
            back = res_fn(f, 0, d, zero, unit)
            assert back.dims == (d, zero)
            assert ind_fn(back, 0, unit) == f
            assert ind_fn(res_fn(f, 0, zero, d, unit), 0, unit) == f


def test_swap_and_tensor():
    S = get_store("a2", 2)
    keys = S.classes((1, 1))
    f = tensor(tensor(ClassFunction.delta(S, keys[0]), ClassFunction.delta(S, simple_key(S, "1"))),
               tensor(ClassFunction.delta(S, simple_key(S, "2")), ClassFunction.delta(S, keys[1])))
    g = swap_middle(f)
    assert g.dims == (f.dims[0], f.dims[2], f.dims[1], f.dims[3])
    assert swap_middle(g) == f
    with pytest.raises(ValueError):
        swap_middle(ClassFunction.delta(S, keys[0]))


# the main identity -----------------------------------------------------------

def test_a2_instance():
    S = get_store("a2", 2)
    S1, S2 = simple_key(S, "1"), simple_key(S, "2")
    for _, unit in candidate_units(2):
        r = verify_main_theorem(S, S1, S2, (0, 1), (1, 0), unit)
        assert r.equal and r.lhs.values


def test_kronecker_instances():
    S = get_store("kronecker", 2)
    unit = unit_value("+1/sqrt(q)", 2)
    for A in S.classes((1, 1)):
        for B in [S.empty]:
            for ap, bp in [((1, 1), (0, 0)), ((1, 0), (0, 1)), ((0, 1), (1, 0)), ((0, 0), (1, 1))]:
                assert verify_main_theorem(S, A, B, ap, bp, unit).equal
                assert verify_main_theorem(S, B, A, ap, bp, unit).equal


def test_dimension_mismatch():
    S = get_store("a2", 2)
    with pytest.raises(ValueError):
        verify_main_theorem(S, simple_key(S, "1"), S.empty, (0, 1), (0, 0), V2)


def test_degenerate_instances_cannot_discriminate():
    S = get_store("a2", 2)
    assert surviving_units([S], [3], degenerate_only=True) == [n for n, _ in candidate_units(2)]


def test_survivors_agree_across_q():
    """Both magnitude-1/sqrt(q) units pass on every instance, for q = 2 and 3.

    They cannot be separated: negating the unit multiplies each side by
    (-1)^exponent, and the shift identity forces the exponents of both sides
    to agree mod 2.
    """
    expected = ["+1/sqrt(q)", "-1/sqrt(q)"]
    assert surviving_units([get_store("a2", 2)], [3]) == expected
    assert surviving_units([get_store("a2", 3)], [3]) == expected
    with pytest.raises(AmbiguousUnit) as info:
        determine_v_unit([get_store("a2", 2)], [3])
    assert info.value.survivors == expected


def test_unit_value():
    assert unit_value("-sqrt(q)", 3) == -SqrtQScalar.sqrt_q(3)
    with pytest.raises(ValueError):
        unit_value("i", 2)


def test_instance_enumeration_is_complete():
    S = get_store("a2", 2)
    inst = list(theorem_instances(S, 1))
    # gamma = 0: one instance; gamma = e_i: 2 splittings x 2 splittings each
    assert len(inst) == 1 + 2 * 4
