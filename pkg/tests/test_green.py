import json

import pytest

from conftest import get_store
from ringel_hall.green import NoUniqueConvention, bialgebra_defect, determine_twist_sign, green_lhs, green_rhs, \
    report_json, surviving_twist_signs, sweep_green
from ringel_hall.hall import simple_key


@pytest.mark.parametrize("q", [2, 3])
def test_worked_instance(q):
    S = get_store("a2", q)
    S1, S2 = simple_key(S, "1"), simple_key(S, "2")
    assert green_lhs(S, S1, S2, S2, S1) == (q - 1) ** 2
    assert green_rhs(S, S1, S2, S2, S1) == (q - 1) ** 2


@pytest.mark.parametrize("name,q", [("a2", 3), ("kronecker", 2), ("jordan", 3)])
def test_empty_degeneration(name, q):
    S = get_store(name, q)
    e = S.empty
    for d in [S.quiver.dim([1] * S.quiver.n), S.quiver.dim([2] + [0] * (S.quiver.n - 1))]:
        for a in S.classes(d):
            assert green_lhs(S, a, e, a, e) == S.aut(a) == green_rhs(S, a, e, a, e)


def test_dimension_mismatch():
    S = get_store("a2", 2)
    with pytest.raises(ValueError):
        green_lhs(S, simple_key(S, "1"), S.empty, simple_key(S, "2"), S.empty)


@pytest.mark.parametrize("name,q", [("a2", 2), ("jordan", 2), ("kronecker", 2)])
def test_sweep_bound_3(name, q):
    report = sweep_green(get_store(name, q), 3)
    assert report.instances and report.all_equal


def test_report_formats():
    report = sweep_green(get_store("a2", 2), 1)
    tsv = report.to_tsv().splitlines()
    assert tsv[0].split("\t") == ["alpha", "beta", "alpha'", "beta'", "lhs", "rhs", "equal"]
    assert len(tsv) == len(report.instances) + 1
    data = json.loads(report_json(report, conventions={"twist_sign": 1}))
    assert data["all_equal"] is True and data["conventions"]["twist_sign"] == 1


def test_bialgebra_examples():
    S = get_store("a2", 2)
    S1, S2 = simple_key(S, "1"), simple_key(S, "2")
    for sign in (1, -1):
        assert not bialgebra_defect(S, S.empty, S1, sign)
        assert not bialgebra_defect(S, S2, S.empty, sign)
    zero = [s for s in (1, -1) if not bialgebra_defect(S, S1, S2, s)]
    assert zero == [1]


def test_twist_sign_determination():
    stores = [get_store("a2", 2), get_store("a2", 3), get_store("kronecker", 2)]
    assert determine_twist_sign(stores, 2) == 1
    # with a single vertex the symmetric form vanishes and the sign is invisible
    assert surviving_twist_signs(get_store("jordan", 2), 2) == [1, -1]
    with pytest.raises(NoUniqueConvention) as info:
        determine_twist_sign([get_store("jordan", 2)], 2)
    assert info.value.survivors == [-1, 1]
