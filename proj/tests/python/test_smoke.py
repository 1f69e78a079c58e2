from fractions import Fraction

import pytest

import juggling
from juggling import Model


def left_multiply(pi, P):
    return [sum(pi[a] * P[a][b] for a in range(len(pi))) for b in range(len(pi))]


def test_msjmc_formula_is_stationary():
    z = [Fraction(1, 3), Fraction(1, 5), Fraction(1, 7), Fraction(2, 9)]
    m = Model("msjmc", counts=[1, 1, 1], z=z)
    assert m.states() == ["123", "132", "213", "231", "312", "321"]
    P = m.matrix()
    assert all(sum(row) == 1 for row in P)
    pi = m.formula()
    assert sum(pi) == 1
    assert left_multiply(pi, P) == pi
    assert m.solve() == pi


def test_partition_function_small_case():
    z = [Fraction(1, 2), Fraction(1, 3), Fraction(1, 5), Fraction(1, 7)]
    y1, y2, y3 = z[0], z[0] + z[1], z[0] + z[1] + z[2]
    assert juggling.partition_function([1, 1, 1], z) == (y1 + y2 + y3) * (y1 + y2) * y1
    assert juggling.complete_homogeneous(2, [2, 3]) == 4 + 6 + 9


def test_word_statistics():
    assert [juggling.stat_E("132132", 3, i) for i in range(1, 7)] == [5, 1, 2, 3, 1, 1]
    assert juggling.bumping_sequences("123", 3) == [[1, 2, 3, 4], [1, 2, 4], [1, 3, 4], [1, 4]]
    assert juggling.apply_bump("132132", 3, [1, 3, 5, 7]) == "311223"


def test_fluctuating_and_overwriting_agree_with_solve():
    for name, kwargs in [
        ("add_drop", {"activities": [1, 2, 3]}),
        ("annihilation", {}),
        ("overwriting", {}),
    ]:
        m = Model(name, n=2, T=3, z=["1/6", "1/3", "1/2"], **kwargs)
        pi = m.formula()
        assert left_multiply(pi, m.matrix()) == pi
        assert m.solve() == pi


def test_overwriting_single_word():
    z = [Fraction(1, 6), Fraction(1, 3), Fraction(1, 2)]
    m = Model("overwriting", n=2, T=3, z=z)
    assert m.stationary()["12"] == juggling.overwriting_stationary("12", 3, z)


def test_several_jugglers():
    m = Model("several_jugglers", r=2, c=2, balls=2)
    assert m.states() == ["00/11", "10/10", "10/01", "01/10", "01/01", "11/00"]
    weights = [12, 6, 6, 6, 6, 2]
    assert m.formula() == [Fraction(w, sum(weights)) for w in weights]


def test_float_backend_close_to_exact():
    exact = Model("msjmc", counts=[2, 1], z=["0.2", "0.3", "0.5", "0.1"]).formula()
    approx = Model("msjmc", counts=[2, 1], z=["0.2", "0.3", "0.5", "0.1"], backend="float").formula()
    assert all(isinstance(x, float) for x in approx)
    assert max(abs(float(e) - a) for e, a in zip(exact, approx)) < 1e-12


def test_verify_and_negative_control():
    m = Model("msjmc", counts=[1, 1, 1])
    assert m.verify("lumping")["passed"]
    assert not m.verify("lumping", negative_control=True)["passed"]


def test_simulate_is_reproducible():
    m = Model("msjmc", counts=[1, 1, 1])
    a = m.simulate(5000, seed=4)
    assert a == m.simulate(5000, seed=4)
    assert abs(sum(a["empirical"]) - 1) < 1e-12


def test_errors():
    with pytest.raises(juggling.InvalidArgument):
        Model("msjmc", counts=[1, 1, 1], z=[1, 2])
    with pytest.raises(juggling.JugglingError):
        Model("nope")
    with pytest.raises(juggling.NotNormalized):
        Model("annihilation", n=2, T=2, z=[1, 1, 1]).matrix()
    with pytest.raises(juggling.ReducibleChain):
        Model("overwriting", n=2, T=2, z=["1/2", "1/2", "0"]).solve()
