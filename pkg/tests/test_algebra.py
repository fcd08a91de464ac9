import json
from fractions import Fraction

import numpy as np
import pytest

from homassoc import (AlgebraError, HomAlgebra, ValidationError, associative, data_path, dual_numbers,
                      load_algebra, yau_twist)
from homassoc.algebra import BUILTIN, dump_algebra, is_associative


def test_builtin_examples_validate():
    for name, make in BUILTIN.items():
        A = make()
        assert A.validate().valid, name


def test_shipped_fixtures_match_builtins():
    pairs = {"hom_assoc_2d.json": "hom-assoc-2d", "dual_numbers.json": "dual-numbers",
             "dual_numbers_twist.json": "dual-numbers-twist", "k_times_k.json": "k-times-k"}
    for fname, name in pairs.items():
        assert load_algebra(data_path(fname)) == BUILTIN[name]()


def test_two_dimensional_example_structure(A2):
    e1, e2 = A2.basis_vector(0), A2.basis_vector(1)
    assert A2.evaluate_mu(e1, e1) == e1
    for a, b in [(e1, e2), (e2, e1), (e2, e2)]:
        assert A2.evaluate_mu(a, b) == e2
    assert A2.evaluate_alpha_power(e1, 1) == [1, -1]
    assert A2.evaluate_alpha_power(e2, 1) == [0, 0]
    assert A2.evaluate_alpha_power(e1, 2) == [1, -1]
    assert A2.evaluate_alpha_power([Fraction(1, 2), 7], 0) == [Fraction(1, 2), 7]


def test_associative_algebras_validate_untwisted(DN, KK):
    assert DN.alpha_is_identity and DN.validate().valid
    assert KK.alpha_is_identity and KK.validate().valid


def test_multiplicativity_violation_is_reported():
    mu = np.zeros((2, 2, 2), dtype=int)
    mu[0, 0, 1] = 1
    A = HomAlgebra(mu, [[0, 1], [1, 0]])
    rep = A.validate()
    assert (0, 0) in rep.multiplicativity
    assert not rep.valid
    with pytest.raises(ValidationError):
        A.check()


def test_hom_associativity_violation_is_reported(A2):
    B = A2.with_constant(0, 1, 0, 1)
    rep = B.validate()
    assert rep.hom_associativity and not rep.valid


@pytest.mark.parametrize("t", range(5))
def test_alpha_powers_stay_multiplicative(twisted, t):
    A = twisted
    at = A.alpha_power(t)
    d = A.dim
    for i in range(d):
        for j in range(d):
            prod = A.evaluate_mu(A.basis_vector(i), A.basis_vector(j))
            lhs = list(at.dot(np.array(prod, dtype=object)))
            rhs = A.evaluate_mu(list(at[:, i]), list(at[:, j]))
            assert lhs == rhs


def test_yau_twist_identity_is_noop(DN):
    T = yau_twist(DN, [[1, 0], [0, 1]])
    assert np.array_equal(T.mu, DN.mu) and np.array_equal(T.alpha, DN.alpha)


def test_yau_twist_kill_x(DN):
    T = yau_twist(DN, [[1, 0], [0, 0]])
    assert T.validate().valid
    assert T.evaluate_mu([0, 1], [0, 1]) == [0, 0]


@pytest.mark.parametrize("c", [2, -1, Fraction(3, 7), 0])
def test_yau_twist_scaled_x(DN, c):
    T = yau_twist(DN, [[1, 0], [0, c]])
    assert T.validate().valid
    assert T.evaluate_mu([0, 1], [0, 1]) == [0, 0]
    assert T.evaluate_mu([1, 0], [0, 1]) == [0, c]


def test_yau_twist_rejects_bad_inputs(DN, A2):
    with pytest.raises(ValidationError):
        yau_twist(DN, [[0, 1], [1, 0]])          # not a homomorphism
    with pytest.raises(ValidationError):
        yau_twist(A2, [[1, 0], [0, 1]])          # already twisted
    nonassoc = associative([[[0, 1], [0, 0]], [[1, 0], [0, 0]]])
    assert not is_associative(nonassoc.mu)
    with pytest.raises(ValidationError):
        yau_twist(nonassoc, [[1, 0], [0, 1]])


def test_json_round_trip(tmp_path, TD):
    p = tmp_path / "a.json"
    dump_algebra(TD, p)
    assert load_algebra(p) == TD


@pytest.mark.parametrize("patch, needle", [
    ({"mu": [[["1"]]]}, "mu"),
    ({"alpha": [["1", "0"]]}, "alpha"),
    ({"dimension": 0}, "dimension"),
    ({"mu": [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "x"]]]}, "mu[1][1][1]"),
])
def test_schema_errors_name_the_field(patch, needle):
    data = BUILTIN["hom-assoc-2d"]().to_dict()
    data.update(patch)
    with pytest.raises(AlgebraError, match=needle.replace("[", r"\[")):
        HomAlgebra.from_dict(data)


def test_json_syntax_error_reports_line(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "dimension": 2,\n  oops\n}')
    with pytest.raises(AlgebraError, match="line 3"):
        load_algebra(p)


def test_non_multiplicative_can_be_loaded_for_reporting(tmp_path):
    mu = [[["0", "1"], ["0", "0"]], [["0", "0"], ["0", "0"]]]
    data = {"name": "bad", "dimension": 2, "mu": mu, "alpha": [["0", "1"], ["1", "0"]]}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    with pytest.raises(ValidationError):
        load_algebra(p)
    A = load_algebra(p, allow_non_multiplicative=True)
    assert not A.is_multiplicative


def test_dual_numbers_basis_names():
    assert list(dual_numbers().basis) == ["1", "x"]
