import json

import pytest

import bohrlab


def test_series_product_and_terms():
    a = bohrlab.Series.dirichlet([(2, 1.0), (3, 2.0)])
    b = bohrlab.Series.dirichlet([(1, 1.0), (2, -1.0)])
    prod = a * b
    assert dict(prod.terms()) == {2: 1.0, 3: 2.0, 4: -1.0, 6: -2.0}
    assert prod.coefficient(6) == -2.0
    assert len(a ** 2) == 3
    back = bohrlab.Series.from_json(prod.to_json())
    assert back == prod


def test_big_indices_survive():
    n = 2 ** 200
    s = bohrlab.Series.dirichlet([(n, 1j)])
    assert s.terms() == [(n, 1j)]


def test_bad_index_raises_value_error():
    with pytest.raises(ValueError):
        bohrlab.Series.dirichlet([(0, 1.0)])


def test_w_exponent_examples():
    assert bohrlab.w_exponent(2, 2, 1) == 5
    assert bohrlab.nth_prime(1) == 2


def test_embed_l2_basis_vector():
    image, cert = bohrlab.embed_l2([1.0, 0.0], K=1)
    assert cert["verdict"] == "pass"
    assert bohrlab.h2_norm(image) ** 2 == pytest.approx(0.75, abs=1e-10)


def test_embed_l1_bracket():
    _, cert = bohrlab.embed_l1([0.5, -0.25j], K=1)
    assert cert["verdict"] == "pass"


def test_construct_single_block():
    out = bohrlab.construct(K=1, samples=16)
    assert out["growth"]["verdict"] == "pass"
    assert len(out["P"]) > 0


def test_construct_rejects_small_prime():
    with pytest.raises(ValueError):
        bohrlab.construct(p=2, K=1)


def test_perturbation_of_zero():
    out = bohrlab.density_perturbation(bohrlab.Series(), 32.0)
    assert out["homogeneity"]["verdict"] == "pass"
    assert out["w"] == 5


def test_disjointness():
    cert = bohrlab.disjointness_certificate(count=5)
    assert cert["verdict"] == "pass"


def test_run_and_verify(tmp_path):
    code, summary = bohrlab.run("construct", tmp_path, {"construct": {"K": 1, "sup_samples": 16}})
    assert code == 0, summary
    match, verdict, _ = bohrlab.verify(str(tmp_path / "series.json"), str(tmp_path / "growth.json"))
    assert match and verdict
    assert bohrlab.verify_directory(str(tmp_path))[0]
    cert = json.loads((tmp_path / "growth.json").read_text())
    assert cert["verdict"] == "pass"
