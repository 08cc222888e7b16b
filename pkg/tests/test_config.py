import json

import pytest
from hypothesis import given, strategies as st

from aclandau.config import RunConfig, ValidationError, from_mapping, load, parse_text


def test_defaults_valid():
    rc = RunConfig().validate()
    assert rc.h == 0.125
    assert rc.kind == "symmetric" and rc.sigma == -1


def test_text_config(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("# comment\nkind = plate\nsigma = 1\nL = 4\nh = 0.25  # spacing\nchi.1.1 = 0.5\n")
    rc = load(p).validate()
    assert rc.kind == "plate" and rc.sigma == 1
    assert rc.n == 33
    assert rc.chi == (((1, 1), 0.5),)
    assert rc.gauge.poly.coeffs == {(1, 1): 0.5}


def test_json_config(tmp_path):
    p = tmp_path / "run.json"
    p.write_text(json.dumps({"kind": "free", "L": 2.0, "n": 17, "chi": {"1.1": -0.5}}))
    rc = load(p).validate()
    assert rc.kind == "free" and rc.n == 17
    assert rc.chi == (((1, 1), -0.5),)


@pytest.mark.parametrize("items", [
    {"kind": "torus"}, {"sigma": "0"}, {"L": "-1"}, {"n": "4"}, {"tol": "0"},
    {"method": "qr"}, {"levels": "0"}, {"formats": "xml"}, {"chi.5.1": "1"},
    {"max_iter": "0"}, {"k": "100000"},
])
def test_invalid_values(items):
    with pytest.raises(ValidationError):
        from_mapping(items).validate()


@pytest.mark.parametrize("items", [{"bogus": "1"}, {"n": "abc"}, {"sigma": "0.5"},
                                   {"chi.x.1": "1"}, {"h": "0.3"}])
def test_unparseable(items):
    with pytest.raises(ValidationError):
        from_mapping(items)


def test_missing_file(tmp_path):
    with pytest.raises(ValidationError):
        load(tmp_path / "absent.cfg")


def test_parse_text_rejects_garbage():
    with pytest.raises(ValidationError):
        parse_text("kind symmetric\n")


@given(st.sampled_from(["symmetric", "plate", "standard-landau", "free"]), st.sampled_from([1, -1]),
       st.integers(1, 20).map(lambda k: 2 * k + 1))
def test_to_dict_round_trip(kind, sigma, n):
    rc = from_mapping({"kind": kind, "sigma": sigma, "n": n}).validate()
    d = rc.to_dict()
    d.pop("h")
    assert from_mapping(d).validate() == rc
