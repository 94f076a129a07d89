import json

import pytest

from mvcrystal.errors import VerificationError
from mvcrystal.worked_examples import (
    d4_crystal_data,
    d4_structures,
    d4_u_certificate,
    sl3_multiplicity,
    sl3_transition_check,
    sl3_transition_matrix_data,
    verify_d4,
    verify_sl3,
)
from mvcrystal.worked_examples import data_files


@pytest.fixture(scope="module")
def sl3():
    return verify_sl3()


@pytest.fixture(scope="module")
def d4():
    return verify_d4()


def test_sl3_all_checks_pass(sl3):
    assert sl3.passed, sl3.failures()
    assert sl3.data["coefficient"] == 1


def test_sl3_frozen_transition(sl3):
    assert sl3.data["transition"] == {
        "ap": "1/a", "bp": "-b/a", "cp": "-a^2*c - a*b*d + x1*a - x2*a", "dp": "-a*d",
    }
    assert sl3.data["residue_z_degree"] == {"first_factor": 1, "full_product": 0}
    assert sl3.data["satake_index"] == "Z_{3,-3}"


def test_sl3_matrix_entries(sl3):
    entries = {(a, b): v for a, b, v in sl3.data["matrix_entries"]}
    assert len(entries) == 11
    assert entries[("Z_{1,-1}", "Z_{2,-2}")] == 1
    assert entries[("Z_{2,-2}", "Z_{3,-3}")] == 1
    assert all(v == 1 for (a, b), v in entries.items() if a == b)


def test_sl3_perturbed_transition_fails():
    rep = sl3_transition_check(perturbed=True)
    assert not rep.passed
    assert rep.failures()


def test_sl3_parts_individually():
    assert sl3_transition_check().passed
    m = sl3_multiplicity()
    assert m.passed and m["control_q_double_prime_does_not_generate"].passed
    assert sl3_transition_matrix_data().passed


def test_d4_all_checks_pass(d4):
    assert d4.passed, d4.failures()
    assert d4.data["kernel_dimension"] == 1
    assert d4.data["coefficient_lower_bound"] == 2
    assert d4.data["displayed_coefficient"] == 2
    assert d4.data["displayed_coefficient_certified"] is False
    assert "strictly larger than one" in d4.data["conclusion"]


def test_d4_parts():
    assert d4_structures().passed
    cert, rep = d4_u_certificate()
    assert rep.passed and rep["negative_control_breaks_image"].passed
    assert cert.kernel_dimension == 1
    assert len(cert.images) == 18 and all(im.is_zero() for im in cert.images)
    assert cert.u_of_f.is_zero()
    assert len(rep.data["c"]) == 8
    crys = d4_crystal_data()
    assert crys.data["b_elements"] == {"b1": "f[2,1,3,2,4,4,2,1,3,2]", "b12": "f[2,1,2,1,3,3,4,2,4,2]"}


def test_reports_serialize(sl3, d4):
    for rep in (sl3, d4):
        out = json.loads(json.dumps(rep.to_json()))
        assert out["passed"] is True
        assert all(c["passed"] for c in out["checks"])
        assert rep.to_text().splitlines()[0].endswith("PASS")


def test_tampered_asset_is_rejected(monkeypatch):
    original = data_files._read_bytes

    def tampered(name):
        raw = original(name)
        return raw.replace(b'"version": 1', b'"version": 1 ') if name == "sl3.json" else raw

    data_files.load_asset.cache_clear()
    monkeypatch.setattr(data_files, "_read_bytes", tampered)
    try:
        with pytest.raises(VerificationError):
            data_files.load_asset("sl3.json")
    finally:
        monkeypatch.undo()
        data_files.load_asset.cache_clear()


def test_unknown_asset():
    with pytest.raises(VerificationError):
        data_files.load_asset("missing.json")
