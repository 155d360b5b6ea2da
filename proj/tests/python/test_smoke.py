import json
import math
import os
import pathlib
import subprocess

import jsonschema
import numpy as np
import pytest

import msgf

SOURCE = pathlib.Path(os.environ.get("MSGF_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))
TOOL = os.environ.get("MSGF_TOOL")


def schema(name):
    return json.loads((SOURCE / "docs" / name).read_text())


def test_special_functions():
    assert msgf.gamma_fn(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert abs(msgf.bessel_j(0.5, 1.0) - math.sqrt(2 / math.pi) * math.sin(1.0)) < 1e-14
    assert msgf.laguerre_fn(0, 0.0, 0.0) == pytest.approx(1.0)


def test_field_validation():
    with pytest.raises(msgf.ValidationError):
        msgf.Field(eB=0.0)
    with pytest.raises(msgf.ValidationError):
        msgf.Field(mu=1.0)
    assert msgf.Field(eB=-1.0, mu=0.3).mu == pytest.approx(0.3)


def test_spectrum_zero_mode():
    f = msgf.Field(eB=1.0, mu=0.3)
    assert msgf.omega(0, 0, -1, f) == pytest.approx(0.0, abs=1e-15)
    assert msgf.omega(1, 0, -1, f) > 0.0


def test_kernel_shapes_and_uniform_limit():
    x, xp = [0.4, 1.1, 0.7], [0.0, 0.8, -0.4]
    k2 = msgf.kernel(0.7 - 0.05j, x, xp, msgf.Field(mu=0.3))
    assert k2.shape == (2, 2) and np.all(np.isfinite(k2))
    k4 = msgf.kernel(0.7 - 0.05j, x + [0.2], xp + [0.0], msgf.Field(mu=0.3, dim="3+1"))
    assert k4.shape == (4, 4)
    free = msgf.kernel(0.7 - 0.05j, x, xp, msgf.Field(mu=0.0))
    both = msgf.kernel(0.7 - 0.05j, x, xp, msgf.Field(mu=0.0), extension="+pi/2")
    assert np.allclose(free, both, rtol=1e-10, atol=1e-14)


def test_nonrel_reality_of_tau_convention():
    f = msgf.Field(mu=0.3)
    v = msgf.nonrel_kernel(0.7, [0.0, 1.1, 0.7], [0.0, 0.8, -0.4], f)
    assert math.isfinite(v.real) and math.isfinite(v.imag)
    with pytest.raises(msgf.MsgfError):
        msgf.nonrel_kernel(0.7, [0.0, 1.1, 0.7], [0.0, 0.8, -0.4], f, species="neutrino")


def test_verify_subset():
    rows = msgf.verify(["gamma-values", "sum-identity"])
    assert {r["check"] for r in rows} == {"gamma-values", "sum-identity"}
    assert all(r["pass"] for r in rows)
    assert "gamma-values" in msgf.checks()


@pytest.mark.skipif(TOOL is None, reason="MSGF_TOOL not set")
def test_cli_verify_matches_schema(tmp_path):
    out = tmp_path / "verify.json"
    subprocess.run([TOOL, "verify", "--only", "gamma-values,bessel-derivative", "--out", str(out)], check=True)
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, schema("verify.schema.json"))
    assert doc["pass"] and doc["failed"] == 0


@pytest.mark.skipif(TOOL is None, reason="MSGF_TOOL not set")
@pytest.mark.parametrize("name", ["kernel", "spectrum", "nonrel", "propagate"])
def test_example_configs_match_schema(name):
    jsonschema.validate(json.loads((SOURCE / "docs" / "examples" / f"{name}.json").read_text()), schema("config.schema.json"))


@pytest.mark.skipif(TOOL is None, reason="MSGF_TOOL not set")
def test_cli_rejects_unknown_field(tmp_path):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"field": {"eB": 1.0, "charge": 2}}))
    proc = subprocess.run([TOOL, "--config", str(cfg), "spectrum"], capture_output=True, text=True)
    assert proc.returncode == 1
    assert "field" in proc.stderr
