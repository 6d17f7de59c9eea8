import json
import struct

import numpy as np
import pytest

from specmeet import BorelDescriptor, InvalidInput, NonHermitianInput
from specmeet.fileio import (
    RunConfig,
    canonical_json,
    load_operator_file,
    load_run_config,
    operator_from_arrays,
    operator_payload,
    parse_set_spec,
    write_json_file,
)


def bits(x: float) -> bytes:
    return struct.pack("<d", x)


class TestCanonicalJson:
    def test_fixed_layout(self):
        text = canonical_json({"b": 1, "a": [1.5, 2], "c": {"x": True, "y": None}})
        assert text == (
            '{\n  "b": 1,\n  "a": [1.5, 2],\n  "c": {\n    "x": true,\n    "y": null\n  }\n}\n'
        )

    def test_floats_round_trip_bit_exactly(self, rng):
        specials = [0.0, -0.0, 1.0, 1e-300, -1e300, 1 / 3, np.pi, 2**-1074]
        randoms = [float(x) for x in rng.standard_normal(200) * 10.0 ** rng.integers(-12, 12, 200)]
        for x in specials + randoms:
            text = canonical_json({"x": x})
            back = json.loads(text)["x"]
            assert bits(float(back)) == bits(x)

    def test_rejects_nan(self):
        with pytest.raises(InvalidInput):
            canonical_json({"x": float("nan")})

    def test_deterministic(self):
        payload = {"v": [0.1, 0.2, 0.30000000000000004], "n": 12}
        assert canonical_json(payload) == canonical_json(payload)


class TestOperatorFiles:
    def test_round_trip_real(self, tmp_path, rng):
        mat = rng.standard_normal((3, 3))
        op = operator_from_arrays(3, ((mat + mat.T) / 2).tolist())
        path = tmp_path / "op.json"
        write_json_file(path, operator_payload(op))
        back = load_operator_file(path)
        np.testing.assert_array_equal(back.entries, op.entries)

    def test_round_trip_complex(self, tmp_path, rng):
        mat = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        op = operator_from_arrays(
            4, ((mat + mat.conj().T) / 2).real.tolist(), ((mat + mat.conj().T) / 2).imag.tolist()
        )
        path = tmp_path / "op.json"
        write_json_file(path, operator_payload(op))
        back = load_operator_file(path)
        np.testing.assert_array_equal(back.entries, op.entries)

    def test_imag_omitted_when_zero(self):
        payload = operator_payload(operator_from_arrays(2, [[1.0, 0.0], [0.0, 2.0]]))
        assert "imag" not in payload

    def test_missing_fields(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"real": [[1]]}')
        with pytest.raises(InvalidInput, match="missing"):
            load_operator_file(path)

    def test_bad_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        with pytest.raises(InvalidInput, match="JSON"):
            load_operator_file(path)

    def test_wrong_shape(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"dim": 3, "real": [[1, 0], [0, 1]]}')
        with pytest.raises(InvalidInput, match="3x3"):
            load_operator_file(path)

    def test_non_hermitian_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"dim": 2, "real": [[1, 5], [0, 1]]}')
        with pytest.raises(NonHermitianInput):
            load_operator_file(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(InvalidInput, match="cannot read"):
            load_operator_file(tmp_path / "absent.json")


class TestSetSpecParser:
    def test_finite(self):
        assert parse_set_spec("finite{1,2.5,-3}") == BorelDescriptor.finite([1.0, 2.5, -3.0])

    def test_cofinite_empty_is_real_line(self):
        assert parse_set_spec("cofinite{}") == BorelDescriptor.real_line()

    def test_whitespace_insignificant(self):
        assert parse_set_spec("  finite {  1 , 2e0 } ") == BorelDescriptor.finite([1.0, 2.0])

    @pytest.mark.parametrize(
        "text",
        ["finite", "finite{", "open{1}", "finite{1;2}", "finite{one}", "finite{1,1}"],
    )
    def test_malformed(self, text):
        with pytest.raises(InvalidInput):
            parse_set_spec(text)


class TestRunConfig:
    def test_defaults(self):
        config = load_run_config(None, {})
        assert config == RunConfig()

    def test_file_overrides_defaults(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(
            json.dumps(
                {"mode": "exhaustive", "seed": 99, "tolerances": {"tol_rank": 1e-6}}
            )
        )
        config = load_run_config(path, {})
        assert config.mode == "exhaustive"
        assert config.seed == 99
        assert config.tolerances.tol_rank == 1e-6
        assert config.tolerances.tol_eig == 1e-9

    def test_flags_override_file(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"mode": "exhaustive", "trials": 7}))
        config = load_run_config(path, {"mode": "singleton", "tol_rank": 1e-5})
        assert config.mode == "singleton"
        assert config.trials == 7
        assert config.tolerances.tol_rank == 1e-5

    def test_rejects_unknown_fields(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"modes": "auto"}))
        with pytest.raises(InvalidInput, match="unknown"):
            load_run_config(path, {})

    def test_rejects_bad_values(self):
        with pytest.raises(InvalidInput):
            RunConfig(trials=0)
        with pytest.raises(InvalidInput):
            RunConfig(partition_cap=0)
        with pytest.raises(InvalidInput):
            RunConfig(mode="fast")
        with pytest.raises(InvalidInput):
            RunConfig(seed=-1)

    def test_rejects_bad_tolerances_in_file(self, tmp_path):
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"tolerances": {"tol_rank": "tight"}}))
        with pytest.raises(InvalidInput):
            load_run_config(path, {})
