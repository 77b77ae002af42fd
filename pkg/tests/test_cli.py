import json

import numpy as np
import pytest

from anyonwalk.cli import build_parser, dispatch, main


def run(argv):
    args = build_parser().parse_args(argv)
    return dispatch(args)


def payload_bytes(envelope, fmt):
    # determinism is judged on the payload; metadata carries timings
    if fmt == "json":
        data = json.loads(envelope.serialize("json"))
        data.pop("meta")
        return json.dumps(data, sort_keys=True).encode()
    return envelope.serialize("csv").encode()


def test_su2k_dist_example():
    env = run(["su2k", "dist", "--k", "2", "--t", "3", "--engine", "dense"])
    probs = [row[1] for row in env.payload["rows"]]
    assert np.allclose(probs, [0.125, 0.375, 0.375, 0.125], atol=1e-12)
    positions = [row[0] for row in env.payload["rows"]]
    assert positions == [-3, -1, 1, 3]  # origin shifted to the start site


def test_dsn_dist_example():
    env = run(["dsn", "dist", "--N", "5", "--t", "4"])
    exact = [str(row[2]) for row in env.payload["rows"]]
    assert exact == ["1/16", "31/100", "67/200", "23/100", "1/16"]


def test_kauffman_exact_example():
    env = run(["kauffman", "--n", "2", "--word", "1 1", "--closure", "markov", "--exact"])
    assert env.payload["polynomial"] == "-A^4 - A^-4"


def test_kauffman_numeric_mode():
    env = run(["kauffman", "--n", "2", "--word", "1 1", "--closure", "markov", "--k", "2"])
    value = complex(env.payload["re"], env.payload["im"])
    a = 1j * np.exp(1j * np.pi / 8)
    assert abs(value - (-(a**4) - a**-4)) < 1e-12


def test_abelian_variance_rows():
    env = run(["abelian", "variance", "--phi", "0,pi/2", "--t", "5,10", "--analytic"])
    assert env.payload["columns"] == ["t", "phi", "v_sim", "v_analytic"]
    assert len(env.payload["rows"]) == 4
    for row in env.payload["rows"]:
        assert row[2] > 0 and row[3] != ""


def test_baseline_subcommands():
    env_q = run(["baseline", "quantum", "--t", "3"])
    assert [r[1] for r in env_q.payload["rows"]] == pytest.approx([1 / 8, 5 / 8, 1 / 8, 1 / 8])
    env_c = run(["baseline", "classical", "--t", "2"])
    assert [r[1] for r in env_c.payload["rows"]] == pytest.approx([0.25, 0.5, 0.25])


def test_sweep_rows():
    env = run(["su2k", "sweep", "--k", "2..4", "--t", "4"])
    assert env.payload["columns"] == ["k", "d_q", "d_c"]
    ks = [row[0] for row in env.payload["rows"]]
    assert ks == [2, 3, 4]


def test_generator_dump_has_sparse_triplets():
    env = run(["su2k", "generators", "--k", "2", "--n", "4"])
    assert env.payload["columns"] == ["i", "row", "col", "re", "im"]
    per_generator = {}
    for i, row, col, re, im in env.payload["rows"]:
        per_generator.setdefault(i, []).append((row, col, complex(re, im)))
    assert set(per_generator) == {1, 2, 3}
    for entries in per_generator.values():
        assert len(entries) <= 4  # at most 2 nonzeros per column at dim 2


def test_identical_config_is_byte_identical():
    argv = ["su2k", "dist", "--k", "3", "--t", "4"]
    for fmt in ("csv", "json"):
        first = payload_bytes(run(argv), fmt)
        second = payload_bytes(run(argv), fmt)
        assert first == second


def test_json_round_trip():
    env = run(["dsn", "dist", "--N", "5", "--t", "3"])
    data = json.loads(env.serialize("json"))
    assert data["kind"] == "distribution"
    assert data["positions"] == [-3, -1, 1, 3]
    assert data["probs"] == pytest.approx([0.125, 0.415, 0.335, 0.125])
    assert data["probs_exact"] == ["1/8", "83/200", "67/200", "1/8"]
    reparsed = json.loads(env.serialize("json"))
    reparsed.pop("meta"), data.pop("meta")
    assert reparsed == data


def test_exit_codes(tmp_path, capsys):
    assert main(["su2k", "dist", "--k", "2", "--t", "2"]) == 0
    capsys.readouterr()
    assert main(["su2k", "dist", "--k", "1", "--t", "2"]) == 2  # bad level
    assert main(["nonsense"]) == 1  # usage
    assert main(["dsn", "dist", "--N", "5", "--t", "5"]) == 2  # irreducible word
    capsys.readouterr()


def test_output_file(tmp_path):
    target = tmp_path / "dist.csv"
    assert main(["su2k", "dist", "--k", "2", "--t", "2", "--to", str(target)]) == 0
    text = target.read_text()
    assert text.splitlines()[0] == "s,P"
    assert len(text.splitlines()) == 4


def test_noncentered_layout_warns(capsys):
    assert main(["su2k", "dist", "--k", "2", "--t", "2", "--n", "8"]) == 0
    assert "n = 2 mod 4" in capsys.readouterr().err
