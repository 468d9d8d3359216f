import json

import numpy as np
import pytest

from errexp.cli import load_model, main

EXAMPLE1 = "models/example1.json"

BERN = {
    "name": "bern",
    "u_alphabet": ["0", "1"],
    "v_alphabet": ["*"],
    "p_uv": [["0.5"], ["0.5"]],
    "q_uv": [["0.2"], ["0.8"]],
    "channel": {
        "input_alphabet": ["0", "1"],
        "output_alphabet": ["0", "1"],
        "rows": [["0.65", "0.35"], ["0.35", "0.65"]],
    },
}


@pytest.fixture
def bern_model(tmp_path):
    path = tmp_path / "bern.json"
    path.write_text(json.dumps(BERN))
    return str(path)


def read_csv(path):
    comments, rows = [], []
    header = None
    for line in open(path).read().splitlines():
        if line.startswith("#"):
            comments.append(line)
        elif header is None:
            header = line.split(",")
        else:
            rows.append(line.split(","))
    return comments, header, rows


class TestLoadModel:
    def test_example1_parses(self):
        model = load_model(EXAMPLE1)
        assert model.name == "example1"
        assert model.p_uv.probs.tolist() == [[0.25, 0.25], [0.25, 0.25]]
        assert model.channel.rows[0].tolist() == [0.65, 0.35]
        assert len(model.digest) == 64

    def test_bad_json_rejected(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert main(["region", str(bad), "--kind", "direct"]) == 2

    def test_non_stochastic_rejected(self, tmp_path):
        spec = dict(BERN, p_uv=[["0.5"], ["0.6"]])
        path = tmp_path / "bad2.json"
        path.write_text(json.dumps(spec))
        assert main(["region", str(path), "--kind", "direct"]) == 2


class TestRegion:
    def test_direct_curve(self, bern_model, tmp_path):
        out = tmp_path / "direct.csv"
        assert main(["region", bern_model, "--kind", "direct",
                     "--points", "8", "--out", str(out)]) == 0
        comments, header, rows = read_csv(out)
        assert header == ["kappa_alpha", "kappa_beta", "theta0", "theta1",
                          "bound"]
        assert any("subcommand=region" in c for c in comments)
        assert any("sha256=" in c for c in comments)
        kas = [float(r[0]) for r in rows]
        kbs = [float(r[1]) for r in rows]
        assert kas == sorted(kas)
        assert all(b <= a + 1e-12 for a, b in zip(kbs, kbs[1:]))
        assert all(r[4] == "direct" for r in rows)

    def test_channel_curve(self, bern_model, tmp_path):
        out = tmp_path / "channel.csv"
        assert main(["region", bern_model, "--kind", "channel",
                     "--points", "5", "--out", str(out)]) == 0
        _, _, rows = read_csv(out)
        assert len(rows) == 5 and all(r[4] == "channel" for r in rows)

    def test_rht_curve(self, bern_model, tmp_path):
        out = tmp_path / "rht.csv"
        assert main(["region", bern_model, "--kind", "rht", "--points", "3",
                     "--grid", "6", "--out", str(out)]) == 0
        _, _, rows = read_csv(out)
        assert len(rows) == 3 and all(r[4] == "rht" for r in rows)

    def test_non_ac_source_is_domain_error(self, tmp_path):
        # the anti-diagonal Q of the bundled model has zeros where P does not
        assert main(["region", EXAMPLE1, "--kind", "direct",
                     "--out", str(tmp_path / "x.csv")]) == 3


class TestBounds:
    def test_jhtcc_uncoded_at_zero(self, tmp_path):
        out = tmp_path / "jhtcc.csv"
        assert main(["bounds", EXAMPLE1, "--scheme", "jhtcc-uncoded",
                     "--kappa-grid", "0", "--grid", "6",
                     "--out", str(out)]) == 0
        _, header, rows = read_csv(out)
        assert header == ["kappa_alpha", "bound", "value", "feasible",
                          "achiever_digest"]
        assert rows[0][1] == "jhtcc_uncoded"
        assert float(rows[0][2]) == pytest.approx(0.0471553, abs=1e-4)

    def test_both_emits_crossover(self, tmp_path):
        out = tmp_path / "both.csv"
        assert main(["bounds", EXAMPLE1, "--scheme", "both",
                     "--kappa-grid", "0,0.005", "--grid", "6",
                     "--out", str(out)]) == 0
        comments, _, rows = read_csv(out)
        cross = [c for c in comments if c.startswith("# crossover")]
        assert len(cross) == 1
        value = float(cross[0].split("=")[1])
        assert 0.0 < value < 0.005
        names = {r[1] for r in rows}
        assert names == {"shtcc_ex0_upper", "jhtcc_uncoded"}


class TestSimulate:
    def test_deterministic_byte_identical(self, bern_model, tmp_path):
        args = ["simulate", bern_model, "--n-grid", "40,80", "--trials",
                "2000", "--seed", "5"]
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_summary_block(self, bern_model, tmp_path):
        out = tmp_path / "sim.csv"
        assert main(["simulate", bern_model, "--n-grid", "40,80", "--trials",
                     "2000", "--seed", "5", "--out", str(out)]) == 0
        comments, header, rows = read_csv(out)
        assert header == ["n", "alpha_hat", "beta_hat", "alpha_errors",
                          "beta_errors"]
        assert any(c.startswith("# analytic zeta0=") for c in comments)
        assert sum(c.startswith("# fit") for c in comments) == 2

    def test_json_mirror(self, bern_model, tmp_path):
        out = tmp_path / "sim.csv"
        mirror = tmp_path / "sim.json"
        assert main(["simulate", bern_model, "--n-grid", "40,80", "--trials",
                     "2000", "--seed", "5", "--out", str(out),
                     "--json", str(mirror)]) == 0
        payload = json.loads(mirror.read_text())
        assert [row["n"] for row in payload["rows"]] == [40, 80]

    def test_zero_trials_usage_error(self, bern_model, tmp_path):
        assert main(["simulate", bern_model, "--trials", "0",
                     "--out", str(tmp_path / "x.csv")]) == 2

    def test_failed_fit_exits_nonzero_but_emits(self, tmp_path):
        spec = {k: v for k, v in BERN.items() if k != "channel"}
        spec["q_uv"] = spec["p_uv"]
        path = tmp_path / "same.json"
        path.write_text(json.dumps(spec))
        out = tmp_path / "same.csv"
        assert main(["simulate", str(path), "--n-grid", "20,40", "--trials",
                     "500", "--out", str(out)]) == 4
        comments, _, rows = read_csv(out)
        assert len(rows) == 2
        assert any("fit beta failed" in c for c in comments)
