"""
Tests for the command line: exit codes, config layering, output formats and every subcommand
"""

import json

import pandas as pd
import pytest

from src.cli.config_loader import ExperimentConfig, config_load, parse_config_text
from src.cli.main import EXIT_FAILED, EXIT_INVALID, EXIT_OK, run
from src.config import Config
from src.graph_core.families import complete_graph, cycle_graph
from src.graph_core.graph_io import save_graph
from src.random_groups.models import Presentation
from src.random_groups.presentation_io import load_presentation, save_presentation
from src.random_groups.words import enumerate_relators
from src.utils.errors import ParseError

ER_ARGS = ["er-stats", "--m", "30", "40", "--rho-rule", "2*logm/m", "--trials", "3", "--seed", "11"]


def read_csv(path):
    return pd.read_csv(path, skiprows=1)


def read_header(path):
    first = path.read_text().splitlines()[0]
    assert first.startswith("# config: ")
    return json.loads(first[len("# config: "):])


def test_er_stats_writes_header_and_rows(tmp_path):
    out = tmp_path / "er.csv"
    assert run(ER_ARGS + ["--out", str(out)]) == EXIT_OK

    header = read_header(out)
    assert header["command"] == "er-stats"
    assert header["seed"] == 11
    assert header["trials"] == 3
    assert "workers" not in header and "out" not in header

    frame = read_csv(out)
    assert len(frame) == 6
    assert list(frame["m"]) == [30, 30, 30, 40, 40, 40]


def test_er_stats_is_byte_identical_across_runs_and_workers(tmp_path):
    paths = [tmp_path / f"run{i}.csv" for i in range(3)]
    assert run(ER_ARGS + ["--out", str(paths[0])]) == EXIT_OK
    assert run(ER_ARGS + ["--out", str(paths[1])]) == EXIT_OK
    assert run(ER_ARGS + ["--workers", "3", "--out", str(paths[2])]) == EXIT_OK
    assert paths[0].read_bytes() == paths[1].read_bytes() == paths[2].read_bytes()


def test_er_stats_to_stdout(capsys):
    assert run(["er-stats", "--m", "20", "--rho", "0.5", "--seed", "1", "--kind", "er_degree"]) == EXIT_OK
    captured = capsys.readouterr()
    assert captured.out.startswith("# config: ")
    assert "er-stats: 1 trial(s)" in captured.err


def test_config_file_values_are_overridden_by_flags(tmp_path):
    config = tmp_path / "exp.conf"
    config.write_text("# experiment\ncommand = er-stats\nm = 30\nrho-rule = 2*logm/m\ntrials = 2\nseed = 5\n")
    out = tmp_path / "out.csv"
    assert run(["er-stats", "--config", str(config), "--seed", "9", "--out", str(out)]) == EXIT_OK
    header = read_header(out)
    assert header["seed"] == 9
    assert header["trials"] == 2
    assert len(read_csv(out)) == 2


def test_empty_config_file(tmp_path):
    config = tmp_path / "empty.conf"
    config.write_text("")
    out = tmp_path / "out.csv"
    assert run(ER_ARGS + ["--config", str(config), "--out", str(out)]) == EXIT_OK


@pytest.mark.parametrize("text", [
    "this is not a pair\n",
    "command = certify\n",
    "colour = blue\n",
    "kind = er_bogus\n",
])
def test_bad_config_files_exit_2(tmp_path, text):
    config = tmp_path / "bad.conf"
    config.write_text(text)
    assert run(ER_ARGS + ["--config", str(config), "--out", str(tmp_path / "x.csv")]) == EXIT_INVALID


def test_missing_config_file_exits_2(tmp_path):
    assert run(ER_ARGS + ["--config", str(tmp_path / "absent.conf")]) == EXIT_INVALID


def test_missing_seed_exits_2(monkeypatch, tmp_path):
    monkeypatch.setattr(Config, "ZSL_SEED", None)
    args = ["er-stats", "--m", "30", "--rho", "0.3", "--out", str(tmp_path / "x.csv")]
    assert run(args) == EXIT_INVALID


def test_environment_seed_is_used(monkeypatch, tmp_path):
    monkeypatch.setattr(Config, "ZSL_SEED", 21)
    out = tmp_path / "x.csv"
    assert run(["er-stats", "--m", "30", "--rho", "0.3", "--out", str(out)]) == EXIT_OK
    assert read_header(out)["seed"] == 21


def test_usage_errors():
    assert run(["frobnicate"]) == EXIT_INVALID
    assert run([]) == EXIT_INVALID
    assert run(["--help"]) == EXIT_OK
    assert run(["er-stats", "--m", "30", "--seed", "1"]) == EXIT_INVALID
    assert run(["er-stats", "--m", "30", "--rho", "0.3", "--seed", "1", "--trials", "0"]) == EXIT_INVALID


def test_certify_json(tmp_path):
    out = tmp_path / "cert.json"
    args = ["certify", "--model", "uniform", "--m", "4", "--param", "344", "--trials", "2", "--seed", "1",
            "--families", "lp,lp_sharp", "--format", "json", "--out", str(out)]
    assert run(args) == EXIT_OK
    document = json.loads(out.read_text())
    assert document["config"]["command"] == "certify"
    assert document["config"]["options"]["families"] == "lp,lp_sharp"
    assert len(document["rows"]) == 2
    assert all(row["certified_p2"] for row in document["rows"])


def test_certify_presentation_file(tmp_path):
    pres_path = tmp_path / "full.txt"
    save_presentation(Presentation.from_relators(4, enumerate_relators(4)), pres_path)
    out = tmp_path / "cert.csv"
    args = ["certify", "--presentation", str(pres_path), "--families", "lp,custom:epsilon=0.1", "--out", str(out)]
    assert run(args) == EXIT_OK
    frame = read_csv(out)
    assert list(frame["family"]) == ["lp", "custom"]
    assert list(frame["certified"]) == [True, False]
    assert frame["gap"].iloc[0] == pytest.approx(7 / 43)


def test_certify_rejects_unknown_family(tmp_path):
    args = ["certify", "--model", "uniform", "--m", "4", "--param", "10", "--seed", "1", "--families", "hilbertish"]
    assert run(args) == EXIT_INVALID


def test_group_sample_saves_presentation(tmp_path):
    pres_path = tmp_path / "pres.txt"
    out = tmp_path / "words.csv"
    args = ["group-sample", "--model", "uniform", "--m", "3", "--param", "10", "--seed", "2",
            "--save", str(pres_path), "--out", str(out)]
    assert run(args) == EXIT_OK
    assert load_presentation(pres_path).n_relators == 10
    frame = read_csv(out)
    assert len(frame) == 10
    assert list(frame["rank"]) == sorted(frame["rank"])


def test_group_sample_rejects_too_many_relators():
    args = ["group-sample", "--model", "uniform", "--m", "2", "--param", "29", "--seed", "2"]
    assert run(args) == EXIT_INVALID


def test_link_spectrum(tmp_path):
    out = tmp_path / "link.csv"
    args = ["link-spectrum", "--model", "binomial", "--m", "8", "--rho", "0.1", "--trials", "2", "--seed", "4",
            "--out", str(out)]
    assert run(args) == EXIT_OK
    frame = read_csv(out)
    assert len(frame) == 2
    assert frame["scaled_gap"].notna().all()


def test_poincare_on_a_family(tmp_path):
    out = tmp_path / "p.csv"
    assert run(["poincare", "--family", "path:2", "--p", "2", "3", "--restarts", "3", "--out", str(out)]) == EXIT_OK
    frame = read_csv(out)
    assert list(frame["p"]) == [2.0, 3.0]
    assert frame["lower_estimate"].tolist() == pytest.approx([0.5, 0.5], abs=1e-9)


def test_poincare_bipartite_from_config(tmp_path):
    config = tmp_path / "p.conf"
    config.write_text("family = bipartite:3\nbipartite = yes\nrestarts = 3\n")
    out = tmp_path / "p.csv"
    assert run(["poincare", "--config", str(config), "--out", str(out)]) == EXIT_OK
    frame = read_csv(out)
    assert frame["lower_estimate"].iloc[0] == pytest.approx(2 ** -0.5, abs=1e-6)
    assert bool(frame["bipartite"].iloc[0])


def test_poincare_on_a_graph_file(tmp_path):
    graph = tmp_path / "c5.txt"
    save_graph(cycle_graph(5), graph)
    assert run(["poincare", "--graph", str(graph), "--restarts", "2", "--out", str(tmp_path / "o.csv")]) == EXIT_OK
    assert run(["poincare", "--family", "wheel:5"]) == EXIT_INVALID
    assert run(["poincare", "--family", "cycle:6", "--bipartite", "--k", "0"]) == EXIT_INVALID
    assert run(["poincare", "--family", "complete:3", "--bipartite"]) == EXIT_INVALID


def test_plaplacian(tmp_path):
    out = tmp_path / "lap.csv"
    assert run(["plaplacian", "--family", "complete:4", "--restarts", "2", "--out", str(out)]) == EXIT_OK
    frame = read_csv(out)
    assert frame["lambda_1p_upper"].iloc[0] == pytest.approx(4 / 3, abs=1e-6)
    assert frame["gap"].iloc[0] == pytest.approx(1 / 3)


def test_fixedpoint_demo(tmp_path):
    out = tmp_path / "fp.csv"
    assert run(["fixedpoint-demo", "--complex", "single_triangle", "--p", "2", "--out", str(out)]) == EXIT_OK
    frame = read_csv(out)
    assert list(frame.columns) == ["p", "step", "energy", "ratio", "distance"]
    assert frame["step"].iloc[0] == 0
    assert frame["ratio"].iloc[1:].tolist() == pytest.approx([0.25] * (len(frame) - 1))
    assert frame["energy"].iloc[-1] < Config.FIXED_POINT_TOL


def test_fixedpoint_demo_with_action_file(tmp_path):
    action = tmp_path / "antipodal.txt"
    action.write_text("(0 1)(2 3)(4 5)\n")
    out = tmp_path / "fp.csv"
    args = ["fixedpoint-demo", "--complex", "octahedron", "--action-file", str(action), "--k", "2",
            "--p", "2", "--out", str(out)]
    assert run(args) == EXIT_OK
    assert read_csv(out)["ratio"].iloc[1:].tolist() == pytest.approx([0.25] * (len(read_csv(out)) - 1))


def test_fixedpoint_demo_failures(tmp_path):
    args = ["fixedpoint-demo", "--complex", "single_triangle", "--max-iter", "1", "--tol", "1e-30"]
    assert run(args) == EXIT_FAILED
    assert run(["fixedpoint-demo", "--complex", "dodecahedron"]) == EXIT_INVALID

    complex_file = tmp_path / "bowtie.txt"
    complex_file.write_text("v 5\nt 0 1 2\nt 0 3 4\n")
    assert run(["fixedpoint-demo", "--complex-file", str(complex_file)]) == EXIT_FAILED


def test_union_check_random_pairs(tmp_path):
    out = tmp_path / "u.csv"
    args = ["union-check", "--trials", "5", "--seed", "3", "--scale", "0.05", "--out", str(out)]
    assert run(args) == EXIT_OK
    frame = read_csv(out)
    assert len(frame) == 5
    assert frame[["holds", "sharp_holds", "union_holds", "lower_holds"]].all().all()


def test_union_check_graph_files(tmp_path):
    g1, g2 = tmp_path / "g1.txt", tmp_path / "g2.txt"
    save_graph(complete_graph(6), g1)
    save_graph(complete_graph(6), g2)
    out = tmp_path / "u.csv"
    assert run(["union-check", "--graph1", str(g1), "--graph2", str(g2), "--out", str(out)]) == EXIT_OK
    frame = read_csv(out)
    assert frame["norm_sum"].iloc[0] == pytest.approx(0.2)
    assert run(["union-check", "--graph1", str(g1)]) == EXIT_INVALID


def test_parse_config_text():
    assert parse_config_text("# c\n\nseed = 3\nrho-rule=logm/m\n") == {"seed": "3", "rho_rule": "logm/m"}
    with pytest.raises(ParseError) as excinfo:
        parse_config_text("seed = 3\nno equals sign\n")
    assert excinfo.value.line_number == 2


def test_config_load_and_echo(tmp_path):
    path = tmp_path / "c.conf"
    path.write_text("command = certify\nfamilies = lp\n")
    loaded = config_load(path)
    assert loaded.command == "certify"
    assert loaded.options == {"families": "lp"}

    echoed = ExperimentConfig(command="er-stats", workers=8, out="x.csv", seed=1).echo()
    assert "workers" not in echoed and "out" not in echoed
    assert echoed["seed"] == 1
