"""End-to-end tests of the command line interface, run in process."""

import math

import pytest

from plgds.cli import main
from plgds.graph_core import MultiGraph, read_graph, write_graph

THRESHOLD_LINES = {
    "beta_2": 2.493737217716217,
    "beta_3": 2.4359064129524235,
    "beta_4": 2.4031763136863713,
    "case_i_crossover": 2.728668212890625,
}


def _write_path6(path):
    g = MultiGraph(6)
    for u in range(5):
        g.add_edge(u, u + 1)
    g.freeze()
    write_graph(g, path)
    return path


# -- thresholds -------------------------------------------------------------------


def test_thresholds_values(capsys):
    assert main(["thresholds"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 4
    for line in lines:
        name, _, value = line.partition(" = ")
        assert name in THRESHOLD_LINES
        assert float(value) == pytest.approx(THRESHOLD_LINES[name], abs=1e-3)


# -- gen ---------------------------------------------------------------------------


def test_gen_writes_graph_and_histogram(tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert main(["gen", "--alpha", "6.9", "--beta", "2.5", "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert "layout=interval" in stdout
    loaded = read_graph(out)
    assert loaded.graph.n == 1315
    assert loaded.graph.m == 1019
    csv_text = (tmp_path / "g.txt.degree.csv").read_text()
    assert csv_text.startswith("degree,count\n")
    counts = {
        int(line.split(",")[0]): int(line.split(",")[1])
        for line in csv_text.strip().splitlines()[1:]
    }
    hist = loaded.graph.degree_histogram()
    assert {d: int(c) for d, c in enumerate(hist) if c} == counts


def test_gen_deterministic(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    main(["gen", "--alpha", "6.9", "--beta", "2.5", "--out", str(a)])
    main(["gen", "--alpha", "6.9", "--beta", "2.5", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_gen_functional_prints_frozen_size(tmp_path, capsys):
    out = tmp_path / "f.txt"
    assert main(["gen", "--alpha", "4.0", "--beta-fn", "log2", "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert "frozen at n=79" in stdout
    assert read_graph(out).graph.n == 79


def test_gen_env_seed_matches_flag(tmp_path, monkeypatch, capsys):
    by_flag = tmp_path / "flag.txt"
    main(["gen", "--alpha", "6.9", "--beta", "2.5", "--seed", "5", "--out", str(by_flag)])
    by_env = tmp_path / "env.txt"
    monkeypatch.setenv("PLGDS_SEED", "5")
    main(["gen", "--alpha", "6.9", "--beta", "2.5", "--out", str(by_env)])
    assert by_flag.read_bytes() == by_env.read_bytes()


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--alpha", "6.9", "--beta", "0", "--out", "x.txt"],
        ["gen", "--alpha", "6.9", "--out", "x.txt"],  # no exponent
        [
            "gen", "--alpha", "6.9", "--beta", "2.5", "--beta-fn", "log2",
            "--out", "x.txt",
        ],  # both exponents
        ["gen", "--alpha", "6.9", "--beta", "2.5"],  # missing --out
        ["nonsense"],
        [],
    ],
)
def test_usage_errors_exit_one(argv, capsys):
    assert main(argv) == 1
    capsys.readouterr()


def test_gen_odd_node_parity_exits_two(tmp_path, capsys):
    out = tmp_path / "odd.txt"
    code = main(
        [
            "gen", "--alpha", str(math.log(50)), "--beta", "2.5",
            "--parity", "node_count", "--out", str(out),
        ]
    )
    assert code == 2
    capsys.readouterr()


# -- bounds ------------------------------------------------------------------------


def test_bounds_upper_regime(capsys):
    assert main(["bounds", "--beta", "3"]) == 0
    out = capsys.readouterr().out
    assert "upper ratio: 2.13813736714" in out
    assert "shen ratio: 3.47455044684" in out
    assert "lemma3 k=2: 2.10617070948" in out


def test_bounds_lower_regime(capsys):
    assert main(["bounds", "--beta", "1.5", "--n", "1000000"]) == 0
    out = capsys.readouterr().out
    assert "hardness factor at n=1000000:" in out
    assert "min n with factor > 1:" in out
    assert "prefactor:" in out


def test_bounds_functional_apx_certificate(capsys):
    assert main(["bounds", "--beta-fn", "log-over-loglog", "--n", "100000"]) == 0
    out = capsys.readouterr().out
    assert "APX; lower-bound certificate c*n computed" in out
    c_part = out.split("c=")[1].split(" ")[0]
    assert float(c_part) > 0.0


def test_bounds_table(capsys):
    assert main(["bounds", "--table2"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "regime,beta,bound,value"
    assert len(lines) == 9
    for line in lines[1:]:
        regime, _, bound, value = line.split(",")
        assert bound in ("lower", "upper")
        assert float(value) > 0.0


# -- embed -------------------------------------------------------------------------


def test_embed_relaxed_tiny_core(tmp_path, capsys):
    core = _write_path6(tmp_path / "core.txt")
    host = tmp_path / "host.txt"
    code = main(
        [
            "embed", str(core), "--beta", "1.5", "--relax-window",
            "--d", "1", "--alpha", "5.0", "--out", str(host),
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "check degree_histogram: PASS" in out
    loaded = read_graph(host)
    assert loaded.roles is not None
    assert any(c.startswith("params:") for c in loaded.comments)
    assert any(c.startswith("cert ") for c in loaded.comments)


def test_embed_deterministic(tmp_path):
    core = _write_path6(tmp_path / "core.txt")
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    argv = ["embed", str(core), "--beta", "1.5", "--relax-window", "--d", "1",
            "--alpha", "5.0"]
    main(argv + ["--out", str(a)])
    main(argv + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_embed_desk_scale_exits_three(tmp_path, capsys):
    core = _write_path6(tmp_path / "core.txt")
    code = main(
        ["embed", str(core), "--beta", "1.5", "--out", str(tmp_path / "h.txt")]
    )
    assert code == 3
    capsys.readouterr()


def test_embed_functional_relax_exits_two(tmp_path, capsys):
    # The relaxed functional parameters certify the window by a hair but
    # construction runs out of degree-2 slots; that is an embedding
    # failure, not a usage error.
    core = _write_path6(tmp_path / "core.txt")
    code = main(
        [
            "embed", str(core), "--beta-fn", "log2", "--relax-window",
            "--out", str(tmp_path / "h.txt"),
        ]
    )
    assert code == 2
    capsys.readouterr()


# -- solve -------------------------------------------------------------------------


def test_solve_exact_row(tmp_path, capsys):
    graph = _write_path6(tmp_path / "g.txt")
    assert main(["solve", str(graph), "--algo", "exact"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "algorithm,n,m,beta,size,lower_bound,lb_kind,ratio_vs_lb"
    assert lines[1] == "exact,6,5,NA,2,2,ExactOpt,1.000000"


def test_solve_upgrades_lower_bound_on_generated_graphs(tmp_path, capsys):
    out = tmp_path / "g.txt"
    main(["gen", "--alpha", "6.9", "--beta", "2.5", "--out", str(out)])
    capsys.readouterr()
    assert main(["solve", str(out), "--algo", "greedy"]) == 0
    row = capsys.readouterr().out.strip().splitlines()[1]
    assert row == "greedy,1315,1019,2.5,322,147,Lemma2a,2.190476"


def test_solve_budget_exhaustion_bounds_row(tmp_path, capsys):
    import numpy as np

    rng = np.random.default_rng(7)
    g = MultiGraph(24)
    for _ in range(40):
        u, v = int(rng.integers(24)), int(rng.integers(24))
        if u != v:
            g.add_edge(u, v)
    g.freeze()
    path = tmp_path / "dense.txt"
    write_graph(g, path)
    code = main(["solve", str(path), "--algo", "exact", "--budget", "3"])
    assert code == 0
    captured = capsys.readouterr()
    row = captured.out.strip().splitlines()[1]
    fields = row.split(",")
    assert fields[0] == "exact"
    assert fields[6] == "Trivial"
    assert "budget" in captured.err


def test_solve_writes_csv_file(tmp_path, capsys):
    graph = _write_path6(tmp_path / "g.txt")
    out = tmp_path / "row.csv"
    assert main(["solve", str(graph), "--algo", "structured", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("algorithm,n,m,beta,size,lower_bound,lb_kind,ratio_vs_lb\n")
    assert text.strip().splitlines()[1].startswith("structured,6,5,")


def test_solve_missing_file_exits_one(tmp_path, capsys):
    assert main(["solve", str(tmp_path / "nope.txt"), "--algo", "exact"]) == 1
    capsys.readouterr()


# -- ratio-curve -------------------------------------------------------------------


def test_ratio_curve_rows(capsys):
    assert main(
        ["ratio-curve", "--beta-from", "2.72", "--beta-to", "2.76", "--step", "0.01"]
    ) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "beta,ours,shen"
    assert lines[1].startswith("2.72,NA,")
    ours_273 = float(lines[2].split(",")[1])
    assert ours_273 == pytest.approx(217.480382161, rel=1e-9)
    assert len(lines) == 6


def test_ratio_curve_below_two_is_na(capsys):
    assert main(
        ["ratio-curve", "--beta-from", "1.99", "--beta-to", "2.0", "--step", "0.01"]
    ) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    for line in lines[1:]:
        _, ours, shen = line.split(",")
        assert ours == "NA" and shen == "NA"


def test_ratio_curve_to_file(tmp_path):
    out = tmp_path / "curve.csv"
    assert main(
        [
            "ratio-curve", "--beta-from", "3.0", "--beta-to", "3.1",
            "--step", "0.05", "--out", str(out),
        ]
    ) == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0] == "beta,ours,shen"
    assert len(lines) == 4
