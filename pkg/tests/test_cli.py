"""CLI contract tests: exit codes, file outputs, determinism."""

from pathlib import Path

import pytest

from tennis_momentum.cli import main, model_config_from_pairs, series_to_csv
from tennis_momentum.momentum import ModelConfig

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


@pytest.fixture
def swing(tmp_path):
    points = tmp_path / "swing.csv"
    profiles = tmp_path / "profiles.yaml"
    points.write_text((FIXTURES / "swing_match.csv").read_text())
    profiles.write_text((FIXTURES / "swing_profiles.yaml").read_text())
    return points, profiles


class TestModelConfigOverrides:
    def test_defaults(self):
        assert model_config_from_pairs([]) == ModelConfig()

    def test_overrides(self):
        config = model_config_from_pairs(
            ["r=3", "prior-strength=0", "alpha=1.0", "clamp=false", "stm-transform=clamp01"])
        assert config.r == 3.0
        assert config.prior_strength == 0.0
        assert config.efficiency_smoothing == 1.0
        assert config.clamp_weight is False
        assert config.stm_transform == "clamp01"

    def test_unknown_key(self):
        with pytest.raises(ValueError):
            model_config_from_pairs(["zeta=1"])

    def test_missing_equals(self):
        with pytest.raises(ValueError):
            model_config_from_pairs(["r"])


class TestAnalyze:
    def test_writes_series_with_row_per_point(self, swing, tmp_path, capsys):
        points, profiles = swing
        out = tmp_path / "series.csv"
        code = main(["analyze", str(points), "--profiles", str(profiles), "--out", str(out)])
        assert code == 0
        lines = out.read_text().strip().splitlines()
        n_points = len(points.read_text().strip().splitlines()) - 1
        assert len(lines) == n_points + 1  # header + one record per point
        assert lines[0].startswith("point_index,p1_p_hist,p1_p_inst,p1_p_ltm")

    def test_deterministic_bytes(self, swing, tmp_path):
        points, profiles = swing
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["analyze", str(points), "--profiles", str(profiles), "--out", str(out1)]) == 0
        assert main(["analyze", str(points), "--profiles", str(profiles), "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_svg_has_two_polylines_per_panel(self, swing, tmp_path):
        points, profiles = swing
        out = tmp_path / "series.csv"
        code = main(["analyze", str(points), "--profiles", str(profiles),
                     "--out", str(out), "--svg"])
        assert code == 0
        svg = (tmp_path / "series.svg").read_text()
        assert svg.count("<polyline") == 6  # three panels, two series each

    def test_corrupt_csv_exits_2_no_partial_output(self, swing, tmp_path, capsys):
        points, profiles = swing
        text = points.read_text().splitlines()
        text[20] = text[20].replace(",1,", ",9,", 1)
        bad = tmp_path / "bad.csv"
        bad.write_text("\n".join(text) + "\n")
        out = tmp_path / "series.csv"
        code = main(["analyze", str(bad), "--profiles", str(profiles), "--out", str(out)])
        assert code == 2
        assert not out.exists()
        assert "error" in capsys.readouterr().err

    def test_profile_errors_exit_3(self, swing, tmp_path):
        points, _ = swing
        empty = tmp_path / "empty_profiles.yaml"
        empty.write_text("players:\n  p1: {label: x, prior_matches: []}\n"
                         "  p2: {label: y, prior_matches: []}\n")
        code = main(["analyze", str(points), "--profiles", str(empty)])
        assert code == 3

    def test_config_override_changes_series(self, swing, tmp_path):
        points, profiles = swing
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["analyze", str(points), "--profiles", str(profiles), "--out", str(out1)])
        main(["analyze", str(points), "--profiles", str(profiles), "--out", str(out2),
              "--config", "prior-strength=0", "--config", "alpha=1.0"])
        assert out1.read_text() != out2.read_text()


class TestSimulate:
    def test_fixed_seed_byte_identical_reports(self, tmp_path):
        config = tmp_path / "sim.yaml"
        config.write_text((FIXTURES / "sim_example.yaml").read_text())
        out1, out2 = tmp_path / "r1.yaml", tmp_path / "r2.yaml"
        assert main(["simulate", str(config), "--out", str(out1)]) == 0
        assert main(["simulate", str(config), "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_seed_override_changes_report(self, tmp_path):
        config = tmp_path / "sim.yaml"
        config.write_text((FIXTURES / "sim_example.yaml").read_text())
        out1, out2 = tmp_path / "r1.yaml", tmp_path / "r2.yaml"
        main(["simulate", str(config), "--out", str(out1)])
        main(["simulate", str(config), "--out", str(out2), "--seed", "999"])
        assert out1.read_bytes() != out2.read_bytes()

    def test_invalid_replications_exit_2(self, tmp_path, capsys):
        config = tmp_path / "sim.yaml"
        config.write_text(
            (FIXTURES / "sim_example.yaml").read_text().replace(
                "replications: 200", "replications: 0"))
        assert main(["simulate", str(config)]) == 2
        assert "replications" in capsys.readouterr().err

    def test_all_stalled_exit_4(self, tmp_path):
        config = tmp_path / "sim.yaml"
        config.write_text(
            (FIXTURES / "sim_example.yaml")
            .read_text()
            .replace("serve_win_prob: [0.65, 0.60]", "serve_win_prob: [1.0, 1.0]")
            .replace("replications: 200", "replications: 3")
            + "\n")
        # Unending tiebreak: both servers always hold.
        assert main(["simulate", str(config)]) == 4


class TestProfile:
    def make_matches(self, directory):
        directory.mkdir()
        for i, name in enumerate(["m1.csv", "m2.csv", "m3.csv", "m4.csv"]):
            (directory / name).write_text((FIXTURES / "onesided_match.csv").read_text())

    def test_aggregates_four_matches(self, tmp_path, capsys):
        matches = tmp_path / "matches"
        self.make_matches(matches)
        out = tmp_path / "profiles.yaml"
        code = main(["profile", str(matches), "--out", str(out),
                     "--p1-label", "Vela", "--p2-label", "Sorel"])
        assert code == 0
        text = out.read_text()
        assert text.count("points_won_on_serve") == 8  # 4 prior matches x 2 players
        assert "Vela" in text

    def test_empty_directory_exit_2(self, tmp_path):
        matches = tmp_path / "matches"
        matches.mkdir()
        assert main(["profile", str(matches), "--out", str(tmp_path / "p.yaml")]) == 2

    def test_lenient_skips_bad_files(self, tmp_path, capsys):
        matches = tmp_path / "matches"
        self.make_matches(matches)
        (matches / "broken.csv").write_text("not,a,points,file\n1,2,3,4\n")
        out = tmp_path / "profiles.yaml"
        assert main(["profile", str(matches), "--out", str(out)]) == 2
        assert main(["profile", str(matches), "--out", str(out), "--lenient"]) == 0
        assert "skipping" in capsys.readouterr().err
        assert out.read_text().count("total_points_in_match") == 8

    def test_strict_fails_on_bad_file(self, tmp_path):
        matches = tmp_path / "matches"
        self.make_matches(matches)
        (matches / "a_broken.csv").write_text("server,point_victor\n3,1\n")
        assert main(["profile", str(matches), "--out", str(tmp_path / "p.yaml")]) == 2


def test_series_csv_precision_is_six_decimals(swing):
    from tennis_momentum.ingest import parse_points_csv, parse_profile_file, derive_profile, to_point_records
    from tennis_momentum.momentum import replay_match
    from tennis_momentum.scoring import BEST_OF_FIVE

    points, profiles_path = swing
    records = to_point_records(parse_points_csv(points.read_text()), BEST_OF_FIVE)
    profiles = derive_profile(parse_profile_file(profiles_path.read_text()))
    samples = replay_match(records, profiles, BEST_OF_FIVE, ModelConfig())
    text = series_to_csv(samples)
    first_row = text.splitlines()[1].split(",")
    assert first_row[0] == "1"
    assert all(len(cell.split(".")[1]) == 6 for cell in first_row[1:])
