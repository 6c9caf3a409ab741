import numpy as np
import pytest

from qcbandit.environments import stabilizer_environment
from qcbandit.errors import ConfigurationError
from qcbandit.hamiltonians import ising_distribution, sample_context
from qcbandit.runner import (
    ExperimentConfig,
    ExperimentSetup,
    build_setup,
    cli_main,
    load_config_file,
    run_equivalence_check,
    run_experiment,
    run_single,
    write_outputs,
)
from qcbandit.stabilizer import all_plus


def small_config(**overrides):
    base = dict(family="ising", qubits=4, rounds=60, reps=2, seed=11, out_dir="unused")
    base.update(overrides)
    return ExperimentConfig(**base)


class TestRunSingle:
    def test_deterministic_records(self):
        config = small_config()
        setup = build_setup(config)
        first, _ = run_single(config, setup, 0)
        second, _ = run_single(config, build_setup(config), 0)
        assert first == second

    def test_reps_use_distinct_streams(self):
        config = small_config()
        setup = build_setup(config)
        a, _ = run_single(config, setup, 0)
        b, _ = run_single(config, setup, 1)
        assert a != b

    def test_duplicated_action_environment_has_zero_regret(self):
        config = small_config()
        state = all_plus(4)
        env = stabilizer_environment([state, state, state])
        dist = ising_distribution()

        def source(t, rng):
            params, obs = sample_context(dist, 4, rng)
            return params.as_tuple(), obs

        setup = build_setup(config)
        degenerate = ExperimentSetup(env, setup.schedule, source, config.rounds, 2)
        records, _ = run_single(config, degenerate, 0)
        assert all(rec.gap == 0.0 for rec in records)

    def test_single_round(self):
        config = small_config(rounds=1, reps=1)
        records, _ = run_single(config, build_setup(config), 0)
        assert len(records) == 1
        assert records[0].gap >= 0.0


class TestRunExperiment:
    def test_curves_nondecreasing_and_consistent(self):
        result = run_experiment(small_config())
        regret = result.curve.mean_regret
        classifier = result.curve.mean_classifier
        assert np.all(np.diff(regret) >= -1e-12)
        assert np.all(np.diff(classifier) >= -1e-12)

    def test_single_rep_has_zero_stderr(self):
        result = run_experiment(small_config(reps=1))
        assert np.all(result.curve.stderr_regret == 0.0)
        assert np.all(result.curve.stderr_classifier == 0.0)

    def test_classifier_bounds_regret(self):
        config = small_config(reps=1, rounds=80)
        setup = build_setup(config)
        records, _ = run_single(config, setup, 0)
        total_gap = sum(r.gap for r in records)
        misses = sum(1 for r in records if r.chosen != r.optimal)
        max_gap = max(r.gap for r in records)
        if max_gap > 0:
            assert misses >= total_gap / max_gap - 1e-9

    def test_expected_regret_increment_is_gap(self):
        config = small_config(reps=1, rounds=40)
        records, _ = run_single(config, build_setup(config), 0)
        result = run_experiment(config)
        cumulative = np.cumsum([r.gap for r in records])
        assert result.curve.mean_regret == pytest.approx(cumulative)

    def test_doubling_reps_statistically_compatible(self):
        few = run_experiment(small_config(rounds=200, reps=4))
        many = run_experiment(small_config(rounds=200, reps=8))
        t = -1
        band = 3 * (few.curve.stderr_regret[t] + many.curve.stderr_regret[t])
        assert abs(few.curve.mean_regret[t] - many.curve.mean_regret[t]) <= band + 1e-9

    def test_ising_optimal_column_partitions_field_range(self):
        result = run_experiment(small_config(rounds=400, reps=2, phase_log_start=0))
        for _, _, params, _, optimal, _ in result.phase_points:
            h = params[0]
            if h < -1.0:
                assert optimal == 0
            elif -1.0 < h < 1.0:
                assert optimal == 1
            elif h > 1.0:
                assert optimal == 2

    def test_lower_bound_family_runs(self):
        config = ExperimentConfig(
            family="lower_bound", qubits=1, rounds=400, reps=2, seed=3,
            actions=3, contexts=3, delta=0.3,
        )
        result = run_experiment(config)
        assert result.rounds == 399  # 3 groups of 133
        assert result.d_eff == 3


class TestOutputs:
    def test_files_and_shapes(self, tmp_path):
        result = run_experiment(small_config())
        paths = write_outputs(result, tmp_path)
        regret_lines = (tmp_path / "regret.csv").read_text().splitlines()
        assert regret_lines[0] == (
            "round,mean_regret,stderr_regret,mean_classifier_regret,stderr_classifier_regret"
        )
        assert len(regret_lines) == 60 + 1
        phase_lines = (tmp_path / "phase.csv").read_text().splitlines()
        assert phase_lines[0] == "rep,round,param1,param2,chosen_action,optimal_action,gap"
        for line in phase_lines[1:]:
            fields = line.split(",")
            assert fields[3] == ""  # param2 empty for the single-parameter family
            assert 0 <= int(fields[4]) < 3
        assert len(paths) == 3

    def test_rerun_is_byte_identical(self, tmp_path):
        config = small_config()
        write_outputs(run_experiment(config), tmp_path / "a")
        write_outputs(run_experiment(config), tmp_path / "b")
        for name in ("regret.csv", "phase.csv", "config_echo"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_config_echo_contents(self, tmp_path):
        result = run_experiment(small_config())
        write_outputs(result, tmp_path)
        echo = (tmp_path / "config_echo").read_text()
        assert "family = ising" in echo
        assert "alpha_L_resolved" in echo
        assert "alpha_m_resolved" in echo
        assert "d_eff_final = 2" in echo
        assert "action_labels = all_plus,neel_z,all_minus" in echo
        assert "rep_seed.0" in echo
        assert "rep_seed.1" in echo


class TestValidation:
    def test_odd_qubits_rejected(self):
        with pytest.raises(ConfigurationError):
            run_experiment(small_config(qubits=7))

    def test_bad_family(self):
        with pytest.raises(ConfigurationError):
            run_experiment(small_config(family="xy"))

    def test_phase_log_start_out_of_range(self):
        with pytest.raises(ConfigurationError):
            run_experiment(small_config(phase_log_start=60))

    def test_default_phase_log_start_scales(self):
        assert small_config().phase_log_start == 6
        assert small_config(rounds=5000).phase_log_start == 200


class TestEquivalence:
    def test_small_equivalence_run(self):
        report = run_equivalence_check(qubits=2, k=3, rounds=120, runs=4, seed=5)
        assert report.passed
        assert report.agreements == report.total_rounds
        assert report.max_score_diff < 1e-8

    def test_three_qubits(self):
        report = run_equivalence_check(qubits=3, k=2, rounds=60, runs=2, seed=6, alpha=0.8)
        assert report.passed

    def test_qubit_cap(self):
        with pytest.raises(ConfigurationError):
            run_equivalence_check(qubits=4)


class TestCli:
    def test_ising_run(self, tmp_path, capsys):
        code = cli_main(
            ["ising", "--qubits", "4", "--rounds", "50", "--reps", "2",
             "--seed", "42", "--out", str(tmp_path)]
        )
        assert code == 0
        for name in ("regret.csv", "phase.csv", "config_echo"):
            assert (tmp_path / name).exists()

    def test_odd_qubits_exit_code(self, tmp_path):
        code = cli_main(["ising", "--qubits", "7", "--out", str(tmp_path)])
        assert code == 1

    def test_unknown_flag_exit_code(self):
        assert cli_main(["ising", "--frobnicate"]) == 1

    def test_missing_subcommand(self):
        assert cli_main([]) == 1

    def test_equivalence_subcommand(self, capsys):
        code = cli_main(["equivalence-check", "--seed", "7", "--rounds", "40", "--runs", "2"])
        out = capsys.readouterr().out
        assert code == 0
        assert "action agreement: 80/80" in out

    def test_fixed_alpha_flag(self, tmp_path):
        code = cli_main(
            ["ising", "--qubits", "4", "--rounds", "30", "--reps", "1",
             "--alpha", "fixed:0.5", "--out", str(tmp_path)]
        )
        assert code == 0
        echo = (tmp_path / "config_echo").read_text()
        assert "alpha_fixed_resolved = 0.5" in echo

    def test_bad_alpha_flag(self, tmp_path):
        code = cli_main(["ising", "--qubits", "4", "--alpha", "sometimes", "--out", str(tmp_path)])
        assert code == 1

    def test_config_file_and_override(self, tmp_path):
        config_file = tmp_path / "run.cfg"
        config_file.write_text(
            "qubits = 4\nrounds = 40\nreps = 2\nseed = 9\n# comment line\nout = "
            + str(tmp_path / "from_file")
            + "\n"
        )
        code = cli_main(["ising", "--config", str(config_file), "--rounds", "25"])
        assert code == 0
        lines = (tmp_path / "from_file" / "regret.csv").read_text().splitlines()
        assert len(lines) == 25 + 1  # flag overrides the file value

    def test_lower_bound_subcommand(self, tmp_path):
        code = cli_main(
            ["lower-bound", "--qubits", "1", "--actions", "4", "--contexts", "3",
             "--delta", "0.2", "--rounds", "300", "--reps", "2", "--seed", "1",
             "--out", str(tmp_path)]
        )
        assert code == 0
        phase = (tmp_path / "phase.csv").read_text().splitlines()
        assert len(phase) > 1

    def test_load_config_file_rejects_garbage(self, tmp_path):
        bad = tmp_path / "bad.cfg"
        bad.write_text("this line has no equals sign\n")
        with pytest.raises(ConfigurationError):
            load_config_file(bad)

    def test_output_path_collision_exits_one(self, tmp_path):
        blocker = tmp_path / "occupied"
        blocker.write_text("already a file")
        code = cli_main(
            ["ising", "--qubits", "4", "--rounds", "20", "--reps", "1",
             "--out", str(blocker)]
        )
        assert code == 1

    def test_help_exits_zero(self):
        assert cli_main(["--help"]) == 0
        assert cli_main(["ising", "--help"]) == 0
