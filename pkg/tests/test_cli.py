"""Command-line surface: every subcommand drives the real machinery."""

import io

import pytest

from cogkg.cli import main
from cogkg.cognition import Session
from cogkg.repl import repl
from cogkg.snapshot import load_snapshot


class TestBenchCommands:
    def test_bench_kg_prints_table(self, capsys):
        assert main(["bench", "kg", "--nodes", "500", "--calls", "1,10,100"]) == 0
        out = capsys.readouterr().out
        assert "mean us/call" in out and out.count("integrated") == 3

    def test_bench_qa_scores_corpus(self, tmp_path, capsys):
        from cogkg.corpus import gen_corpus, write_corpus

        write_corpus(gen_corpus(4, 20, 15, seed=8), tmp_path)
        code = main([
            "bench", "qa",
            "--statements", str(tmp_path / "statements.txt"),
            "--questions", str(tmp_path / "questions.txt"),
            "--expected", str(tmp_path / "expected.txt"),
        ])
        assert code == 0
        assert "accuracy: 100.00%" in capsys.readouterr().out


class TestGenCommands:
    def test_gen_percepts_to_file(self, tmp_path):
        out = tmp_path / "p.txt"
        assert main(["gen", "percepts", "--kind", "rolling", "--n", "4",
                     "--noise", "0", "--seed", "1", "-o", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines == ["1.000000 0.500000 8.000000"] * 4

    def test_gen_corpus_writes_directory(self, tmp_path, capsys):
        out_dir = tmp_path / "corpus"
        assert main(["gen", "corpus", "--entities", "4", "--statements", "15",
                     "--questions", "10", "--seed", "3", "-o", str(out_dir)]) == 0
        assert (out_dir / "statements.txt").exists()
        assert "wrote 15 statements / 10 questions" in capsys.readouterr().out


class TestRepl:
    def run_lines(self, text: str, session=None):
        out = io.StringIO()
        code = repl(session or Session(), stdin=io.StringIO(text), stdout=out)
        return code, out.getvalue()

    def test_tina_scenario_live(self):
        code, out = self.run_lines(
            "Tina wants a dog and a cat.\n"
            "Actually, Tina only wants a cat.\n"
            "What does Tina want?\n"
            ":quit\n"
        )
        assert code == 0
        assert "a cat" in out
        assert "surprise 0.90" in out

    def test_wm_command_shows_recent_mention(self):
        code, out = self.run_lines("Rover is a dog.\n:wm\n:quit\n")
        assert code == 0
        lines = [l for l in out.splitlines() if l.strip().startswith("0.")]
        assert lines and "Rover" in lines[0]

    def test_parse_error_keeps_session_alive(self):
        code, out = self.run_lines("Blorp.\nTina wants a cat.\nWhat does Tina want?\n:quit\n")
        assert code == 0
        assert "?!" in out and "a cat" in out

    def test_signals_command(self):
        code, out = self.run_lines("Tina wants a cat.\n:signals\n:quit\n")
        assert code == 0
        assert out.count("certainty 0.90") >= 2  # after the turn and via :signals

    def test_eof_exits_cleanly(self):
        assert self.run_lines("Tina wants a cat.\n")[0] == 0

    def test_save_and_load(self, tmp_path):
        snap = tmp_path / "s.kg"
        code, _ = self.run_lines(f"Tina wants a cat.\n:save {snap}\n:quit\n")
        assert code == 0 and snap.exists()
        graph = load_snapshot(snap)
        assert graph.find_by_label("Tina")
        code, out = self.run_lines(f":load {snap}\nWhat does Tina want?\n:quit\n")
        assert code == 0 and "a cat" in out
