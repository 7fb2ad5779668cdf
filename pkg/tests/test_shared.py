import json
import logging

import rich_ui
from utils import dump_json, ensure_directory, load_json_file, write_json_file


class TestUtils:
    def test_dump_json_is_canonical(self):
        text = dump_json({'b': 1, 'a': [1, 2]})
        assert text.endswith("\n")
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text) == {'a': [1, 2], 'b': 1}

    def test_write_and_load(self, tmp_path):
        path = write_json_file({'q': 1.1}, tmp_path / "nested" / "dir" / "report.json")
        assert path.exists()
        assert load_json_file(path) == {'q': 1.1}

    def test_load_failures_return_none(self, tmp_path, caplog):
        broken = tmp_path / "broken.json"
        broken.write_text("{")
        with caplog.at_level(logging.ERROR):
            assert load_json_file(broken) is None
            assert load_json_file(tmp_path / "missing.json") is None
        assert "Error loading" in caplog.text

    def test_ensure_directory(self, tmp_path):
        target = ensure_directory(tmp_path / "a" / "b")
        assert target.is_dir()
        assert ensure_directory(target) == target


class TestRichUI:
    def test_panels_stay_off_stdout(self, capsys):
        rich_ui.show_tool_header("star", "x1 x2")
        rich_ui.show_success_panel("star", "Done")
        rich_ui.show_failure_panel("verify", "1 properties failed", ["hopf/antipode"])
        rich_ui.rich_print("plain", style="bold")
        assert capsys.readouterr().out == ""

    def test_results_table(self, capsys):
        table = rich_ui.create_results_table([("q", 1.1), ("K", 500)], ("Field", "Value"), title="params")
        if rich_ui.RICH_AVAILABLE:
            assert table.row_count == 2
            assert [c.header for c in table.columns] == ["Field", "Value"]
        else:
            assert table is None
        assert capsys.readouterr().out == ""
