"""
Configuration layers and run reports
"""
import json

import pytest
import yaml

from squarepeg import __version__
from squarepeg.config import Config
from squarepeg.errors import ConfigError
from squarepeg.geometry import Point2, Square
from squarepeg.report import RunReport, square_dict
from squarepeg.utils import parse_point


class TestConfig:

    def test_defaults(self):
        config = Config()
        assert config.obtuseness.delta == 1e-3
        assert config.inscribe.safety == 0.9
        assert config.oracle.eps is None

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("SQUAREPEG_DELTA", "0.05")
        monkeypatch.setenv("SQUAREPEG_START_GRID", "3")
        config = Config.from_env()
        assert config.obtuseness.delta == 0.05
        assert config.table.start_grid == 3

    def test_yaml_over_environment(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SQUAREPEG_DELTA", "0.05")
        path = tmp_path / "config.yaml"
        path.write_text(yaml.safe_dump({'table': {'level_tol': 1e-6}, 'logging': {'level': 'INFO'}}))
        config = Config.from_yaml(str(path))
        assert config.table.level_tol == 1e-6
        assert config.logging.level == 'INFO'
        assert config.obtuseness.delta == 0.05

    def test_updated_is_a_copy(self):
        config = Config()
        changed = config.updated({'obtuseness': {'grid': 16}})
        assert changed.obtuseness.grid == 16
        assert config.obtuseness.grid == 64

    def test_unknown_key(self):
        with pytest.raises(ConfigError):
            Config().updated({'table': {'legs': 4}})

    def test_unknown_section(self):
        with pytest.raises(ConfigError):
            Config().updated({'plotting': {}})

    @pytest.mark.parametrize("overrides", [
        {'obtuseness': {'delta': 0.0}},
        {'inscribe': {'safety': 1.5}},
        {'table': {'level_tol': -1.0}},
        {'oracle': {'n_boundary': 8}},
    ])
    def test_invalid_values(self, overrides):
        with pytest.raises(ConfigError):
            Config().updated(overrides)

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            Config.from_yaml(str(tmp_path / "nope.yaml"))

    def test_yaml_syntax_error_reports_position(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("table:\n  side: 1\n  start_grid: [3\n")
        with pytest.raises(ConfigError, match=r"line \d+, column \d+") as info:
            Config.from_yaml(str(path))
        assert isinstance(info.value.__cause__, yaml.YAMLError)

    def test_yaml_must_be_a_mapping(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigError):
            Config.from_yaml(str(path))


class TestRunReport:

    def test_round_trip(self, tmp_path):
        report = RunReport(
            command='witness',
            input={'point': (0.0, 1.0)},
            config=Config().as_dict(),
            results={'square': square_dict(Square(Point2(0.5, 0.5), 1.0))},
            timing={'witness': 0.25},
        )
        assert report.version == __version__
        path = tmp_path / "out" / "report.json"
        report.save(str(path))
        loaded = RunReport.from_json(path.read_text())
        assert loaded == report
        assert loaded.input['point'] == [0.0, 1.0]

    def test_without_timing(self):
        report = RunReport(command='table', input={}, config={}, timing={'solve_table': 1.0})
        assert 'timing' not in json.loads(report.to_json(include_timing=False))


@pytest.mark.parametrize("text, expected", [
    ("1,2", (1.0, 2.0)),
    (" -0.5 , 3e-1 ", (-0.5, 0.3)),
    ("1", None),
    ("a,b", None),
])
def test_parse_point(text, expected):
    assert parse_point(text) == expected
