import json
import math

import pytest

from qspace.cli import create_parser, load_params, main
from qspace.expression import parse_expression, render_polyfun


def run(capsys, *argv):
    code = main(list(argv) + ['--no-timing'])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


class TestVerbs:
    def test_star(self, capsys):
        code, report = run(capsys, 'star', 'x1^2', 'x2')
        assert code == 0
        assert report['result']['text'] == "x1^2*x2"
        assert report['ordering'] == 'standard'
        assert 'timing' not in report

    def test_reversed_star(self, capsys):
        code, report = run(capsys, 'star', 'x1', 'x2', '--ordering', 'reversed')
        assert code == 0
        assert report['result']['text'] == "q*x1*x2"

    def test_pair(self, capsys):
        code, report = run(capsys, 'pair', 'd1*d2', 'x2*x1')
        assert code == 0
        assert report['result']['text'] == "q"
        assert report['result']['value'] == pytest.approx(1.1)

    def test_translate(self, capsys):
        code, report = run(capsys, 'translate', 'x1')
        assert code == 0
        assert report['result']['text'] == "x1 + y1"
        assert report['result']['slots'] == ['x', 'y']

    def test_deriv(self, capsys):
        code, report = run(capsys, 'deriv', 'x2', '--which', '1')
        assert code == 0
        assert report['result']['text'] == "-q^(-1/2)"

    def test_laurent_deriv(self, capsys):
        code, report = run(capsys, 'deriv', 'x1^-2', '--which', '2')
        assert code == 0

    def test_exp(self, capsys):
        code, report = run(capsys, 'exp', '--N', '2')
        assert code == 0
        assert report['N'] == 2
        assert len(report['result']['terms']) == 6
        assert report['result']['slots'] == ['x', 'd']

    def test_formal_integral(self, capsys):
        code, report = run(capsys, 'integrate', 'x1', '--which', '1')
        assert code == 0
        assert report['limits'] == 'y..z'
        assert report['result']['slots'] == ['y', 'z']

    def test_whole_plane_integral(self, capsys):
        code, report = run(capsys, 'integrate', '1', '--limits', 'space')
        q = 1.1
        expected = -q * math.pi * ((q * q - 1) / math.log(q * q)) ** 2
        assert code == 0
        assert report['result']['value'] == pytest.approx(expected, rel=1e-8)
        assert report['variant'] == 'L'

    def test_line_integral(self, capsys):
        code, report = run(capsys, 'integrate', '1', '--space', 'euclid3', '--limits', '-inf..inf', '--which', '2')
        assert code == 0
        assert report['which'] == 2
        assert report['result']['value'] > 0

    def test_mink_deriv(self, capsys):
        code, report = run(capsys, 'mink-deriv', 'r2*xp', '--which', '+')
        assert code == 0
        assert report['space'] == 'minkowski_radial'
        code, report = run(capsys, 'mink-deriv', 'x30', '--which', '+', '--inverse')
        assert code == 0
        assert 'series_terms' in report
        assert report['resummed'] is False or report['resummed'] is True

    def test_mink_flip(self, capsys):
        text = "r2^2*x30 + r2*xp^3 + 3*r2*xm^2"
        code, report = run(capsys, 'mink-flip', text)
        assert code == 0
        assert report['result']['text'] == render_polyfun(parse_expression(text, 'minkowski_radial'))


class TestUsageErrors:
    @pytest.mark.parametrize("argv", [
        ['star', 'x1^-1', 'x2'],
        ['star', 'x1'],
        ['braid', 'xp', 'xm', '--space', 'euclid3'],
        ['translate', 'x1', '--variant', 'Q'],
        ['deriv', 'x1', '--which', '3'],
        ['star', 'x1 +', 'x2'],
        ['verify', 'bogus'],
        ['integrate', '1', '--space', 'minkowski', '--limits', 'space'],
        ['mink-deriv', 'xp', '--which', '5'],
        ['star', 'x1', 'x2', '--q', '0.5'],
    ])
    def test_exit_code_two(self, capsys, argv):
        code, report = run(capsys, *argv)
        assert code == 2
        assert report is None


class TestParameters:
    def test_config_file(self, capsys, tmp_path):
        config = tmp_path / "params.json"
        config.write_text(json.dumps({'q': 1.05}))
        code, report = run(capsys, 'pair', 'd1*d2', 'x2*x1', '--config', str(config))
        assert code == 0
        assert report['result']['value'] == pytest.approx(1.05)

    def test_flags_override_config(self, tmp_path):
        config = tmp_path / "params.json"
        config.write_text(json.dumps({'q': 1.05, 'K': 100}))
        args = create_parser().parse_args(['exp', '--config', str(config), '--q', '1.2'])
        params = load_params(args)
        assert params.q == 1.2
        assert params.K == 100

    def test_seed_from_environment(self, monkeypatch):
        monkeypatch.setenv('QSPACE_SEED', '7')
        assert load_params(create_parser().parse_args(['exp'])).seed == 7
        monkeypatch.setenv('QSPACE_SEED', 'seven')
        assert load_params(create_parser().parse_args(['exp'])).seed == 0

    @pytest.mark.parametrize("content", ['{"bogus": 1}', '[1, 2]', 'not json'])
    def test_bad_config(self, capsys, tmp_path, content):
        config = tmp_path / "params.json"
        config.write_text(content)
        code, _ = run(capsys, 'exp', '--config', str(config))
        assert code == 2


class TestVerify:
    ARGS = ('verify', 'pairing', '--degree', '2', '--samples', '2')

    def test_passes(self, capsys):
        code, report = run(capsys, *self.ARGS)
        assert code == 0
        assert report['results']['passed'] is True
        assert report['results']['suites']['pairing']['passed'] is True

    def test_deterministic(self, capsys):
        main(list(self.ARGS) + ['--no-timing'])
        first = capsys.readouterr().out
        main(list(self.ARGS) + ['--no-timing'])
        assert capsys.readouterr().out == first

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "out" / "report.json"
        code = main(list(self.ARGS) + ['--no-timing', '--output', str(target)])
        assert code == 0
        assert target.read_text() == capsys.readouterr().out

    def test_timing_section(self, capsys):
        assert main(list(self.ARGS)) == 0
        report = json.loads(capsys.readouterr().out)
        assert 'pairing' in report['timing']

    def test_table(self, capsys):
        assert main(['star', 'x1', 'x2', '--table', '--no-timing']) == 0
        captured = capsys.readouterr()
        assert json.loads(captured.out)['result']['text'] == "x1*x2"
