import json
from pathlib import Path

import pytest

import start
from EulerSeries import closed_forms
from EulerSeries.config import CliConfig, EvaluationSettings
from EulerSeries.errors import ConfigError
from EulerSeries.zeta_expr import ZetaExpr
from NumericOracles.verification import ACCEPTANCE_GRID

GOLDEN = Path(__file__).parent / 'golden'

EVAL_CASES = [
    ['sigma', '--n', '1', '--p', '2'],
    ['delta', '--n', '2', '--p', '3'],
    ['tau', '--n', '2', '--p', '2'],
    ['delta', '--n', '4', '--p', '1'],
    ['chi', '--p', '1', '--n', '1', '--m', '2'],
    ['rho', '--n', '0', '--m', '2'],
    ['mu', '--p', '2', '--r', '1'],
    ['mu', '--p', '2', '--r', '2'],
    ['tau', '--n', '5', '--p', '3'],
    ['wmoment', '--p', '2', '--m', '1'],
]


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ('EULER_SERIES_DIGITS', 'EULER_SERIES_KMAX', 'EULER_SERIES_DELTA_ROUTE', 'EULER_SERIES_CROSS_CHECK'):
        monkeypatch.delenv(name, raising=False)


def run(capsys, *argv):
    code = start.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.mark.parametrize('fmt, golden', [('text', 'eval_text.txt'), ('json', 'eval_json.txt')])
def test_eval_matches_golden_output(capsys, fmt, golden):
    output = []
    for case in EVAL_CASES:
        code, out, err = run(capsys, 'eval', *case, '--digits', '10', '--format', fmt)
        assert code == start.EXIT_OK, err
        output.append(out)
    assert ''.join(output) == (GOLDEN / golden).read_text(encoding='utf-8')


def test_eval_json_parses_back(capsys):
    code, out, _ = run(capsys, 'eval', 'delta', '--n', '2', '--p', '3', '--digits', '10', '--format', 'json')
    assert code == 0
    row = json.loads(out)
    assert row['closed_form'] == {"const": "13/8", "zeta": {"2": "-3/2", "3": "1"}, "digamma": None}
    assert row['spec'] == {"family": "delta", "n": 2, "p": 3}


def test_eval_half_integer_moment(capsys):
    code, out, _ = run(capsys, 'eval', 'mu', '--p', '2', '--r', '1/2', '--digits', '15')
    assert code == 0
    assert out.splitlines()[0] == "mu(p=2, r=1/2) = 2*zeta(2) - 4*(psi(3/2) + gamma)"


def test_eval_delta_routes_agree(capsys):
    _, recursive, _ = run(capsys, 'eval', 'delta', '--n', '3', '--p', '4')
    _, integral, _ = run(capsys, 'eval', 'delta', '--n', '3', '--p', '4', '--delta-route', 'integral')
    assert recursive == integral


def test_usage_errors_exit_2(capsys):
    cases = [
        ['eval', 'delta', '--n', '2'],                      # missing --p
        ['eval', 'zeta', '--n', '2'],                       # unknown family
        ['eval', 'tau', '--n', '1', '--p', '2'],            # divergent
        ['eval', 'mu', '--p', '2', '--r', '-1'],            # r <= 0
        ['eval', 'chi', '--p', '1', '--n', '3', '--m', '2'],
        ['eval', 'sigma', '--n', '1', '--p', '2', '--digits', '5'],
        ['table', 'delta', '--n', 'x..y', '--p', '2'],
        ['verify', 'all', '--kmax', '5'],
        ['frobnicate'],
    ]
    for argv in cases:
        code, out, err = run(capsys, *argv)
        assert code == start.EXIT_USAGE, argv
        assert err.startswith('error: '), argv
        assert len(err.strip().splitlines()) == 1, argv


def test_environment_digits_with_command_line_override(capsys, monkeypatch):
    monkeypatch.setenv('EULER_SERIES_DIGITS', '12')
    code, out, _ = run(capsys, 'eval', 'delta', '--n', '2', '--p', '3')
    assert code == start.EXIT_OK
    assert out.splitlines()[1] == '  ~ 0.359655802887'

    code, out, _ = run(capsys, 'eval', 'delta', '--n', '2', '--p', '3', '--digits', '10')
    assert code == start.EXIT_OK
    assert out.splitlines()[1] == '  ~ 0.3596558029'


@pytest.mark.parametrize('name, value', [
    ('EULER_SERIES_DIGITS', 'abc'),
    ('EULER_SERIES_DIGITS', '5'),
    ('EULER_SERIES_KMAX', '1e5'),
    ('EULER_SERIES_DELTA_ROUTE', 'sideways'),
])
def test_invalid_environment_exits_2(capsys, monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    code, _, err = run(capsys, 'eval', 'delta', '--n', '2', '--p', '3')
    assert code == start.EXIT_USAGE
    assert err.startswith('error: ')


def test_environment_selects_delta_route(capsys, monkeypatch):
    _, baseline, _ = run(capsys, 'eval', 'delta', '--n', '3', '--p', '4', '--digits', '15')
    monkeypatch.setenv('EULER_SERIES_DELTA_ROUTE', 'integral')
    _, integral, _ = run(capsys, 'eval', 'delta', '--n', '3', '--p', '4', '--digits', '15')
    assert integral == baseline

    # 关闭比对后，输出只能来自积分路线
    monkeypatch.setenv('EULER_SERIES_CROSS_CHECK', '0')
    monkeypatch.setattr(closed_forms, 'delta_integral', lambda n, p: ZetaExpr.zeta(7))
    _, out, _ = run(capsys, 'eval', 'delta', '--n', '3', '--p', '4', '--digits', '15')
    assert out.splitlines()[0] == 'delta(n=3, p=4) = zeta(7)'

    _, out, _ = run(capsys, 'eval', 'delta', '--n', '3', '--p', '4', '--digits', '15',
                    '--delta-route', 'recursive')
    assert out == baseline


def test_config_from_env_precedence(monkeypatch):
    monkeypatch.setenv('EULER_SERIES_KMAX', '5000')
    monkeypatch.setenv('EULER_SERIES_DIGITS', '20')
    config = CliConfig.from_env(digits=None, k_max=None)
    assert (config.digits, config.k_max) == (20, 5000)
    config = CliConfig.from_env(digits=30, k_max=20_000)
    assert (config.digits, config.k_max) == (30, 20_000)

    monkeypatch.setenv('EULER_SERIES_CROSS_CHECK', 'no')
    assert EvaluationSettings.from_env() == EvaluationSettings(cross_check=False)


def test_menu(capsys):
    code, out, _ = run(capsys)
    assert code == 0
    assert 'python start.py verify all' in out


def test_table_rows_follow_parameter_order(capsys):
    code, out, _ = run(capsys, 'table', 'delta', '--n', '1..3', '--p', '2,3', '--format', 'csv', '--digits', '12')
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == 'family,params,closed_form,value'
    params = [line.split(',')[1] for line in lines[1:]]
    assert params == ['n=1;p=2', 'n=1;p=3', 'n=2;p=2', 'n=2;p=3', 'n=3;p=2', 'n=3;p=3']
    assert lines[1].startswith('delta,n=1;p=2,zeta(2) - 1,')


def test_table_text_and_json(capsys):
    code, out, _ = run(capsys, 'table', 'rho', '--n', '0,1', '--m', '2', '--digits', '10')
    assert code == 0
    assert out.splitlines()[0] == 'rho(n=0, m=2) = zeta(3)'
    assert out.splitlines()[2] == 'rho(n=1, m=2) = zeta(3) - 1'

    code, out, _ = run(capsys, 'table', 'mu', '--p', '2', '--r', '1/2,1', '--format', 'json', '--digits', '10')
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert [row['spec']['r'] for row in rows] == ['1/2', '1']


def test_parse_range():
    assert start.parse_range('1..4', 'n') == [1, 2, 3, 4]
    assert start.parse_range('3,1,3', 'n') == [1, 3]
    with pytest.raises(ConfigError):
        start.parse_range('4..1', 'n')
    with pytest.raises(ConfigError):
        start.parse_range('', 'n')


def test_verify_single_instance(capsys):
    code, out, _ = run(capsys, 'verify', 'delta', '--n', '3', '--p', '2', '--kmax', '20000', '--digits', '20')
    assert code == start.EXIT_OK
    assert out.startswith('PASS  delta(n=3, p=2) = zeta(2) - 49/36')
    assert 'PASS 1/1' in out


def test_verify_family_subset_as_json(capsys):
    code, out, _ = run(capsys, 'verify', 'rho', '--kmax', '2000', '--digits', '20', '--format', 'json')
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert [row['spec']['family'] for row in rows] == ['rho'] * 6
    assert all(row['verdict'] == 'PASS' for row in rows)


def test_verify_failure_exits_1(capsys, monkeypatch):
    from EulerSeries.zeta_expr import ZetaExpr
    from NumericOracles import verification

    monkeypatch.setattr(verification, 'evaluate', lambda spec, settings=None: ZetaExpr.rational(2))
    code, out, _ = run(capsys, 'verify', 'sigma', '--n', '1', '--p', '2', '--kmax', '2000', '--digits', '20',
                       '--format', 'csv')
    assert code == start.EXIT_FAIL
    assert out.splitlines()[1].endswith(',FAIL')


@pytest.mark.slow
def test_verify_all(capsys):
    code, out, _ = run(capsys, 'verify', 'all', '--kmax', '100000', '--jobs', '4')
    assert code == start.EXIT_OK
    assert out.count("PASS  ") == len(ACCEPTANCE_GRID)
