import json

import pytest

from heckecat.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_weyl_orbit(capsys):
    code, out, _ = run(capsys, 'weyl', 'orbit', '--type', 'A1', '--p', '5', '--weight', '0', '--bound', '20')
    assert code == 0
    assert json.loads(out)['orbit'] == [[0], [8], [10], [18], [20]]


def test_weyl_length_and_word(capsys):
    code, out, _ = run(capsys, 'weyl', 'length', '--type', 'A1', '--p', '5', '--word', 's1s0s1')
    assert code == 0
    assert json.loads(out)['length'] == 3
    code, out, _ = run(capsys, 'weyl', 'word', '--type', 'A1', '--p', '5', '--word', 's0s1s1s0')
    assert json.loads(out)['reduced_word'] == 'e'


def test_malformed_weight_is_a_usage_error(capsys):
    code, _, err = run(capsys, 'weyl', 'orbit', '--type', 'A1', '--p', '5', '--weight', '1,x')
    assert code == 2
    assert 'weight' in err


def test_bad_prime_is_a_usage_error(capsys):
    code, _, _ = run(capsys, 'weyl', 'alcove', '--type', 'A1', '--p', '4', '--weight', '0')
    assert code == 2


def test_unknown_query_exits_through_argparse(capsys):
    with pytest.raises(SystemExit) as exc:
        main(['weyl', 'nope'])
    assert exc.value.code == 2


def test_unknown_suite(capsys):
    code, _, err = run(capsys, 'verify', 'nope', '--p', '5')
    assert code == 2
    assert 'nope' in err


def test_verify_weyl_suite(capsys):
    code, out, _ = run(capsys, 'verify', 'weyl', '--type', 'A1', '--p', '5', '--samples', '1')
    report = json.loads(out)
    assert code == 0
    assert report['passed']
    assert {c['name'] for c in report['checks']} >= {'weyl.involutions', 'weyl.torsion', 'weyl.bruhat_order'}


def test_tilt_matches_oracle(capsys):
    code, out, _ = run(capsys, 'tilt', '--type', 'A1', '--p', '5', '--bound', '12', '--samples', '1')
    payload = json.loads(out)
    assert code == 0
    assert payload['match']
    assert [row['n'] for row in payload['rows']] == list(range(13))


def test_tilt_needs_rank_one(capsys):
    code, _, _ = run(capsys, 'tilt', '--type', 'A2', '--p', '5', '--samples', '1')
    assert code == 2


def test_pcan_csv(capsys):
    code, out, _ = run(capsys, 'pcan', '--type', 'A1', '--p', '5', '--word', 's1s0', '--format', 'csv',
                       '--samples', '1')
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == 'w,y,p_h,h,equal'
    assert len(lines) == 5
    assert all(line.endswith('True') for line in lines[1:])


def test_budget_exceeded_reports_partial_results(capsys):
    code, out, _ = run(capsys, 'pcan', '--type', 'A1', '--p', '3', '--word', 's1s0s1', '--max-len', '1',
                       '--samples', '1')
    payload = json.loads(out)
    assert code == 3
    assert payload['partial'] is True


def test_config_file_and_flag_override(capsys, config_file):
    path = config_file('# run\ntype = A1\np = 5\nweight = 0\nbound = 20\n')
    code, out, _ = run(capsys, 'weyl', 'orbit', '--config', path)
    assert code == 0
    assert json.loads(out)['orbit'] == [[0], [8], [10], [18], [20]]
    code, out, _ = run(capsys, 'weyl', 'orbit', '--config', path, '--p', '7')
    assert json.loads(out)['orbit'] == [[0], [12], [14]]


def test_malformed_config_file(capsys, config_file):
    path = config_file('p 5\n')
    code, _, err = run(capsys, 'weyl', 'orbit', '--config', path)
    assert code == 2
    assert 'key = value' in err


def test_root_file_excludes_type(capsys, config_file):
    path = config_file('cartan = 2\n')
    code, _, _ = run(capsys, 'weyl', 'orbit', '--type', 'A1', '--root-file', path, '--weight', '0')
    assert code == 2


def test_output_file(tmp_path, capsys):
    target = tmp_path / 'orbit.json'
    code, out, _ = run(capsys, 'weyl', 'orbit', '--type', 'A1', '--p', '5', '--weight', '0', '--bound', '10',
                       '--out', str(target))
    assert code == 0
    assert out == ''
    assert json.loads(target.read_text())['orbit'] == [[0], [8], [10]]
