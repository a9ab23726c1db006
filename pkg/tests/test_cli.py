import json

import numpy as np
import pytest
import cstartools as ct


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run_json(capsys, argv):
    code = ct.cli.main(argv + ['--format', 'json'])
    out = capsys.readouterr().out
    assert code == 0, 'command ' + ' '.join(argv) + ' failed'
    return json.loads(out), out


def test_spectrum_identity(tmp_path, capsys):
    path = write(tmp_path, 'eye.json',
                 ct.matcore.matrix_to_json(np.eye(2)))
    report, _ = run_json(capsys, ['spectrum', path])
    assert report['eigenvalues'] == [[1., 0.], [1., 0.]],\
        'spectrum of I_2 is not {1, 1}'
    assert report['accepted'], 'residuals of I_2 are not accepted'


def test_funcalc_sqrt(tmp_path, capsys):
    path = write(tmp_path, 'a.json',
                 ct.matcore.matrix_to_json(np.diag([4., 9.])))
    report, _ = run_json(capsys, ['funcalc', path, '--fn', 'sqrt'])
    result = ct.matcore.matrix_from_json(report['result'])
    assert np.allclose(result, np.diag([2., 3.])), 'sqrt of diag(4, 9)'


def test_decompose_s3(capsys):
    report, _ = run_json(capsys, ['decompose', 'S3'])
    assert [b['block_size'] for b in report['blocks']] == [1, 1, 2],\
        'C*(S3) is not C (+) C (+) M_2'
    assert report['dim'] == 6, 'C*(S3) is not six dimensional'


def test_decompose_algebra_file(tmp_path, capsys):
    path = write(tmp_path, 'alg.json',
                 {'standard': {'sizes': [1, 2], 'multiplicities': [2, 1]}})
    report, _ = run_json(capsys, ['decompose', path])
    assert [(b['block_size'], b['multiplicity'])
            for b in report['blocks']] == [(1, 2), (2, 1)],\
        'wrong blocks of C (x) I_2 (+) M_2'


def test_group_table_file(tmp_path, capsys):
    path = write(tmp_path, 'z3.json',
                 ct.groups.group_to_json(ct.groups.cyclic(3)))
    report, _ = run_json(capsys, ['groupalg', path])
    assert report['matched'] and report['order'] == 3,\
        'group table file is not read'
    report, _ = run_json(capsys, ['dual', path])
    assert len(report['characters']) == 3, 'Z3 has three characters'


def test_svn(capsys):
    report, _ = run_json(capsys, ['svn', 'Z3'])
    assert report['is_single_block'] and report['block_size'] == 3,\
        'C(Z3) x| Z3 is not M_3'


def test_gns(tmp_path, capsys):
    alg_path = write(tmp_path, 'm2.json', {'standard': {'sizes': [2]}})
    state_path = write(tmp_path, 'trace.json', {'kind': 'trace'})
    report, _ = run_json(capsys, ['gns', alg_path, state_path])
    assert report['hilbert_dim'] == 4, 'tracial GNS of M_2 is not C^4'
    assert report['cyclicity_rank'] == 4, 'Omega is not cyclic'


def test_crossed(tmp_path, capsys):
    path = write(tmp_path, 'sys.json', {'kind': 'translation',
                                        'group': 'Z4'})
    report, _ = run_json(capsys, ['crossed', path])
    assert report['dim'] == 16, 'C(Z4) x| Z4 is not sixteen dimensional'
    assert report['relations']['max_residual'] <= 1e-10,\
        'crossed product relations fail'


def test_k0(tmp_path, capsys):
    report, _ = run_json(capsys, ['k0', 'equal', 'car', '1:1', '2:2'])
    assert report['verdict'] == 'equal', '1 and 2/2 differ in Z[1/2]'
    report, _ = run_json(capsys, ['k0', 'positive', 'car', '3:-1'])
    assert report['verdict'] == 'not_positive', '-1/4 is positive'
    path = write(tmp_path, 'hom.json', {'source_sizes': [1, 1],
                                        'target_sizes': [3],
                                        'multiplicities': [[1, 2]]})
    report, _ = run_json(capsys, ['k0', 'hom', path])
    assert report['multiplicity_matrix'] == [[1, 2]],\
        'wrong K_0 matrix of C^2 -> M_3'


def test_bratteli(capsys):
    report, _ = run_json(capsys, ['bratteli', 'car', '2:3', '3:6'])
    assert report['classes'][0]['value'] == '3/2', 'wrong dyadic value'
    assert report['equal'][0][1] == 'equal', '3/2 and 6/4 differ'
    assert report['levels'][:3] == [1, 1, 1], 'CAR levels are simple'


def test_morita(capsys):
    report, _ = run_json(capsys, ['morita', 'S3', '--subgroup', '0,3,4'])
    assert report['dim_A'] == 12 and report['dim_B'] == 3,\
        'wrong algebras for S3 / A3'
    assert report['blocks']['matched'], 'block counts differ'


@pytest.mark.parametrize('argv', [['decompose', 'S3'], ['svn', 'Z3'],
                                  ['bratteli', 'car', '1:1', '3:-4']])
def test_json_deterministic(capsys, argv):
    _, first = run_json(capsys, argv)
    _, second = run_json(capsys, argv)
    assert first == second, 'JSON output is not reproducible'


def test_text_format(capsys):
    assert ct.cli.main(['groupalg', 'S3']) == 0, 'text output failed'
    out = capsys.readouterr().out
    assert 'order: 6' in out, 'text report misses the group order'


def test_domain_error(capsys):
    assert ct.cli.main(['dual', 'S3']) == 1, 'domain error not reported'
    assert 'NotAbelianError' in capsys.readouterr().err,\
        'error kind missing from the message'


def test_input_errors(tmp_path, capsys):
    assert ct.cli.main(['spectrum', str(tmp_path / 'missing.json')]) == 2,\
        'missing file not reported'
    bad = tmp_path / 'bad.json'
    bad.write_text('{"rows": 2,')
    assert ct.cli.main(['spectrum', str(bad)]) == 2,\
        'invalid JSON not reported'
    assert ct.cli.main(['k0', 'equal', 'car', 'one', '2:2']) == 2,\
        'malformed class not reported'
    with pytest.raises(SystemExit) as err:
        ct.cli.main(['spectrum'])
    assert err.value.code == 2, 'argument error has the wrong exit status'


def test_seed_variable(monkeypatch):
    monkeypatch.setenv(ct.cli.SEED_VARIABLE, '5')
    assert ct.cli.default_run_param()['seed'] == 5,\
        'seed variable is ignored'
