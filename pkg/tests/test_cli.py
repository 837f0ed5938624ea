#! /usr/bin/env python
"""Tests for the command-line entry point"""

import json
from fractions import Fraction

import pytest

from advlin import cli, exceptions


def _config(argv, environ=None):
    args = cli.build_parser().parse_args(argv)
    return cli.config_from_args(args, environ or {})


@pytest.mark.parametrize("text,expected", [
    ('3', 3),
    ('-2/5', Fraction(-2, 5)),
    ('0.5', Fraction(1, 2)),
    ('inf', complex('inf')),
    ('1+2i', 1 + 2j),
])
def test_number(text, expected):
    """
    GIVEN numbers as typed on the command line
    WHEN they are parsed
    THEN integers, fractions and decimals stay exact and the rest is complex
    """
    assert cli._number(text) == expected


def test_ranges_and_grids():
    """
    GIVEN a range, a list and a grid
    WHEN they are parsed
    THEN the expected points come back, and a bad grid is refused
    """
    assert cli._int_range('1..4') == [1, 2, 3, 4]
    assert cli._int_range('2,5') == [2, 5]
    assert cli._grid('-1:1:3') == [-1.0, 0.0, 1.0]
    with pytest.raises(exceptions.MalformedInputException):
        cli._grid('-1:1')


def test_seed_resolution():
    """
    GIVEN --seed, the ADVLIN_SEED variable, both and neither
    WHEN the configuration is built
    THEN --seed wins, then the variable, then 0
    """
    argv = ['rmt', 'chars']
    assert _config(['--seed', '5'] + argv, {'ADVLIN_SEED': '9'}).seed == 5
    assert _config(argv, {'ADVLIN_SEED': '9'}).seed == 9
    assert _config(argv).seed == 0
    with pytest.raises(exceptions.MalformedInputException):
        _config(argv, {'ADVLIN_SEED': 'abc'})


def test_run_config_validation():
    """
    GIVEN a non-positive tolerance or budget
    WHEN a RunConfig is built
    THEN an InvalidParameterException is raised
    """
    with pytest.raises(exceptions.InvalidParameterException):
        cli.RunConfig('poly', 'roots', {}, tol=0)
    with pytest.raises(exceptions.InvalidParameterException):
        cli.RunConfig('poly', 'roots', {}, budgets={'wick': -1})


def test_run_discriminant():
    """
    GIVEN x^3 + 3x + 2 as ascending coefficients
    WHEN poly discriminant is run
    THEN the exact -216 comes back and the tolerance is marked unused
    """
    status, text = cli.run(_config(['poly', 'discriminant', '--coeffs', '2,3,0,1']))
    assert status == 0
    payload = json.loads(text)
    assert payload['result'] == -216
    assert payload['meta'] == {'seed': None, 'tol': cli.EXACT_NOTE}


def test_run_complete_graph_trees():
    """
    GIVEN K_4
    WHEN graph trees is run
    THEN 16 comes back
    """
    status, text = cli.run(_config(['graph', 'trees', '--complete', '4']))
    assert status == 0
    assert json.loads(text)['result'] == 16


def test_run_error_payload():
    """
    GIVEN a Paley order with the wrong residue
    WHEN special hadamard is run
    THEN the status is 1 and a structured error names the exception
    """
    status, text = cli.run(_config(['special', 'hadamard', '--kind', 'paley1', '--param', '5']))
    assert status == 1
    payload = json.loads(text)
    assert payload['error'] == 'InvalidParameterException'
    assert payload['context'] == {'command': 'special', 'action': 'hadamard'}
    assert payload['message']


def test_run_reuses_workbench(workbench):
    """
    GIVEN an existing Workbench
    WHEN a command is run with it
    THEN the workbench logger sees the work
    """
    status, _ = cli.run(_config(['graph', 'trees', '--complete', '3']), workbench)
    assert status == 0
    workbench.logger.debug.assert_called()


def test_csv_needs_rows():
    """
    GIVEN a command without tabular output
    WHEN it is run with --format csv
    THEN the run fails with an InvalidParameterException payload
    """
    status, text = cli.run(_config(['--format', 'csv', 'wg', 'catalan', '4']))
    assert status == 1
    assert json.loads(text)['error'] == 'InvalidParameterException'


def test_csv_law_table():
    """
    GIVEN the semicircle law on a grid of 3 points
    WHEN laws eval is run with --format csv
    THEN a header and one row per point come back
    """
    status, text = cli.run(_config(['--format', 'csv', 'laws', 'eval', '--law', 'semicircle',
                                    '--grid', '-3:3:3']))
    assert status == 0
    lines = text.splitlines()
    assert lines[0] == 'x,value'
    assert len(lines) == 4
    assert lines[1] == '-3.0,0.0'


def test_stochastic_output_carries_seed():
    """
    GIVEN a seeded character sample
    WHEN it is run twice
    THEN the outputs are byte-identical and record the seed
    """
    argv = ['--seed', '7', 'rmt', 'chars', '--N', '10', '--count', '50', '--k', '1..2']
    first = cli.run(_config(argv))
    second = cli.run(_config(argv))
    assert first == second
    assert json.loads(first[1])['meta']['seed'] == 7


def test_main_prints_result(capsys):
    """
    GIVEN argv for wg catalan 5
    WHEN main is called
    THEN 42 is printed and the exit status is 0
    """
    assert cli.main(['wg', 'catalan', '5']) == 0
    assert json.loads(capsys.readouterr().out)['result'] == 42


@pytest.mark.parametrize("text", ['abc', '1/0', ''])
def test_number_rejects(text):
    """
    GIVEN text that isn't a number
    WHEN it is parsed
    THEN a MalformedInputException is raised
    """
    with pytest.raises(exceptions.MalformedInputException):
        cli._number(text)


def test_number_list_and_range_reject():
    """
    GIVEN a parameter list of the wrong length and a broken range
    WHEN they are parsed
    THEN a MalformedInputException is raised
    """
    assert cli._number_list('1,2', 2) == [1, 2]
    with pytest.raises(exceptions.MalformedInputException):
        cli._number_list('1,2,3', 2)
    with pytest.raises(exceptions.MalformedInputException):
        cli._int_range('1..x')
    with pytest.raises(exceptions.MalformedInputException):
        cli._int_range('a,b')


@pytest.mark.parametrize("argv", [
    ['poly', 'classify', '--coeffs', '1,abc,3'],
    ['poly', 'roots', '--coeffs', '1/0,1'],
    ['poly', 'solve3', '1,2,3'],
    ['poly', 'solve4', '1,2'],
    ['laws', 'moment', '--law', 'bessel_s', '--s', 'two'],
    ['wg', 'gram', '--cat', 'P_s:x', '--N', '3'],
    ['rmt', 'compare', '--N', '4', '--count', '2', '--k', '1..x'],
])
def test_main_malformed_arguments(argv, capsys):
    """
    GIVEN arguments argparse accepts but that don't parse as numbers
    WHEN main is called
    THEN the exit status is 1 and a MalformedInputException payload is printed
    """
    assert cli.main(argv) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload['error'] == 'MalformedInputException'
    assert payload['context'] == {'command': argv[0], 'action': argv[1]}


def test_rmt_compare_colored_words():
    """
    GIVEN a seeded gaussian model and colored words
    WHEN rmt compare is run with repeated --word
    THEN each word is summarized against the circular law
    """
    argv = ['--seed', '2', 'rmt', 'compare', '--kind', 'gaussian', '--N', '20', '--count', '5',
            '--word', 'o*', '--word', 'oo', '--word', 'o*o*']
    status, text = cli.run(_config(argv))
    assert status == 0
    result = json.loads(text)['result']
    assert result['law'] == 'circular'
    rows = result['moments']
    assert [row['k'] for row in rows] == ['o*', 'oo', 'o*o*']
    assert [row['limit'] for row in rows] == pytest.approx([1.0, 0.0, 2.0])
    assert set(rows[0]) == {'k', 'empirical', 'limit', 'abs_err', 'stderr'}


def test_rmt_moments_differs_from_compare():
    """
    GIVEN the same seeded Wigner model
    WHEN rmt moments and rmt compare are run
    THEN only compare carries the limit law
    """
    argv = ['--N', '10', '--count', '3', '--k', '1..2']
    status, text = cli.run(_config(['--seed', '4', 'rmt', 'moments'] + argv))
    assert status == 0
    moments = json.loads(text)['result']
    assert set(moments['moments'][0]) == {'k', 'empirical', 'stderr'}
    assert 'law' not in moments
    status, text = cli.run(_config(['--seed', '4', 'rmt', 'compare'] + argv))
    compare = json.loads(text)['result']
    assert compare['law'] == 'semicircle'
    assert [row['limit'] for row in compare['moments']] == pytest.approx([0.0, 1.0])
