import pytest

from laurentcc.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, acceptance_log):
    result = run_criterion(number)
    line = result.line()
    print(line)
    acceptance_log.append(line)
    assert result.ok, result.details
