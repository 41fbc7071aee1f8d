"""The numbered acceptance checks; each prints one PASS/FAIL line."""
import pytest

from paramsqueeze import acceptance


@pytest.mark.parametrize("check", acceptance.ALL, ids=[f"criterion_{i}" for i in range(1, len(acceptance.ALL) + 1)])
def test_criterion(check, acceptance_log):
    result = check()
    print(result.line())
    acceptance_log.append(result.line())
    assert result.passed, result.line()
