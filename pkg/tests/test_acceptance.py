"""The ten acceptance criteria, each with its own time limit.

Every criterion prints one ``[PASS]``/``[FAIL]`` line straight to the
terminal (outside pytest's capture) so that the log shows the timings.
"""

import pytest

from pencilfree.acceptance import CRITERIA, SLOW, run_criterion


def _param(num, title):
    marks = [pytest.mark.slow] if num in SLOW else []
    return pytest.param(num, id=f"criterion_{num:02d}_{title.replace(' ', '_').replace(',', '')}", marks=marks)


@pytest.mark.parametrize("number", [_param(num, title) for num, title, _, _ in CRITERIA])
def test_criterion(number, capsys):
    res = run_criterion(number)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, res.detail
