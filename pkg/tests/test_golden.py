"""Every worked example, through the same registry that ``painleve6 check --golden`` runs."""
import warnings

import pytest

from painleve6 import golden


def _param(g):
    marks = [pytest.mark.xfail(strict=True, reason=g.expected_failure)] if g.expected_failure else []
    return pytest.param(g, id=g.name, marks=marks)


@pytest.mark.parametrize("check", [_param(g) for g in golden.REGISTRY])
def test_golden(check):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ok, detail = check.fn()
    assert ok, detail


def test_registry_names_unique():
    names = [g.name for g in golden.REGISTRY]
    assert len(names) == len(set(names))


def test_suites_refer_to_registry():
    names = {g.name for g in golden.REGISTRY}
    for suite in golden.SUITES.values():
        assert set(suite) <= names
