import pytest

from core.errors import InputError, NumericalError, SizeError, VerificationFailed
from core.settings import Settings, ToleranceSettings


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("HODGESEQ_CELL_BUDGET", "1234")
    monkeypatch.setenv("HODGESEQ_TOL_CLUSTER", "1e-6")
    configured = Settings()
    assert configured.CELL_BUDGET == 1234
    assert configured.tol.CLUSTER == pytest.approx(1e-6)
    assert configured.tol.RANK == pytest.approx(1e-10)


def test_with_overrides_keeps_unset_values():
    base = Settings(CELL_BUDGET=100, tol=ToleranceSettings(VERIFY=1e-7))
    updated = base.with_overrides(cell_budget=None, tol_verify=1e-3, tol_cluster=None)
    assert updated.CELL_BUDGET == 100
    assert updated.tol.VERIFY == pytest.approx(1e-3)
    assert updated.tol.CLUSTER == base.tol.CLUSTER
    assert base.tol.VERIFY == pytest.approx(1e-7)


def test_error_diagnostics_and_exit_codes():
    assert InputError("bad dims", "cli").diagnostic() == "cli: bad dims"
    assert InputError("bad dims").component == "hodgeseq"
    assert SizeError("too many cells", 10, "cell-complex").exit_code == 2
    assert NumericalError("no convergence", "hodge-core").exit_code == 1
    assert VerificationFailed("failed").exit_code == 1
    assert isinstance(InputError("x"), ValueError)
