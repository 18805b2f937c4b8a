import contextlib
import io
from pathlib import Path

import pytest

from specialperiods import Genus2Params, build_special_genus2, gamma_complete
from specialperiods.cli import main as cli_main

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def worked_case():
    """The tied genus-2 matrix with omega22 = 2*omega11 + omega12 and its base charge."""
    params = Genus2Params(omega11=1j, omega12=0.5j, M=1, N2=1, N3=0, N4hat=1)
    omega = build_special_genus2(params)
    base = gamma_complete(params, "+", 1, 1)
    return params, omega, base


@pytest.fixture(scope="session")
def fixture_matrix_path():
    return FIXTURES / "genus2_special.mat"


def run_cli(argv):
    """Invoke the CLI in process, capturing stdout."""
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(argv)
    return code, buf.getvalue()
