import os
import sys

import pytest

# The built package (extension + __init__) is staged under the build tree.
_pkg_path = os.environ.get("PLATEAU_PYTHONPATH")
if _pkg_path and _pkg_path not in sys.path:
    sys.path.insert(0, _pkg_path)


@pytest.fixture(scope="session")
def cli_path():
    path = os.environ.get("PLATEAU_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("PLATEAU_CLI not set")
    return path


@pytest.fixture(scope="session")
def fixtures_dir():
    path = os.environ.get("PLATEAU_FIXTURES")
    if not path or not os.path.isdir(path):
        pytest.skip("PLATEAU_FIXTURES not set")
    return path
