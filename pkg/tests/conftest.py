import os

import pytest


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the degree-16 oracle case")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow") or os.environ.get("CYCLEPROD_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="slow: pass --runslow or set CYCLEPROD_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
