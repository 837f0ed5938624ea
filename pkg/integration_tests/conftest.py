import json
import logging

import numpy
import pytest

from advlin import cli
from advlin.workbench import Workbench


SEED = 20240601


@pytest.fixture(scope="module")
def workbench():
    # Real logger, so failures come with the component's own messages
    yield Workbench(seed=SEED, logger=logging.getLogger("advlin.integration"))


@pytest.fixture(scope="function")
def rng():
    yield numpy.random.default_rng(SEED)


@pytest.fixture(scope="function")
def run_cli(capsys):
    # Run the console entry point and decode what it printed
    def _run(*argv):
        status = cli.main([str(a) for a in argv])
        out = capsys.readouterr().out
        try:
            return status, json.loads(out)
        except json.JSONDecodeError:
            return status, out
    yield _run
