from pathlib import Path

import pytest

from skinet.builder import BuildOptions, build_net
from skinet.parser import parse_skillset
from skinet.statespace import explore

ROOT = Path(__file__).resolve().parents[1]
SKILLSETS = ROOT / "skillsets"

TOGGLE = """
skillset toggle {
  resource { lamp { initial Off Off -> On On -> Off } }
  event {
    switch_on { guard lamp == Off lamp -> On }
    switch_off { guard lamp == On lamp -> Off }
  }
}
"""


@pytest.fixture(scope="session")
def spot_text():
    return (SKILLSETS / "spot.skillset").read_text()


@pytest.fixture(scope="session")
def spot(spot_text):
    return parse_skillset(spot_text)


@pytest.fixture(scope="session")
def spot_fixed():
    return parse_skillset((SKILLSETS / "spot_fixed.skillset").read_text())


@pytest.fixture(scope="session")
def spot_net(spot):
    return build_net(spot)


@pytest.fixture(scope="session")
def spot_graph(spot_net):
    return explore(spot_net)


@pytest.fixture(scope="session")
def spot_fixed_graph(spot_fixed):
    return explore(build_net(spot_fixed))


@pytest.fixture
def toggle():
    return parse_skillset(TOGGLE)


def options_variants():
    return [BuildOptions(), BuildOptions(keep_exit_places=False)]
