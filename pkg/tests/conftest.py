import pytest

from guardzone.config import preset_config


@pytest.fixture
def omni():
    return preset_config("omni-default")


@pytest.fixture
def sector3():
    return preset_config("sector3-default")
