import pytest

from src.config import reset_settings
from src.harness.corpus import C7_C3, V4_C3
from src.harness.dsl import build_group


@pytest.fixture(autouse=True)
def fresh_settings():
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def sym3():
    return build_group("sym(3)")


@pytest.fixture
def alt4():
    return build_group("alt(4)")


@pytest.fixture
def c7c3():
    return build_group(C7_C3)


@pytest.fixture
def v4c3():
    return build_group(V4_C3)


@pytest.fixture
def sym3_alt4():
    return build_group("direct(sym(3), alt(4))")
