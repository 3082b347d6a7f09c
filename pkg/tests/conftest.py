from __future__ import annotations

import pytest

from orbicoh.groups import builtin_group, make_family
from orbicoh.orbit import build_orbit_category


@pytest.fixture(scope="session")
def klein4():
    return builtin_group("klein4")


@pytest.fixture(scope="session")
def kcat(klein4):
    return build_orbit_category(klein4, make_family(klein4, "cyclic"))


@pytest.fixture(scope="session")
def s3():
    return builtin_group("symmetric:3")
