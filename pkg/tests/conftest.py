from __future__ import annotations

import os

import pytest
from hypothesis import settings

from grouptk.catalog import default_catalog

settings.register_profile("default", max_examples=60, deadline=None)
settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def catalog():
    return default_catalog()


@pytest.fixture(scope="session")
def catalog_groups(catalog):
    """(label, group) pairs built once; lattice caches then persist across tests."""
    return [(e.label, e.build()) for e in catalog]
