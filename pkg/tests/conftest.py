import os

import pytest
from hypothesis import settings

from uniserial_tools.preferences import Preferences

settings.register_profile("fast", max_examples=10, deadline=None)
settings.register_profile("thorough", max_examples=100, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "fast"))


@pytest.fixture(autouse=True)
def fresh_preferences(monkeypatch):
    """
    Every test reads preferences from a clean environment.
    """
    for key in list(os.environ):
        if key.startswith("UNISERIAL_TOOLS_"):
            monkeypatch.delenv(key)
    Preferences.reset()
    yield
    Preferences.reset()
