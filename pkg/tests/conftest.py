import pytest

from duality_kit.modular import Segment


@pytest.fixture
def seg():
    def make(*values, m=12):
        return Segment(values, m)

    return make
