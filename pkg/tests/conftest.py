import pytest
from hypothesis import settings as hypothesis_settings

from gradus.config import settings
from gradus.poly.parsing import parse_polynomial
from gradus.poly.schemas import RingSpec, TypeTuple
from gradus.scalar.schemas import FieldSpec


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setattr(settings, "CACHE", tmp_path / "cache")
    return settings.CACHE


@pytest.fixture
def fp():
    return FieldSpec.prime(65537)


@pytest.fixture
def f7():
    return FieldSpec.prime(7)


@pytest.fixture
def qq():
    return FieldSpec.rationals()


@pytest.fixture
def p1():
    return RingSpec.projective(1)


@pytest.fixture
def p2():
    return RingSpec.projective(2)


@pytest.fixture
def p3():
    return RingSpec.projective(3)


@pytest.fixture
def s_ring():
    """S for type (2,2,2,2): all fiber weights zero."""
    return RingSpec.for_s(TypeTuple.of(2, 2, 2, 2))


@pytest.fixture
def parse():
    return parse_polynomial


hypothesis_settings.register_profile("gradus", deadline=None)
hypothesis_settings.load_profile("gradus")
