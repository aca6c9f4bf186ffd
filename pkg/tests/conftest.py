import pytest

from xmasjump import HolidayCalendar


@pytest.fixture(scope="session")
def cal():
    return HolidayCalendar()
