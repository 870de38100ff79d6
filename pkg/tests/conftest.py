import pytest

from maxmatch.annotations import Edit, EditSet

WORKED_SOURCE = "There is no a doubt , tracking system has brought many benefits in this information age .".split()
WORKED_HYPOTHESIS = "There is no doubt , tracking system has brought many benefits in this information age .".split()
SAMPLE_PARAGRAPH = "From past to the present, many important innovations have surfaced."
SAMPLE_SGML = """<MISTAKE start_par="0" start_off="5" end_par="0" end_off="9">
<TYPE>ArtOrDet</TYPE>
<CORRECTION>the past</CORRECTION>
</MISTAKE>
"""


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, f"rep_{rep.when}", rep)


@pytest.fixture
def worked_pair():
    return WORKED_SOURCE, WORKED_HYPOTHESIS


@pytest.fixture
def worked_gold():
    # {a doubt -> doubt, system -> systems, has -> have}
    return EditSet(0, (
        Edit(3, 5, ("doubt",), "ArtOrDet"),
        Edit(7, 8, ("systems",), "Nn"),
        Edit(8, 9, ("have",), "SVA"),
    ))


@pytest.fixture
def worked_gold_deletion():
    # {a -> eps, system -> systems, has -> have}
    return EditSet(0, (
        Edit(3, 4, (), "ArtOrDet"),
        Edit(7, 8, ("systems",), "Nn"),
        Edit(8, 9, ("have",), "SVA"),
    ))
