import sys
from pathlib import Path

import pytest

DATA_DIR = Path(__file__).parent / "data"
sys.path.insert(0, str(Path(__file__).parent))

from apimine.apicalls import ApiCall, ApiSequence
from apimine.pipeline import DescApiPair


def make_pair(desc, calls, project="p", path="f.py", qualname="fn"):
    seq = ApiSequence(tuple(ApiCall(c) for c in calls))
    return DescApiPair(desc=desc, apiseq=seq, project=project, path=path,
                       qualname=qualname)


@pytest.fixture
def data_dir():
    return DATA_DIR
