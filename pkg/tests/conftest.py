import glob
import json
import os

import pytest
from hypothesis import settings

from gsemi.ingest import CurvePresentation, compute_value_semigroup

settings.register_profile("suite", deadline=None, max_examples=50)
settings.load_profile("suite")

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CORPUS_DIR = os.path.join(REPO, "corpus")
DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")

# 20 fixed numerical semigroups for the canonical-ideal oracle gate
NUMERICAL_20 = [
    [2, 3], [2, 5], [2, 7], [2, 9],
    [3, 4], [3, 5], [3, 7], [3, 4, 5], [3, 5, 7], [3, 7, 8],
    [4, 5], [4, 6, 7], [4, 7, 9], [4, 9, 10, 11], [4, 6, 9, 11],
    [5, 6, 7, 8, 9], [5, 7, 9, 11, 13], [5, 8, 11, 12],
    [6, 7, 9, 10], [7, 8, 9, 10, 11, 12, 13],
]


@pytest.fixture(scope="session")
def corpus_dir() -> str:
    return CORPUS_DIR


@pytest.fixture(scope="session")
def corpus_docs() -> dict:
    docs = {}
    for path in sorted(glob.glob(os.path.join(CORPUS_DIR, "*.json"))):
        with open(path) as fh:
            docs[os.path.basename(path)] = json.load(fh)
    return docs


@pytest.fixture(scope="session")
def ingested(corpus_docs) -> dict:
    """name -> (curve, IngestResult) for every corpus item, computed once."""
    out = {}
    for name, doc in corpus_docs.items():
        curve = CurvePresentation.from_dict(doc)
        out[name] = (curve, compute_value_semigroup(curve))
    return out


@pytest.fixture(scope="session")
def tacnode_doc() -> dict:
    with open(os.path.join(DATA_DIR, "tacnode_curve.json")) as fh:
        return json.load(fh)
