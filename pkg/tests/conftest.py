import os

import numpy as np
import pytest

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "fixtures")


@pytest.fixture(scope="session")
def incbeta_table():
    """Rows (v, j, alpha, I_ref) from the 50-digit oracle table."""
    path = os.path.join(FIXTURE_DIR, "incbeta_oracle.tsv")
    rows = []
    with open(path) as fh:
        next(fh)
        for line in fh:
            v, j, alpha, ref = line.split("\t")
            rows.append((float(v), int(j), float(alpha), float(ref)))
    assert rows, "empty oracle table"
    return rows


@pytest.fixture()
def rng():
    return np.random.default_rng(987654321)
