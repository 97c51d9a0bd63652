import csv
import os
from pathlib import Path

import numpy as np
import pytest

from archefit import SampledCurve

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def load_wide_curves(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    ts = np.array([float(x) for x in rows[0][1:]])
    curves = []
    for row in rows[1:]:
        mask = [j for j, cell in enumerate(row[1:]) if cell.strip() != ""]
        curves.append(
            SampledCurve(
                ts[mask], [float(row[1 + j]) for j in mask], id=row[0]
            )
        )
    return curves


@pytest.fixture(scope="session")
def canadian_curves():
    return load_wide_curves(DATA_DIR / "canadian_weather.csv")


@pytest.fixture(scope="session")
def world_curves():
    return {
        "tfr": load_wide_curves(DATA_DIR / "world_tfr.csv"),
        "leb": load_wide_curves(DATA_DIR / "world_leb.csv"),
    }
