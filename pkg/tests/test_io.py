import numpy as np
import pytest

from archefit import DataError
from archefit.io import ingest


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestWide:
    def test_basic(self, tmp_path):
        path = write(tmp_path, "temps.csv",
                     "station,1,2,3\n"
                     "a,10,11,12\n"
                     "b,20,21,22\n")
        groups = ingest(path, format="wide")
        assert list(groups) == ["temps"]
        curves = groups["temps"]
        assert [c.id for c in curves] == ["a", "b"]
        assert all(len(c) == 3 for c in curves)
        np.testing.assert_array_equal(curves[0].arguments, [1.0, 2.0, 3.0])

    def test_missing_cell_drops_point(self, tmp_path):
        path = write(tmp_path, "gaps.csv",
                     "id,1,2,3\n"
                     "a,10,,12\n"
                     "b,20,21,22\n")
        curves = ingest(path, format="wide")["gaps"]
        assert len(curves[0]) == 2
        np.testing.assert_array_equal(curves[0].arguments, [1.0, 3.0])
        assert len(curves[1]) == 3

    def test_empty_curve_is_named_error(self, tmp_path):
        path = write(tmp_path, "empty.csv", "id,1,2\nally,,\n")
        with pytest.raises(DataError, match="ally"):
            ingest(path, format="wide")

    def test_bad_cells_report_line_numbers(self, tmp_path):
        path = write(tmp_path, "bad.csv", "id,1,2\na,x,2\nb,1,2\n")
        with pytest.raises(DataError, match="line 2"):
            ingest(path, format="wide")

    def test_variable_name_override(self, tmp_path):
        path = write(tmp_path, "whatever.csv", "id,1\na,5\n")
        assert list(ingest(path, format="wide", variable="tfr")) == ["tfr"]

    def test_nonincreasing_header_rejected(self, tmp_path):
        path = write(tmp_path, "dec.csv", "id,3,2,1\na,1,2,3\n")
        with pytest.raises(DataError):
            ingest(path, format="wide")


class TestLong:
    def test_interleaved_variables_group_like_sorting(self, tmp_path):
        rows = ["id,variable,t,value"]
        rng = np.random.default_rng(0)
        records = []
        for cid in ("u", "v"):
            for var in ("x", "y"):
                for t in (1.0, 2.0, 3.0):
                    records.append((cid, var, t, float(rng.normal())))
        rng.shuffle(records)
        rows += [f"{c},{v},{t},{val}" for c, v, t, val in records]
        path = write(tmp_path, "long.csv", "\n".join(rows) + "\n")

        groups = ingest(path, format="long")
        assert set(groups) == {"x", "y"}
        # oracle: independent group-by on the raw records
        for var in ("x", "y"):
            for curve in groups[var]:
                expected = sorted(
                    (t, val) for c, v, t, val in records if c == curve.id and v == var
                )
                np.testing.assert_array_equal(curve.arguments, [t for t, _ in expected])
                np.testing.assert_array_equal(curve.values, [v for _, v in expected])

    def test_ids_ordered_by_first_appearance(self, tmp_path):
        path = write(tmp_path, "order.csv",
                     "id,variable,t,value\n"
                     "z,x,1,1\n"
                     "a,x,1,2\n"
                     "z,x,2,3\n")
        curves = ingest(path, format="long")["x"]
        assert [c.id for c in curves] == ["z", "a"]

    def test_missing_columns_rejected(self, tmp_path):
        path = write(tmp_path, "cols.csv", "id,t,value\na,1,2\n")
        with pytest.raises(DataError, match="long format needs"):
            ingest(path, format="long")

    def test_bad_rows_report_lines(self, tmp_path):
        path = write(tmp_path, "badlong.csv",
                     "id,variable,t,value\na,x,1,1\na,x,oops,2\n")
        with pytest.raises(DataError, match="line 3"):
            ingest(path, format="long")


def test_unknown_format():
    with pytest.raises(DataError):
        ingest("nope.csv", format="sideways")


def test_unreadable_file():
    with pytest.raises(DataError):
        ingest("/definitely/not/here.csv", format="wide")
