import numpy as np
import pytest
from numpy.testing import assert_allclose

import opmeanlab as ol
from opmeanlab import SpectralBand, SymMatrix
from opmeanlab.matio import (
    format_sym_matrix,
    read_general_matrix,
    read_sym_matrix,
    write_sym_matrix,
)


def test_round_trip_is_bitwise(tmp_path):
    rng = np.random.default_rng(21)
    m = ol.random_spd(4, SpectralBand(0.3, 5.0), rng=rng)
    path = tmp_path / "m.txt"
    write_sym_matrix(path, m)
    back = read_sym_matrix(path)
    assert np.array_equal(back.data, m.data)


def test_format_shape():
    text = format_sym_matrix(SymMatrix.identity(2))
    lines = text.splitlines()
    assert lines[0] == "2"
    assert len(lines) == 3
    assert text.endswith("\n")


def test_comments_and_blank_lines_skipped(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("# a 2x2 example\n\n2\n1 0\n\n# trailing note\n0 2\n")
    m = read_sym_matrix(path)
    assert_allclose(m.data, np.diag([1.0, 2.0]))


def test_rectangular_header(tmp_path):
    path = tmp_path / "r.txt"
    path.write_text("3 2\n1 0\n0 1\n0 0\n")
    frame = read_general_matrix(path)
    assert frame.shape == (3, 2)


def test_rejects_square_read_of_rectangular(tmp_path):
    path = tmp_path / "r.txt"
    path.write_text("3 2\n1 0\n0 1\n0 0\n")
    with pytest.raises(ValueError, match="square"):
        read_sym_matrix(path)


@pytest.mark.parametrize(
    "body, message",
    [
        ("", "empty"),
        ("2 2 2\n1 0\n0 1\n", "header"),
        ("0\n", "positive"),
        ("2\n1 0\n", "expected 2 rows"),
        ("2\n1 x\n0 1\n", "non-numeric"),
        ("2 3\n1 0\n0 1\n", "shape"),
    ],
)
def test_malformed_files(tmp_path, body, message):
    path = tmp_path / "bad.txt"
    path.write_text(body)
    with pytest.raises(ValueError, match=message):
        read_sym_matrix(path)


def test_asymmetry_warns_and_averages(tmp_path):
    path = tmp_path / "a.txt"
    path.write_text("2\n1 0.5\n0.1 1\n")
    with pytest.warns(UserWarning, match="asymmetry"):
        m = read_sym_matrix(path)
    assert_allclose(m.data[0, 1], 0.3)
    assert_allclose(m.data[1, 0], 0.3)


def test_tiny_asymmetry_is_silent(tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("2\n1 0.5\n0.5000000000001 1\n")
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("error")
        m = read_sym_matrix(path)
    assert_allclose(m.data[0, 1], m.data[1, 0])


def test_missing_file():
    with pytest.raises(OSError):
        read_sym_matrix("/nonexistent/never.txt")
