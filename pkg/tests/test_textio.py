import numpy as np
import pytest

from photonic.errors import InvalidSuperpositionError
from photonic.kinematics import Superposition
from photonic.textio import fmt, parse_superposition, read_superposition, write_superposition


def test_parse_skips_comments_and_blanks():
    s = parse_superposition("# rest pair\n\n1 0 0\n  -1   0 0  \n# end\n")
    np.testing.assert_array_equal(s.momenta, [[1, 0, 0], [-1, 0, 0]])


@pytest.mark.parametrize(
    "text, line",
    [
        ("1 0 0\n0 0 0\n", 2),
        ("# c\n1 0\n", 2),
        ("1 0 0\n\n1 x 0\n", 3),
        ("nan 0 0\n", 1),
    ],
)
def test_bad_lines_report_line_number(text, line):
    with pytest.raises(InvalidSuperpositionError) as info:
        parse_superposition(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_empty_file():
    with pytest.raises(InvalidSuperpositionError):
        parse_superposition("# nothing\n")


def test_round_trip_is_exact(tmp_path, rng):
    s = Superposition(rng.standard_normal((50, 3)) * 10 ** rng.uniform(-5, 5, (50, 1)))
    path = tmp_path / "s.txt"
    write_superposition(s, path, comments=["hello"])
    assert path.read_text().startswith("# hello\n")
    assert read_superposition(path) == s


def test_fmt_uses_17_significant_digits():
    assert fmt(0.1) == "0.10000000000000001"
    assert fmt(2.0) == "2"
    assert float(fmt(np.pi)) == np.pi
