import json
from fractions import Fraction

import pytest

from tdpair.construct import leonard_from_parameter_array, random_parameter_array
from tdpair.errors import ParseError
from tdpair.linalg import Matrix
from tdpair.scalars import GF, QQ
from tdpair.serialize import (InputError, array_document, array_input, dumps, load, loads,
                              matrix_from_json, scalar_from_json, system_document, system_input)
from tdpair.split import parameter_array
from tdpair.tdcore import verify_td_system


def test_parse_error_reports_position():
    with pytest.raises(ParseError, match="line 2, column 3"):
        loads('{"a": 1,\n  oops}')


def test_missing_file(tmp_path):
    with pytest.raises(InputError):
        load(tmp_path / "absent.json")


def test_scalars():
    assert scalar_from_json(QQ, "-2/6") == Fraction(-1, 3)
    assert scalar_from_json(GF(7), 9) == 2
    for bad in (True, 1.5, None, [1]):
        with pytest.raises(ParseError):
            scalar_from_json(QQ, bad)
    with pytest.raises(ParseError):
        scalar_from_json(QQ, "1/0")


def test_matrix_forms():
    a = matrix_from_json(QQ, [["1", "2"], [3, "1/2"]])
    b = matrix_from_json(QQ, {"rows": 2, "cols": 2, "entries": [["1", "2"], [3, "1/2"]]})
    assert a == b == Matrix(QQ, [[1, 2], [3, QQ("1/2")]])
    assert matrix_from_json(QQ, a.to_json()) == a
    for bad in ([], [[]], [[1], [1, 2]], {"rows": 1, "cols": 1, "entries": [[1, 2]]},
                {"rows": 1, "entries": [[1]]}, "x"):
        with pytest.raises(ParseError):
            matrix_from_json(QQ, bad)


def test_system_document_round_trip():
    S = leonard_from_parameter_array(random_parameter_array(GF(101), 3, 9))
    doc = json.loads(dumps(system_document(S)))
    field, A, Astar, th, ts = system_input(doc)
    T = verify_td_system(A, Astar).reordered(th, ts)
    assert field == S.field and parameter_array(T) == parameter_array(S)


def test_system_input_errors():
    with pytest.raises(ParseError, match="missing 'field'"):
        system_input({"A": [[1]], "Astar": [[1]]})
    with pytest.raises(ParseError, match="Astar"):
        system_input({"field": {"type": "rational"}, "A": [[1]]})
    with pytest.raises(ParseError):
        system_input([1, 2])


def test_array_document_round_trip():
    arr = random_parameter_array(GF(13), 2, 4)
    assert array_input(json.loads(dumps(array_document(arr)))) == arr
    with pytest.raises(ParseError):
        array_input({"field": {"type": "rational"}, "thetas": ["0", "1"],
                     "theta_stars": ["0", "1"], "zetas": ["2", "1"]})
    with pytest.raises(ParseError, match="zetas"):
        array_input({"field": {"type": "rational"}, "thetas": ["0"], "theta_stars": ["0"]})
