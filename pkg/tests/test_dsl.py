import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qorbital.cyclotomic import Cyclo
from qorbital.dsl import LayoutExpr, _Parser, build, parse_layout
from qorbital.errors import LayoutError, ParseError
from qorbital.magic import verify_magic


def test_parse_dual():
    e = parse_layout("dual(S3){(12), (123)}")
    assert e == LayoutExpr("dual", ("S3",), ("(12)", "(123)"))
    assert str(e) == "dual(S3){(12),(123)}"


def test_commas_inside_parentheses():
    e = parse_layout("dual(S10){(1,10)(2,3)}")
    assert e.reps == ("(1,10)(2,3)",)


def test_empty_braces():
    assert parse_layout("dual(Z1){}").reps == ()
    assert parse_layout("h2p").reps is None


@pytest.mark.parametrize("text,line,col", [
    ("dual(S3){(12,(123)}", 1, 10),
    ("kp{u0}\n  x", 2, 3),
    ("nope{u0}", 1, 1),
    ("  kp", 1, 3),
    ("lib(S3)", 1, 1),
    ("kp{u0,,w}", 1, 7),
])
def test_parse_errors(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_layout(text)
    assert (info.value.line, info.value.column) == (line, col)
    assert str(info.value).startswith(f"{line}:{col}: ")


_token = st.text(alphabet="abcxyz0123", min_size=1, max_size=4)
_perm = st.lists(st.integers(1, 9), min_size=1, max_size=3).map(lambda xs: "(" + ",".join(map(str, xs)) + ")")


@given(st.sampled_from(["dual", "kp", "h2p", "lib", "custom"]),
       st.lists(_token, max_size=2), st.none() | st.lists(_token | _perm, max_size=4))
def test_round_trip(kind, args, reps):
    e = LayoutExpr(kind, tuple(args), None if reps is None else tuple(reps))
    text = str(e)
    again = _Parser(text).parse()
    assert again == e
    assert str(again) == text


def test_build_kinds(tmp_path):
    assert build("kp{u0,x}").n == 6
    assert build("h2p").n == 4
    assert build("h2p{u0,x}").n == 6
    assert build("dual(Q8){i}").n == 4
    with pytest.raises(LayoutError):
        build("kp{}")


def test_custom_layout(tmp_path):
    one = Cyclo(1).to_json()
    f0, f1 = [[[0, 0, 0], one]], [[[1, 0, 0], one]]
    doc = {"blocks": [1, 1], "entries": [[f0, f1], [f1, f0]]}
    path = tmp_path / "swap.json"
    path.write_text(json.dumps(doc))
    b = build("custom(swap.json)", base_dir=tmp_path)
    assert b.n == 2
    assert verify_magic(b.u) == []
    (tmp_path / "bad.json").write_text("{\n  oops")
    with pytest.raises(ParseError) as info:
        build("custom(bad.json)", base_dir=tmp_path)
    assert info.value.line == 2
