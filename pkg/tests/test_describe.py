from hypothesis import given
from hypothesis import strategies as st

from apimine.describe import (extract_description, primary_description,
                              returns_description, split_name)
from apimine.pysrc import FunctionUnit


def unit(name="f", docstring=None):
    return FunctionUnit(qualname=name, simple_name=name, docstring=docstring,
                        call_sites=[], local_defs=[], def_offset=0)


class TestPrimaryDescription:
    def test_stops_at_blank_line(self):
        assert primary_description("Copy a file.\n\nDetails.") == "Copy a file."

    def test_stop_word_on_first_line(self):
        assert primary_description(":param x: input") == ""

    def test_multi_line(self):
        text = "Sort items.\nStable sort.\n:returns: list"
        assert primary_description(text) == "Sort items. Stable sort."

    def test_case_insensitive_stop_words(self):
        assert primary_description("Do it.\nReturns: thing") == "Do it."


class TestReturnsDescription:
    def test_rest_style(self):
        assert returns_description(":returns: the sum") == "return the sum"

    def test_absent(self):
        assert returns_description("Does stuff.") == ""

    def test_plain_colon_style(self):
        assert returns_description("Returns: count\n\nNotes.") == "return count"

    def test_stops_at_param_block(self):
        text = "Read.\n:returns: a dict\n    of things\n:param x: input"
        assert returns_description(text) == "return a dict of things"


class TestSplitName:
    def test_snake(self):
        assert split_name("do_something") == "do something"

    def test_camel(self):
        assert split_name("doSomething") == "do something"

    def test_single_letter(self):
        assert split_name("x") == "x"

    def test_consecutive_uppercase(self):
        assert split_name("HTTPServer") == "h t t p server"

    @given(st.from_regex(r"[a-z]+(_[a-z]+)*", fullmatch=True))
    def test_snake_round_trip(self, name):
        out = split_name(name)
        assert split_name(out.replace(" ", "_")) == out

    @given(st.from_regex(r"[A-Za-z_][A-Za-z0-9_]*", fullmatch=True))
    def test_lowercase_and_no_underscores(self, name):
        out = split_name(name)
        assert out == out.lower()
        assert "_" not in out


class TestExtractDescription:
    def test_fig1_docstring(self):
        d = extract_description(unit(docstring="Add `./third_party` to `sys.path`.\n"))
        assert d.text == "Add `./third_party` to `sys.path`."
        assert d.source_kind == "docstring"

    def test_primary_plus_returns(self):
        doc = "Read config.\n\n:param path: file\n:returns: dict of settings\n"
        d = extract_description(unit(docstring=doc))
        assert d.text == "Read config. return dict of settings"

    def test_name_fallback(self):
        d = extract_description(unit(name="doSomething"))
        assert d == type(d)("do something", "name")

    def test_empty_docstring_falls_back(self):
        assert extract_description(unit(name="copy_file", docstring="")).text == "copy file"

    def test_stop_word_only_docstring_falls_back(self):
        d = extract_description(unit(name="get_x", docstring=":param a: b"))
        assert d.source_kind == "name" and d.text == "get x"

    def test_no_newlines_or_padding(self):
        doc = "  First line\n  second line\n"
        d = extract_description(unit(docstring=doc))
        assert d.text == "First line second line"
        assert d.text == d.text.strip() and "\n" not in d.text
