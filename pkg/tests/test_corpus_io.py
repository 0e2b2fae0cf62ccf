import datetime
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newsframes.corpus_io import (build_search_query, default_race_terms,
                                  load_corpus, load_events, load_lexicon,
                                  load_mft_dictionary, load_protest_counts,
                                  load_slants, parse_document, parse_documents,
                                  serialize_document, slant_for)
from newsframes.errors import (ConflictError, ParseError, SchemaError,
                               StructuralError, ValidationError)
from util import make_doc, make_event

SIMPLE = """\
# doc_id = x1
# event_id = ev
# source_domain = example.com
# publish_date = 2017-05-01
# text = He ran .
1\tHe\the\tPRON\t_\t_\t2\tnsubj\t_\tCharOffset=0|Coref=C1
2\tran\trun\tVERB\t_\t_\t0\tROOT\t_\tCharOffset=3
3\t.\t.\tPUNCT\t_\t_\t2\tpunct\t_\tCharOffset=7
"""


def test_parse_simple_document():
    doc = parse_document(SIMPLE)
    assert doc.doc_id == "x1"
    assert doc.publish_date == datetime.date(2017, 5, 1)
    assert doc.text == "He ran ."
    (sent,) = doc.sentences
    assert [t.surface for t in sent] == ["He", "ran", "."]
    # Heads become 0-based ordinals; the CoNLL-U 0 head is a self-loop.
    assert sent[0].head == 1
    assert sent[1].head == 1
    assert sent[0].coref_chain == "C1"
    assert doc.coref_chains == {"C1": [(0, 0, 0)]}


def test_round_trip_mini_corpus(mini_corpus):
    for doc in mini_corpus:
        again = parse_document(serialize_document(doc))
        assert again.doc_id == doc.doc_id
        assert again.text == doc.text
        assert again.sentences == doc.sentences
        assert again.coref_chains == doc.coref_chains


def test_wrong_column_count_reports_line():
    bad = SIMPLE.replace("3\t.\t.\tPUNCT\t_\t_\t2\tpunct\t_\tCharOffset=7",
                         "3\t.\t.\tPUNCT\t_\t_\t2\tpunct\tCharOffset=7")
    with pytest.raises(ParseError) as err:
        parse_document(bad)
    assert err.value.line == 8


def test_missing_header_is_schema_error():
    bad = "\n".join(line for line in SIMPLE.splitlines()
                    if not line.startswith("# publish_date"))
    with pytest.raises(SchemaError):
        parse_document(bad)


def test_head_out_of_range_is_structural_error():
    bad = SIMPLE.replace("1\tHe\the\tPRON\t_\t_\t2\tnsubj",
                         "1\tHe\the\tPRON\t_\t_\t9\tnsubj")
    with pytest.raises(StructuralError):
        parse_document(bad)


def test_missing_char_offset_is_schema_error():
    bad = SIMPLE.replace("CharOffset=3", "Foo=3")
    with pytest.raises(SchemaError):
        parse_document(bad)


def test_non_increasing_offsets_rejected():
    bad = SIMPLE.replace("CharOffset=3", "CharOffset=0")
    with pytest.raises(StructuralError):
        parse_document(bad)


def test_token_overrunning_text_rejected():
    bad = SIMPLE.replace("CharOffset=7", "CharOffset=8")
    with pytest.raises(StructuralError):
        parse_document(bad)


def test_multiple_documents_in_one_file():
    two = SIMPLE + "\n" + SIMPLE.replace("x1", "x2")
    docs = parse_documents(two)
    assert [d.doc_id for d in docs] == ["x1", "x2"]
    with pytest.raises(SchemaError):
        parse_document(two)


def test_coref_chains_are_maximal_runs():
    doc = make_doc([[
        ("Jordan", "jordan", "PROPN", 1, "compound", "PERSON", "C1"),
        ("Edwards", "edwards", "PROPN", 2, "nsubj", "PERSON", "C1"),
        ("saw", "see", "VERB", 2, "ROOT"),
        ("him", "he", "PRON", 2, "dobj", "", "C1"),
    ]])
    assert doc.coref_chains == {"C1": [(0, 0, 1), (0, 3, 3)]}


def test_load_corpus_rejects_duplicate_doc_id(tmp_path):
    (tmp_path / "a.conllu").write_text(SIMPLE, encoding="utf-8")
    (tmp_path / "b.conllu").write_text(SIMPLE, encoding="utf-8")
    with pytest.raises(ConflictError):
        load_corpus(tmp_path)


def test_load_corpus_requires_files(tmp_path):
    with pytest.raises(SchemaError):
        load_corpus(tmp_path)


# ---------------------------------------------------------------------------
# Events

def _event_line(**overrides):
    rec = dict(event_id="e1", victim_full_name="Jordan Edwards", age=15,
               gender="male", race="black", armed_status="unarmed",
               weapon_terms=[], fleeing=True, attack=False,
               mental_illness=False, video=True, date="2017-04-29")
    rec.update(overrides)
    return json.dumps(rec)


def _load_event_line(tmp_path, line):
    path = tmp_path / "events.jsonl"
    path.write_text(line + "\n", encoding="utf-8")
    return load_events(path)


def test_load_events_valid(tmp_path):
    events = _load_event_line(tmp_path, _event_line())
    assert events["e1"].age == 15
    assert events["e1"].date == datetime.date(2017, 4, 29)


def test_event_weapons_must_match_armed_status(tmp_path):
    with pytest.raises(ValidationError):
        _load_event_line(tmp_path, _event_line(armed_status="armed",
                                               weapon_terms=[]))
    with pytest.raises(ValidationError):
        _load_event_line(tmp_path, _event_line(armed_status="unarmed",
                                               weapon_terms=["knife"]))


def test_event_date_outside_window_rejected(tmp_path):
    with pytest.raises(ValidationError):
        _load_event_line(tmp_path, _event_line(date="2011-01-01"))


def test_event_invalid_gender_rejected(tmp_path):
    with pytest.raises(ValidationError):
        _load_event_line(tmp_path, _event_line(gender="m"))


def test_duplicate_event_id_rejected(tmp_path):
    path = tmp_path / "events.jsonl"
    path.write_text(_event_line() + "\n" + _event_line() + "\n",
                    encoding="utf-8")
    with pytest.raises(ConflictError):
        load_events(path)


# ---------------------------------------------------------------------------
# Slants, lexicons, protests

def test_load_slants_and_lookup(tmp_path):
    path = tmp_path / "slants.tsv"
    path.write_text("a.com\tleft\t-20\nb.com\tleast_biased\t\n",
                    encoding="utf-8")
    slants = load_slants(path)
    assert slants["a.com"].score == -20
    assert slants["b.com"].score is None
    assert slant_for(slants, "missing.com").label == "none"


def test_slant_sign_consistency(tmp_path):
    path = tmp_path / "slants.tsv"
    path.write_text("a.com\tleft\t20\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        load_slants(path)
    path.write_text("a.com\tright\t-20\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        load_slants(path)


def test_slant_unknown_label_rejected(tmp_path):
    path = tmp_path / "slants.tsv"
    path.write_text("a.com\tcentrist\t0\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        load_slants(path)


def test_lexicon_entries_must_be_lowercase(tmp_path):
    path = tmp_path / "lex.txt"
    path.write_text("Warrant\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        load_lexicon(path, "lex")


def test_mft_dictionary_rejects_unknown_category(tmp_path):
    path = tmp_path / "mft.tsv"
    path.write_text("kind\tkindness.virtue\n", encoding="utf-8")
    with pytest.raises(ValidationError):
        load_mft_dictionary(path)


def test_default_race_terms_cover_known_races():
    table = default_race_terms()
    assert "black" in table["black"]
    assert "white" in table["white"]
    assert "hispanic" in table["hispanic"]


def test_protest_counts(tmp_path):
    path = tmp_path / "protests.csv"
    path.write_text("date,count\n2017-05-01,4\n2017-05-02,6\n",
                    encoding="utf-8")
    counts = load_protest_counts(path)
    assert counts[datetime.date(2017, 5, 2)] == 6
    path.write_text("date,count\n2017-05-01,4\n2017-05-01,6\n",
                    encoding="utf-8")
    with pytest.raises(ConflictError):
        load_protest_counts(path)


# ---------------------------------------------------------------------------
# Search queries

EXPECTED_EDWARDS_QUERY = (
    "(Jordan Edwards OR Jordan OR Edwards) "
    "AND (shooting OR shot OR killed OR died OR fight OR gun) "
    "AND (police OR officer OR officers OR law OR enforcement "
    "OR cop OR cops OR sheriff OR patrol) "
    "after:2017-04-28 before:2017-05-29"
)


def test_query_builder_full_name():
    assert build_search_query(make_event()) == EXPECTED_EDWARDS_QUERY


def test_query_builder_single_token_name_dedupes():
    event = make_event(victim_full_name="Prince",
                       date=datetime.date(2017, 5, 23))
    query = build_search_query(event)
    assert query.startswith("(Prince) AND ")
    assert query.endswith("after:2017-05-22 before:2017-06-22")


def test_query_builder_requires_name():
    with pytest.raises(ValidationError):
        build_search_query(make_event(victim_full_name="  "))


# ---------------------------------------------------------------------------
# Round-trip property

SURFACES = st.text(alphabet="abcXY.,0123456789", min_size=1, max_size=6)


@st.composite
def random_docs(draw):
    n_sents = draw(st.integers(1, 3))
    sentences = []
    for _ in range(n_sents):
        n = draw(st.integers(1, 5))
        sent = []
        for _i in range(n):
            head = draw(st.integers(0, n - 1))
            ent = draw(st.sampled_from(["", "PERSON", "GPE"]))
            coref = draw(st.sampled_from(["", "C1", "C2"]))
            sent.append((draw(SURFACES), draw(SURFACES), "NOUN", head,
                         "dep", ent, coref))
        sentences.append(sent)
    return make_doc(sentences)


@given(random_docs())
@settings(max_examples=60, deadline=None)
def test_serialize_parse_round_trip(doc):
    again = parse_document(serialize_document(doc))
    assert again.sentences == doc.sentences
    assert again.text == doc.text
    assert again.coref_chains == doc.coref_chains
