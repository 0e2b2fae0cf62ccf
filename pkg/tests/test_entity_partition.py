import datetime

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newsframes.entity_partition import (build_victim_matcher, is_human_token,
                                         match_officer, partition)
from util import make_doc, make_event, make_resources

PEOPLE = make_resources().people_nouns


def test_victim_matcher_name_gender_race_blocks():
    event = make_event(victim_full_name="Ronette Morales", gender="female",
                       race="hispanic",
                       date=datetime.date(2018, 6, 10))
    terms = {"ronette": frozenset({"ronette"})}
    matcher = build_victim_matcher(
        event,
        race_terms={"hispanic": frozenset({"hispanic", "latina", "latino",
                                           "mexican", "mexican-american",
                                           "immigrant"})})
    assert matcher.terms == frozenset({
        "ronette", "morales",
        "woman", "girl", "daughter", "mother", "sister", "female",
        "hispanic", "latina", "latino", "mexican", "mexican-american",
        "immigrant",
    })


def test_victim_matcher_unknown_gender_and_race():
    event = make_event(victim_full_name="Prince", gender="unknown",
                       race="unknown")
    matcher = build_victim_matcher(event, race_terms={})
    assert matcher.terms == frozenset({"prince"})


def test_victim_matcher_requires_name():
    with pytest.raises(ValueError):
        build_victim_matcher(make_event(victim_full_name=""), race_terms={})


OFFICER_POSITIVE = [
    "police", "Police", "officer", "officers", "sheriff", "deputies",
    "deputy", "trooper", "cop", "cops", "patrol", "gestapo", "twelve", "12",
    "PD", "SWAT", "FBI", "lieutenant", "law", "enforcement",
]
OFFICER_NEGATIVE = [
    "pd", "swat", "fbi", "copse", "lawful", "lawyer", "forced", "deputize",
    "pigment", "neighbor", "witness", "Edwards", "unite", "traffics",
]


@pytest.mark.parametrize("word", OFFICER_POSITIVE)
def test_officer_pattern_positive(word):
    assert match_officer(word)


@pytest.mark.parametrize("word", OFFICER_NEGATIVE)
def test_officer_pattern_negative(word):
    assert not match_officer(word)


def test_is_human_token():
    doc = make_doc([[
        ("Edwards", "edwards", "PROPN", 1, "nsubj"),
        ("saw", "see", "VERB", 1, "ROOT"),
        ("him", "he", "PRON", 1, "dobj"),
        ("neighbor", "neighbor", "NOUN", 1, "dobj"),
        ("car", "car", "NOUN", 1, "dobj"),
        ("Smith", "smith", "NOUN", 1, "dobj", "PERSON"),
    ]])
    (sent,) = doc.sentences
    flags = [is_human_token(t, PEOPLE) for t in sent]
    assert flags == [True, False, True, True, False, True]


def _partition(doc, event=None):
    event = event or make_event()
    matcher = build_victim_matcher(event, make_resources().race_terms)
    return partition(doc, matcher, PEOPLE)


def test_direct_seeds():
    doc = make_doc([[
        ("Edwards", "edwards", "PROPN", 2, "nsubjpass", "PERSON"),
        ("was", "be", "AUX", 2, "auxpass"),
        ("shot", "shoot", "VERB", 2, "ROOT"),
        ("by", "by", "ADP", 2, "prep"),
        ("officers", "officer", "NOUN", 3, "pobj"),
        (".", ".", "PUNCT", 2, "punct"),
    ]])
    part = _partition(doc)
    assert part.victim_tokens == {(0, 0)}
    assert part.officer_tokens == {(0, 4)}


def test_coref_propagation_to_pronoun():
    doc = make_doc([
        [("Edwards", "edwards", "PROPN", 1, "nsubj", "PERSON", "C1"),
         ("ran", "run", "VERB", 1, "ROOT"),
         (".", ".", "PUNCT", 1, "punct")],
        [("He", "he", "PRON", 1, "nsubj", "", "C1"),
         ("fell", "fall", "VERB", 1, "ROOT"),
         (".", ".", "PUNCT", 1, "punct")],
    ])
    part = _partition(doc)
    assert (1, 0) in part.victim_tokens


def test_propagation_requires_human_chain():
    # "white" seeds VICTIM via the race block, but its chain holds no
    # human-like token, so "it" must stay unassigned.
    doc = make_doc([
        [("white", "white", "ADJ", 1, "amod", "", "C9"),
         ("car", "car", "NOUN", 2, "nsubj", "", "C9"),
         ("stopped", "stop", "VERB", 2, "ROOT")],
        [("it", "it", "NOUN", 1, "nsubj", "", "C9"),
         ("left", "leave", "VERB", 1, "ROOT")],
    ])
    part = _partition(doc, make_event(race="white"))
    assert (0, 0) in part.victim_tokens
    assert (1, 0) not in part.victim_tokens


def test_both_seeds_prefer_victim(caplog):
    # "Law" is both a name token of this victim and an officer-pattern hit.
    doc = make_doc([[
        ("Law", "law", "PROPN", 1, "nsubj", "PERSON"),
        ("ran", "run", "VERB", 1, "ROOT"),
    ]])
    event = make_event(victim_full_name="Law Smith")
    with caplog.at_level("WARNING"):
        part = _partition(doc, event)
    assert part.victim_tokens == {(0, 0)}
    assert part.officer_tokens == set()
    assert any("both matchers" in rec.message for rec in caplog.records)


def test_chain_linked_to_both_sets_prefers_victim(caplog):
    doc = make_doc([
        [("Edwards", "edwards", "PROPN", 1, "nsubj", "PERSON", "C1"),
         ("ran", "run", "VERB", 1, "ROOT")],
        [("officer", "officer", "NOUN", 1, "nsubj", "", "C1"),
         ("ran", "run", "VERB", 1, "ROOT")],
        [("He", "he", "PRON", 1, "nsubj", "", "C1"),
         ("ran", "run", "VERB", 1, "ROOT")],
    ])
    with caplog.at_level("WARNING"):
        part = _partition(doc)
    # Direct assignments keep their set; the ambiguous pronoun goes to VICTIM.
    assert (0, 0) in part.victim_tokens
    assert (1, 0) in part.officer_tokens
    assert (2, 0) in part.victim_tokens
    assert not (part.victim_tokens & part.officer_tokens)


VOCAB = ["Edwards", "officer", "police", "he", "car", "man", "ran", "the",
         "woman", "deputies", "saw"]


@st.composite
def random_partition_docs(draw):
    n_sents = draw(st.integers(1, 3))
    sentences = []
    for _ in range(n_sents):
        n = draw(st.integers(1, 5))
        sent = []
        for _i in range(n):
            surface = draw(st.sampled_from(VOCAB))
            upos = draw(st.sampled_from(["NOUN", "PROPN", "PRON", "VERB"]))
            ent = draw(st.sampled_from(["", "PERSON"]))
            coref = draw(st.sampled_from(["", "C1", "C2"]))
            sent.append((surface, surface.lower(), upos,
                         draw(st.integers(0, n - 1)), "dep", ent, coref))
        sentences.append(sent)
    return make_doc(sentences)


@given(random_partition_docs())
@settings(max_examples=80, deadline=None)
def test_partition_sets_always_disjoint(doc):
    part = _partition(doc)
    assert not (part.victim_tokens & part.officer_tokens)
    # Direct victim matches can never be lost.
    matcher = build_victim_matcher(make_event(), make_resources().race_terms)
    for si, tok in doc.tokens():
        if tok.surface.lower() in matcher.terms:
            assert (si, tok.index) in part.victim_tokens
