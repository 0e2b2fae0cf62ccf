#!/usr/bin/env python3
"""Regenerate the hand-authored mini corpus under tests/fixtures/.

Each document is written as a list of sentences; each sentence is a list of
token tuples (surface, lemma, upos, head ordinal, deprel[, ent[, coref]]).
Character offsets are derived by joining all surfaces with single spaces.
The script also writes the event/slant/lexicon/gold/protest fixtures and then
runs the extraction pipeline, refusing to finish if the extracted frames or
moral-foundation rankings disagree with the authored gold labels.
"""

from __future__ import annotations

import datetime
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from newsframes.corpus_io import (MFT_CATEGORIES, ParsedDocument, Token,
                                  load_events, load_lexicon,
                                  load_mft_dictionary, parse_document,
                                  serialize_document)
from newsframes.frame_extract import FRAME_IDS, load_resources
from newsframes.pipeline import annotate_corpus

FIXTURES = ROOT / "tests" / "fixtures"


# ---------------------------------------------------------------------------
# Sentence templates.  Head ordinals are 0-based within the sentence; the
# root token points at itself.  Trees follow the spaCy convention (copula as
# a dependent of the verbal head, acomp/attr predicates, prep -> pobj).

def s_shot(first, last=None, coref="C1"):
    if last is None:
        return [
            (first, first.lower(), "PROPN", 2, "nsubjpass", "PERSON", coref),
            ("was", "be", "AUX", 2, "auxpass"),
            ("shot", "shoot", "VERB", 2, "ROOT"),
            ("by", "by", "ADP", 2, "prep"),
            ("a", "a", "DET", 6, "det"),
            ("police", "police", "NOUN", 6, "compound"),
            ("officer", "officer", "NOUN", 3, "pobj"),
            ("on", "on", "ADP", 2, "prep"),
            ("Saturday", "saturday", "PROPN", 7, "pobj"),
            (".", ".", "PUNCT", 2, "punct"),
        ]
    return [
        (first, first.lower(), "PROPN", 1, "compound", "PERSON", coref),
        (last, last.lower(), "PROPN", 3, "nsubjpass", "PERSON", coref),
        ("was", "be", "AUX", 3, "auxpass"),
        ("shot", "shoot", "VERB", 3, "ROOT"),
        ("by", "by", "ADP", 3, "prep"),
        ("a", "a", "DET", 7, "det"),
        ("police", "police", "NOUN", 7, "compound"),
        ("officer", "officer", "NOUN", 4, "pobj"),
        ("on", "on", "ADP", 3, "prep"),
        ("Saturday", "saturday", "PROPN", 8, "pobj"),
        (".", ".", "PUNCT", 3, "punct"),
    ]


def s_race(name, term, coref="C1"):
    return [
        (name, name.lower(), "PROPN", 1, "nsubj", "PERSON", coref),
        ("was", "be", "VERB", 1, "ROOT"),
        (term, term.lower(), "ADJ", 1, "acomp"),
        (".", ".", "PUNCT", 1, "punct"),
    ]


def s_age_unarmed(age):
    return [
        ("The", "the", "DET", 1, "det"),
        (f"{age}-year-old", f"{age}-year-old", "NOUN", 2, "nsubj"),
        ("was", "be", "VERB", 2, "ROOT"),
        ("unarmed", "unarmed", "ADJ", 2, "acomp"),
        (".", ".", "PUNCT", 2, "punct"),
    ]


def s_official():
    return [
        ("Police", "police", "NOUN", 1, "nsubj", "PERSON"),
        ("said", "say", "VERB", 1, "ROOT"),
        ("the", "the", "DET", 3, "det"),
        ("driver", "driver", "NOUN", 5, "nsubj"),
        ("had", "have", "AUX", 5, "aux"),
        ("refused", "refuse", "VERB", 1, "ccomp"),
        ("to", "to", "PART", 7, "aux"),
        ("stop", "stop", "VERB", 5, "xcomp"),
        (".", ".", "PUNCT", 1, "punct"),
    ]


def s_unofficial_flee(coref="C1"):
    return [
        ("A", "a", "DET", 1, "det"),
        ("neighbor", "neighbor", "NOUN", 2, "nsubj", "PERSON"),
        ("told", "tell", "VERB", 2, "ROOT"),
        ("reporters", "reporter", "NOUN", 2, "dobj"),
        ("that", "that", "SCONJ", 6, "mark"),
        ("he", "he", "PRON", 6, "nsubj", "", coref),
        ("ran", "run", "VERB", 2, "ccomp"),
        ("away", "away", "ADV", 6, "advmod"),
        (".", ".", "PUNCT", 2, "punct"),
    ]


def s_witness_claim():
    return [
        ("A", "a", "DET", 1, "det"),
        ("witness", "witness", "NOUN", 2, "nsubj", "PERSON"),
        ("claimed", "claim", "VERB", 2, "ROOT"),
        ("that", "that", "SCONJ", 6, "mark"),
        ("the", "the", "DET", 5, "det"),
        ("officers", "officer", "NOUN", 6, "nsubj"),
        ("acted", "act", "VERB", 2, "ccomp"),
        ("quickly", "quickly", "ADV", 6, "advmod"),
        (".", ".", "PUNCT", 2, "punct"),
    ]


def s_unarmed_witness(pron, coref=""):
    extra = ("", coref) if coref else ()
    return [
        ("Witnesses", "witness", "NOUN", 1, "nsubj", "PERSON"),
        ("insisted", "insist", "VERB", 1, "ROOT"),
        (pron, pron.lower(), "PRON", 3, "nsubj") + extra,
        ("was", "be", "VERB", 1, "ccomp"),
        ("unarmed", "unarmed", "ADJ", 3, "acomp"),
        (".", ".", "PUNCT", 1, "punct"),
    ]


def s_according_official():
    return [
        ("The", "the", "DET", 1, "det"),
        ("report", "report", "NOUN", 2, "nsubj"),
        ("blamed", "blame", "VERB", 2, "ROOT"),
        ("the", "the", "DET", 4, "det"),
        ("man", "man", "NOUN", 2, "dobj"),
        (",", ",", "PUNCT", 2, "punct"),
        ("according", "accord", "VERB", 2, "prep"),
        ("to", "to", "ADP", 6, "prep"),
        ("investigators", "investigator", "NOUN", 7, "pobj"),
        (".", ".", "PUNCT", 2, "punct"),
    ]


def s_according_friend():
    return [
        ("The", "the", "DET", 1, "det"),
        ("family", "family", "NOUN", 2, "nsubj"),
        ("gathered", "gather", "VERB", 2, "ROOT"),
        (",", ",", "PUNCT", 2, "punct"),
        ("according", "accord", "VERB", 2, "prep"),
        ("to", "to", "ADP", 4, "prep"),
        ("a", "a", "DET", 7, "det"),
        ("friend", "friend", "NOUN", 5, "pobj"),
        (".", ".", "PUNCT", 2, "punct"),
    ]


def s_legal():
    return [
        ("The", "the", "DET", 2, "det"),
        ("district", "district", "NOUN", 2, "compound"),
        ("attorney", "attorney", "NOUN", 3, "nsubj"),
        ("promised", "promise", "VERB", 3, "ROOT"),
        ("a", "a", "DET", 6, "det"),
        ("full", "full", "ADJ", 6, "amod"),
        ("trial", "trial", "NOUN", 3, "dobj"),
        (".", ".", "PUNCT", 3, "punct"),
    ]


def s_criminal_warrant():
    return [
        ("Court", "court", "NOUN", 1, "compound"),
        ("records", "record", "NOUN", 2, "nsubj"),
        ("showed", "show", "VERB", 2, "ROOT"),
        ("an", "an", "DET", 5, "det"),
        ("old", "old", "ADJ", 5, "amod"),
        ("warrant", "warrant", "NOUN", 2, "dobj"),
        ("for", "for", "ADP", 5, "prep"),
        ("cocaine", "cocaine", "NOUN", 8, "compound"),
        ("possession", "possession", "NOUN", 6, "pobj"),
        (".", ".", "PUNCT", 2, "punct"),
    ]


def s_parole(coref="C1"):
    return [
        ("He", "he", "PRON", 1, "nsubj", "", coref),
        ("was", "be", "VERB", 1, "ROOT"),
        ("on", "on", "ADP", 1, "prep"),
        ("parole", "parole", "NOUN", 2, "pobj"),
        ("after", "after", "ADP", 1, "prep"),
        ("a", "a", "DET", 7, "det"),
        ("robbery", "robbery", "NOUN", 7, "compound"),
        ("conviction", "conviction", "NOUN", 4, "pobj"),
        (".", ".", "PUNCT", 1, "punct"),
    ]


def s_mental_she(term, coref=""):
    extra = ("", coref) if coref else ()
    return [
        ("She", "she", "PRON", 2, "nsubj") + extra,
        ("had", "have", "AUX", 2, "aux"),
        ("struggled", "struggle", "VERB", 2, "ROOT"),
        ("with", "with", "ADP", 2, "prep"),
        (term, term, "NOUN", 3, "pobj"),
        (".", ".", "PUNCT", 2, "punct"),
    ]


def s_mental_name(first, last, term, coref="C1"):
    return [
        (first, first.lower(), "PROPN", 1, "compound", "PERSON", coref),
        (last, last.lower(), "PROPN", 2, "nsubj", "PERSON", coref),
        ("struggled", "struggle", "VERB", 2, "ROOT"),
        ("with", "with", "ADP", 2, "prep"),
        (term, term, "NOUN", 3, "pobj"),
        (".", ".", "PUNCT", 2, "punct"),
    ]


def s_gender_taken():
    return [
        ("The", "the", "DET", 1, "det"),
        ("woman", "woman", "NOUN", 3, "nsubjpass"),
        ("was", "be", "AUX", 3, "auxpass"),
        ("taken", "take", "VERB", 3, "ROOT"),
        ("to", "to", "ADP", 3, "prep"),
        ("a", "a", "DET", 6, "det"),
        ("hospital", "hospital", "NOUN", 4, "pobj"),
        (".", ".", "PUNCT", 3, "punct"),
    ]


def s_age_gender_taken(age):
    return [
        ("The", "the", "DET", 2, "det"),
        (f"{age}-year-old", f"{age}-year-old", "ADJ", 2, "amod"),
        ("woman", "woman", "NOUN", 4, "nsubjpass"),
        ("was", "be", "AUX", 4, "auxpass"),
        ("taken", "take", "VERB", 4, "ROOT"),
        ("to", "to", "ADP", 4, "prep"),
        ("a", "a", "DET", 7, "det"),
        ("hospital", "hospital", "NOUN", 5, "pobj"),
        (".", ".", "PUNCT", 4, "punct"),
    ]


def s_man_survive():
    return [
        ("The", "the", "DET", 1, "det"),
        ("man", "man", "NOUN", 4, "nsubj"),
        ("did", "do", "AUX", 4, "aux"),
        ("not", "not", "PART", 4, "neg"),
        ("survive", "survive", "VERB", 4, "ROOT"),
        (".", ".", "PUNCT", 4, "punct"),
    ]


def s_killed(pron, coref="C1"):
    return [
        (pron, pron.lower(), "PRON", 2, "nsubjpass", "", coref),
        ("was", "be", "AUX", 2, "auxpass"),
        ("killed", "kill", "VERB", 2, "ROOT"),
        (".", ".", "PUNCT", 2, "punct"),
    ]


def s_video_body():
    return [
        ("Officials", "official", "NOUN", 1, "nsubj"),
        ("released", "release", "VERB", 1, "ROOT"),
        ("body", "body", "NOUN", 4, "compound"),
        ("camera", "camera", "NOUN", 4, "compound"),
        ("footage", "footage", "NOUN", 1, "dobj"),
        ("of", "of", "ADP", 4, "prep"),
        ("the", "the", "DET", 7, "det"),
        ("shooting", "shooting", "NOUN", 5, "pobj"),
        (".", ".", "PUNCT", 1, "punct"),
    ]


def s_video_dash():
    return [
        ("The", "the", "DET", 2, "det"),
        ("dash", "dash", "NOUN", 2, "compound"),
        ("cam", "cam", "NOUN", 3, "nsubj"),
        ("recorded", "record", "VERB", 3, "ROOT"),
        ("the", "the", "DET", 5, "det"),
        ("encounter", "encounter", "NOUN", 3, "dobj"),
        (".", ".", "PUNCT", 3, "punct"),
    ]


def s_systemic_kw():
    return [
        ("Protesters", "protester", "NOUN", 1, "nsubj"),
        ("marched", "march", "VERB", 1, "ROOT"),
        ("against", "against", "ADP", 1, "prep"),
        ("police", "police", "NOUN", 4, "compound"),
        ("violence", "violence", "NOUN", 2, "pobj"),
        ("nationwide", "nationwide", "ADV", 1, "advmod"),
        (".", ".", "PUNCT", 1, "punct"),
    ]


def s_reform():
    return [
        ("Critics", "critic", "NOUN", 1, "nsubj"),
        ("demanded", "demand", "VERB", 1, "ROOT"),
        ("reform", "reform", "NOUN", 1, "dobj"),
        (".", ".", "PUNCT", 1, "punct"),
    ]


def s_racial():
    return [
        ("The", "the", "DET", 1, "det"),
        ("shooting", "shooting", "NOUN", 2, "nsubj"),
        ("renewed", "renew", "VERB", 2, "ROOT"),
        ("a", "a", "DET", 4, "det"),
        ("debate", "debate", "NOUN", 2, "dobj"),
        ("about", "about", "ADP", 4, "prep"),
        ("racial", "racial", "ADJ", 7, "amod"),
        ("injustice", "injustice", "NOUN", 5, "pobj"),
        (".", ".", "PUNCT", 2, "punct"),
    ]


def s_incident():
    return [
        ("Officers", "officer", "NOUN", 1, "nsubj"),
        ("killed", "kill", "VERB", 1, "ROOT"),
        ("Daniel", "daniel", "PROPN", 3, "compound", "PERSON"),
        ("Shaver", "shaver", "PROPN", 1, "dobj", "PERSON"),
        ("last", "last", "ADJ", 5, "amod"),
        ("year", "year", "NOUN", 1, "npadvmod"),
        (".", ".", "PUNCT", 1, "punct"),
    ]


def s_should():
    return [
        ("Officers", "officer", "NOUN", 4, "nsubj"),
        ("should", "should", "AUX", 4, "aux"),
        ("have", "have", "AUX", 4, "aux"),
        ("to", "to", "PART", 4, "aux"),
        ("answer", "answer", "VERB", 4, "ROOT"),
        ("for", "for", "ADP", 4, "prep"),
        ("this", "this", "PRON", 5, "pobj"),
        (".", ".", "PUNCT", 4, "punct"),
    ]


def s_must():
    return [
        ("The", "the", "DET", 1, "det"),
        ("city", "city", "NOUN", 3, "nsubj"),
        ("must", "must", "AUX", 3, "aux"),
        ("act", "act", "VERB", 3, "ROOT"),
        (".", ".", "PUNCT", 3, "punct"),
    ]


def s_need():
    return [
        ("Residents", "resident", "NOUN", 1, "nsubj"),
        ("need", "need", "VERB", 1, "ROOT"),
        ("new", "new", "ADJ", 3, "amod"),
        ("training", "training", "NOUN", 1, "dobj"),
        (".", ".", "PUNCT", 1, "punct"),
    ]


def s_killer_cop():
    return [
        ("The", "the", "DET", 2, "det"),
        ("killer", "killer", "ADJ", 2, "amod"),
        ("cop", "cop", "NOUN", 3, "nsubj"),
        ("stayed", "stay", "VERB", 3, "ROOT"),
        ("home", "home", "ADV", 3, "advmod"),
        (".", ".", "PUNCT", 3, "punct"),
    ]


def s_armed_with(name, coref="C1"):
    return [
        (name, name.lower(), "PROPN", 2, "nsubjpass", "PERSON", coref),
        ("was", "be", "AUX", 2, "auxpass"),
        ("armed", "arm", "VERB", 2, "ROOT"),
        ("with", "with", "ADP", 2, "prep"),
        ("a", "a", "DET", 5, "det"),
        ("knife", "knife", "NOUN", 3, "pobj"),
        (".", ".", "PUNCT", 2, "punct"),
    ]


def s_armed_pron(pron, coref="C1"):
    return [
        (pron, pron.lower(), "PRON", 2, "nsubjpass", "", coref),
        ("was", "be", "AUX", 2, "auxpass"),
        ("armed", "arm", "VERB", 2, "ROOT"),
        (".", ".", "PUNCT", 2, "punct"),
    ]


def s_man_armed():
    return [
        ("The", "the", "DET", 1, "det"),
        ("man", "man", "NOUN", 3, "nsubjpass"),
        ("was", "be", "AUX", 3, "auxpass"),
        ("armed", "arm", "VERB", 3, "ROOT"),
        (".", ".", "PUNCT", 3, "punct"),
    ]


def s_lunge(subj, upos="PROPN", coref="C1"):
    ent = "PERSON" if upos == "PROPN" else ""
    return [
        (subj, subj.lower(), upos, 1, "nsubj", ent, coref),
        ("lunged", "lunge", "VERB", 1, "ROOT"),
        ("at", "at", "ADP", 1, "prep"),
        ("the", "the", "DET", 4, "det"),
        ("deputies", "deputy", "NOUN", 2, "pobj"),
        ("with", "with", "ADP", 1, "prep"),
        ("a", "a", "DET", 7, "det"),
        ("knife", "knife", "NOUN", 5, "pobj"),
        (".", ".", "PUNCT", 1, "punct"),
    ]


def s_confront():
    return [
        ("The", "the", "DET", 2, "det"),
        ("violent", "violent", "ADJ", 2, "amod"),
        ("woman", "woman", "NOUN", 3, "nsubj"),
        ("confronted", "confront", "VERB", 3, "ROOT"),
        ("the", "the", "DET", 5, "det"),
        ("officers", "officer", "NOUN", 3, "dobj"),
        (".", ".", "PUNCT", 3, "punct"),
    ]


def s_fired(name, coref="C1"):
    return [
        (name, name.lower(), "PROPN", 1, "nsubj", "PERSON", coref),
        ("fired", "fire", "VERB", 1, "ROOT"),
        ("a", "a", "DET", 3, "det"),
        ("gun", "gun", "NOUN", 1, "dobj"),
        ("at", "at", "ADP", 1, "prep"),
        ("the", "the", "DET", 6, "det"),
        ("officers", "officer", "NOUN", 4, "pobj"),
        (".", ".", "PUNCT", 1, "punct"),
    ]


def s_sped(coref="C1"):
    return [
        ("He", "he", "PRON", 1, "nsubj", "", coref),
        ("sped", "speed", "VERB", 1, "ROOT"),
        ("away", "away", "ADV", 1, "advmod"),
        ("from", "from", "ADP", 1, "prep"),
        ("the", "the", "DET", 5, "det"),
        ("scene", "scene", "NOUN", 3, "pobj"),
        (".", ".", "PUNCT", 1, "punct"),
    ]


def s_fled(name, coref="C1"):
    return [
        (name, name.lower(), "PROPN", 1, "nsubj", "PERSON", coref),
        ("fled", "flee", "VERB", 1, "ROOT"),
        ("from", "from", "ADP", 1, "prep"),
        ("the", "the", "DET", 4, "det"),
        ("scene", "scene", "NOUN", 2, "pobj"),
        (".", ".", "PUNCT", 1, "punct"),
    ]


def s_fled_age(age):
    return [
        ("The", "the", "DET", 1, "det"),
        (f"{age}-year-old", f"{age}-year-old", "NOUN", 2, "nsubj"),
        ("fled", "flee", "VERB", 2, "ROOT"),
        ("on", "on", "ADP", 2, "prep"),
        ("foot", "foot", "NOUN", 3, "pobj"),
        (".", ".", "PUNCT", 2, "punct"),
    ]


def s_age_record(age):
    return [
        ("The", "the", "DET", 1, "det"),
        (f"{age}-year-old", f"{age}-year-old", "NOUN", 2, "nsubj"),
        ("had", "have", "VERB", 2, "ROOT"),
        ("a", "a", "DET", 5, "det"),
        ("long", "long", "ADJ", 5, "amod"),
        ("record", "record", "NOUN", 2, "dobj"),
        (".", ".", "PUNCT", 2, "punct"),
    ]


def s_white_car():
    return [
        ("A", "a", "DET", 2, "det"),
        ("white", "white", "ADJ", 2, "amod"),
        ("car", "car", "NOUN", 3, "nsubj"),
        ("blocked", "block", "VERB", 3, "ROOT"),
        ("the", "the", "DET", 5, "det"),
        ("road", "road", "NOUN", 3, "dobj"),
        (".", ".", "PUNCT", 3, "punct"),
    ]


def s_defiant():
    return [
        ("Reporters", "reporter", "NOUN", 1, "nsubj"),
        ("described", "describe", "VERB", 1, "ROOT"),
        ("the", "the", "DET", 4, "det"),
        ("defiant", "defiant", "ADJ", 4, "amod"),
        ("woman", "woman", "NOUN", 1, "dobj"),
        (".", ".", "PUNCT", 1, "punct"),
    ]


def s_died(name, coref="C1"):
    return [
        (name, name.lower(), "PROPN", 1, "nsubj", "PERSON", coref),
        ("died", "die", "VERB", 1, "ROOT"),
        ("on", "on", "ADP", 1, "prep"),
        ("Tuesday", "tuesday", "PROPN", 2, "pobj"),
        (".", ".", "PUNCT", 1, "punct"),
    ]


# ---------------------------------------------------------------------------
# Documents.  gold = frame ids in order of first appearance; mft = the
# intended per-entity foundation rankings.

DOCS = [
    dict(doc_id="d01", event="ev001", domain="leftnews.com", date="2017-04-30",
         sentences=[s_shot("Jordan", "Edwards"), s_race("Edwards", "black"),
                    s_age_unarmed(15), s_unofficial_flee(), s_killer_cop()],
         gold=["race", "age", "unarmed", "unofficial_sources", "fleeing"],
         mft={"officer": ["harm.vice"]}),
    dict(doc_id="d02", event="ev001", domain="rightpost.com", date="2017-05-01",
         sentences=[s_official(), s_age_unarmed(15), s_video_body(), s_legal()],
         gold=["official_sources", "age", "unarmed", "video", "legal_language"],
         mft={}),
    dict(doc_id="d03", event="ev001", domain="progressive.org", date="2017-05-02",
         sentences=[s_systemic_kw(), s_race("Edwards", "black"),
                    s_killed("He"), s_should(), s_legal()],
         gold=["systemic", "race", "legal_language"], mft={}),
    dict(doc_id="d04", event="ev001", domain="centerpost.com", date="2017-05-03",
         sentences=[s_shot("Jordan", "Edwards"), s_age_unarmed(15),
                    s_official(), s_incident()],
         gold=["age", "unarmed", "official_sources", "systemic"],
         mft={"officer": ["harm.vice"]}),
    dict(doc_id="d05", event="ev001", domain="neutralwire.com", date="2017-05-04",
         sentences=[s_official(), s_video_dash(), s_man_survive()],
         gold=["official_sources", "video", "gender"], mft={}),
    dict(doc_id="d06", event="ev001", domain="conservativeherald.com",
         date="2017-05-05",
         sentences=[s_official(), s_criminal_warrant(), s_legal(), s_man_survive(),
                    s_according_friend()],
         gold=["official_sources", "criminal_record", "legal_language", "gender",
               "unofficial_sources"],
         mft={}),
    dict(doc_id="d07", event="ev001", domain="libdaily.com", date="2017-05-06",
         sentences=[s_race("Edwards", "black"), s_unarmed_witness("he", "C1"),
                    s_according_friend(), s_reform()],
         gold=["race", "unarmed", "unofficial_sources", "systemic"], mft={}),
    dict(doc_id="d08", event="ev001", domain="breitbart.example.com",
         date="2017-05-07",
         sentences=[s_official(), s_fled("Edwards"), s_criminal_warrant(),
                    s_race("Edwards", "black")],
         gold=["official_sources", "fleeing", "criminal_record", "race"], mft={}),
    dict(doc_id="d09", event="ev002", domain="leftnews.com", date="2017-05-08",
         sentences=[s_shot("Ronette", "Morales"), s_race("Morales", "Hispanic"),
                    s_mental_she("schizophrenia", "C1"), s_gender_taken()],
         gold=["race", "mental_illness", "gender"], mft={}),
    dict(doc_id="d10", event="ev002", domain="rightpost.com", date="2017-05-09",
         sentences=[s_official(), s_armed_with("Morales"),
                    s_lunge("She", upos="PRON"),
                    s_mental_she("schizophrenia", "C1")],
         gold=["official_sources", "armed", "attack", "mental_illness"], mft={}),
    dict(doc_id="d11", event="ev002", domain="conservativeherald.com",
         date="2017-05-10",
         sentences=[s_confront(), s_criminal_warrant(), s_age_record(32)],
         gold=["gender", "attack", "criminal_record", "age"],
         mft={"victim": ["harm.vice"]}),
    dict(doc_id="d12", event="ev002", domain="progressive.org", date="2017-05-11",
         sentences=[s_mental_name("Ronette", "Morales", "depression"),
                    s_systemic_kw(), s_need(), s_lunge("Morales"),
                    s_armed_pron("She")],
         gold=["mental_illness", "systemic", "attack", "armed"], mft={}),
    dict(doc_id="d13", event="ev002", domain="neutralwire.com", date="2017-05-12",
         sentences=[s_official(), s_mental_she("schizophrenia"), s_must()],
         gold=["official_sources", "mental_illness"], mft={}),
    dict(doc_id="d14", event="ev002", domain="breitbart.example.com",
         date="2017-05-13",
         sentences=[s_lunge("Morales"), s_armed_pron("She"), s_criminal_warrant()],
         gold=["attack", "armed", "criminal_record"], mft={}),
    dict(doc_id="d15", event="ev003", domain="rightpost.com", date="2017-05-15",
         sentences=[s_official(), s_fired("Johnson"), s_sped(),
                    s_man_armed(), s_white_car()],
         gold=["official_sources", "attack", "fleeing", "gender", "armed"],
         mft={}),
    dict(doc_id="d16", event="ev003", domain="leftnews.com", date="2017-05-16",
         sentences=[s_race("Johnson", "white"), s_witness_claim(),
                    s_killed("He"), s_should(), s_official()],
         gold=["race", "unofficial_sources", "official_sources"], mft={}),
    dict(doc_id="d17", event="ev003", domain="centerpost.com", date="2017-05-17",
         sentences=[s_official(), s_fled_age(28), s_legal()],
         gold=["official_sources", "age", "fleeing", "legal_language"], mft={}),
    dict(doc_id="d18", event="ev003", domain="conservativeherald.com",
         date="2017-05-18",
         sentences=[s_fired("Johnson"), s_parole(), s_must()],
         gold=["attack", "criminal_record"], mft={}),
    dict(doc_id="d19", event="ev004", domain="libdaily.com", date="2017-05-20",
         sentences=[s_shot("Maria", "Santos"), s_race("Santos", "Hispanic"),
                    s_mental_she("depression", "C1"),
                    s_unarmed_witness("she", "C1"), s_video_body()],
         gold=["race", "mental_illness", "unarmed", "video"], mft={}),
    dict(doc_id="d20", event="ev004", domain="neutralwire.com", date="2017-05-21",
         sentences=[s_official(), s_age_gender_taken(41), s_video_dash()],
         gold=["official_sources", "age", "gender", "video"], mft={}),
    dict(doc_id="d21", event="ev004", domain="progressive.org", date="2017-05-22",
         sentences=[s_racial(), s_unarmed_witness("she"), s_according_friend(),
                    s_defiant()],
         gold=["systemic", "unarmed", "unofficial_sources", "gender"],
         mft={"victim": ["subversion.vice"]}),
    dict(doc_id="d22", event="ev005", domain="smalltownnews.example.com",
         date="2017-05-24",
         sentences=[s_shot("Prince"), s_unarmed_witness("he", "C1"),
                    s_according_official()],
         gold=["unarmed", "official_sources"], mft={}),
    dict(doc_id="d23", event="ev005", domain="leftnews.com", date="2017-05-25",
         sentences=[s_died("Prince"), s_incident(), s_killed("He"), s_parole(),
                    s_need()],
         gold=["systemic", "criminal_record"], mft={"officer": ["harm.vice"]}),
    dict(doc_id="d24", event="ev006", domain="leftnews.com", date="2017-05-11",
         sentences=[s_shot("Tamir", "Wilson"), s_race("Wilson", "black"),
                    s_age_unarmed(14), s_video_body(), s_systemic_kw()],
         gold=["race", "age", "unarmed", "video", "systemic"], mft={}),
    dict(doc_id="d25", event="ev006", domain="rightpost.com", date="2017-05-12",
         sentences=[s_official(), s_video_dash(), s_legal(), s_reform()],
         gold=["official_sources", "video", "legal_language", "systemic"], mft={}),
]

EVENTS = [
    dict(event_id="ev001", victim_full_name="Jordan Edwards", age=15,
         gender="male", race="black", armed_status="unarmed", weapon_terms=[],
         fleeing=True, attack=False, mental_illness=False, video=True,
         date="2017-04-29"),
    dict(event_id="ev002", victim_full_name="Ronette Morales", age=32,
         gender="female", race="hispanic", armed_status="armed",
         weapon_terms=["knife"], fleeing=False, attack=True,
         mental_illness=True, video=False, date="2017-05-07"),
    dict(event_id="ev003", victim_full_name="David Johnson", age=28,
         gender="male", race="white", armed_status="armed",
         weapon_terms=["gun"], fleeing=True, attack=True,
         mental_illness=False, video=False, date="2017-05-14"),
    dict(event_id="ev004", victim_full_name="Maria Santos", age=41,
         gender="female", race="hispanic", armed_status="unarmed",
         weapon_terms=[], fleeing=False, attack=False, mental_illness=True,
         video=True, date="2017-05-19"),
    dict(event_id="ev005", victim_full_name="Prince", age=None,
         gender="unknown", race="unknown", armed_status="unarmed",
         weapon_terms=[], fleeing=False, attack=False, mental_illness=False,
         video=False, date="2017-05-23"),
    dict(event_id="ev006", victim_full_name="Tamir Wilson", age=14,
         gender="male", race="black", armed_status="unarmed", weapon_terms=[],
         fleeing=False, attack=False, mental_illness=False, video=True,
         date="2017-05-10"),
]

SLANTS = [
    ("leftnews.com", "left", "-22"),
    ("progressive.org", "extreme_left", "-30"),
    ("libdaily.com", "left", "-18"),
    ("centerpost.com", "left_center", "-8"),
    ("neutralwire.com", "least_biased", ""),
    ("rightpost.com", "right", "24"),
    ("conservativeherald.com", "right", "28"),
    ("breitbart.example.com", "extreme_right", "33"),
]

LEXICONS = {
    "legal_language.txt": [
        "acquittal", "attorney", "charge", "charges", "felony", "grand jury",
        "indictment", "lawsuit", "manslaughter", "prosecutor", "prosecutors",
        "subpoena", "trial", "verdict",
    ],
    "mental_illness.txt": [
        "bipolar", "breakdown", "depression", "mentally ill", "psychosis",
        "schizophrenia", "schizophrenic",
    ],
    "criminal_record.txt": [
        "burglary", "cocaine", "heroin", "parole", "probation", "robbery",
        "shoplifting", "theft", "warrant",
    ],
    "people_nouns.txt": [
        "boy", "bystander", "deputy", "driver", "family", "friend", "girl",
        "leader", "man", "neighbor", "officer", "protester", "reporter",
        "resident", "suspect", "teen", "teenager", "victim", "witness", "woman",
    ],
}

MFT_DICTIONARY = [
    ("protect", "care.virtue"), ("compassion", "care.virtue"),
    ("kill", "harm.vice"), ("killer", "harm.vice"), ("violent", "harm.vice"),
    ("brutal", "harm.vice"), ("attack", "harm.vice"),
    ("fair", "fairness.virtue"), ("impartial", "fairness.virtue"),
    ("corrupt", "cheating.vice"), ("cheat", "cheating.vice"),
    ("loyal", "loyalty.virtue"), ("devoted", "loyalty.virtue"),
    ("betray", "betrayal.vice"), ("traitor", "betrayal.vice"),
    ("dutiful", "authority.virtue"), ("obedient", "authority.virtue"),
    ("defiant", "subversion.vice"), ("riot", "subversion.vice"),
    ("unruly", "subversion.vice"),
    ("innocent", "purity.virtue"), ("pure", "purity.virtue"),
    ("vile", "degradation.vice"), ("filthy", "degradation.vice"),
]

# Articles on ev006 are the "high profile coverage" dropped from the series.
EXCLUDED_EVENTS = ["ev006"]

PROTEST_COUNTS = [
    ("2017-04-28", 3), ("2017-04-29", 5), ("2017-04-30", 9),
    ("2017-05-01", 12), ("2017-05-02", 15), ("2017-05-03", 11),
    ("2017-05-04", 7), ("2017-05-05", 6), ("2017-05-06", 8),
    ("2017-05-07", 10), ("2017-05-08", 14), ("2017-05-09", 13),
    ("2017-05-10", 21), ("2017-05-11", 25), ("2017-05-12", 19),
    ("2017-05-13", 12), ("2017-05-14", 9), ("2017-05-15", 11),
    ("2017-05-16", 8), ("2017-05-17", 7), ("2017-05-18", 10),
    ("2017-05-19", 13), ("2017-05-20", 9), ("2017-05-21", 6),
    ("2017-05-22", 8), ("2017-05-23", 5), ("2017-05-24", 7),
    ("2017-05-25", 4), ("2017-05-26", 6), ("2017-05-27", 3),
    ("2017-05-28", 5),
]


# ---------------------------------------------------------------------------

def build_document(entry) -> ParsedDocument:
    offset = 0
    sentences = []
    surfaces = []
    for sent in entry["sentences"]:
        toks = []
        for i, tup in enumerate(sent):
            surface, lemma, upos, head, deprel = tup[:5]
            ent = tup[5] if len(tup) > 5 else ""
            coref = tup[6] if len(tup) > 6 else ""
            toks.append(Token(index=i, char_offset=offset, surface=surface,
                              lemma=lemma, upos=upos, head=head, deprel=deprel,
                              ent_type=ent, coref_chain=coref))
            surfaces.append(surface)
            offset += len(surface) + 1
        sentences.append(toks)
    return ParsedDocument(
        doc_id=entry["doc_id"], event_id=entry["event"],
        source_domain=entry["domain"],
        publish_date=datetime.date.fromisoformat(entry["date"]),
        text=" ".join(surfaces), sentences=sentences)


def write_fixtures():
    corpus_dir = FIXTURES / "mini_corpus"
    lexicon_dir = FIXTURES / "lexicons"
    corpus_dir.mkdir(parents=True, exist_ok=True)
    lexicon_dir.mkdir(parents=True, exist_ok=True)

    by_event: dict[str, list[str]] = {}
    for entry in DOCS:
        doc = build_document(entry)
        # Round-trip through the parser so the committed files are known-valid.
        parse_document(serialize_document(doc))
        by_event.setdefault(entry["event"], []).append(serialize_document(doc))
    for event_id, chunks in by_event.items():
        (corpus_dir / f"{event_id}.conllu").write_text("".join(chunks),
                                                       encoding="utf-8")

    with open(FIXTURES / "events.jsonl", "w", encoding="utf-8") as fh:
        for event in EVENTS:
            fh.write(json.dumps(event) + "\n")

    with open(FIXTURES / "slants.tsv", "w", encoding="utf-8") as fh:
        for domain, label, score in SLANTS:
            fh.write(f"{domain}\t{label}\t{score}\n")

    for name, entries in LEXICONS.items():
        (lexicon_dir / name).write_text("\n".join(entries) + "\n",
                                        encoding="utf-8")
    with open(lexicon_dir / "mft_dictionary.tsv", "w", encoding="utf-8") as fh:
        for word, category in MFT_DICTIONARY:
            fh.write(f"{word}\t{category}\n")

    with open(FIXTURES / "gold.jsonl", "w", encoding="utf-8") as fh:
        for entry in DOCS:
            fh.write(json.dumps({"doc_id": entry["doc_id"],
                                 "frame_order": entry["gold"],
                                 "mft_gold": entry["mft"]}) + "\n")

    (FIXTURES / "excluded_events.txt").write_text(
        "\n".join(EXCLUDED_EVENTS) + "\n", encoding="utf-8")

    with open(FIXTURES / "protests.csv", "w", encoding="utf-8") as fh:
        fh.write("date,count\n")
        for day, count in PROTEST_COUNTS:
            fh.write(f"{day},{count}\n")


def verify():
    """Extraction on the generated corpus must reproduce the authored gold."""
    from newsframes.corpus_io import load_corpus
    docs = load_corpus(FIXTURES / "mini_corpus")
    events = load_events(FIXTURES / "events.jsonl")
    resources = load_resources(FIXTURES / "lexicons")
    annotations = {ann.doc_id: ann
                   for ann in annotate_corpus(docs, events, resources)}
    failures = []
    for entry in DOCS:
        ann = annotations[entry["doc_id"]]
        predicted = sorted((fid for fid in FRAME_IDS if ann.present(fid)),
                           key=lambda fid: ann.frame_offsets[fid])
        if predicted != entry["gold"]:
            failures.append(f"{entry['doc_id']}: frames {predicted} != {entry['gold']}")
        for entity, ranked in entry["mft"].items():
            got = sorted((c for c in MFT_CATEGORIES
                          if ann.mft_scores[(entity, c)] > 0),
                         key=lambda c: -ann.mft_scores[(entity, c)])
            if got != list(ranked):
                failures.append(f"{entry['doc_id']}/{entity}: mft {got} != {list(ranked)}")
        for entity in ("victim", "officer"):
            if entity not in entry["mft"]:
                extra = [c for c in MFT_CATEGORIES if ann.mft_scores[(entity, c)] > 0]
                if extra:
                    failures.append(f"{entry['doc_id']}/{entity}: unexpected mft {extra}")
    if failures:
        print("MISMATCHES:")
        for line in failures:
            print("  " + line)
        return 1
    print(f"ok: {len(DOCS)} documents, extraction matches gold")
    return 0


if __name__ == "__main__":
    write_fixtures()
    sys.exit(verify())
