"""Shared builders for hand-authored dependency-parse fixtures.

Sentences are lists of token tuples (surface, lemma, upos, head, deprel[,
ent[, coref]]); heads are 0-based ordinals with the root pointing at itself.
Character offsets come from joining every surface with single spaces.
"""

from __future__ import annotations

import datetime

from newsframes.corpus_io import EventRecord, Lexicon, ParsedDocument, Token
from newsframes.corpus_io import _build_chains
from newsframes.frame_extract import FrameResources


def make_doc(sentences, doc_id="t1", event_id="ev", domain="example.com",
             date="2017-05-01") -> ParsedDocument:
    offset = 0
    parsed = []
    surfaces = []
    for sent in sentences:
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
        parsed.append(toks)
    doc = ParsedDocument(doc_id=doc_id, event_id=event_id, source_domain=domain,
                         publish_date=datetime.date.fromisoformat(date),
                         text=" ".join(surfaces), sentences=parsed)
    doc.coref_chains = _build_chains(parsed)
    return doc


def make_event(**overrides) -> EventRecord:
    base = dict(event_id="ev", victim_full_name="Jordan Edwards", age=15,
                gender="male", race="black", armed_status="unarmed",
                weapon_terms=(), fleeing=True, attack=False,
                mental_illness=False, video=True,
                date=datetime.date(2017, 4, 29))
    base.update(overrides)
    return EventRecord(**base)


def make_resources(**overrides) -> FrameResources:
    base = dict(
        legal_language=Lexicon("legal_language",
                               frozenset({"attorney", "trial", "charges"})),
        mental_illness=Lexicon("mental_illness",
                               frozenset({"schizophrenia", "depression"})),
        criminal_record=Lexicon("criminal_record",
                                frozenset({"warrant", "cocaine", "parole"})),
        people_nouns=Lexicon("people_nouns",
                             frozenset({"man", "woman", "neighbor", "witness",
                                        "driver", "officer", "deputy"})),
        mft_dictionary={"killer": "harm.vice", "violent": "harm.vice",
                        "attack": "harm.vice", "brutal": "harm.vice",
                        "defiant": "subversion.vice",
                        "protect": "care.virtue"},
        race_terms={"black": frozenset({"black", "african-american", "african"}),
                    "white": frozenset({"white", "caucasian"}),
                    "hispanic": frozenset({"hispanic", "latino", "latina"})},
    )
    base.update(overrides)
    return FrameResources(**base)
