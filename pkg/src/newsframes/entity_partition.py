"""Victim/officer token partitioning.

Pass 1 seeds the VICTIM set with tokens matching the event-specific victim
matcher (name, gender, race/kinship terms) and the OFFICER set with tokens
matching a general officer pattern.  Pass 2 propagates each seed assignment
over coreference chains, with a plausibility check that the chain contains at
least one human-like token.  The two sets are disjoint by construction: a
direct (pass-1) assignment beats coref propagation, and VICTIM wins ties
because the victim matcher is event-specific and higher precision.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field

from .corpus_io import EventRecord, Lexicon, ParsedDocument, Token, default_race_terms

log = logging.getLogger(__name__)

# Alternation for officer-referring tokens.  Slang and institutional metonymy
# included on purpose; the all-caps entries are matched case-sensitively below.
_OFFICER_CI = (
    r"police|officer|\blaw\b|\benforcement\b|\bcop(?:s)?\b|sheriff|\bpatrol(?:s)?\b"
    r"|\bforce(?:s)?\b|\btrooper(?:s)?\b|\bmarshal(?:s)?\b|\bcaptain(?:s)?\b"
    r"|\blieutenant(?:s)?\b|\bsergeant(?:s)?\b|\bgestapo\b|\bdeput(?:y|ies)\b"
    r"|\bmount(?:s)?\b|\btraffic\b|\bconstabular(?:y|ies)\b|\bauthorit(?:y|ies)\b"
    r"|\bpower(?:s)?\b|\buniform(?:s)?\b|\bunit(?:s)?\b|\bdepartment(?:s)?\b"
    r"|agenc(?:y|ies)\b|\bbadge(?:s)?\b|\bchazzer(?:s)?\b|\bcobbler(?:s)?\b|\bfuzz\b"
    r"|\bpig\b|\bk-9\b|\bnarc\b|\bcoppa\b|\bfive-o\b|\b5-0\b|\b12\b|\btwelve\b"
)
# "pd"/"swat"/"fbi" in lowercase running text are overwhelmingly false positives.
_OFFICER_CS = r"\bPD\b|\bSWAT\b|\bFBI\b"

OFFICER_RE = re.compile(_OFFICER_CI, re.IGNORECASE)
OFFICER_CS_RE = re.compile(_OFFICER_CS)

GENDER_TERMS = {
    "female": frozenset({"woman", "girl", "daughter", "mother", "sister", "female"}),
    "male": frozenset({"man", "boy", "son", "father", "brother", "male"}),
}

HUMAN_UPOS = {"PROPN", "PRON"}


@dataclass(frozen=True)
class VictimMatcher:
    terms: frozenset[str]


@dataclass
class EntityPartition:
    victim_tokens: set[tuple[int, int]] = field(default_factory=set)
    officer_tokens: set[tuple[int, int]] = field(default_factory=set)


def build_victim_matcher(event: EventRecord, race_terms=None) -> VictimMatcher:
    """Terms identifying the victim: name tokens plus known gender and race blocks."""
    if not event.victim_full_name.strip():
        raise ValueError("victim_full_name is empty")
    if race_terms is None:
        race_terms = default_race_terms()
    terms = {t.lower() for t in event.victim_full_name.split()}
    terms |= GENDER_TERMS.get(event.gender, frozenset())
    terms |= race_terms.get(event.race, frozenset()) if event.race != "unknown" else frozenset()
    return VictimMatcher(terms=frozenset(terms))


def match_officer(token: Token | str) -> bool:
    surface = token if isinstance(token, str) else token.surface
    return bool(OFFICER_RE.search(surface)) or bool(OFFICER_CS_RE.search(surface))


def is_human_token(token: Token, people_nouns: Lexicon) -> bool:
    return (token.upos in HUMAN_UPOS
            or token.ent_type == "PERSON"
            or token.lemma in people_nouns.entries)


def partition(doc: ParsedDocument, matcher: VictimMatcher,
              people_nouns: Lexicon) -> EntityPartition:
    victim: set[tuple[int, int]] = set()
    officer: set[tuple[int, int]] = set()

    # Pass 1: direct matches.
    for si, tok in doc.tokens():
        key = (si, tok.index)
        hits_victim = tok.surface.lower() in matcher.terms
        hits_officer = match_officer(tok)
        if hits_victim and hits_officer:
            log.warning("%s: token %r seeded by both matchers; keeping VICTIM",
                        doc.doc_id, tok.surface)
            victim.add(key)
        elif hits_victim:
            victim.add(key)
        elif hits_officer:
            officer.add(key)

    # Pass 2: chain-granular coref propagation, gated on a human-like token.
    sent_by_idx = doc.sentences
    for chain_id, spans in doc.coref_chains.items():
        chain_keys = [(si, i) for si, start, end in spans for i in range(start, end + 1)]
        if not any(is_human_token(sent_by_idx[si][i], people_nouns) for si, i in chain_keys):
            continue
        has_victim = any(k in victim for k in chain_keys)
        has_officer = any(k in officer for k in chain_keys)
        if has_victim and has_officer:
            log.warning("%s: chain %s corefers to both sets; keeping VICTIM",
                        doc.doc_id, chain_id)
            has_officer = False
        if has_victim:
            victim.update(k for k in chain_keys if k not in officer)
        elif has_officer:
            officer.update(k for k in chain_keys if k not in victim)

    return EntityPartition(victim_tokens=victim, officer_tokens=officer)
