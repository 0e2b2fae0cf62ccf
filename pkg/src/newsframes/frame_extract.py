"""Frame, style, and moral-foundation extraction for one document.

Every frame extractor returns the character offset of its first match in the
document text, or ``inf`` when the frame is absent.  Regex frames operate on
the raw text; entity-conditioned frames (race, attack, sources, systemic) walk
the dependency parse and consult the VICTIM/OFFICER partition, which is what
lets the system tell a white man from a white car.
"""

from __future__ import annotations

import json
import math
import re
from bisect import bisect_right
from dataclasses import dataclass
from datetime import date
from pathlib import Path

from .corpus_io import (Lexicon, ParsedDocument, EventRecord, Token,
                        default_race_terms, load_lexicon, load_mft_dictionary,
                        load_race_terms, MFT_CATEGORIES)
from .entity_partition import EntityPartition
from .errors import SchemaError

FRAME_IDS = (
    "age", "armed", "attack", "criminal_record", "fleeing", "gender",
    "legal_language", "mental_illness", "official_sources", "race",
    "systemic", "unarmed", "unofficial_sources", "video",
)

MODAL_CATEGORIES = ("MUST", "SHOULD", "NEED", "HAVE_TO")
PASSIVE_CATEGORIES = ("agentive", "agentless", "victim_agentless", "victim_violent_agentless")
ENTITIES = ("victim", "officer")

FLEEING_RE = re.compile(
    r"(\bflee(?:ing)?\b|\bfled\b|\bspe(?:e)?d(?:ing)?\s?(?:off|away|toward|towards)"
    r"|(?:took|take(?:n)?)\s?off|desert|(?:get|getting|got|run|running|ran)\s?away"
    r"|pursu(?:it|ed))", re.IGNORECASE)
# "camera"/"video"/"film" alone are dominated by false positives in web text.
VIDEO_RE = re.compile(r"(body(?: )?cam|dash(?: )?cam)", re.IGNORECASE)
UNARMED_RE = re.compile(r"unarm(?:ed|ing|s)?", re.IGNORECASE)
# Token-level; end anchor keeps "army"/"armor" out, the NOUN filter keeps "arm" out.
ARMED_TOKEN_RE = re.compile(r"arm(ed|ing|s)?$", re.IGNORECASE)
SYSTEMIC_KEYWORD_RE = re.compile(
    r"(nation(?:[ -])?wide|wide(?:[ -])?spread|police violence|police shootings"
    r"|police killings|racism|racial|systemic|reform|no(?:[ -])?knock)", re.IGNORECASE)

GENDER_RES = {
    "female": re.compile(r"\b(woman|girl|daughter|mother|sister|female)\b", re.IGNORECASE),
    "male": re.compile(r"\b(man|boy|son|father|brother|male)\b", re.IGNORECASE),
}

OBJECT_DEPRELS = frozenset({"dobj", "iobj", "obj", "obl", "advcl", "pobj"})
ATTACK_VERBS = frozenset({"attack", "confront", "fire", "harm", "injure",
                          "lunge", "shoot", "stab", "strike"})
ADVANCE_VERBS = frozenset({"accelerate", "advance", "drive"})
VIOLENCE_LEMMAS = frozenset({"attack", "confront", "fire", "harm", "injure", "kill",
                             "lunge", "murder", "shoot", "stab", "strike"})
SAY_VERBS = frozenset({"answer", "claim", "confirm", "declare", "explain",
                       "reply", "report", "say", "state", "tell"})
OFFICIAL_LEMMAS = frozenset({"authority", "investigator", "official", "source"})
SHOOTING_VERBS = frozenset({"shoot", "kill", "murder"})
PATIENT_DEPRELS = frozenset({"nsubjpass", "dobj", "iobj", "obj"})


@dataclass(frozen=True)
class AttackConfig:
    attack_verbs: frozenset = ATTACK_VERBS
    advance_verbs: frozenset = ADVANCE_VERBS
    object_deprels: frozenset = OBJECT_DEPRELS
    # Require the subject itself in VICTIM (drops the officer-with-weapon reading).
    strict: bool = False


@dataclass
class FrameAnnotation:
    doc_id: str
    event_id: str
    source_domain: str
    publish_date: date
    frame_offsets: dict[str, float]
    modal_counts: dict[str, int]
    passive_counts: dict[str, int]
    mft_scores: dict[tuple[str, str], int]
    victim_token_count: int
    doc_word_count: int

    def present(self, frame_id: str) -> bool:
        return math.isfinite(self.frame_offsets[frame_id])


@dataclass(frozen=True)
class FrameResources:
    """Static lexical inputs shared read-only by every extraction worker."""
    legal_language: Lexicon
    mental_illness: Lexicon
    criminal_record: Lexicon
    people_nouns: Lexicon
    mft_dictionary: dict[str, str]
    race_terms: dict[str, frozenset[str]]


def load_resources(lexicon_dir, race_terms_path=None) -> FrameResources:
    lexicon_dir = Path(lexicon_dir)
    def lex(name):
        path = lexicon_dir / f"{name}.txt"
        if not path.exists():
            raise SchemaError(f"missing lexicon file {path}")
        return load_lexicon(path, name)
    mft_path = lexicon_dir / "mft_dictionary.tsv"
    if not mft_path.exists():
        raise SchemaError(f"missing dictionary file {mft_path}")
    if race_terms_path is not None:
        race_terms = load_race_terms(race_terms_path)
    else:
        local = lexicon_dir / "race_terms.tsv"
        race_terms = load_race_terms(local) if local.exists() else default_race_terms()
    return FrameResources(
        legal_language=lex("legal_language"),
        mental_illness=lex("mental_illness"),
        criminal_record=lex("criminal_record"),
        people_nouns=lex("people_nouns"),
        mft_dictionary=load_mft_dictionary(mft_path),
        race_terms=race_terms,
    )


def lexicon_regex(lexicon: Lexicon) -> re.Pattern:
    parts = sorted(lexicon.entries)
    return re.compile("|".join(rf"\b{re.escape(w)}\b" for w in parts), re.IGNORECASE)


def _first_match(pattern: re.Pattern, text: str) -> float:
    m = pattern.search(text)
    return float(m.start()) if m else math.inf


def sentence_children(sent: list[Token]) -> list[list[Token]]:
    children: list[list[Token]] = [[] for _ in sent]
    for tok in sent:
        if tok.head != tok.index:
            children[tok.head].append(tok)
    return children


# ---------------------------------------------------------------------------
# Regex frames

def extract_regex_frames(doc: ParsedDocument, event: EventRecord,
                         resources: FrameResources) -> dict[str, float]:
    text = doc.text
    offsets = {
        "fleeing": _first_match(FLEEING_RE, text),
        "video": _first_match(VIDEO_RE, text),
        "unarmed": _first_match(UNARMED_RE, text),
        "legal_language": _first_match(lexicon_regex(resources.legal_language), text),
        "mental_illness": _first_match(lexicon_regex(resources.mental_illness), text),
        "criminal_record": _first_match(lexicon_regex(resources.criminal_record), text),
    }
    if event.age is not None:
        offsets["age"] = _first_match(re.compile(rf"\b{event.age}\b"), text)
    else:
        offsets["age"] = math.inf
    gender_re = GENDER_RES.get(event.gender)
    offsets["gender"] = _first_match(gender_re, text) if gender_re else math.inf

    armed = math.inf
    for _si, tok in doc.tokens():
        if tok.upos != "NOUN" and ARMED_TOKEN_RE.match(tok.surface):
            armed = float(tok.char_offset)
            break
    offsets["armed"] = armed
    return offsets


# ---------------------------------------------------------------------------
# Entity-conditioned frames

def extract_race(doc: ParsedDocument, part: EntityPartition,
                 race_terms: dict[str, frozenset[str]], race: str) -> float:
    """Race term as attributive/predicative sibling of a VICTIM token."""
    if race == "unknown" or race not in race_terms:
        return math.inf
    terms = race_terms[race]
    best = math.inf
    for si, sent in enumerate(doc.sentences):
        children = sentence_children(sent)
        for tok in sent:
            if (si, tok.index) not in part.victim_tokens:
                continue
            head_children = children[tok.head]
            # A race term can itself sit in VICTIM (the matcher contains race
            # terms); it must not count as its own sibling ("a white car").
            if any(c.index != tok.index
                   and (c.surface.lower() in terms or c.lemma in terms)
                   for c in head_children):
                best = min(best, float(tok.char_offset))
    return best


def _verbs_with_objs(verb: Token, sent: list[Token], children: list[list[Token]],
                     visited: set[int] | None = None) -> list[tuple[Token, Token]]:
    """(verb, object) pairs via direct objects, prep->pobj hops, and conj/xcomp chains."""
    if visited is None:
        visited = set()
    if verb.index in visited:
        return []
    visited.add(verb.index)
    pairs: list[tuple[Token, Token]] = []
    for c in children[verb.index]:
        if c.deprel in OBJECT_DEPRELS:
            pairs.append((verb, c))
        elif c.deprel == "prep":
            for pc in children[c.index]:
                if pc.deprel == "pobj":
                    pairs.append((verb, pc))
                    break
        elif c.deprel in ("conj", "xcomp"):
            pairs.extend(_verbs_with_objs(c, sent, children, visited))
    return pairs


def extract_attack(doc: ParsedDocument, part: EntityPartition,
                   weapon_terms, cfg: AttackConfig | None = None) -> float:
    if cfg is None:
        cfg = AttackConfig()
    weapons = {w.lower() for w in weapon_terms}
    for si, sent in enumerate(doc.sentences):
        children = sentence_children(sent)
        for tok in sent:
            if tok.deprel != "nsubj":
                continue
            subject_is_victim = (si, tok.index) in part.victim_tokens
            for v, o in _verbs_with_objs(sent[tok.head], sent, children):
                obj_is_officer = (si, o.index) in part.officer_tokens
                obj_is_weapon = o.surface.lower() in weapons or o.lemma in weapons
                if v.lemma in cfg.attack_verbs:
                    fires = subject_is_victim or obj_is_officer or obj_is_weapon
                    if cfg.strict:
                        fires = fires and subject_is_victim
                    if fires:
                        return float(v.char_offset)
                if v.lemma in cfg.advance_verbs and obj_is_officer:
                    return float(v.char_offset)
    return math.inf


def extract_sources(doc: ParsedDocument, part: EntityPartition) -> dict[str, float]:
    """Quoted-source attribution via <source> <say-verb> and 'according to <source>'."""
    official = math.inf
    unofficial = math.inf
    for si, sent in enumerate(doc.sentences):
        children = sentence_children(sent)
        hits: list[Token] = []
        for tok in sent:
            if ((tok.ent_type == "PERSON" or tok.upos == "PRON")
                    and tok.deprel in ("nsubj", "nsubjpass")
                    and sent[tok.head].lemma in SAY_VERBS):
                hits.append(tok)
            if tok.surface.lower() == "according":
                for prep in children[tok.index]:
                    if prep.deprel != "prep":
                        continue
                    for pobj in children[prep.index]:
                        if pobj.deprel == "pobj":
                            hits.append(pobj)
        for tok in hits:
            key = (si, tok.index)
            # Officer tokens satisfy both clauses; official is checked first.
            if key in part.officer_tokens or tok.lemma in OFFICIAL_LEMMAS:
                official = min(official, float(tok.char_offset))
            elif key not in part.victim_tokens:
                unofficial = min(unofficial, float(tok.char_offset))
    return {"official_sources": official, "unofficial_sources": unofficial}


def extract_systemic(doc: ParsedDocument, part: EntityPartition) -> float:
    keyword = _first_match(SYSTEMIC_KEYWORD_RE, doc.text)
    incident = math.inf
    for si, sent in enumerate(doc.sentences):
        children = sentence_children(sent)
        for tok in sent:
            if tok.deprel not in PATIENT_DEPRELS or tok.ent_type != "PERSON":
                continue
            head = sent[tok.head]
            if head.lemma not in SHOOTING_VERBS:
                continue
            key = (si, tok.index)
            if key in part.victim_tokens or key in part.officer_tokens:
                continue
            has_victim_subject = any(
                c.deprel == "nsubj" and (si, c.index) in part.victim_tokens
                for c in children[head.index])
            if has_victim_subject:
                continue
            incident = min(incident, float(head.char_offset))
    # Equal offsets resolve to the keyword branch for determinism.
    return keyword if keyword <= incident else incident


# ---------------------------------------------------------------------------
# Linguistic style

def extract_passives(doc: ParsedDocument, part: EntityPartition,
                     violence_lemmas: frozenset[str] = VIOLENCE_LEMMAS) -> dict[str, int]:
    counts = dict.fromkeys(PASSIVE_CATEGORIES, 0)
    for si, sent in enumerate(doc.sentences):
        children = sentence_children(sent)
        for verb in sent:
            patients = [c for c in children[verb.index] if c.deprel == "nsubjpass"]
            if not patients:
                continue
            agentive = False
            for c in children[verb.index]:
                if c.deprel == "agent":
                    agentive = True
                elif c.deprel == "prep" and c.surface.lower() == "by":
                    if any(pc.deprel == "pobj" for pc in children[c.index]):
                        agentive = True
            if agentive:
                counts["agentive"] += 1
                continue
            counts["agentless"] += 1
            if any((si, p.index) in part.victim_tokens for p in patients):
                counts["victim_agentless"] += 1
                if verb.lemma in violence_lemmas:
                    counts["victim_violent_agentless"] += 1
    return counts


SHOULD_FORMS = {"should", "shouldn't", "should've", "shouldn’t", "should’ve"}


def count_modals(doc: ParsedDocument) -> dict[str, int]:
    counts = dict.fromkeys(MODAL_CATEGORIES, 0)
    for sent in doc.sentences:
        children = sentence_children(sent)
        for tok in sent:
            low = tok.surface.lower()
            if low == "must":
                counts["MUST"] += 1
            if low in SHOULD_FORMS:
                counts["SHOULD"] += 1
            if tok.lemma == "need" and tok.upos in ("VERB", "AUX"):
                counts["NEED"] += 1
            if low in ("have", "has", "had"):
                if _governs_infinitive(tok, sent, children):
                    counts["HAVE_TO"] += 1
    return counts


def _governs_infinitive(tok: Token, sent: list[Token], children) -> bool:
    # Adjacency heuristic: "have to <verb>", plus the xcomp+to dependency path.
    i = tok.index
    if (i + 2 < len(sent) and sent[i + 1].surface.lower() == "to"
            and sent[i + 2].upos == "VERB"):
        return True
    for c in children[i]:
        if c.deprel == "xcomp" and c.upos == "VERB":
            if any(g.surface.lower() == "to" and g.deprel in ("aux", "mark")
                   for g in children[c.index]):
                return True
    return False


# ---------------------------------------------------------------------------
# Moral foundations

MODIFIER_DEPRELS = frozenset({"amod", "appos"})
PREDICATE_DEPRELS = frozenset({"acomp", "attr"})


def score_moral_foundations(doc: ParsedDocument, part: EntityPartition,
                            mft_dict: dict[str, str]) -> dict[tuple[str, str], int]:
    scores = {(e, c): 0 for e in ENTITIES for c in MFT_CATEGORIES}

    def lookup(token: Token) -> str | None:
        return mft_dict.get(token.lemma) or mft_dict.get(token.surface.lower())

    for entity, token_set in (("victim", part.victim_tokens),
                              ("officer", part.officer_tokens)):
        for si, sent in enumerate(doc.sentences):
            children = sentence_children(sent)
            for tok in sent:
                if (si, tok.index) not in token_set:
                    continue
                # Modifiers of the entity token itself.
                for c in children[tok.index]:
                    if c.deprel in MODIFIER_DEPRELS:
                        cat = lookup(c)
                        if cat:
                            scores[(entity, cat)] += 1
                head = sent[tok.head]
                # Predicate siblings under a copular head ("the cop was cruel").
                if tok.deprel in ("nsubj", "nsubjpass"):
                    for c in children[head.index]:
                        if c.deprel in PREDICATE_DEPRELS:
                            cat = lookup(c)
                            if cat:
                                scores[(entity, cat)] += 1
                # Agentive verbs ("Edwards attacked ...").
                if tok.deprel == "nsubj" and head.upos == "VERB":
                    cat = lookup(head)
                    if cat:
                        scores[(entity, cat)] += 1
    return scores


# ---------------------------------------------------------------------------
# Composition

def annotate(doc: ParsedDocument, event: EventRecord, part: EntityPartition,
             resources: FrameResources, attack_cfg: AttackConfig | None = None
             ) -> FrameAnnotation:
    offsets = extract_regex_frames(doc, event, resources)
    offsets["race"] = extract_race(doc, part, resources.race_terms, event.race)
    offsets["attack"] = extract_attack(doc, part, event.weapon_terms, attack_cfg)
    offsets.update(extract_sources(doc, part))
    offsets["systemic"] = extract_systemic(doc, part)
    assert set(offsets) == set(FRAME_IDS)
    word_count = sum(1 for _si, tok in doc.tokens() if tok.upos != "PUNCT")
    return FrameAnnotation(
        doc_id=doc.doc_id,
        event_id=doc.event_id,
        source_domain=doc.source_domain,
        publish_date=doc.publish_date,
        frame_offsets={fid: offsets[fid] for fid in FRAME_IDS},
        modal_counts=count_modals(doc),
        passive_counts=extract_passives(doc, part),
        mft_scores=score_moral_foundations(doc, part, resources.mft_dictionary),
        victim_token_count=len(part.victim_tokens),
        doc_word_count=word_count,
    )


# ---------------------------------------------------------------------------
# JSONL serialization (absent frames are null; inf is not JSON-representable)

def annotation_to_json(ann: FrameAnnotation) -> str:
    record = {
        "doc_id": ann.doc_id,
        "event_id": ann.event_id,
        "source_domain": ann.source_domain,
        "publish_date": ann.publish_date.isoformat(),
        "frame_offsets": {fid: (None if math.isinf(off) else off)
                          for fid, off in ann.frame_offsets.items()},
        "modal_counts": ann.modal_counts,
        "passive_counts": ann.passive_counts,
        "mft_scores": {e: {c: ann.mft_scores[(e, c)] for c in MFT_CATEGORIES}
                       for e in ENTITIES},
        "victim_token_count": ann.victim_token_count,
        "doc_word_count": ann.doc_word_count,
    }
    return json.dumps(record, sort_keys=True)


def annotation_from_json(line: str) -> FrameAnnotation:
    rec = json.loads(line)
    return FrameAnnotation(
        doc_id=rec["doc_id"],
        event_id=rec["event_id"],
        source_domain=rec["source_domain"],
        publish_date=date.fromisoformat(rec["publish_date"]),
        frame_offsets={fid: (math.inf if off is None else float(off))
                       for fid, off in rec["frame_offsets"].items()},
        modal_counts={k: int(v) for k, v in rec["modal_counts"].items()},
        passive_counts={k: int(v) for k, v in rec["passive_counts"].items()},
        mft_scores={(e, c): int(rec["mft_scores"][e][c])
                    for e in ENTITIES for c in MFT_CATEGORIES},
        victim_token_count=rec["victim_token_count"],
        doc_word_count=rec["doc_word_count"],
    )


def write_annotations(annotations, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for ann in annotations:
            fh.write(annotation_to_json(ann) + "\n")


def read_annotations(path) -> list[FrameAnnotation]:
    with open(path, encoding="utf-8") as fh:
        return [annotation_from_json(line) for line in fh if line.strip()]


# ---------------------------------------------------------------------------
# Span-overlap audit

def span_overlap_report(annotations, docs, window_tokens: int = 25):
    """Per frame pair, the share of documents whose offsets fall within
    ``window_tokens`` tokens of each other.  Report-only diagnostic."""
    offsets_by_doc = {doc.doc_id: sorted(t.char_offset for _s, t in doc.tokens())
                      for doc in docs}

    def token_index(doc_id, char_offset):
        return bisect_right(offsets_by_doc[doc_id], char_offset) - 1

    rows = []
    for i, fa in enumerate(FRAME_IDS):
        for fb in FRAME_IDS[i + 1:]:
            both = near = 0
            for ann in annotations:
                if ann.doc_id not in offsets_by_doc:
                    continue
                if not (ann.present(fa) and ann.present(fb)):
                    continue
                both += 1
                ia = token_index(ann.doc_id, ann.frame_offsets[fa])
                ib = token_index(ann.doc_id, ann.frame_offsets[fb])
                if abs(ia - ib) <= window_tokens:
                    near += 1
            rows.append((fa, fb, near / both if both else 0.0))
    return rows
