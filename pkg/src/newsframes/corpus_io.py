"""Input parsing, validation, and serialization for all corpus artifacts.

Documents arrive as extended CoNLL-U: the standard 10-column layout plus
document headers (``# doc_id = ...``) and per-token ``CharOffset=``, ``Ent=``
and ``Coref=`` keys in the MISC column.  Event metadata is JSONL, media-slant
records are TSV, lexicons are plain word lists, protest volumes are CSV.
All loaders validate type invariants up front and return immutable-by-convention
catalogs that are safe to share across parallel workers.
"""

from __future__ import annotations

import datetime
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConflictError, ParseError, SchemaError, StructuralError, ValidationError

GENDERS = {"male", "female", "unknown"}
RACES = {"white", "black", "hispanic", "asian", "native_american", "pacific_islander", "unknown"}
ARMED_STATUSES = {"armed", "unarmed", "unknown"}

SLANT_LABELS = {
    "extreme_left", "left", "left_center", "least_biased",
    "right_center", "right", "extreme_right", "none",
}
LEFT_LABELS = {"extreme_left", "left", "left_center"}
RIGHT_LABELS = {"extreme_right", "right", "right_center"}

MFT_CATEGORIES = (
    "care.virtue", "harm.vice",
    "fairness.virtue", "cheating.vice",
    "loyalty.virtue", "betrayal.vice",
    "authority.virtue", "subversion.vice",
    "purity.virtue", "degradation.vice",
)

CORPUS_WINDOW = (datetime.date(2013, 1, 1), datetime.date(2020, 9, 4))

REQUIRED_HEADERS = ("doc_id", "event_id", "source_domain", "publish_date", "text")


@dataclass(frozen=True)
class Token:
    index: int            # 0-based ordinal within the sentence
    char_offset: int      # 0-based character index of the token start in the document text
    surface: str
    lemma: str
    upos: str
    head: int             # ordinal of the syntactic head; self-loop for the root
    deprel: str
    ent_type: str = ""
    coref_chain: str = ""


@dataclass
class ParsedDocument:
    doc_id: str
    event_id: str
    source_domain: str
    publish_date: datetime.date
    text: str
    sentences: list[list[Token]]
    # chain id -> list of (sentence index, first ordinal, last ordinal) spans
    coref_chains: dict[str, list[tuple[int, int, int]]] = field(default_factory=dict)

    def tokens(self):
        for si, sent in enumerate(self.sentences):
            for tok in sent:
                yield si, tok


@dataclass(frozen=True)
class EventRecord:
    event_id: str
    victim_full_name: str
    age: int | None
    gender: str
    race: str
    armed_status: str
    weapon_terms: tuple[str, ...]
    fleeing: bool
    attack: bool
    mental_illness: bool
    video: bool
    date: datetime.date


@dataclass(frozen=True)
class SlantRecord:
    domain: str
    label: str
    score: int | None


@dataclass(frozen=True)
class Lexicon:
    name: str
    entries: frozenset[str]


def _parse_date(value, context):
    try:
        return datetime.date.fromisoformat(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{context}: invalid ISO date {value!r}")


def _parse_misc(misc, line_no):
    out = {}
    if misc == "_":
        return out
    for item in misc.split("|"):
        if "=" not in item:
            raise ParseError(f"malformed MISC item {item!r}", line=line_no)
        key, value = item.split("=", 1)
        out[key] = value
    return out


def parse_documents(raw: str) -> list[ParsedDocument]:
    """Parse one or more extended-CoNLL-U documents from a string."""
    docs = []
    headers: dict[str, str] = {}
    sentences: list[list[Token]] = []
    current: list[tuple[int, Token, int]] = []  # (ordinal, token, conllu head column)
    header_re = re.compile(r"^#\s*(\w+)\s*=\s*(.*)$")

    def close_sentence(line_no):
        nonlocal current
        if not current:
            return
        n = len(current)
        toks = []
        for ordinal, tok, head_col in current:
            if not 0 <= head_col <= n:
                raise StructuralError(
                    f"document {headers.get('doc_id', '?')}: head {head_col} out of "
                    f"sentence of length {n} (near line {line_no})")
            head = ordinal if head_col == 0 else head_col - 1
            toks.append(Token(index=ordinal, char_offset=tok.char_offset,
                              surface=tok.surface, lemma=tok.lemma, upos=tok.upos,
                              head=head, deprel=tok.deprel, ent_type=tok.ent_type,
                              coref_chain=tok.coref_chain))
        sentences.append(toks)
        current = []

    def close_document(line_no):
        nonlocal headers, sentences
        close_sentence(line_no)
        if not headers and not sentences:
            return
        docs.append(_finalize_document(headers, sentences))
        headers, sentences = {}, []

    for line_no, line in enumerate(raw.splitlines(), start=1):
        line = line.rstrip("\n")
        if not line.strip():
            close_sentence(line_no)
            continue
        if line.startswith("#"):
            m = header_re.match(line)
            if m and m.group(1) in REQUIRED_HEADERS:
                if m.group(1) == "doc_id" and (sentences or current or "doc_id" in headers):
                    close_document(line_no)
                headers[m.group(1)] = m.group(2)
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise ParseError(f"expected 10 tab-separated columns, got {len(cols)}", line=line_no)
        idx_col, form, lemma, upos, _xpos, _feats, head_col, deprel, _deps, misc = cols
        try:
            ordinal = int(idx_col) - 1
            head_val = int(head_col)
        except ValueError:
            raise ParseError(f"non-integer ID/HEAD column in {line!r}", line=line_no)
        misc_map = _parse_misc(misc, line_no)
        if "CharOffset" not in misc_map:
            raise SchemaError(f"line {line_no}: token missing CharOffset in MISC")
        token = Token(index=ordinal, char_offset=int(misc_map["CharOffset"]),
                      surface=form, lemma=lemma, upos=upos, head=ordinal, deprel=deprel,
                      ent_type=misc_map.get("Ent", ""), coref_chain=misc_map.get("Coref", ""))
        if current and ordinal != current[-1][0] + 1:
            raise StructuralError(f"non-consecutive token ordinal at line {line_no}")
        current.append((ordinal, token, head_val))

    close_document(line_no="EOF")
    return docs


def parse_document(raw: str) -> ParsedDocument:
    """Parse exactly one document; error if the input holds zero or several."""
    docs = parse_documents(raw)
    if len(docs) != 1:
        raise SchemaError(f"expected exactly one document, found {len(docs)}")
    return docs[0]


def _finalize_document(headers, sentences) -> ParsedDocument:
    for key in REQUIRED_HEADERS:
        if key not in headers:
            raise SchemaError(f"missing required document header '# {key}'")
    text = headers["text"]
    doc = ParsedDocument(
        doc_id=headers["doc_id"],
        event_id=headers["event_id"],
        source_domain=headers["source_domain"],
        publish_date=_parse_date(headers["publish_date"], f"document {headers['doc_id']}"),
        text=text,
        sentences=sentences,
    )
    prev_offset = -1
    for _si, tok in doc.tokens():
        if tok.char_offset <= prev_offset:
            raise StructuralError(
                f"document {doc.doc_id}: char offsets not strictly increasing at token "
                f"{tok.surface!r} ({tok.char_offset})")
        prev_offset = tok.char_offset
        if tok.char_offset + len(tok.surface) > len(text):
            raise StructuralError(
                f"document {doc.doc_id}: token {tok.surface!r} at {tok.char_offset} "
                f"overruns text of length {len(text)}")
    doc.coref_chains = _build_chains(sentences)
    return doc


def _build_chains(sentences):
    """Reconstruct chains as maximal same-id runs of tokens within a sentence."""
    chains: dict[str, list[tuple[int, int, int]]] = {}
    for si, sent in enumerate(sentences):
        start = None
        chain_id = None
        for tok in sent:
            if tok.coref_chain and tok.coref_chain == chain_id:
                continue
            if chain_id:
                chains.setdefault(chain_id, []).append((si, start, tok.index - 1))
            chain_id = tok.coref_chain or None
            start = tok.index if chain_id else None
        if chain_id:
            chains.setdefault(chain_id, []).append((si, start, sent[-1].index))
    return chains


def serialize_document(doc: ParsedDocument) -> str:
    """Inverse of parse_document over well-formed documents."""
    lines = [
        f"# doc_id = {doc.doc_id}",
        f"# event_id = {doc.event_id}",
        f"# source_domain = {doc.source_domain}",
        f"# publish_date = {doc.publish_date.isoformat()}",
        f"# text = {doc.text}",
    ]
    for sent in doc.sentences:
        for tok in sent:
            misc = [f"CharOffset={tok.char_offset}"]
            if tok.ent_type:
                misc.append(f"Ent={tok.ent_type}")
            if tok.coref_chain:
                misc.append(f"Coref={tok.coref_chain}")
            head_col = 0 if tok.head == tok.index else tok.head + 1
            lines.append("\t".join([
                str(tok.index + 1), tok.surface, tok.lemma, tok.upos, "_", "_",
                str(head_col), tok.deprel, "_", "|".join(misc),
            ]))
        lines.append("")
    return "\n".join(lines) + "\n"


def load_corpus(corpus_dir) -> list[ParsedDocument]:
    """Load every .conllu file under a directory, sorted by filename then position."""
    corpus_dir = Path(corpus_dir)
    paths = sorted(corpus_dir.glob("*.conllu"))
    if not paths:
        raise SchemaError(f"no .conllu files in {corpus_dir}")
    docs = []
    seen = set()
    for path in paths:
        for doc in parse_documents(path.read_text(encoding="utf-8")):
            if doc.doc_id in seen:
                raise ConflictError(f"duplicate doc_id {doc.doc_id!r} in {path}")
            seen.add(doc.doc_id)
            docs.append(doc)
    return docs


def load_events(path) -> dict[str, EventRecord]:
    events: dict[str, EventRecord] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ParseError(f"invalid JSON: {exc}", line=line_no)
            event = _validate_event(rec, line_no)
            if event.event_id in events:
                raise ConflictError(f"duplicate event_id {event.event_id!r} at line {line_no}")
            events[event.event_id] = event
    return events


def _validate_event(rec, line_no) -> EventRecord:
    ctx = f"event at line {line_no}"
    for fname in ("event_id", "victim_full_name", "gender", "race", "armed_status",
                  "weapon_terms", "fleeing", "attack", "mental_illness", "video", "date"):
        if fname not in rec:
            raise ValidationError(f"{ctx}: missing field '{fname}'")
    if rec["gender"] not in GENDERS:
        raise ValidationError(f"{ctx}: invalid field 'gender' = {rec['gender']!r}")
    if rec["race"] not in RACES:
        raise ValidationError(f"{ctx}: invalid field 'race' = {rec['race']!r}")
    if rec["armed_status"] not in ARMED_STATUSES:
        raise ValidationError(f"{ctx}: invalid field 'armed_status' = {rec['armed_status']!r}")
    weapons = tuple(rec["weapon_terms"])
    if (rec["armed_status"] == "armed") == (len(weapons) == 0):
        raise ValidationError(
            f"{ctx}: field 'weapon_terms' must be non-empty iff armed_status is 'armed'")
    date = _parse_date(rec["date"], ctx)
    if not CORPUS_WINDOW[0] <= date <= CORPUS_WINDOW[1]:
        raise ValidationError(f"{ctx}: field 'date' {date} outside corpus window")
    age = rec.get("age")
    if age is not None and (not isinstance(age, int) or age < 0):
        raise ValidationError(f"{ctx}: invalid field 'age' = {age!r}")
    return EventRecord(
        event_id=rec["event_id"],
        victim_full_name=rec["victim_full_name"],
        age=age,
        gender=rec["gender"],
        race=rec["race"],
        armed_status=rec["armed_status"],
        weapon_terms=weapons,
        fleeing=bool(rec["fleeing"]),
        attack=bool(rec["attack"]),
        mental_illness=bool(rec["mental_illness"]),
        video=bool(rec["video"]),
        date=date,
    )


def load_slants(path) -> dict[str, SlantRecord]:
    slants: dict[str, SlantRecord] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) != 3:
                raise ParseError(f"expected 3 tab-separated columns, got {len(cols)}",
                                 line=line_no)
            domain, label, score_str = cols
            if label not in SLANT_LABELS:
                raise ValidationError(f"line {line_no}: invalid field 'label' = {label!r}")
            score = None
            if score_str.strip():
                try:
                    score = int(score_str)
                except ValueError:
                    raise ValidationError(f"line {line_no}: invalid field 'score' = {score_str!r}")
                if not -35 <= score <= 35:
                    raise ValidationError(f"line {line_no}: field 'score' {score} out of [-35, 35]")
                if label in LEFT_LABELS and score >= 0:
                    raise ValidationError(
                        f"line {line_no}: field 'score' sign inconsistent with left label")
                if label in RIGHT_LABELS and score <= 0:
                    raise ValidationError(
                        f"line {line_no}: field 'score' sign inconsistent with right label")
            if domain in slants:
                raise ConflictError(f"duplicate domain {domain!r} at line {line_no}")
            slants[domain] = SlantRecord(domain=domain, label=label, score=score)
    return slants


def slant_for(slants: dict[str, SlantRecord], domain: str) -> SlantRecord:
    """Look up a domain, mapping unknown domains to label 'none'."""
    return slants.get(domain, SlantRecord(domain=domain, label="none", score=None))


def load_lexicon(path, name: str) -> Lexicon:
    entries = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            entry = line.rstrip("\n")
            if not entry.strip():
                continue
            if entry != entry.strip() or entry != entry.lower():
                raise ValidationError(
                    f"lexicon {name}: line {line_no}: entry {entry!r} must be lowercase "
                    "with no surrounding whitespace")
            entries.add(entry)
    if not entries:
        raise ValidationError(f"lexicon {name}: field 'entries' is empty")
    return Lexicon(name=name, entries=frozenset(entries))


def load_mft_dictionary(path) -> dict[str, str]:
    """TSV ``word<TAB>foundation.valence`` -> {word: category}."""
    table: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) != 2:
                raise ParseError(f"expected 2 tab-separated columns, got {len(cols)}",
                                 line=line_no)
            word, category = cols
            if category not in MFT_CATEGORIES:
                raise ValidationError(f"line {line_no}: unknown category {category!r}")
            if word in table:
                raise ConflictError(f"duplicate word {word!r} at line {line_no}")
            table[word] = category
    if not table:
        raise ValidationError("moral-foundation dictionary is empty")
    return table


def load_race_terms(path) -> dict[str, frozenset[str]]:
    """TSV ``race<TAB>comma-separated-terms`` -> {race: terms}."""
    table: dict[str, frozenset[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            cols = line.split("\t")
            if len(cols) != 2:
                raise ParseError(f"expected 2 tab-separated columns, got {len(cols)}",
                                 line=line_no)
            race, terms = cols
            if race not in RACES:
                raise ValidationError(f"line {line_no}: unknown race {race!r}")
            table[race] = frozenset(t.strip() for t in terms.split(",") if t.strip())
    if not table:
        raise ValidationError("race-terms table is empty")
    return table


def default_race_terms() -> dict[str, frozenset[str]]:
    from importlib.resources import files
    return load_race_terms(files("newsframes").joinpath("data/race_terms.tsv"))


def load_protest_counts(path) -> dict[datetime.date, int]:
    """CSV ``date,count`` (CountLove export shape) -> {date: count}."""
    counts: dict[datetime.date, int] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            cols = line.split(",")
            if len(cols) != 2:
                raise ParseError(f"expected 2 comma-separated columns, got {len(cols)}",
                                 line=line_no)
            if line_no == 1 and cols[0].lower() == "date":
                continue
            date = _parse_date(cols[0], f"line {line_no}")
            if date in counts:
                raise ConflictError(f"duplicate date {date} at line {line_no}")
            try:
                counts[date] = int(cols[1])
            except ValueError:
                raise ValidationError(f"line {line_no}: invalid count {cols[1]!r}")
    if not counts:
        raise ValidationError("protest-count file is empty")
    return counts


SHOOTING_KEYWORDS = ("shooting", "shot", "killed", "died", "fight", "gun")
OFFICER_KEYWORDS = ("police", "officer", "officers", "law", "enforcement",
                    "cop", "cops", "sheriff", "patrol")


def build_search_query(event: EventRecord) -> str:
    """Render the article-retrieval query for one event.

    Three OR-groups (name / shooting keywords / officer keywords) plus a
    date window from one day before the event to 30 days after.
    """
    if not event.victim_full_name.strip():
        raise ValidationError("victim_full_name is empty; query undefined")
    if event.date is None:
        raise ValidationError("event date unknown; query window undefined")
    name = event.victim_full_name.strip()
    parts = name.split()
    terms = [name, parts[0], parts[-1]]
    seen: list[str] = []
    for term in terms:
        if term not in seen:
            seen.append(term)
    name_group = "(" + " OR ".join(seen) + ")"
    shoot_group = "(" + " OR ".join(SHOOTING_KEYWORDS) + ")"
    officer_group = "(" + " OR ".join(OFFICER_KEYWORDS) + ")"
    after = event.date - datetime.timedelta(days=1)
    before = event.date + datetime.timedelta(days=30)
    return (f"{name_group} AND {shoot_group} AND {officer_group} "
            f"after:{after.isoformat()} before:{before.isoformat()}")
