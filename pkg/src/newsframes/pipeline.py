"""Document-level extraction pipeline: partition, then annotate.

Extraction is a pure function of (document, event, resources), so documents
can be processed in parallel; the output order always follows the input
order, making results independent of the worker count.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from .corpus_io import EventRecord, ParsedDocument
from .entity_partition import build_victim_matcher, partition
from .errors import ValidationError
from .frame_extract import AttackConfig, FrameAnnotation, FrameResources, annotate

log = logging.getLogger(__name__)


def annotate_document(doc: ParsedDocument, event: EventRecord,
                      resources: FrameResources,
                      attack_cfg: AttackConfig | None = None) -> FrameAnnotation:
    matcher = build_victim_matcher(event, resources.race_terms)
    part = partition(doc, matcher, resources.people_nouns)
    return annotate(doc, event, part, resources, attack_cfg)


def _worker(doc, events, resources, attack_cfg):
    return annotate_document(doc, events[doc.event_id], resources, attack_cfg)


def annotate_corpus(docs, events, resources: FrameResources,
                    attack_cfg: AttackConfig | None = None,
                    jobs: int = 1) -> list[FrameAnnotation]:
    missing = {doc.event_id for doc in docs} - set(events)
    if missing:
        raise ValidationError(f"documents reference unknown events: {sorted(missing)}")
    if jobs <= 1 or len(docs) <= 1:
        return [annotate_document(doc, events[doc.event_id], resources, attack_cfg)
                for doc in docs]
    work = partial(_worker, events=events, resources=resources, attack_cfg=attack_cfg)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(work, docs))
