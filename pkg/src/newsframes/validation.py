"""Evaluation of extraction output against hand-labeled gold annotations.

Binary per-frame presence metrics, frame-order Spearman correlation, and
mean average precision over the ranked moral-foundation categories.
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass

import numpy as np

from .corpus_io import MFT_CATEGORIES
from .errors import StatisticsError, ValidationError
from .frame_extract import ENTITIES, FRAME_IDS, FrameAnnotation

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class GoldAnnotation:
    doc_id: str
    frame_order: tuple[str, ...]                 # gold order of first appearance
    mft_gold: dict[str, tuple[str, ...]]         # entity -> ranked categories


@dataclass(frozen=True)
class FrameMetrics:
    accuracy: float
    precision: float | None    # None when no positives were predicted
    recall: float | None       # None when the frame never occurs in gold


def load_gold(path) -> list[GoldAnnotation]:
    gold = []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            rec = json.loads(line)
            order = tuple(rec["frame_order"])
            if len(set(order)) != len(order):
                raise ValidationError(f"line {line_no}: duplicate frames in frame_order")
            unknown = set(order) - set(FRAME_IDS)
            if unknown:
                raise ValidationError(f"line {line_no}: unknown frame ids {sorted(unknown)}")
            mft_gold = {}
            for entity, cats in rec.get("mft_gold", {}).items():
                if entity not in ENTITIES:
                    raise ValidationError(f"line {line_no}: unknown entity {entity!r}")
                bad = set(cats) - set(MFT_CATEGORIES)
                if bad:
                    raise ValidationError(f"line {line_no}: unknown categories {sorted(bad)}")
                mft_gold[entity] = tuple(cats)
            if rec["doc_id"] in seen:
                raise ValidationError(f"line {line_no}: duplicate doc_id {rec['doc_id']!r}")
            seen.add(rec["doc_id"])
            gold.append(GoldAnnotation(doc_id=rec["doc_id"], frame_order=order,
                                       mft_gold=mft_gold))
    return gold


def _pair(predicted, gold):
    pred_by_id = {ann.doc_id: ann for ann in predicted}
    gold_by_id = {g.doc_id: g for g in gold}
    if set(pred_by_id) != set(gold_by_id):
        raise ValidationError("predicted and gold doc_id sets differ")
    return [(pred_by_id[d], gold_by_id[d]) for d in sorted(pred_by_id)]


def binary_metrics(predicted, gold) -> dict[str, FrameMetrics]:
    """Per-frame accuracy/precision/recall of binary frame presence."""
    pairs = _pair(predicted, gold)
    out = {}
    for fid in FRAME_IDS:
        tp = fp = tn = fn = 0
        for ann, g in pairs:
            pred = ann.present(fid)
            truth = fid in g.frame_order
            if pred and truth:
                tp += 1
            elif pred:
                fp += 1
            elif truth:
                fn += 1
            else:
                tn += 1
        total = tp + fp + tn + fn
        out[fid] = FrameMetrics(
            accuracy=(tp + tn) / total,
            precision=tp / (tp + fp) if tp + fp else None,
            recall=tp / (tp + fn) if tp + fn else None)
    return out


def _midranks(values):
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        rank = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        i = j + 1
    return ranks


def document_spearman(ann: FrameAnnotation, g: GoldAnnotation) -> float | None:
    """Spearman correlation of gold vs. predicted frame order for one document.

    Restricted to gold-present frames; frames the system missed share a
    midrank at the bottom of the predicted order.  None when undefined.
    """
    frames = list(g.frame_order)
    if len(frames) < 2:
        return None
    gold_ranks = list(range(1, len(frames) + 1))
    # Absent predictions sort after every finite offset; midranks handle ties.
    keys = [ann.frame_offsets[fid] if ann.present(fid) else math.inf for fid in frames]
    pred_ranks = _midranks(keys)
    if len(set(pred_ranks)) == 1:
        return None
    return float(np.corrcoef(gold_ranks, pred_ranks)[0, 1])


def order_spearman(predicted, gold) -> float:
    """Corpus frame-order agreement: mean of per-document Spearman values."""
    values = []
    for ann, g in _pair(predicted, gold):
        rho = document_spearman(ann, g)
        if rho is None:
            log.warning("spearman: %s skipped (undefined)", g.doc_id)
            continue
        values.append(rho)
    if not values:
        raise StatisticsError("no document admits a Spearman value")
    return sum(values) / len(values)


def average_precision(scores: dict[str, int], relevant: set[str]) -> float:
    """AP of the relevant categories under descending-score ranking.

    Score ties resolve by the fixed category order, so all-zero scores still
    yield a defined value.
    """
    ranking = sorted(MFT_CATEGORIES,
                     key=lambda c: (-scores.get(c, 0), MFT_CATEGORIES.index(c)))
    hits = 0
    precision_sum = 0.0
    for i, cat in enumerate(ranking, start=1):
        if cat in relevant:
            hits += 1
            precision_sum += hits / i
    return precision_sum / len(relevant)


def _dcg(gains):
    return sum(g / math.log2(i + 1) for i, g in enumerate(gains, start=1))


def ndcg(scores: dict[str, int], gold_ranked: tuple[str, ...]) -> float:
    """Secondary graded-agreement metric using the gold rank order as gains."""
    gains = {cat: len(gold_ranked) - i for i, cat in enumerate(gold_ranked)}
    ranking = sorted(MFT_CATEGORIES,
                     key=lambda c: (-scores.get(c, 0), MFT_CATEGORIES.index(c)))
    actual = _dcg([gains.get(c, 0) for c in ranking])
    ideal = _dcg(sorted(gains.values(), reverse=True))
    return actual / ideal if ideal > 0 else 0.0


@dataclass(frozen=True)
class RankingReport:
    victim_map: float
    officer_map: float
    victim_ndcg: float
    officer_ndcg: float


def foundation_map(predicted, gold) -> RankingReport:
    """mAP (and nDCG) of predicted moral-foundation rankings per entity."""
    aps = {e: [] for e in ENTITIES}
    ndcgs = {e: [] for e in ENTITIES}
    for ann, g in _pair(predicted, gold):
        for entity in ENTITIES:
            gold_ranked = g.mft_gold.get(entity)
            if not gold_ranked:
                continue
            scores = {c: ann.mft_scores[(entity, c)] for c in MFT_CATEGORIES}
            aps[entity].append(average_precision(scores, set(gold_ranked)))
            ndcgs[entity].append(ndcg(scores, gold_ranked))
    for entity in ENTITIES:
        if not aps[entity]:
            raise StatisticsError(f"no gold rankings for entity {entity!r}")
    mean = lambda xs: sum(xs) / len(xs)
    return RankingReport(victim_map=mean(aps["victim"]),
                         officer_map=mean(aps["officer"]),
                         victim_ndcg=mean(ndcgs["victim"]),
                         officer_ndcg=mean(ndcgs["officer"]))
