import json
import math

import pytest

from newsframes.corpus_io import MFT_CATEGORIES
from newsframes.errors import StatisticsError, ValidationError
from newsframes.pipeline import annotate_document
from newsframes.validation import (GoldAnnotation, average_precision,
                                   binary_metrics, document_spearman,
                                   foundation_map, load_gold, ndcg,
                                   order_spearman)
from util import make_doc, make_event, make_resources

RES = make_resources()


def _ann(doc_id, sentences):
    return annotate_document(make_doc(sentences, doc_id=doc_id),
                             make_event(), RES)


def s_fled():
    return [("Edwards", "edwards", "PROPN", 1, "nsubj", "PERSON"),
            ("fled", "flee", "VERB", 1, "ROOT")]


def s_unarmed():
    return [("He", "he", "PRON", 2, "nsubjpass"),
            ("was", "be", "AUX", 2, "auxpass"),
            ("unarmed", "unarmed", "ADJ", 2, "ROOT")]


def s_video():
    return [("The", "the", "DET", 1, "det"),
            ("bodycam", "bodycam", "NOUN", 2, "nsubj"),
            ("shows", "show", "VERB", 2, "ROOT"),
            ("it", "it", "PRON", 2, "dobj")]


def gold(doc_id, order, mft=None):
    return GoldAnnotation(doc_id=doc_id, frame_order=tuple(order),
                          mft_gold=mft or {})


# ---------------------------------------------------------------------------
# Gold loading

def _write_gold(tmp_path, records):
    path = tmp_path / "gold.jsonl"
    path.write_text("".join(json.dumps(r) + "\n" for r in records),
                    encoding="utf-8")
    return path


def test_load_gold_valid(tmp_path):
    path = _write_gold(tmp_path, [
        {"doc_id": "d1", "frame_order": ["fleeing", "unarmed"],
         "mft_gold": {"officer": ["harm.vice"]}}])
    (g,) = load_gold(path)
    assert g.frame_order == ("fleeing", "unarmed")
    assert g.mft_gold == {"officer": ("harm.vice",)}


@pytest.mark.parametrize("record", [
    {"doc_id": "d1", "frame_order": ["fleeing", "fleeing"]},
    {"doc_id": "d1", "frame_order": ["flying"]},
    {"doc_id": "d1", "frame_order": [], "mft_gold": {"bystander": []}},
    {"doc_id": "d1", "frame_order": [], "mft_gold": {"victim": ["kindness"]}},
])
def test_load_gold_rejects_bad_records(tmp_path, record):
    with pytest.raises(ValidationError):
        load_gold(_write_gold(tmp_path, [record]))


def test_load_gold_rejects_duplicate_doc(tmp_path):
    rec = {"doc_id": "d1", "frame_order": ["fleeing"]}
    with pytest.raises(ValidationError):
        load_gold(_write_gold(tmp_path, [rec, rec]))


# ---------------------------------------------------------------------------
# Binary metrics

def test_binary_metrics_hand_counts():
    predicted = [_ann("d1", [s_fled()]),          # fleeing TP
                 _ann("d2", [s_unarmed()]),       # fleeing FN, unarmed FP
                 _ann("d3", [s_fled()])]          # fleeing FP
    truth = [gold("d1", ["fleeing"]),
             gold("d2", ["fleeing"]),
             gold("d3", [])]
    metrics = binary_metrics(predicted, truth)
    flee = metrics["fleeing"]
    assert flee.accuracy == pytest.approx(1 / 3)
    assert flee.precision == pytest.approx(1 / 2)
    assert flee.recall == pytest.approx(1 / 2)
    unarmed = metrics["unarmed"]
    assert unarmed.precision == 0.0
    assert unarmed.recall is None          # never in gold
    assert metrics["attack"].precision is None   # never predicted
    assert metrics["attack"].accuracy == 1.0


def test_binary_metrics_requires_matching_doc_sets():
    with pytest.raises(ValidationError):
        binary_metrics([_ann("d1", [s_fled()])], [gold("other", [])])


# ---------------------------------------------------------------------------
# Order agreement

def test_document_spearman_perfect_and_reversed():
    ann = _ann("d1", [s_fled(), s_unarmed(), s_video()])
    assert document_spearman(
        ann, gold("d1", ["fleeing", "unarmed", "video"])) == pytest.approx(1.0)
    assert document_spearman(
        ann, gold("d1", ["video", "unarmed", "fleeing"])) == pytest.approx(-1.0)


def test_document_spearman_missing_prediction_midrank():
    # Gold has three frames, only the first is predicted; the two absent
    # frames share the bottom midrank 2.5 giving rho = sqrt(3)/2.
    ann = _ann("d1", [s_fled()])
    rho = document_spearman(ann, gold("d1", ["fleeing", "unarmed", "video"]))
    assert rho == pytest.approx(math.sqrt(3) / 2)


def test_document_spearman_undefined_cases():
    ann = _ann("d1", [s_fled()])
    assert document_spearman(ann, gold("d1", ["fleeing"])) is None
    # every gold frame unpredicted -> constant ranks -> undefined
    assert document_spearman(ann, gold("d1", ["unarmed", "video"])) is None


def test_order_spearman_mean_and_skips(caplog):
    predicted = [_ann("d1", [s_fled(), s_unarmed()]),
                 _ann("d2", [s_fled()])]
    truth = [gold("d1", ["unarmed", "fleeing"]), gold("d2", ["fleeing"])]
    with caplog.at_level("WARNING"):
        assert order_spearman(predicted, truth) == pytest.approx(-1.0)
    assert any("d2" in rec.message for rec in caplog.records)
    with pytest.raises(StatisticsError):
        order_spearman([_ann("d2", [s_fled()])], [gold("d2", ["fleeing"])])


# ---------------------------------------------------------------------------
# Foundation rankings

def test_average_precision_values():
    scores = {c: 0 for c in MFT_CATEGORIES}
    scores["harm.vice"] = 3
    scores["care.virtue"] = 1
    assert average_precision(scores, {"harm.vice"}) == 1.0
    assert average_precision(scores, {"care.virtue"}) == pytest.approx(1 / 2)
    assert average_precision(scores, {"harm.vice", "care.virtue"}) == \
        pytest.approx((1.0 + 2 / 2) / 2)


def test_average_precision_all_zero_uses_category_order():
    scores = {c: 0 for c in MFT_CATEGORIES}
    first = MFT_CATEGORIES[0]
    last = MFT_CATEGORIES[-1]
    assert average_precision(scores, {first}) == 1.0
    assert average_precision(scores, {last}) == pytest.approx(1 / len(MFT_CATEGORIES))


def test_ndcg_perfect_and_positional():
    scores = {c: 0 for c in MFT_CATEGORIES}
    scores["harm.vice"] = 2
    scores["subversion.vice"] = 1
    assert ndcg(scores, ("harm.vice", "subversion.vice")) == pytest.approx(1.0)
    flipped = ndcg(scores, ("subversion.vice", "harm.vice"))
    assert 0.0 < flipped < 1.0


def test_foundation_map_on_mini_corpus(mini_annotations, mini_gold):
    report = foundation_map(mini_annotations, mini_gold)
    assert report.victim_map == 1.0
    assert report.officer_map == 1.0
    assert report.victim_ndcg == 1.0
    assert report.officer_ndcg == 1.0


def test_foundation_map_requires_gold_for_both_entities():
    predicted = [_ann("d1", [s_fled()])]
    truth = [gold("d1", ["fleeing"], {"victim": ("harm.vice",)})]
    with pytest.raises(StatisticsError):
        foundation_map(predicted, truth)


# ---------------------------------------------------------------------------
# Mini-corpus end-to-end agreement

def test_binary_metrics_on_mini_corpus(mini_annotations, mini_gold):
    metrics = binary_metrics(mini_annotations, mini_gold)
    for fid, m in metrics.items():
        assert m.accuracy == 1.0, fid
        assert m.precision in (None, 1.0), fid
        assert m.recall in (None, 1.0), fid


def test_order_spearman_on_mini_corpus(mini_annotations, mini_gold):
    assert order_spearman(mini_annotations, mini_gold) == pytest.approx(1.0)
