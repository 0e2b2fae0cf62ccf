"""Cross-sectional statistics over frame annotations.

Group comparisons (liberal vs. conservative) of frame inclusion, frame
ordering, linguistic style, and moral-foundation mentions, plus the
leaning-score regression and agenda-setting-controlled conditional
proportions.  The Mann-Whitney test is computed exactly (permutation
distribution with midrank ties) for small samples and by the tie-adjusted
normal approximation otherwise.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .corpus_io import slant_for
from .errors import StatisticsError
from .frame_extract import (FRAME_IDS, MODAL_CATEGORIES, PASSIVE_CATEGORIES,
                            ENTITIES, FrameAnnotation)
from .corpus_io import MFT_CATEGORIES

log = logging.getLogger(__name__)

LIBERAL_LABELS = frozenset({"left", "extreme_left"})
CONSERVATIVE_LABELS = frozenset({"right", "extreme_right"})

# Largest pooled sample for which the exact permutation distribution is used.
EXACT_LIMIT = 24


@dataclass(frozen=True)
class GroupComparison:
    frame_id: str
    group_a_value: float
    group_b_value: float
    statistic: float      # Mann-Whitney U of group A
    p_value: float
    cohens_d: float | None


@dataclass(frozen=True)
class LeaningRegression:
    frame_id: str
    points: tuple[tuple[int, float], ...]
    slope: float
    intercept: float
    pearson_r: float


def significance_stars(p: float) -> str:
    if p < 0.001:
        return "***"
    if p < 0.01:
        return "**"
    if p < 0.05:
        return "*"
    return ""


# ---------------------------------------------------------------------------
# Test statistics

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


def _exact_two_sided_p(doubled_ranks, n_a, doubled_r_a):
    """P(|R_A - mean| >= |r_obs - mean|) over all n_a-subsets, by convolution.

    Ranks are doubled so that midranks become integers and the distribution
    can be tabulated exactly.
    """
    n = len(doubled_ranks)
    total = sum(doubled_ranks)
    # dp[k] maps doubled rank-sum -> number of k-subsets attaining it
    dp = [dict() for _ in range(n_a + 1)]
    dp[0][0] = 1
    for r in doubled_ranks:
        for k in range(min(n_a, n) - 1, -1, -1):
            if not dp[k]:
                continue
            target = dp[k + 1]
            for s, cnt in dp[k].items():
                target[s + r] = target.get(s + r, 0) + cnt
    dist = dp[n_a]
    count = sum(dist.values())
    mean2 = n_a * (n + 1)  # doubled mean of R_A (midranks always sum to n(n+1)/2)
    assert total == n * (n + 1)
    dev = abs(doubled_r_a - mean2)
    extreme = sum(cnt for s, cnt in dist.items() if abs(s - mean2) >= dev)
    return extreme / count


def mann_whitney_u(sample_a, sample_b) -> tuple[float, float]:
    """Two-sided Mann-Whitney test; returns (U of sample_a, p).

    Exact permutation p (handles ties via midranks) for pooled sizes up to
    EXACT_LIMIT; tie-adjusted normal approximation with continuity correction
    above that.  Identical samples of a single value give p = 1 by convention.
    """
    a = [float(x) for x in sample_a]
    b = [float(x) for x in sample_b]
    if not a or not b:
        raise StatisticsError("mann_whitney_u requires two non-empty samples")
    n_a, n_b = len(a), len(b)
    n = n_a + n_b
    pooled = a + b
    ranks = _midranks(pooled)
    r_a = sum(ranks[:n_a])
    u_a = r_a - n_a * (n_a + 1) / 2
    if min(pooled) == max(pooled):
        return u_a, 1.0
    if n <= EXACT_LIMIT:
        doubled = [round(2 * r) for r in ranks]
        p = _exact_two_sided_p(doubled, n_a, round(2 * r_a))
        return u_a, p
    mu = n_a * n_b / 2
    tie_counts = {}
    for v in pooled:
        tie_counts[v] = tie_counts.get(v, 0) + 1
    tie_term = sum(t ** 3 - t for t in tie_counts.values())
    sigma2 = n_a * n_b / 12 * ((n + 1) - tie_term / (n * (n - 1)))
    if sigma2 <= 0:
        return u_a, 1.0
    diff = u_a - mu
    cc = 0.5 if diff != 0 else 0.0
    z = (abs(diff) - cc) / math.sqrt(sigma2)
    return u_a, float(2 * norm.sf(z))


def cohens_d(sample_a, sample_b) -> float:
    """Effect size (mean_b - mean_a) / pooled sd, n-1 weighting."""
    a = np.asarray(sample_a, dtype=float)
    b = np.asarray(sample_b, dtype=float)
    if len(a) < 2 or len(b) < 2:
        raise StatisticsError("cohens_d requires samples of size >= 2")
    pooled_var = (((len(a) - 1) * a.var(ddof=1) + (len(b) - 1) * b.var(ddof=1))
                  / (len(a) + len(b) - 2))
    if pooled_var <= 0:
        raise StatisticsError("cohens_d undefined: zero pooled variance")
    return float((b.mean() - a.mean()) / math.sqrt(pooled_var))


def _optional_d(sample_a, sample_b):
    try:
        return cohens_d(sample_a, sample_b)
    except StatisticsError:
        return None


# ---------------------------------------------------------------------------
# Group assignment

def partition_by_slant(annotations, slants) -> tuple[list, list]:
    """(liberal, conservative) annotation lists; other leanings are dropped."""
    lib, cons = [], []
    for ann in annotations:
        label = slant_for(slants, ann.source_domain).label
        if label in LIBERAL_LABELS:
            lib.append(ann)
        elif label in CONSERVATIVE_LABELS:
            cons.append(ann)
    return lib, cons


def _require_groups(group_a, group_b):
    if not group_a or not group_b:
        raise StatisticsError("comparison undefined: empty group")


# ---------------------------------------------------------------------------
# Comparisons

def inclusion_proportions(group_a, group_b) -> list[GroupComparison]:
    """Per-frame share of documents where the frame is present, per group."""
    _require_groups(group_a, group_b)
    out = []
    for fid in FRAME_IDS:
        ind_a = [1.0 if ann.present(fid) else 0.0 for ann in group_a]
        ind_b = [1.0 if ann.present(fid) else 0.0 for ann in group_b]
        u, p = mann_whitney_u(ind_a, ind_b)
        out.append(GroupComparison(
            frame_id=fid,
            group_a_value=sum(ind_a) / len(ind_a),
            group_b_value=sum(ind_b) / len(ind_b),
            statistic=u, p_value=p,
            cohens_d=_optional_d(ind_a, ind_b)))
    return out


def inverse_ranks(ann: FrameAnnotation) -> dict[str, float]:
    """1/position of each present frame, ordered by first occurrence.

    Offset ties break by frame-id lexical order for determinism.
    """
    present = sorted((fid for fid in FRAME_IDS if ann.present(fid)),
                     key=lambda fid: (ann.frame_offsets[fid], fid))
    return {fid: 1.0 / (rank + 1) for rank, fid in enumerate(present)}


def ordering_stats(group_a, group_b) -> list[GroupComparison]:
    """Mean inverse frame rank per group, over documents where the frame appears."""
    _require_groups(group_a, group_b)
    ranks_a = [inverse_ranks(ann) for ann in group_a]
    ranks_b = [inverse_ranks(ann) for ann in group_b]
    out = []
    for fid in FRAME_IDS:
        sample_a = [r[fid] for r in ranks_a if fid in r]
        sample_b = [r[fid] for r in ranks_b if fid in r]
        if not sample_a or not sample_b:
            log.warning("ordering: frame %s absent from one group; excluded", fid)
            continue
        u, p = mann_whitney_u(sample_a, sample_b)
        out.append(GroupComparison(
            frame_id=fid,
            group_a_value=sum(sample_a) / len(sample_a),
            group_b_value=sum(sample_b) / len(sample_b),
            statistic=u, p_value=p,
            cohens_d=_optional_d(sample_a, sample_b)))
    return out


def leaning_regression(annotations, slants, frame_id: str) -> LeaningRegression:
    """One point per integer slant score: proportion of that bin's articles
    carrying the frame; OLS line and Pearson r over the points."""
    bins: dict[int, list[float]] = {}
    for ann in annotations:
        score = slant_for(slants, ann.source_domain).score
        if score is None:
            continue
        bins.setdefault(score, []).append(1.0 if ann.present(frame_id) else 0.0)
    if len(bins) < 2:
        raise StatisticsError("leaning regression requires >= 2 score bins")
    points = tuple(sorted((score, sum(v) / len(v)) for score, v in bins.items()))
    x = np.array([s for s, _ in points], dtype=float)
    y = np.array([p for _, p in points], dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    if np.ptp(y) == 0:
        r = 0.0
        slope = 0.0
    else:
        r = float(np.corrcoef(x, y)[0, 1])
    return LeaningRegression(frame_id=frame_id, points=points,
                             slope=float(slope), intercept=float(intercept),
                             pearson_r=r)


STYLE_CATEGORIES = MODAL_CATEGORIES + PASSIVE_CATEGORIES


def _style_count(ann: FrameAnnotation, category: str) -> int:
    if category in ann.modal_counts:
        return ann.modal_counts[category]
    return ann.passive_counts[category]


def style_frequencies(group_a, group_b, normalizer: str = "doc_words"
                      ) -> list[GroupComparison]:
    """Per-document style counts divided by word count (or victim-token count)."""
    if normalizer not in ("doc_words", "victim_tokens"):
        raise ValueError(f"unknown normalizer {normalizer!r}")
    _require_groups(group_a, group_b)

    def frequencies(group, category):
        sample = []
        for ann in group:
            denom = (ann.doc_word_count if normalizer == "doc_words"
                     else ann.victim_token_count)
            if denom <= 0:
                log.warning("style: %s has zero %s; excluded", ann.doc_id, normalizer)
                continue
            sample.append(_style_count(ann, category) / denom)
        return sample

    out = []
    for category in STYLE_CATEGORIES:
        sample_a = frequencies(group_a, category)
        sample_b = frequencies(group_b, category)
        _require_groups(sample_a, sample_b)
        u, p = mann_whitney_u(sample_a, sample_b)
        out.append(GroupComparison(
            frame_id=category,
            group_a_value=sum(sample_a) / len(sample_a),
            group_b_value=sum(sample_b) / len(sample_b),
            statistic=u, p_value=p,
            cohens_d=_optional_d(sample_a, sample_b)))
    return out


def mft_group_proportions(group_a, group_b) -> list[GroupComparison]:
    """Share of articles in which each (entity, foundation) cell is mentioned."""
    _require_groups(group_a, group_b)
    out = []
    for entity in ENTITIES:
        for category in MFT_CATEGORIES:
            ind_a = [1.0 if ann.mft_scores[(entity, category)] > 0 else 0.0
                     for ann in group_a]
            ind_b = [1.0 if ann.mft_scores[(entity, category)] > 0 else 0.0
                     for ann in group_b]
            u, p = mann_whitney_u(ind_a, ind_b)
            out.append(GroupComparison(
                frame_id=f"{entity}:{category}",
                group_a_value=sum(ind_a) / len(ind_a),
                group_b_value=sum(ind_b) / len(ind_b),
                statistic=u, p_value=p,
                cohens_d=_optional_d(ind_a, ind_b)))
    return out


def conditional_inclusion(group_a, group_b, events, condition) -> list[GroupComparison]:
    """Inclusion proportions restricted to documents whose event satisfies the
    predicate (agenda-setting control)."""
    sub_a = [ann for ann in group_a if condition(events[ann.event_id])]
    sub_b = [ann for ann in group_b if condition(events[ann.event_id])]
    if not sub_a and not sub_b:
        raise StatisticsError("condition excludes every document")
    return inclusion_proportions(sub_a, sub_b)
