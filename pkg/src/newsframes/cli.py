"""Command-line entry point.

File-based pipeline: ``extract`` turns a corpus into annotations JSONL, and
``analyze`` / ``timeseries`` / ``validate`` / ``audit`` consume that file and
emit CSV tables.  ``query`` renders the article-retrieval query strings.
Every subcommand is deterministic given its inputs, so reruns are
byte-identical.  Exit codes: 0 success, 1 input error, 2 internal error.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import logging
import sys
from pathlib import Path

from . import analytics, timeseries, validation
from .corpus_io import (build_search_query, load_corpus, load_events,
                        load_protest_counts, load_slants)
from .errors import NewsframesError
from .frame_extract import (AttackConfig, load_resources, read_annotations,
                            span_overlap_report, write_annotations)
from .pipeline import annotate_corpus

log = logging.getLogger("newsframes")

DEFAULT_SERIES_FRAMES = ("race", "unarmed", "systemic")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


def _write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _comparison_rows(comparisons):
    for comp in comparisons:
        yield (comp.frame_id, comp.group_a_value, comp.group_b_value,
               comp.statistic, comp.p_value,
               analytics.significance_stars(comp.p_value), comp.cohens_d)


COMPARISON_HEADER = ("frame", "liberal", "conservative", "u_statistic",
                     "p_value", "stars", "cohens_d")


# ---------------------------------------------------------------------------
# Subcommands

def cmd_extract(args) -> int:
    docs = load_corpus(args.corpus_dir)
    events = load_events(args.events)
    resources = load_resources(args.lexicon_dir, args.race_terms)
    cfg = AttackConfig(strict=args.strict_attack)
    annotations = annotate_corpus(docs, events, resources, cfg, jobs=args.jobs)
    write_annotations(annotations, args.out)
    log.info("wrote %d annotations to %s", len(annotations), args.out)
    return 0


def cmd_analyze(args) -> int:
    annotations = read_annotations(args.annotations)
    slants = load_slants(args.slants)
    events = load_events(args.events)
    lib, cons = analytics.partition_by_slant(annotations, slants)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    _write_csv(out / "inclusion.csv", COMPARISON_HEADER,
               _comparison_rows(analytics.inclusion_proportions(lib, cons)))
    _write_csv(out / "ordering.csv", COMPARISON_HEADER,
               _comparison_rows(analytics.ordering_stats(lib, cons)))
    _write_csv(out / "style.csv", COMPARISON_HEADER,
               _comparison_rows(analytics.style_frequencies(lib, cons,
                                                            args.normalizer)))
    _write_csv(out / "mft.csv", COMPARISON_HEADER,
               _comparison_rows(analytics.mft_group_proportions(lib, cons)))

    regression_rows = []
    for fid in ("race", "criminal_record", "unarmed", "systemic"):
        reg = analytics.leaning_regression(annotations, slants, fid)
        regression_rows.append((fid, reg.slope, reg.intercept, reg.pearson_r,
                                len(reg.points)))
    _write_csv(out / "leaning.csv",
               ("frame", "slope", "intercept", "pearson_r", "bins"),
               regression_rows)

    conditions = {
        "armed": lambda e: e.armed_status == "armed",
        "attack": lambda e: e.attack,
        "fleeing": lambda e: e.fleeing,
        "mental_illness": lambda e: e.mental_illness,
        "video": lambda e: e.video,
        "race_black": lambda e: e.race == "black",
        "race_white": lambda e: e.race == "white",
    }
    conditional_rows = []
    for name, predicate in conditions.items():
        try:
            comps = analytics.conditional_inclusion(lib, cons, events, predicate)
        except NewsframesError as exc:
            log.warning("conditional %s skipped: %s", name, exc)
            continue
        for row in _comparison_rows(comps):
            conditional_rows.append((name,) + row)
    _write_csv(out / "conditional.csv", ("condition",) + COMPARISON_HEADER,
               conditional_rows)
    return 0


def cmd_timeseries(args) -> int:
    annotations = read_annotations(args.annotations)
    events = load_events(args.events)
    excluded = ()
    if args.exclude_events:
        excluded = tuple(line.strip()
                         for line in Path(args.exclude_events).read_text().splitlines()
                         if line.strip())
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    frames = tuple(args.frames.split(","))

    raw = {}
    for fid in frames:
        series = timeseries.build_series(annotations, events, fid, excluded)
        raw[fid] = series
        timeseries.write_series(series, out / f"{fid}_series.csv")
        if args.window <= len(series.values):
            smooth = timeseries.rolling_smooth(series, args.window,
                                              centered=not args.trailing_window)
            timeseries.write_series(smooth, out / f"{fid}_smoothed.csv")

    used = {fid: (timeseries.rolling_smooth(raw[fid], args.window,
                                            centered=not args.trailing_window)
                  if args.smoothed else raw[fid])
            for fid in frames}

    protest = None
    if args.protests:
        protest = timeseries.series_from_counts(load_protest_counts(args.protests),
                                                "protest_volume")

    pearson_rows = []
    for fa, fb in itertools.combinations(frames, 2):
        try:
            pearson_rows.append((fa, fb, timeseries.pearson(used[fa], used[fb])))
        except NewsframesError as exc:
            log.warning("pearson %s/%s skipped: %s", fa, fb, exc)
    if protest is not None:
        for fid in frames:
            try:
                pearson_rows.append(("protest_volume", fid,
                                     timeseries.pearson(protest, used[fid])))
            except NewsframesError as exc:
                log.warning("pearson protest/%s skipped: %s", fid, exc)
    _write_csv(out / "pearson.csv", ("series_a", "series_b", "pearson_r"),
               pearson_rows)

    pulse_dates = sorted({events[eid].date for eid in excluded}) if excluded else []
    intervention_rows = []
    for fid in frames:
        if not pulse_dates:
            break
        try:
            fit = timeseries.ar1_intervention(used[fid], pulse_dates)
        except NewsframesError as exc:
            log.warning("intervention %s skipped: %s", fid, exc)
            continue
        intervention_rows.append((fid, fit.beta0, fit.beta1, fit.c, fit.p_beta1,
                                  analytics.significance_stars(fit.p_beta1)))
    _write_csv(out / "intervention.csv",
               ("frame", "beta0", "beta1", "constant", "p_beta1", "stars"),
               intervention_rows)

    granger_rows = []
    if protest is not None:
        lags = tuple(int(ell) for ell in args.lags.split(","))
        for fid in frames:
            for lag in lags:
                try:
                    fwd = timeseries.granger(protest, used[fid], lag)
                    rev = timeseries.granger(used[fid], protest, lag)
                except NewsframesError as exc:
                    log.warning("granger %s lag %d skipped: %s", fid, lag, exc)
                    continue
                granger_rows.append((fid, lag, fwd.f_statistic, fwd.p_value,
                                     rev.f_statistic, rev.p_value))
    _write_csv(out / "granger.csv",
               ("frame", "lag", "f_forward", "p_forward", "f_reverse", "p_reverse"),
               granger_rows)
    return 0


def cmd_validate(args) -> int:
    annotations = read_annotations(args.annotations)
    gold = validation.load_gold(args.gold)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    metrics = validation.binary_metrics(annotations, gold)
    _write_csv(out / "metrics.csv", ("frame", "accuracy", "precision", "recall"),
               ((fid, m.accuracy, m.precision, m.recall)
                for fid, m in metrics.items()))
    rho = validation.order_spearman(annotations, gold)
    report = validation.foundation_map(annotations, gold)
    _write_csv(out / "ranking.csv", ("metric", "value"),
               [("order_spearman", rho),
                ("victim_map", report.victim_map),
                ("officer_map", report.officer_map),
                ("victim_ndcg", report.victim_ndcg),
                ("officer_ndcg", report.officer_ndcg)])
    return 0


def cmd_query(args) -> int:
    events = load_events(args.events)
    lines = [build_search_query(events[eid]) for eid in sorted(events)]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_audit(args) -> int:
    annotations = read_annotations(args.annotations)
    docs = load_corpus(args.corpus_dir)
    rows = span_overlap_report(annotations, docs, window_tokens=args.window_tokens)
    _write_csv(args.out, ("frame_a", "frame_b", "overlap_share"), rows)
    return 0


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="newsframes",
        description="Entity-centric media frame extraction and corpus analytics.")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for any stochastic subroutine (reserved; "
                             "the shipped pipeline is deterministic)")
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="log per-document diagnostics")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="annotate a corpus of parsed documents")
    p.add_argument("--corpus-dir", required=True)
    p.add_argument("--events", required=True)
    p.add_argument("--lexicon-dir", required=True)
    p.add_argument("--race-terms", default=None,
                   help="override the bundled race-terms table")
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--strict-attack", action="store_true",
                   help="require the attack subject itself in the VICTIM set")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("analyze", help="cross-sectional partisan comparisons")
    p.add_argument("--annotations", required=True)
    p.add_argument("--events", required=True)
    p.add_argument("--slants", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--normalizer", choices=("doc_words", "victim_tokens"),
                   default="doc_words")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("timeseries", help="daily series, intervention, Granger tests")
    p.add_argument("--annotations", required=True)
    p.add_argument("--events", required=True)
    p.add_argument("--protests", default=None, help="CSV date,count protest volumes")
    p.add_argument("--exclude-events", default=None,
                   help="file listing high-profile event ids, one per line")
    p.add_argument("--frames", default=",".join(DEFAULT_SERIES_FRAMES))
    p.add_argument("--window", type=int, default=15, help="smoothing window in days")
    p.add_argument("--trailing-window", action="store_true",
                   help="use a trailing instead of centered smoothing window")
    p.add_argument("--smoothed", action="store_true",
                   help="run the statistical tests on smoothed series")
    p.add_argument("--lags", default="1,2")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_timeseries)

    p = sub.add_parser("validate", help="score annotations against gold labels")
    p.add_argument("--annotations", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("query", help="render article-retrieval query strings")
    p.add_argument("--events", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("audit", help="span-overlap report across frame pairs")
    p.add_argument("--annotations", required=True)
    p.add_argument("--corpus-dir", required=True)
    p.add_argument("--window-tokens", type=int, default=25)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr)
    try:
        return args.func(args)
    except (NewsframesError, OSError) as exc:
        log.error("%s", exc)
        return 1
    except Exception:  # pragma: no cover - defensive
        log.exception("internal error")
        return 2


if __name__ == "__main__":
    sys.exit(main())
