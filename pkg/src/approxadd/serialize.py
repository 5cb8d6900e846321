"""JSON / CSV encodings for distributions, histograms and metric rows.

A probability is always written as three fields: the numerator as a decimal
string, the base-2 exponent of the denominator, and a float rendering. Float
mode values are binary64 numbers, hence dyadic too, so both modes round-trip
exactly.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .distribution import ErrorDistribution, ErrorPattern
from .dyadic import Dyadic
from .metrics import LeadingOneHistogram, MetricsReport
from .model import Mode, Prob, to_dyadic, validate_config

DIST_COLUMNS = ["magnitude", "log2_bucket", "ones_vector", "prob_float", "prob_num", "prob_exp"]
BAR_COLUMNS = ["block_index", "bit_position", "prob_float", "prob_num", "prob_exp"]


def prob_fields(p: Prob) -> dict:
    dp = to_dyadic(p)
    return {"num": str(dp.num), "exp": dp.exp, "float": float(p)}


def prob_from_fields(obj: dict, mode: Mode) -> Prob:
    dp = Dyadic(int(obj["num"]), int(obj["exp"]))
    return dp if mode is Mode.EXACT else float(dp)


def rational_fields(x: Fraction) -> dict:
    return {"exact": str(x), "float": float(x)}


def ones_text(ones) -> str:
    return "[" + ",".join(str(i) for i in ones) + "]"


def pattern_record(p: ErrorPattern, k: int) -> dict:
    return {
        "magnitude": str(p.magnitude),
        "log2_bucket": p.ones[0] * k if p.ones else None,
        "ones": list(p.ones),
        "prob": prob_fields(p.probability),
    }


def metrics_record(r: MetricsReport) -> dict:
    return {"er": prob_fields(r.er), "med": rational_fields(r.med), "mse": rational_fields(r.mse)}


def distribution_to_json(dist: ErrorDistribution, report: MetricsReport | None = None) -> dict:
    out = {
        "command": "analyze",
        "config": dist.config.as_dict(),
        "numeric_mode": dist.mode.value,
        "pattern_count": len(dist),
    }
    if report is not None:
        out["metrics"] = metrics_record(report)
    out["patterns"] = [pattern_record(p, dist.config.k) for p in dist]
    return out


def distribution_from_json(obj: dict) -> ErrorDistribution:
    c = obj["config"]
    cfg = validate_config(c["n"], c["k"], c["l"])
    mode = Mode(obj["numeric_mode"])
    pats = tuple(
        ErrorPattern(tuple(r["ones"]), int(r["magnitude"]), prob_from_fields(r["prob"], mode))
        for r in obj["patterns"]
    )
    return ErrorDistribution(cfg, mode, pats)


def distribution_rows(dist: ErrorDistribution) -> list[list]:
    rows = []
    for p in dist:
        f = prob_fields(p.probability)
        bucket = p.ones[0] * dist.config.k if p.ones else ""
        rows.append([str(p.magnitude), bucket, ones_text(p.ones), repr(f["float"]), f["num"], f["exp"]])
    return rows


def distribution_from_csv(text: str, config, mode: Mode) -> ErrorDistribution:
    pats = []
    for row in csv.DictReader(io.StringIO(text)):
        inner = row["ones_vector"].strip("[]")
        ones = tuple(int(x) for x in inner.split(",")) if inner else ()
        prob = prob_from_fields({"num": row["prob_num"], "exp": row["prob_exp"]}, mode)
        pats.append(ErrorPattern(ones, int(row["magnitude"]), prob))
    return ErrorDistribution(config, mode, tuple(pats))


def histogram_to_json(h: LeadingOneHistogram) -> dict:
    return {
        "command": "bars",
        "config": h.config.as_dict(),
        "numeric_mode": h.mode.value,
        "bars": [
            {"block_index": i, "bit_position": i * h.config.k, "prob": prob_fields(p)} for i, p in h.entries
        ],
    }


def histogram_rows(h: LeadingOneHistogram) -> list[list]:
    rows = []
    for i, p in h.entries:
        f = prob_fields(p)
        rows.append([i, i * h.config.k, repr(f["float"]), f["num"], f["exp"]])
    return rows


def to_csv(header: list, rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"
