"""Exact-fraction serialization and the CSV/JSON export formats.

Every rational is written as an exact fraction string ("7/3"), which parses
back to the identical value, plus a 12-significant-digit decimal for plotting
convenience.  Exports clamp negative bound values at zero; the in-memory
curves keep the raw values.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from typing import IO, Sequence

from .bounds import BoundCurve

CURVE_CSV_HEADER = ("M", "R", "family", "witness", "M_decimal", "R_decimal")
POINTS_CSV_HEADER = ("M", "R", "scheme_id")


def fraction_str(x: Fraction) -> str:
    """Exact fraction string: "7/3", integers without a denominator."""
    return str(x)


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)


def decimal_str(x: Fraction) -> str:
    """12-significant-digit decimal approximation."""
    return f"{float(x):.12g}"


def witness_str(witness: dict) -> str:
    """Compact witness encoding: "s=1;l=2" (insertion order preserved)."""
    return ";".join(f"{key}={value}" for key, value in witness.items())


def clamp(x: Fraction) -> Fraction:
    return x if x >= 0 else Fraction(0)


def curve_rows(curve: BoundCurve) -> list[dict]:
    """Display rows for one curve: R clamped at zero, both serializations."""
    rows = []
    for point in curve.points:
        r = clamp(point.R)
        rows.append(
            {
                "M": fraction_str(point.M),
                "R": fraction_str(r),
                "family": curve.bound_id,
                "witness": witness_str(point.witness),
                "M_decimal": decimal_str(point.M),
                "R_decimal": decimal_str(r),
            }
        )
    return rows


def write_curves_csv(stream: IO[str], curves: Sequence[BoundCurve]) -> None:
    writer = csv.DictWriter(stream, fieldnames=CURVE_CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    for curve in curves:
        writer.writerows(curve_rows(curve))


def curves_json_payload(curves: Sequence[BoundCurve]) -> dict:
    payload: dict = {"curves": []}
    for curve in curves:
        entry = {
            "params": {"K": curve.params.K, "L": curve.params.L, "N": curve.params.N},
            "family": curve.bound_id,
            "points": curve_rows(curve),
        }
        if curve.bound_id == "hkd_lemma2":
            # search cap on the scaling parameter; raise via the API if needed
            entry["b_cap"] = curve.params.N
        payload["curves"].append(entry)
    return payload


def write_curves_json(stream: IO[str], curves: Sequence[BoundCurve]) -> None:
    json.dump(curves_json_payload(curves), stream, indent=2)
    stream.write("\n")


def write_achievable_points_csv(
    stream: IO[str], points: Sequence[tuple[Fraction, Fraction, str]]
) -> None:
    """Achievable (M, R) pairs with the scheme that realizes each."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(POINTS_CSV_HEADER)
    for m, r, scheme_id in points:
        writer.writerow((fraction_str(m), fraction_str(r), scheme_id))


def write_json_report(stream: IO[str], payload: dict) -> None:
    json.dump(payload, stream, indent=2)
    stream.write("\n")
