"""TMY3 weather CSV ingestion.

The NREL typical-meteorological-year format carries one station per
file: a first line of station metadata, a second line of column names,
then hourly records (8760 for a full year). Column names drift between
vintages, so the extractor works through an explicit field map with
documented defaults.
"""

import csv
from dataclasses import dataclass
from pathlib import Path

from .errors import Tmy3ParseError
from .series import Series

DEFAULT_FIELD_MAP = {
    "date": "Date (MM/DD/YYYY)",
    "time": "Time (HH:MM)",
    "wind_speed": "Wind Speed (m/s)",
    "dry_bulb": "Dry-bulb (C)",
    "dni": "DNI (W/m^2)",
}

# Alternate headers seen across TMY3 vintages, tried when the mapped
# name is absent.
_FALLBACKS = {
    "wind_speed": ("Wspd (m/s)", "Wind Speed (m/s)"),
    "dry_bulb": ("Dry-bulb (degC)", "Dry-bulb (C)"),
    "dni": ("DNI (Wh/m^2)", "DNI (W/m^2)"),
}

# Values at or below this are NREL missing-data sentinels (-9900 family).
_SENTINEL_FLOOR = -9000.0


@dataclass(frozen=True)
class Tmy3Record:
    """One hourly observation."""

    timestamp: str
    wind_speed: float
    dry_bulb: float
    dni: float


def _resolve_column(header: list[str], key: str, wanted: str) -> int:
    if wanted in header:
        return header.index(wanted)
    for alt in _FALLBACKS.get(key, ()):
        if alt in header:
            return header.index(alt)
    raise Tmy3ParseError(
        f"column {wanted!r} (for {key}) not found in header line 2: {header}",
        row=2,
    )


def parse_tmy3_records(path, field_map: dict | None = None) -> list[Tmy3Record]:
    """Parse a TMY3 file into hourly records, strictly.

    Non-numeric cells and missing-data sentinels are rejected with the
    offending row number (1-based, counting the two header lines).
    """
    fmap = dict(DEFAULT_FIELD_MAP)
    if field_map:
        fmap.update(field_map)
    path = Path(path)
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            station = next(reader)
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise Tmy3ParseError(f"{path}: fewer than two header lines", row=1) from None
        if len(station) < 2:
            raise Tmy3ParseError(
                f"{path}: line 1 does not look like station metadata: {station}", row=1)

        cols = {key: _resolve_column(header, key, fmap[key])
                for key in ("wind_speed", "dry_bulb", "dni")}
        date_col = header.index(fmap["date"]) if fmap["date"] in header else None
        time_col = header.index(fmap["time"]) if fmap["time"] in header else None

        records = []
        for row_no, row in enumerate(reader, start=3):
            if not row:
                continue
            vals = {}
            for key, col in cols.items():
                if col >= len(row):
                    raise Tmy3ParseError(
                        f"{path}: row {row_no} has no column {col} ({key})",
                        row=row_no, column=header[col])
                try:
                    vals[key] = float(row[col])
                except ValueError:
                    raise Tmy3ParseError(
                        f"{path}: non-numeric {key} value {row[col]!r} at row {row_no}",
                        row=row_no, column=header[col]) from None
                if vals[key] <= _SENTINEL_FLOOR:
                    raise Tmy3ParseError(
                        f"{path}: missing-data sentinel {vals[key]} for {key} at row {row_no}",
                        row=row_no, column=header[col])
            stamp = " ".join(
                row[c].strip() for c in (date_col, time_col) if c is not None and c < len(row))
            records.append(Tmy3Record(stamp, vals["wind_speed"], vals["dry_bulb"], vals["dni"]))
        if not records:
            raise Tmy3ParseError(f"{path}: no data rows", row=3)
    return records


def parse_tmy3(path, field_map: dict | None = None) -> tuple[Series, Series, Series]:
    """Three hourly series (wind speed, dry-bulb temperature, DNI) from one file."""
    records = parse_tmy3_records(path, field_map)
    wind = Series([r.wind_speed for r in records], t0=1, period_hint=24, unit="m/s")
    bulb = Series([r.dry_bulb for r in records], t0=1, period_hint=24, unit="degC")
    dni = Series([r.dni for r in records], t0=1, period_hint=24, unit="Wh/m^2")
    return wind, bulb, dni
