#!/usr/bin/env python3
"""Convert a CDC Tracking Network daily PM2.5 export to `date,value` CSV.

The portal export format varies (extra geography columns, MM/DD/YYYY dates,
quoted values). This script finds the date and value columns, normalizes
dates to ISO form, sorts, and writes the strict two-column file the toolkit
ingests. Rows are checked for gaps and duplicates.
"""

import argparse
import csv
import datetime
import re
import sys

DATE_FORMATS = ("%Y-%m-%d", "%m/%d/%Y", "%m-%d-%Y", "%Y/%m/%d", "%d%b%Y")

EXPECTED_ROWS = 5844
EXPECTED_FIRST = datetime.date(2001, 1, 1)
EXPECTED_LAST = datetime.date(2016, 12, 31)


def parse_date(text):
    text = text.strip()
    for fmt in DATE_FORMATS:
        try:
            return datetime.datetime.strptime(text, fmt).date()
        except ValueError:
            continue
    return None


def looks_numeric(text):
    return re.fullmatch(r"[-+]?\d*\.?\d+([eE][-+]?\d+)?", text.strip()) is not None


def pick_columns(header, rows, date_col, value_col):
    """Return (date index, value index), honoring explicit names first."""
    lowered = [h.strip().lower() for h in header]

    def find(name):
        if name is None:
            return None
        if name.strip().lower() not in lowered:
            sys.exit(f"error: column {name!r} not in header {header}")
        return lowered.index(name.strip().lower())

    di, vi = find(date_col), find(value_col)

    sample = rows[: min(50, len(rows))]
    if di is None:
        candidates = [
            i
            for i in range(len(header))
            if sample and all(parse_date(r[i]) is not None for r in sample)
        ]
        if not candidates:
            sys.exit("error: no parseable date column found; pass --date-col")
        di = candidates[0]
    if vi is None:
        preferred = [i for i, h in enumerate(lowered) if "value" in h or "pm" in h]
        candidates = [
            i
            for i in preferred + list(range(len(header)))
            if i != di and sample and all(looks_numeric(r[i]) for r in sample)
        ]
        # skip constant identifier columns (FIPS codes etc.)
        candidates = [
            i for i in candidates if len({r[i] for r in sample}) > 1 or len(sample) < 2
        ]
        if not candidates:
            sys.exit("error: no numeric value column found; pass --value-col")
        vi = candidates[0]
    return di, vi


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("source", help="CSV exported from the tracking portal")
    ap.add_argument("output", help="strict date,value CSV to write")
    ap.add_argument("--date-col", help="header name of the date column")
    ap.add_argument("--value-col", help="header name of the value column")
    args = ap.parse_args()

    with open(args.source, newline="", encoding="utf-8-sig") as f:
        reader = csv.reader(f)
        table = [row for row in reader if any(cell.strip() for cell in row)]
    if len(table) < 2:
        sys.exit("error: source has no data rows")
    header, rows = table[0], table[1:]
    width = len(header)
    rows = [r for r in rows if len(r) == width]

    di, vi = pick_columns(header, rows, args.date_col, args.value_col)
    print(f"using date column {header[di]!r}, value column {header[vi]!r}")

    records = []
    for r in rows:
        day = parse_date(r[di])
        if day is None:
            sys.exit(f"error: unparseable date {r[di]!r}")
        records.append((day, float(r[vi])))
    records.sort(key=lambda rec: rec[0])

    prev = None
    for day, _ in records:
        if prev is not None:
            if day == prev:
                sys.exit(f"error: duplicate date {day}")
            if (day - prev).days != 1:
                sys.exit(f"error: gap between {prev} and {day}")
        prev = day

    with open(args.output, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["date", "value"])
        for day, value in records:
            writer.writerow([day.isoformat(), repr(value)])

    first, last = records[0][0], records[-1][0]
    print(f"wrote {len(records)} rows, {first}..{last}")
    if len(records) != EXPECTED_ROWS or first != EXPECTED_FIRST or last != EXPECTED_LAST:
        print(
            f"warning: reference series is {EXPECTED_ROWS} rows "
            f"{EXPECTED_FIRST}..{EXPECTED_LAST}; this export differs "
            "(fine for the toolkit, but reference numbers will not match)",
            file=sys.stderr,
        )


if __name__ == "__main__":
    main()
