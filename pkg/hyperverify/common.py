import json
import math
import os

import pandas as pd

from hyperverify.identities import REPORT_COLUMNS, VERDICTS

FLOAT_FORMAT = "%.17g"


def reports_frame(reports):
    return pd.DataFrame([report.as_row() for report in reports], columns=list(REPORT_COLUMNS))


class FileUtil:
    @staticmethod
    def render_csv(reports):
        return reports_frame(reports).to_csv(index=False, float_format=FLOAT_FORMAT, na_rep="nan",
                                             lineterminator="\n")

    @staticmethod
    def render_json(reports):
        rows = []
        for report in reports:
            row = report.as_row()
            rows.append({key: None if isinstance(value, float) and math.isnan(value) else value
                         for key, value in row.items()})
        return json.dumps(rows, indent=2, allow_nan=False) + "\n"

    @staticmethod
    def save_reports(reports, file_path, output_format="csv"):
        """Write reports as CSV or JSON; the parent directory must exist."""
        directory = os.path.dirname(file_path)
        if directory and not os.path.isdir(directory):
            raise OSError(f"output directory does not exist: {directory}")
        render = FileUtil.render_csv if output_format == "csv" else FileUtil.render_json
        with open(file_path, "w", newline="") as handle:
            handle.write(render(reports))

        return file_path


def summarize(reports):
    """Verdict counts per identity id, in report order."""
    counts = {}
    for report in reports:
        row = counts.setdefault(report.id, {"id": report.id, **{v: 0 for v in VERDICTS}})
        row[report.verdict] += 1
    return [{key: str(value) for key, value in row.items()} for row in counts.values()]


def format_table(data, headers=None):
    """
    Format a list of dictionaries into an aligned text table.

    :param data: rows of the table.
    :param headers: optional column headers; taken from the first row's keys.
    :return: the table as a string.
    """
    if not data:
        return "No data available."
    if not all(isinstance(row, dict) for row in data):
        raise ValueError("Data should be a list of dictionaries")
    headers = headers or list(data[0].keys())
    rows = [[str(row.get(h, '')) for h in headers] for row in data]

    column_widths = [len(header) for header in headers]
    for row in rows:
        for i, cell in enumerate(row):
            column_widths[i] = max(column_widths[i], len(cell))

    def format_row(row):
        return " | ".join(cell.ljust(column_widths[i]) for i, cell in enumerate(row))

    table = [format_row(headers), "-+-".join('-' * width for width in column_widths)]
    table.extend(format_row(row) for row in rows)
    return "\n".join(table)
