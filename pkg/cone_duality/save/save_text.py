import pandas as pd

from cone_duality.save.serialize import to_jsonable


def format_text(reports: list) -> str:
    """
    Human summary of one or more reports as a pandas table.

    A single report is shown as field / value rows, a batch as one row per report.
    """
    records = [to_jsonable(r) for r in reports]
    if not records:
        return "(no reports)"
    table = pd.json_normalize(records, max_level=1)
    if len(records) == 1:
        table = table.T.reset_index()
        table.columns = ["field", "value"]
        return table.to_string(index=False)
    return table.to_string()
