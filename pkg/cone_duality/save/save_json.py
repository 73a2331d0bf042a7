import json
import os

from loguru import logger

from cone_duality.save.serialize import to_jsonable


def format_json(report) -> str:
    """Sorted keys and fixed indentation, so identical reports give identical bytes."""
    return json.dumps(to_jsonable(report), sort_keys=True, indent=2)


def save_report_to_json(report, output_dir: str, name: str = "report") -> str:
    """Save a report to <output_dir>/<name>.json.

    Parameters:
        report: report dict or dataclass
        output_dir (str): Directory to save the report in.
        name (str): File name without extension.

    Return:
        str: path of the written file
    """
    if not report:
        logger.warning("No report provided to save!")
        return ""

    if not output_dir:
        raise ValueError("Output directory is not provided for JSON saving.")

    os.makedirs(output_dir, exist_ok=True)
    path = os.path.join(output_dir, f"{name}.json")

    try:
        logger.info(f"Saving report to {path}")
        with open(path, "w") as f:
            f.write(format_json(report) + "\n")
        return path
    except Exception as e:
        logger.error(f"An error occurred while saving the report to JSON: {e}")
        raise e
