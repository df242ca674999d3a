"""Result files: the results table, the placement trace and the reproduction record."""

import json
from pathlib import Path
from typing import Literal, Optional, Union

import pandas as pd

from config.log_setup import get_logger
from models.placement import SwarmResult
from models.results import RESULT_COLUMNS, ResultsRow, ResultsTable
from services.errors import ResultsIOError

logger = get_logger(__name__)

OutputFormat = Literal["csv", "json"]
FLOAT_FORMAT = "%.12g"


def _sig12(value: float) -> float:
    return float(FLOAT_FORMAT % value)


def results_frame(table: ResultsTable) -> pd.DataFrame:
    """Rows as a DataFrame with the fixed column order, header-only when empty."""
    return pd.DataFrame([row.as_record() for row in table.rows], columns=list(RESULT_COLUMNS))


def placement_record(result: SwarmResult) -> dict:
    return {
        "q": [_sig12(result.q_star.x), _sig12(result.q_star.y)],
        "fitness": _sig12(result.fitness),
        "iterations": result.iterations,
        "method": result.method,
        "evaluations": result.evaluations,
        "trace": [
            {
                "iter": record.iter,
                "gbest_fit": _sig12(record.gbest_fit),
                "qx": _sig12(record.qx),
                "qy": _sig12(record.qy),
            }
            for record in result.trace
        ],
    }


def sibling(path: Path, suffix: str) -> Path:
    """`<stem><suffix>` next to `path`."""
    return path.with_name(f"{path.stem}{suffix}")


def _write_text(path: Path, text: str) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as e:
        raise ResultsIOError(path, e.strerror or str(e)) from e


def _dump(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def write_results(
    table: ResultsTable,
    path: Union[str, Path],
    fmt: OutputFormat = "csv",
    *,
    trace: Optional[SwarmResult] = None,
    config: Optional[dict] = None,
    command: Optional[list[str]] = None,
) -> list[Path]:
    """Write the table, plus `<stem>.placement.json` and `<stem>.config.json` when given.

    Returns the paths written, table first.
    """
    path = Path(path)
    frame = results_frame(table)
    if fmt == "csv":
        text = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    elif fmt == "json":
        records = [
            {k: _sig12(v) if isinstance(v, float) else v for k, v in row.as_record().items()}
            for row in table.rows
        ]
        text = _dump({"columns": list(RESULT_COLUMNS), "rows": records})
    else:
        raise ValueError(f"Unsupported output format: {fmt}")
    _write_text(path, text)
    written = [path]

    if trace is not None:
        placement_path = sibling(path, ".placement.json")
        _write_text(placement_path, _dump(placement_record(trace)))
        written.append(placement_path)

    if config is not None:
        record = {
            "command": command or [],
            "master_seed": config.get("monte_carlo", {}).get("master_seed"),
            "config": config,
        }
        config_path = sibling(path, ".config.json")
        _write_text(config_path, _dump(record))
        written.append(config_path)

    logger.info("Wrote %d rows to %s", len(table), path)
    return written


def read_results(path: Union[str, Path]) -> ResultsTable:
    """Parse a table written by `write_results` (format from the suffix)."""
    path = Path(path)
    try:
        if path.suffix == ".json":
            records = json.loads(path.read_text(encoding="utf-8"))["rows"]
        else:
            frame = pd.read_csv(path)
            records = [
                {k: v.item() if hasattr(v, "item") else v for k, v in r.items()}
                for r in frame.to_dict(orient="records")
            ]
    except (OSError, ValueError, KeyError) as e:
        raise ResultsIOError(path, str(e)) from e
    return ResultsTable(rows=[ResultsRow.model_validate(r) for r in records])


def read_placement(path: Union[str, Path]) -> dict:
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as e:
        raise ResultsIOError(path, str(e)) from e
