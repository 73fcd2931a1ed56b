import json
import logging
from pathlib import Path

import pandas as pd

from app.common.consts import ErrorCodesEnums
from app.modules.evaluation.consts import EvalFiles
from app.modules.evaluation.contracts import IReportWriter
from app.modules.evaluation.schemas import EvalReport


class ReportWriter(IReportWriter):
    """
    JSON and CSV writers for evaluation reports and study tables.
    """

    def __init__(
        self,
        errors: ErrorCodesEnums,
        logger: logging.Logger,
    ):
        self._errors = errors
        self._logger = logger

    def write_eval_report(self, report: EvalReport, directory: str | Path) -> dict[str, Path]:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)

        json_path = directory / EvalFiles.REPORT_JSON.value
        json_path.write_text(json.dumps(report.model_dump(), indent=2), encoding="utf-8")

        frame = pd.DataFrame([m.model_dump() for m in report.cutoffs], columns=["k", "precision", "recall", "ndcg"])
        csv_path = self.write_table(frame, directory / EvalFiles.REPORT_CSV.value, report.run_id)
        return {"json": json_path, "csv": csv_path}

    def write_table(self, frame: pd.DataFrame, path: str | Path, run_id: str | None = None) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as handle:
            if run_id:
                handle.write(f"# run_id={run_id}\n")
            frame.to_csv(handle, index=False, lineterminator="\n")
        self._logger.info(f"Wrote {path} ({len(frame)} rows)")
        return path
