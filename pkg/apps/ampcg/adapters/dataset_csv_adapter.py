"""Dataset CSV: header of node labels, then one row of floats per observation.

Values are written with 17 significant digits, enough for every float64 to
survive a write/read round trip bit-exactly.
"""

from pathlib import Path
from typing import TextIO, Union

import numpy as np
import structlog

from ..core.exceptions import DataError, ErrorCode
from ..models.gaussian import Dataset

log = structlog.get_logger(__name__)

FLOAT_FORMAT = "%.17g"


def write_dataset(path: Union[Path, TextIO], dataset: Dataset) -> None:
    """Write to a path, or to an open text stream such as stdout"""
    try:
        np.savetxt(
            path,
            dataset.values,
            delimiter=",",
            fmt=FLOAT_FORMAT,
            header=",".join(dataset.names),
            comments="",
        )
    except OSError as e:
        log.error("dataset_write_failed", path=str(path), error=str(e))
        raise DataError(f"cannot write {path}: {e}", error_code=ErrorCode.IO_FAILED, cause=e) from e
    log.info("dataset_written", path=str(path), rows=dataset.n, columns=len(dataset.names))


def read_dataset(path: Path) -> Dataset:
    try:
        with open(path) as fh:
            header = fh.readline().strip()
            values = np.loadtxt(fh, delimiter=",", ndmin=2)
    except OSError as e:
        log.error("dataset_read_failed", path=str(path), error=str(e))
        raise DataError(f"cannot read {path}: {e}", error_code=ErrorCode.IO_FAILED, cause=e) from e
    except ValueError as e:
        raise DataError(f"{path}: malformed numeric data: {e}", error_code=ErrorCode.DATA_FORMAT_INVALID, cause=e) from e

    names = tuple(x.strip() for x in header.split(",")) if header else ()
    if not names or values.size == 0 or values.shape[1] != len(names):
        raise DataError(
            f"{path}: header has {len(names)} labels but rows have {values.shape[1] if values.size else 0} values",
            error_code=ErrorCode.DATA_FORMAT_INVALID,
        )
    try:
        return Dataset(names=names, values=values)
    except ValueError as e:
        raise DataError(f"{path}: {e}", error_code=ErrorCode.DATA_FORMAT_INVALID, cause=e) from e
