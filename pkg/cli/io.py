"""
File handling for the command-line tools: schema-validated reads, atomic
writes, sample CSVs and run manifests.
"""

import hashlib
import os
import tempfile
import time
import uuid
from datetime import datetime, timezone
from logging import getLogger
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel, TypeAdapter

from database.db_storage import init_db, store_run
from vibronic_gbs import __version__
from vibronic_gbs.schemas import RunManifest

logger = getLogger(__name__)

MANIFEST_SUFFIX = ".manifest.json"


def sha256_file(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def manifest_name(output_path: str) -> str:
    """Name of the sidecar manifest of an output, relative to its directory."""
    return os.path.basename(output_path) + MANIFEST_SUFFIX


def atomic_write_text(path: str, text: str) -> None:
    """Write ``text`` to a temporary file next to ``path`` and rename it into place."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


def write_model(path: str, model: BaseModel) -> None:
    atomic_write_text(path, model.model_dump_json(indent=2) + "\n")


def read_model(path: str, schema):
    """
    Read and validate a structured file.

    Parameters
    ----------
    path : str
        JSON file
    schema : type[BaseModel] or annotated union
        Model class, or any type accepted by pydantic's TypeAdapter

    Raises
    ------
    pydantic.ValidationError
        With field-level messages when the file does not match the schema.
    """
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if isinstance(schema, type) and issubclass(schema, BaseModel):
        return schema.model_validate_json(text)
    return TypeAdapter(schema).validate_json(text)


def write_samples_csv(path: str, samples, modes: Sequence[int]) -> None:
    """One row per sample, header mode_<i> for the 1-based modes, integer cells."""
    modes = [int(m) for m in modes]
    array = np.asarray(samples, dtype=np.int64).reshape(-1, len(modes))
    frame = pd.DataFrame(array, columns=[f"mode_{m}" for m in modes])
    atomic_write_text(path, frame.to_csv(index=False, lineterminator="\n"))


def read_samples_csv(path: str) -> Tuple[np.ndarray, List[int]]:
    """Samples and the 1-based mode of each column."""
    frame = pd.read_csv(path, dtype=np.int64)
    modes = [int(name.removeprefix("mode_")) for name in frame.columns]
    return frame.to_numpy(dtype=np.int64), modes


class RunRecorder:
    """
    Collects the provenance of one command run and writes its manifest.

    The manifest is named after the primary output, is the only file that
    carries wall-clock data, and is also recorded in the run ledger unless
    the ledger is disabled.
    """

    def __init__(
        self,
        command: str,
        config: Dict[str, Any],
        ledger_path: Optional[str] = None,
        seed: Optional[int] = None,
    ):
        self.command = command
        self.config = config
        self.ledger_path = ledger_path
        self.seed = seed
        self.run_id = uuid.uuid4().hex
        self.inputs: Dict[str, str] = {}
        self.outputs: list = []
        self._started_at = datetime.now(timezone.utc).isoformat()
        self._start = time.perf_counter()

    def add_input(self, path: Optional[str]) -> None:
        if path:
            self.inputs[path] = sha256_file(path)

    def add_output(self, path: str) -> None:
        self.outputs.append(path)

    def manifest_for(self, primary_output: str) -> str:
        return manifest_name(primary_output)

    def finish(self, primary_output: str) -> RunManifest:
        manifest = RunManifest(
            run_id=self.run_id,
            command=self.command,
            inputs=self.inputs,
            outputs=self.outputs,
            config=self.config,
            seed=self.seed,
            version=__version__,
            started_at=self._started_at,
            duration_s=time.perf_counter() - self._start,
        )
        path = primary_output + MANIFEST_SUFFIX
        write_model(path, manifest)
        logger.debug("Wrote manifest %s", path)
        if self.ledger_path:
            init_db(self.ledger_path)
            store_run(manifest.model_dump(), self.ledger_path)
            logger.debug("Recorded run %s in %s", self.run_id, self.ledger_path)
        return manifest
