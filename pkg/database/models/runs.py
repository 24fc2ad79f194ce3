"""
SQLAlchemy ORM model for the runs table.
"""

import json
from typing import Any, Dict, List, cast

from sqlalchemy import Column, Float, Integer, String, Text

from database.orm import DB_PATH, Base, get_session


class Run(Base):
    """SQLAlchemy model for runs table."""

    __tablename__ = "runs"

    id = Column(Integer, primary_key=True, autoincrement=True)
    run_id = Column(String, nullable=False, unique=True, index=True)
    command = Column(String, nullable=False)
    started_at = Column(String, nullable=False)
    duration_s = Column(Float, nullable=False)
    seed = Column(Integer, nullable=True)
    version = Column(String, nullable=False)
    config_json = Column(Text, nullable=False)
    inputs_json = Column(Text, nullable=False)
    outputs_json = Column(Text, nullable=False)

    def to_dict(self) -> Dict[str, Any]:
        """Convert the model instance to a dictionary."""
        return {
            "id": self.id,
            "run_id": self.run_id,
            "command": self.command,
            "started_at": self.started_at,
            "duration_s": self.duration_s,
            "seed": self.seed,
            "version": self.version,
            "config": json.loads(self.config_json),
            "inputs": json.loads(self.inputs_json),
            "outputs": json.loads(self.outputs_json),
        }


def store_run(manifest: Dict[str, Any], db_path: str = DB_PATH) -> int:
    """
    Record a run manifest in the ledger.

    Parameters
    ----------
    manifest : Dict[str, Any]
        Dumped RunManifest
    db_path : str
        Path to the SQLite database file

    Returns
    -------
    int
        ID of the inserted row
    """
    session = get_session(db_path)
    try:
        run = Run(
            run_id=manifest["run_id"],
            command=manifest["command"],
            started_at=manifest["started_at"],
            duration_s=manifest["duration_s"],
            seed=manifest.get("seed"),
            version=manifest["version"],
            config_json=json.dumps(manifest["config"], sort_keys=True),
            inputs_json=json.dumps(manifest["inputs"], sort_keys=True),
            outputs_json=json.dumps(manifest["outputs"]),
        )
        session.add(run)
        session.commit()
        return cast(int, run.id)
    finally:
        session.close()


def get_runs(limit: int = 100, offset: int = 0, db_path: str = DB_PATH) -> List[Dict[str, Any]]:
    """
    Get recorded runs, newest first.

    Parameters
    ----------
    limit : int
        Maximum number of results to return
    offset : int
        Number of results to skip
    db_path : str
        Path to the SQLite database file
    """
    session = get_session(db_path)
    try:
        runs = session.query(Run).order_by(Run.id.desc()).limit(limit).offset(offset).all()
        return [run.to_dict() for run in runs]
    finally:
        session.close()


def get_run_by_run_id(run_id: str, db_path: str = DB_PATH) -> Dict[str, Any]:
    """Get one run by its run_id; an empty dict when it is unknown."""
    session = get_session(db_path)
    try:
        run = session.query(Run).filter(Run.run_id == run_id).first()
        return run.to_dict() if run else {}
    finally:
        session.close()
