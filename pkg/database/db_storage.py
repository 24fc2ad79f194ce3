"""
Database storage adapter exposing the ledger functions to the CLI.
"""

from database.models.runs import get_run_by_run_id, get_runs, store_run
from database.orm import DB_PATH, init_db

__all__ = [
    "init_db",
    "DB_PATH",
    "store_run",
    "get_runs",
    "get_run_by_run_id",
]
