"""
SQLite run ledger.
"""

from database.orm import init_db, DB_PATH

# Import the models to ensure they're registered with SQLAlchemy
from database.models.runs import Run

__all__ = ["init_db", "DB_PATH", "Run"]
