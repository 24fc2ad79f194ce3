"""
SQLAlchemy ORM configuration.
Sets up the base and the session factories for the run ledger.
"""

import os

from sqlalchemy import create_engine
from sqlalchemy.orm import declarative_base, sessionmaker

from vibronic_gbs.vg_config import DEFAULT_CACHE_DIR, LEDGER_FILE_NAME

# Create base class for SQLAlchemy models
Base = declarative_base()

# Default path for the ledger, the same one the settings resolve to
DB_PATH = os.path.join(DEFAULT_CACHE_DIR, LEDGER_FILE_NAME)


def _engine(db_path: str):
    return create_engine(f"sqlite:///{db_path}", connect_args={"check_same_thread": False})


def get_session(db_path: str = DB_PATH):
    """
    Open a session on the ledger at ``db_path``.

    Returns
    -------
    SQLAlchemy Session
        A session for database operations; the caller closes it
    """
    session_factory = sessionmaker(autocommit=False, autoflush=False, bind=_engine(db_path))
    return session_factory()


def init_db(db_path: str = DB_PATH) -> None:
    """
    Initialize the SQLite ledger with the necessary tables.

    Parameters
    ----------
    db_path : str
        Path to the SQLite database file; its directory is created.
    """
    directory = os.path.dirname(os.path.abspath(db_path))
    os.makedirs(directory, exist_ok=True)

    # Create all tables
    Base.metadata.create_all(bind=_engine(db_path))
