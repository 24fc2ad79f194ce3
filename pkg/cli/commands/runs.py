"""
runs: list the runs recorded in the ledger.
"""

import json
import os

from database.db_storage import get_runs


def register(subparsers) -> None:
    parser = subparsers.add_parser("runs", help="list recorded runs, newest first")
    parser.add_argument("--limit", type=int, default=20)
    parser.set_defaults(func=run, records_run=False)


def run(args, recorder) -> int:
    if not os.path.exists(args.ledger_path):
        return 0
    for record in get_runs(limit=args.limit, db_path=args.ledger_path):
        print(json.dumps(record, sort_keys=True))
    return 0
