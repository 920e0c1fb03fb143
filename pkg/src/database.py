"""
SQLite store for frozen base blocks and the ledger of verification runs.
"""

import json
import logging
import os
import sqlite3
from contextlib import contextmanager
from datetime import datetime
from typing import Any, Dict, Iterator, List, Optional, Sequence

logger = logging.getLogger(__name__)


class Database:
    """Base blocks found by search, and a record of every command run."""

    def __init__(self, db_path: str = "data/flagrep.db"):
        self.db_path = db_path
        self._ensure_data_dir()
        self._init_database()

    def _ensure_data_dir(self):
        """Ensure data directory exists."""
        directory = os.path.dirname(self.db_path)
        if directory:
            os.makedirs(directory, exist_ok=True)

    @contextmanager
    def _connect(self) -> Iterator[sqlite3.Connection]:
        """A connection that commits on success, rolls back on error and is always closed."""
        conn = sqlite3.connect(self.db_path)
        try:
            with conn:
                yield conn
        finally:
            conn.close()

    def _init_database(self):
        """Initialize database tables."""
        with self._connect() as conn:
            cursor = conn.cursor()

            cursor.execute('''
                CREATE TABLE IF NOT EXISTS base_blocks (
                    line INTEGER PRIMARY KEY,
                    degree INTEGER NOT NULL,
                    k INTEGER NOT NULL,
                    lambda INTEGER NOT NULL,
                    block TEXT NOT NULL,
                    found_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
                )
            ''')

            cursor.execute('''
                CREATE TABLE IF NOT EXISTS runs (
                    id INTEGER PRIMARY KEY AUTOINCREMENT,
                    command TEXT NOT NULL,
                    inputs TEXT NOT NULL,
                    status TEXT NOT NULL,
                    digest TEXT,
                    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
                )
            ''')

    def freeze_base_block(self, line: int, degree: int, k: int, lam: int,
                          block: Sequence[int]) -> bool:
        """Store or replace the base block of a catalog line."""
        try:
            with self._connect() as conn:
                cursor = conn.cursor()
                cursor.execute('''
                    INSERT OR REPLACE INTO base_blocks (line, degree, k, lambda, block, found_at)
                    VALUES (?, ?, ?, ?, ?, ?)
                ''', (line, degree, k, lam, json.dumps(list(block)), datetime.now()))
                return True
        except sqlite3.Error as e:
            logger.error("Database error: %s", e)
            return False

    def get_base_block(self, line: int) -> Optional[Dict[str, Any]]:
        """Frozen base block of a catalog line."""
        try:
            with self._connect() as conn:
                cursor = conn.cursor()
                cursor.execute('''
                    SELECT degree, k, lambda, block, found_at
                    FROM base_blocks WHERE line = ?
                ''', (line,))
                result = cursor.fetchone()
                if result:
                    return {
                        'line': line,
                        'degree': result[0],
                        'k': result[1],
                        'lambda': result[2],
                        'block': json.loads(result[3]),
                        'found_at': result[4],
                    }
                return None
        except sqlite3.Error as e:
            logger.error("Database error: %s", e)
            return None

    def get_base_blocks(self) -> Dict[int, List[int]]:
        """All frozen blocks keyed by line."""
        try:
            with self._connect() as conn:
                cursor = conn.cursor()
                cursor.execute('SELECT line, block FROM base_blocks ORDER BY line')
                return {row[0]: json.loads(row[1]) for row in cursor.fetchall()}
        except sqlite3.Error as e:
            logger.error("Database error: %s", e)
            return {}

    def record_run(self, command: str, inputs: Dict[str, Any], status: str,
                   digest: Optional[str] = None) -> bool:
        """Append a command run to the ledger."""
        try:
            with self._connect() as conn:
                cursor = conn.cursor()
                cursor.execute('''
                    INSERT INTO runs (command, inputs, status, digest, created_at)
                    VALUES (?, ?, ?, ?, ?)
                ''', (command, json.dumps(inputs, sort_keys=True, default=str), status,
                      digest, datetime.now()))
                return True
        except sqlite3.Error as e:
            logger.error("Database error: %s", e)
            return False

    def get_recent_runs(self, limit: int = 10) -> List[Dict[str, Any]]:
        """Most recent runs first."""
        try:
            with self._connect() as conn:
                cursor = conn.cursor()
                cursor.execute('''
                    SELECT id, command, inputs, status, digest, created_at
                    FROM runs
                    ORDER BY id DESC
                    LIMIT ?
                ''', (limit,))

                return [
                    {
                        'id': row[0],
                        'command': row[1],
                        'inputs': json.loads(row[2]),
                        'status': row[3],
                        'digest': row[4],
                        'created_at': row[5],
                    }
                    for row in cursor.fetchall()
                ]
        except sqlite3.Error as e:
            logger.error("Database error: %s", e)
            return []
