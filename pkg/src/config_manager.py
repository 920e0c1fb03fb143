"""
Configuration management for search limits, table grids and output settings.
"""

import configparser
import logging
import os
from typing import Any, Dict, List, Optional

from src.arith import is_prime_power
from src.ui_manager import LOG_LEVELS

logger = logging.getLogger(__name__)

THREADS_ENV = 'FLAGREP_THREADS'


class ConfigManager:
    """INI settings with built-in defaults; the file only overrides."""

    def __init__(self, config_path: Optional[str] = "data/config.ini"):
        self.config_path = config_path
        self.config = configparser.ConfigParser()
        self._load_default_config()
        self._load_config()

    def _load_default_config(self):
        """Load default configuration values."""
        self.config['SEARCH'] = {
            'max_degree': '10000',
            'max_field_order': '65536',
            'max_base_block_candidates': '200000',
        }

        self.config['TABLES'] = {
            'q_grid': '2,3,4,5,7,8,9,11,13,16,25,27,32',
            'dimension_grid': '7,8,9,10,11,12,13,14,15,16',
        }

        self.config['OUTPUT'] = {
            'indent': '2',
            'log_level': 'WARNING',
            'pretty': 'false',
        }

        self.config['PARALLEL'] = {
            'threads': '4',
        }

        self.config['STORAGE'] = {
            'enabled': 'true',
            'db_path': 'data/flagrep.db',
            'snapshot_path': 'data/base_blocks.json',
        }

    def _load_config(self):
        """Load configuration from file."""
        if self.config_path and os.path.exists(self.config_path):
            try:
                self.config.read(self.config_path, encoding='utf-8')
            except configparser.Error as e:
                logger.warning("Error loading config %s: %s; using defaults", self.config_path, e)

    def save_config(self) -> bool:
        """Save current configuration to file."""
        if not self.config_path:
            return False
        try:
            directory = os.path.dirname(self.config_path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(self.config_path, 'w', encoding='utf-8') as config_file:
                self.config.write(config_file)
            return True
        except OSError as e:
            logger.error("Error saving config: %s", e)
            return False

    def get(self, section: str, key: str, fallback: str = "") -> str:
        """Get a configuration value."""
        try:
            return self.config.get(section, key, fallback=fallback)
        except (configparser.NoSectionError, configparser.NoOptionError):
            return fallback

    def get_int(self, section: str, key: str, fallback: int = 0) -> int:
        """Get a configuration value as integer."""
        try:
            return self.config.getint(section, key, fallback=fallback)
        except (configparser.NoSectionError, configparser.NoOptionError, ValueError):
            return fallback

    def get_bool(self, section: str, key: str, fallback: bool = False) -> bool:
        """Get a configuration value as boolean."""
        try:
            return self.config.getboolean(section, key, fallback=fallback)
        except (configparser.NoSectionError, configparser.NoOptionError, ValueError):
            return fallback

    def get_int_list(self, section: str, key: str, fallback: Optional[List[int]] = None) -> List[int]:
        """Comma-separated integers; the fallback on any parse error."""
        raw = self.get(section, key, "")
        try:
            return [int(x) for x in raw.split(',') if x.strip()]
        except ValueError:
            logger.warning("[%s] %s is not a list of integers: %r", section, key, raw)
            return list(fallback or [])

    def set(self, section: str, key: str, value: Any) -> bool:
        """Set a configuration value."""
        try:
            if not self.config.has_section(section):
                self.config.add_section(section)
            self.config.set(section, key, str(value))
            return True
        except configparser.Error as e:
            logger.error("Error setting config: %s", e)
            return False

    def threads(self) -> int:
        """Worker count: FLAGREP_THREADS when valid, else [PARALLEL] threads."""
        raw = os.environ.get(THREADS_ENV)
        if raw is not None:
            try:
                value = int(raw)
                if value >= 1:
                    return value
            except ValueError:
                pass
            logger.warning("Ignoring %s=%r: expected an integer >= 1", THREADS_ENV, raw)
        return max(1, self.get_int('PARALLEL', 'threads', 4))

    def get_search_settings(self) -> Dict[str, int]:
        return {
            'max_degree': self.get_int('SEARCH', 'max_degree', 10000),
            'max_field_order': self.get_int('SEARCH', 'max_field_order', 65536),
            'max_base_block_candidates': self.get_int('SEARCH', 'max_base_block_candidates', 200000),
        }

    def get_table_settings(self) -> Dict[str, List[int]]:
        return {
            'q_grid': self.get_int_list('TABLES', 'q_grid'),
            'dimension_grid': self.get_int_list('TABLES', 'dimension_grid'),
        }

    def get_output_settings(self) -> Dict[str, Any]:
        return {
            'indent': self.get_int('OUTPUT', 'indent', 2),
            'log_level': self.get('OUTPUT', 'log_level', 'WARNING'),
            'pretty': self.get_bool('OUTPUT', 'pretty', False),
        }

    def get_storage_settings(self) -> Dict[str, Any]:
        return {
            'enabled': self.get_bool('STORAGE', 'enabled', True),
            'db_path': self.get('STORAGE', 'db_path', 'data/flagrep.db'),
            'snapshot_path': self.get('STORAGE', 'snapshot_path', 'data/base_blocks.json'),
        }

    def reset_to_defaults(self) -> bool:
        """Reset configuration to default values."""
        self.config.clear()
        self._load_default_config()
        return self.save_config()

    def get_all_settings(self) -> Dict[str, Dict[str, Any]]:
        """Get all configuration settings."""
        return {
            'search': self.get_search_settings(),
            'tables': self.get_table_settings(),
            'output': self.get_output_settings(),
            'parallel': {'threads': self.threads()},
            'storage': self.get_storage_settings(),
        }

    def validate_config(self) -> bool:
        """Validate current configuration."""
        for section in ('SEARCH', 'TABLES', 'OUTPUT', 'PARALLEL', 'STORAGE'):
            if not self.config.has_section(section):
                logger.error("Missing required section: %s", section)
                return False

        q_grid = self.get_int_list('TABLES', 'q_grid')
        if not q_grid or not all(is_prime_power(q) for q in q_grid):
            logger.error("Invalid q_grid: every entry must be a prime power >= 2")
            return False

        if self.get_int('PARALLEL', 'threads', 0) < 1:
            logger.error("Invalid thread count")
            return False

        level = self.get('OUTPUT', 'log_level', 'WARNING').upper()
        if level not in LOG_LEVELS:
            logger.error("Invalid log level: %s", level)
            return False

        for key, value in self.get_search_settings().items():
            if value < (2 if key == 'max_field_order' else 1):
                logger.error("Invalid %s: %d", key, value)
                return False

        return True
