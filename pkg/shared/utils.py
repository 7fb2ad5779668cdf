"""
Common utilities for the qspace tools
"""

import json
import logging
from pathlib import Path


def ensure_directory(directory):
    """Ensure directory exists, create if not"""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    return directory


def dump_json(data) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline"""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def write_json_file(data, filepath):
    """Write canonical JSON, creating the parent directory"""
    filepath = Path(filepath)
    ensure_directory(filepath.parent)
    filepath.write_text(dump_json(data))
    return filepath


def load_json_file(filepath):
    """Load and parse JSON file, None when it cannot be read"""
    try:
        with open(filepath, 'r') as f:
            return json.load(f)
    except (OSError, ValueError) as e:
        logging.getLogger(__name__).error(f"Error loading {filepath}: {e}")
        return None


def setup_logging(level=logging.INFO, log_file=None):
    """Setup logging configuration; stdout is left to the reports"""
    format_str = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    if log_file:
        ensure_directory(Path(log_file).parent)
        logging.basicConfig(
            level=level,
            format=format_str,
            filename=log_file,
            filemode='a'
        )
    else:
        logging.basicConfig(
            level=level,
            format=format_str,
            handlers=[logging.StreamHandler()]
        )
