"""
Cache helper functions for command results.
"""

import hashlib
import os
import sys
from typing import Optional

from cli.csv_output import CommandOutput

CACHE_DIR_ENV = "CASIMIR_CACHE_DIR"


def get_cache_key(command: str, config_json: str) -> str:
    """Generate a cache key from the command and its resolved configuration."""
    key_data = f"{command}:{config_json}"
    return hashlib.md5(key_data.encode()).hexdigest()


def get_cache_path(command: str, config_json: str) -> str:
    """Get the cache file path for a command and configuration."""
    cache_dir = os.path.join(os.environ.get(CACHE_DIR_ENV, ".cache"), command)
    os.makedirs(cache_dir, exist_ok=True)
    return os.path.join(cache_dir, f"{get_cache_key(command, config_json)}.json")


def load_from_cache(command: str, config_json: str) -> Optional[CommandOutput]:
    """Load a cached command result if one exists."""
    cache_path = get_cache_path(command, config_json)
    if not os.path.exists(cache_path):
        return None

    try:
        with open(cache_path, "r", encoding="utf-8") as f:
            cached = CommandOutput.model_validate_json(f.read())
    except Exception as e:
        print(f"⚠️ Could not load cache for {command}: {e}", file=sys.stderr)
        return None

    if cached.config_json != config_json:
        return None
    return cached


def save_to_cache(output: CommandOutput) -> None:
    """Save a command result to the cache."""
    cache_path = get_cache_path(output.command, output.config_json)
    try:
        with open(cache_path, "w", encoding="utf-8") as f:
            f.write(output.model_dump_json(indent=2))
        print(f"💾 Cached {output.command} result", file=sys.stderr)
    except Exception as e:
        print(f"⚠️ Could not save cache for {output.command}: {e}", file=sys.stderr)
