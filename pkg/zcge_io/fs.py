import json
import os
from pathlib import Path
from typing import Any

from errors import SpecError


def ensure_dir(path: str) -> None:
    Path(path).mkdir(parents=True, exist_ok=True)


def ensure_parent(path: str) -> None:
    parent = os.path.dirname(path)
    if parent:
        ensure_dir(parent)


def load_json_arg(value: str, what: str = "argument") -> Any:
    """Parse a flag value that is either a path to a JSON file or inline JSON."""
    text = value
    if os.path.isfile(value):
        with open(value, "r", encoding="utf-8") as f:
            text = f.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"{what} is neither a readable file nor valid JSON: {e}")
