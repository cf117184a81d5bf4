"""
Utility functions for squarepeg
"""
import json
import shutil
from dataclasses import asdict, is_dataclass
from enum import Enum
from typing import Any, Optional

import numpy as np


class CustomJSONEncoder(json.JSONEncoder):
    """Custom JSON encoder for dataclasses, enums and numpy values"""
    def default(self, obj):
        if is_dataclass(obj) and not isinstance(obj, type):
            return asdict(obj)
        elif isinstance(obj, Enum):
            return obj.value
        elif isinstance(obj, np.integer):
            return int(obj)
        elif isinstance(obj, np.floating):
            return float(obj)
        elif isinstance(obj, np.bool_):
            return bool(obj)
        elif isinstance(obj, np.ndarray):
            return obj.tolist()
        return super().default(obj)


def to_plain(obj: Any) -> Any:
    """Round-trip through the encoder to get plain dicts, lists and floats"""
    return json.loads(json.dumps(obj, cls=CustomJSONEncoder))


def parse_point(text: str) -> Optional[tuple]:
    """Parse "x,y" into a float pair"""
    parts = [p.strip() for p in text.split(',')]
    if len(parts) != 2:
        return None
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        return None


def line_separator(title: Optional[str] = None) -> str:
    width = shutil.get_terminal_size((80, 20)).columns
    if title:
        return f"=== {title} " + "=" * max(0, width - len(f"=== {title} "))
    return "=" * width
