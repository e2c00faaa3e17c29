"""JSON Schemas for dataset files and benchmark results."""

import json
from importlib import resources


def load_schema(name: str) -> dict:
    """``load_schema("dataset")`` or ``load_schema("results")``."""
    return json.loads(resources.files(__name__).joinpath(f"{name}.schema.json").read_text(encoding="utf-8"))
