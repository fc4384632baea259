"""Example problems shipped with the package (hypernil/data/*.json)"""

from pathlib import Path
from typing import List

from .errors import ParseError
from .problem import Problem, load_problem

CATALOG_DIR = Path(__file__).parent / "data"


def names() -> List[str]:
    return sorted(p.stem for p in CATALOG_DIR.glob("*.json"))


def path(name: str) -> Path:
    candidate = CATALOG_DIR / f"{Path(name).stem}.json"
    if not candidate.is_file():
        raise ParseError(f"unknown catalog entry '{name}'; available: {', '.join(names())}")
    return candidate


def load(name: str, validate: bool = True) -> Problem:
    return load_problem(path(name), validate=validate)


def resolve(argument: str) -> Path:
    """A problem file path, or the name of a catalog entry"""
    p = Path(argument)
    if p.is_file():
        return p
    if p.suffix == ".json" or len(p.parts) != 1:
        raise ParseError("cannot read file", location=argument)
    return path(argument)
