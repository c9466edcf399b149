"""Read-only store of tabulated tensor-product cohomology."""
from __future__ import annotations

from functools import lru_cache
from importlib import resources

FACTS_FILE = "tensor_facts.txt"


def parse_facts(text: str) -> dict[tuple[int, str], dict[int, dict[int, int]]]:
    """Map (n, pair) -> {i: {degree: dim}}."""
    table: dict[tuple[int, str], dict[int, dict[int, int]]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        fields = body.split()
        if len(fields) != 5:
            raise ValueError(f"{FACTS_FILE}:{lineno}: expected 5 fields, got {len(fields)}")
        n, pair, i, deg, dim = int(fields[0]), fields[1], int(fields[2]), int(fields[3]), int(fields[4])
        if dim <= 0:
            raise ValueError(f"{FACTS_FILE}:{lineno}: dimensions must be positive")
        row = table.setdefault((n, pair), {}).setdefault(i, {})
        row[deg] = row.get(deg, 0) + dim
    return table


@lru_cache(maxsize=None)
def tensor_facts() -> dict[tuple[int, str], dict[int, dict[int, int]]]:
    text = resources.files("quadmonad.data").joinpath(FACTS_FILE).read_text()
    return parse_facts(text)


def pair_key(kind_x: str, kind_y: str) -> str:
    return f"{kind_x}*{kind_y}"
