from pathlib import Path
from typing import Union

import numpy as np

from src.errors import ParseError
from src.groups.cayley import CayleyGroup

NAME_PREFIX = "# name "


def format_group(G: CayleyGroup) -> str:
    lines = [f"order {G.order}"]
    if G.name:
        lines.append(f"{NAME_PREFIX}{G.name}")
    width = len(str(G.order - 1))
    lines.extend(" ".join(f"{x:>{width}}" for x in row) for row in G.table)
    return "\n".join(lines) + "\n"


def parse_group(text: str) -> CayleyGroup:
    order = None
    name = ""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            tokens = line[1:].split(maxsplit=1)
            if len(tokens) == 2 and tokens[0] == "name":
                name = tokens[1].strip()
            continue
        if order is None:
            head = line.split()
            if len(head) != 2 or head[0] != "order" or not head[1].isdigit():
                raise ParseError(f"line {lineno}: expected 'order <n>', got {line!r}")
            order = int(head[1])
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError as err:
            raise ParseError(f"line {lineno}: non-integer entry") from err
    if order is None:
        raise ParseError("missing 'order <n>' header")
    if len(rows) != order or any(len(row) != order for row in rows):
        raise ParseError(f"expected {order} rows of {order} entries")
    return CayleyGroup(np.array(rows, dtype=np.intp), name=name)


def read_group(path: Union[str, Path]) -> CayleyGroup:
    return parse_group(Path(path).read_text())


def write_group(G: CayleyGroup, path: Union[str, Path]) -> None:
    Path(path).write_text(format_group(G))
