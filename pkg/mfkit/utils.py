"""
Utility functions for mfkit.

File formats shared by the command-line front end: matrix JSON, witness
JSON, one-polynomial-per-line ideal files, and ``name=value`` parameter
lists.
"""

import json
import re
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .constants import Y_NAMES
from .cyclofield import CycNum
from .matpoly import PolyMat
from .multipoly import OrderLike, Poly, PolySyntaxError, VarTable, names_in_text, parse_poly


def natural_sort(names: Iterable[str]) -> List[str]:
    """
    Sort names so that embedded numbers compare numerically.

    Example:
        >>> natural_sort(["Y10", "Y2", "X1"])
        ['X1', 'Y2', 'Y10']
    """

    def key(name: str) -> List[Any]:
        return [(0, int(t)) if t.isdigit() else (1, t) for t in re.split(r"(\d+)", name) if t]

    return sorted(set(names), key=key)


def to_json(data: Any) -> str:
    """Deterministic JSON: sorted keys, two-space indent."""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)


def write_output(text: str, path: Optional[Path] = None) -> None:
    """Write text to ``path``, or to stdout when no path is given."""
    if path is None:
        print(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text + "\n", encoding="utf-8")


def _read_json(path: Path) -> Dict[str, Any]:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ValueError(f"{path}: invalid JSON ({e})")
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object")
    return data


def _rows(data: Dict[str, Any], key: str, source: str) -> List[List[str]]:
    rows = data.get(key)
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValueError(f"{source}: '{key}' must be a list of rows")
    return [[str(x) for x in r] for r in rows]


def _table(data: Dict[str, Any], default: Sequence[str]) -> VarTable:
    names = data.get("vars", list(default))
    if not isinstance(names, list):
        raise ValueError("'vars' must be a list of names")
    return VarTable(tuple(str(n) for n in names))


def matrix_to_dict(m: PolyMat, order: OrderLike = None) -> Dict[str, Any]:
    return {"vars": list(m.vars.names), "rows": m.to_text(order)}


def matrix_from_dict(data: Dict[str, Any], source: str = "matrix") -> PolyMat:
    """
    Build a matrix from {"vars": [...], "rows": [[...], ...]}.

    ``vars`` defaults to Y1..Y4; the matrix is returned over Y1..Y4 so that
    files written with a shorter table still compare with catalog entries.
    """
    table = _table(data, Y_NAMES)
    stray = [n for n in table.names if n not in Y_NAMES]
    if stray:
        raise ValueError(f"{source}: matrix variables must be among {list(Y_NAMES)}, got {stray}")
    return PolyMat.from_text(_rows(data, "rows", source), table).embed(VarTable(Y_NAMES))


def read_matrix(path: Path) -> PolyMat:
    return matrix_from_dict(_read_json(path), str(path))


def write_matrix(m: PolyMat, path: Path, order: OrderLike = None) -> None:
    write_output(to_json(matrix_to_dict(m, order)), path)


def read_witness(path: Path) -> Tuple[PolyMat, PolyMat]:
    """
    U and V from {"vars": [...], "U": [[...]], "V": [[...]]}.

    ``vars`` lists the auxiliary scalars (for instance ["l"]) and may be empty.
    """
    data = _read_json(path)
    table = _table(data, ())
    U = PolyMat.from_text(_rows(data, "U", str(path)), table)
    V = PolyMat.from_text(_rows(data, "V", str(path)), table)
    return U, V


def read_polys(
    path: Path, names: Optional[Sequence[str]] = None
) -> Tuple[VarTable, List[Poly]]:
    """
    One polynomial per line; blank lines and lines starting with '#' are skipped.

    Without ``names`` the variable table is the natural sort of every name
    used in the file.
    """
    lines = [
        line.strip()
        for line in path.read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.strip().startswith("#")
    ]
    if names is None:
        found: List[str] = []
        for line in lines:
            found.extend(names_in_text(line))
        names = natural_sort(found)
    table = VarTable(tuple(names))
    return table, [parse_poly(line, table) for line in lines]


def read_linear_form(path: Path) -> Poly:
    """
    A single polynomial in Y1..Y4 read with the ideal-file grammar.

    Linearity is checked by the caller.
    """
    _, polys = read_polys(path, Y_NAMES)
    if len(polys) != 1:
        raise ValueError(f"{path}: expected one linear form, found {len(polys)} lines")
    return polys[0]


def parse_scalar(text: str) -> CycNum:
    """
    A constant of Q(e) written in the polynomial grammar, e.g. ``-e`` or ``1/2+e``.

    Raises:
        PolySyntaxError: If the text is not a constant
    """
    p = parse_poly(text, VarTable(()))
    if not p.is_constant():
        raise PolySyntaxError(f"'{text}' is not a constant", 0)
    return p.constant_value()


def parse_params(text: str) -> Dict[str, str]:
    """
    Split ``name=value,name=value`` into a dict of raw value strings.

    Example:
        >>> parse_params("i=2,j=3,a=-1,b=-e")
        {'i': '2', 'j': '3', 'a': '-1', 'b': '-e'}
    """
    out: Dict[str, str] = {}
    for part in filter(None, (s.strip() for s in text.split(","))):
        if "=" not in part:
            raise ValueError(f"Expected name=value, got '{part}'")
        name, value = (s.strip() for s in part.split("=", 1))
        if not name or not value:
            raise ValueError(f"Expected name=value, got '{part}'")
        if name in out:
            raise ValueError(f"Parameter '{name}' given twice")
        out[name] = value
    return out
