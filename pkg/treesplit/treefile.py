"""
TreeFile text format.

    # comment
    tree <n> scale=<d>
    v <id> <decimal-weight>      (n lines)
    e <u> <w>                    (n-1 lines)

Decimal weights carry at most d fractional digits and are stored as exact
integers scaled by 10**d. serialize_tree() writes the canonical form:
header, vertex lines by id, edge lines in canonical order.
"""

import logging
import re
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .errors import (
    EpsilonNotRepresentable,
    TooManyFractionalDigits,
    TreeBuildError,
    TreeFileError,
    TreeFileSyntaxError,
)
from .tree import WeightedTree, build

logger = logging.getLogger("treesplit.treefile")

_HEADER = re.compile(r"tree\s+(\d+)\s+scale=(\d+)")
_DECIMAL = re.compile(r"([+-]?)(\d+)(?:\.(\d+))?")
_ID = re.compile(r"\d+")


def to_scaled(text: str, scale_exponent: int, line: Optional[int] = None) -> int:
    """Exact integer value of a decimal string times 10**scale_exponent."""
    m = _DECIMAL.fullmatch(text)
    if m is None:
        raise TreeFileSyntaxError(f"not a decimal number: {text!r}", line)
    sign, whole, frac = m.group(1), m.group(2), m.group(3) or ""
    if len(frac) > scale_exponent:
        raise TooManyFractionalDigits(
            f"{text!r} has {len(frac)} fractional digits, scale allows {scale_exponent}", line
        )
    value = int(whole + frac.ljust(scale_exponent, "0"))
    return -value if sign == "-" else value


def format_scaled(value: int, scale_exponent: int) -> str:
    """Canonical decimal string for a scaled integer (exactly scale_exponent digits)."""
    sign = "-" if value < 0 else ""
    whole, frac = divmod(abs(value), 10**scale_exponent)
    if scale_exponent == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{scale_exponent}d}"


def parse_epsilon(text: str, scale_exponent: int) -> int:
    """
    Doubled tolerance 2*eps in the units of a tree at the given scale.

    Rejects negative values and values whose double is not an integer there.
    """
    try:
        eps = Decimal(text.strip())
    except InvalidOperation as e:
        raise EpsilonNotRepresentable(f"not a decimal number: {text!r}") from e
    if not eps.is_finite() or eps < 0:
        raise EpsilonNotRepresentable(f"epsilon must be a finite value >= 0, got {text!r}")
    doubled = Fraction(eps) * 2 * 10**scale_exponent
    if doubled.denominator != 1:
        raise EpsilonNotRepresentable(
            f"2*epsilon = {2 * eps} is not representable at scale={scale_exponent}"
        )
    return doubled.numerator


def format_half(value: int, scale_exponent: int) -> str:
    """value / 2 as a decimal string, with one extra digit when value is odd."""
    if value % 2 == 0:
        return format_scaled(value // 2, scale_exponent)
    return format_scaled(value * 5, scale_exponent + 1)


def _parse_id(token: str, line: int) -> int:
    if not _ID.fullmatch(token):
        raise TreeFileSyntaxError(f"not a vertex id: {token!r}", line)
    return int(token)


def parse_tree(text: str) -> WeightedTree:
    header: Optional[Tuple[int, int]] = None
    weights: Dict[int, int] = {}
    edges: List[Tuple[int, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        if header is None:
            m = _HEADER.fullmatch(line)
            if m is None:
                raise TreeFileSyntaxError(f"expected header 'tree <n> scale=<d>', got {line!r}", lineno)
            header = (int(m.group(1)), int(m.group(2)))
            continue

        n, scale = header
        tokens = line.split()
        if tokens[0] == "v" and len(tokens) == 3:
            vid = _parse_id(tokens[1], lineno)
            if vid >= n:
                raise TreeFileError(f"vertex {vid} outside [0, {n})", lineno)
            if vid in weights:
                raise TreeFileSyntaxError(f"duplicate weight line for vertex {vid}", lineno)
            weights[vid] = to_scaled(tokens[2], scale, lineno)
        elif tokens[0] == "e" and len(tokens) == 3:
            edges.append((_parse_id(tokens[1], lineno), _parse_id(tokens[2], lineno)))
        elif tokens[0] == "tree":
            raise TreeFileSyntaxError("duplicate header", lineno)
        else:
            raise TreeFileSyntaxError(f"unrecognised line {line!r}", lineno)

    if header is None:
        raise TreeFileSyntaxError("missing header 'tree <n> scale=<d>'")
    n, scale = header
    if len(weights) != n:
        missing = next(v for v in range(n) if v not in weights)
        raise TreeFileSyntaxError(f"missing weight line for vertex {missing}")

    try:
        tree = build(n, [weights[v] for v in range(n)], edges, scale)
    except TreeBuildError as e:
        raise TreeFileError(f"invalid tree: {e}") from e
    logger.debug(f"Parsed tree file: n={n}, scale={scale}")
    return tree


def serialize_tree(t: WeightedTree) -> str:
    d = t.scale_exponent
    lines = [f"tree {t.vertex_count} scale={d}"]
    lines.extend(f"v {v} {format_scaled(w, d)}" for v, w in enumerate(t.weights))
    lines.extend(f"e {e.u} {e.v}" for e in t.edges)
    return "\n".join(lines) + "\n"


def read_tree(path: Union[str, Path]) -> WeightedTree:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise TreeFileError(f"cannot read {path}: {e}") from e
    except UnicodeDecodeError as e:
        raise TreeFileError(f"{path} is not valid UTF-8: {e}") from e
    return parse_tree(text)


def write_tree(t: WeightedTree, path: Union[str, Path]) -> None:
    Path(path).write_text(serialize_tree(t), encoding="utf-8")
