"""JSON file formats for lattices and quadratic functions.

Rationals are written as ``"p/q"`` strings (``"0"`` and ``"1"`` for
integers), matrices as row-major arrays of arrays.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InvalidInputError
from .exact import CyclotomicNumber
from .lattice import Triple
from .torsion import (
    FiniteAbelianGroup,
    GroupIso,
    StructuredQuadratic,
    TorsionBilinear,
    some_quadratic_over,
)


def _field(data: dict, name: str, required=True, default=None):
    if not isinstance(data, dict):
        raise InvalidInputError("document must be a JSON object")
    if name not in data:
        if required:
            raise InvalidInputError(f"missing field '{name}'")
        return default
    return data[name]


def _int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidInputError(f"field '{name}': expected an integer, got {value!r}")
    return value


def _int_vector(value, name: str) -> tuple:
    if not isinstance(value, list):
        raise InvalidInputError(f"field '{name}': expected an array of integers")
    return tuple(_int(v, name) for v in value)


def _int_matrix(value, name: str) -> tuple:
    if not isinstance(value, list):
        raise InvalidInputError(f"field '{name}': expected an array of arrays")
    return tuple(_int_vector(row, name) for row in value)


def parse_rational(value, name: str = "value") -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidInputError(f"field '{name}': use a \"p/q\" string, not {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise InvalidInputError(f"field '{name}': expected a \"p/q\" string, got {value!r}")
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise InvalidInputError(f"field '{name}': cannot parse {value!r} as a rational") from None


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _rat_vector(value, name: str) -> tuple:
    if not isinstance(value, list):
        raise InvalidInputError(f"field '{name}': expected an array of rationals")
    return tuple(parse_rational(v, name) for v in value)


def load_triple(data: dict) -> Triple:
    gram = _int_matrix(_field(data, "gram"), "gram")
    char = _field(data, "char", required=False)
    try:
        return Triple.of(gram, None if char is None else _int_vector(char, "char"))
    except ValueError as exc:
        raise InvalidInputError(f"field 'gram'/'char': {exc}") from None


def dump_triple(t: Triple) -> dict:
    return {"gram": [list(r) for r in t.lattice.gram], "char": list(t.char.coeffs)}


def load_quad(data: dict, need_values: bool = True) -> StructuredQuadratic:
    """Parse a quadratic-function document.

    With ``need_values=False`` the field ``q`` may be omitted; the smallest
    refinement of ``b`` is used instead.
    """
    orders = _int_vector(_field(data, "orders"), "orders")
    b_raw = _field(data, "b")
    if not isinstance(b_raw, list):
        raise InvalidInputError("field 'b': expected an array of arrays")
    b = tuple(_rat_vector(row, "b") for row in b_raw)
    s = _int(_field(data, "divisible_rank", required=False, default=0), "divisible_rank")
    w = _int_vector(_field(data, "kernel_hom", required=False, default=[]), "kernel_hom")
    q_raw = _field(data, "q", required=need_values)
    try:
        pairing = TorsionBilinear(FiniteAbelianGroup(orders), b)
    except ValueError as exc:
        raise InvalidInputError(f"field 'b': {exc}") from None
    if q_raw is None:
        q = some_quadratic_over(pairing).gen_values
    else:
        q = _rat_vector(q_raw, "q")
    try:
        return StructuredQuadratic(pairing, q, s, w)
    except ValueError as exc:
        raise InvalidInputError(f"field 'q'/'kernel_hom': {exc}") from None


def dump_quad(q: StructuredQuadratic) -> dict:
    return {
        "orders": list(q.orders),
        "b": [[format_rational(x) for x in row] for row in q.b],
        "q": [format_rational(x) for x in q.gen_values],
        "divisible_rank": q.divisible_rank,
        "kernel_hom": list(q.kernel_hom),
    }


def dump_cyclotomic(x: CyclotomicNumber) -> dict:
    return {"level": x.level, "coeffs": list(x.coeffs), "norm_square": x.norm_square}


def dump_iso(psi: GroupIso) -> dict:
    return {
        "source": list(psi.source),
        "target": list(psi.target),
        "matrix": [list(r) for r in psi.matrix],
        "divisible_rank": psi.divisible_rank,
        "kernel_matrix": [list(r) for r in psi.kernel_matrix],
        "mixing": [[format_rational(x) for x in r] for r in psi.mixing],
    }


def dumps(doc) -> str:
    """Byte-stable rendering: two-space indent, trailing newline."""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"{path} is not valid JSON: {exc}") from None
