import hashlib
from decimal import Decimal, InvalidOperation
from typing import List, Tuple

from .errors import ParseError


def _decimal(text: str) -> Decimal:
    try:
        value = Decimal(text.strip())
    except InvalidOperation as e:
        raise ParseError(f"'{text}' is not a number") from e
    if not value.is_finite():
        raise ParseError(f"'{text}' is not a finite number")
    return value


def parse_range(text: str) -> List[float]:
    """
    Parses an inclusive `start:stop:step` range, e.g. "0:60:5".

    Steps are accumulated in decimal so that "0:1:0.1" ends exactly at 1.
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise ParseError(f"Expected start:stop:step, got '{text}'")
    start, stop, step = (_decimal(part) for part in parts)
    if step <= 0:
        raise ParseError(f"The step of '{text}' must be positive")
    if stop < start:
        raise ParseError(f"The range '{text}' ends before it starts")

    count = int((stop - start) // step) + 1
    return [float(start + i * step) for i in range(count)]


def parse_floats(text: str) -> Tuple[float, ...]:
    return tuple(float(_decimal(part)) for part in text.split(","))


def parse_ints(text: str) -> Tuple[int, ...]:
    values = []
    for part in text.split(","):
        value = _decimal(part)
        if value != value.to_integral_value():
            raise ParseError(f"'{part}' is not an integer")
        values.append(int(value))
    return tuple(values)


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()
