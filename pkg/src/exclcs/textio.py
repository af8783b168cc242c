"""Byte-string helpers for JSON output and instance files."""

from __future__ import annotations

from pathlib import Path

from .errors import InstanceError

MAX_SEQUENCE = 2**31


def bytes_field(name: str, value: bytes) -> dict:
    """``{name: text}``, plus ``{name}_hex`` when ``value`` is not valid UTF-8."""
    try:
        return {name: value.decode("utf-8")}
    except UnicodeDecodeError:
        return {name: value.decode("utf-8", errors="replace"), name + "_hex": value.hex()}


def strip_newline(data: bytes) -> bytes:
    if data.endswith(b"\n"):
        return data[:-1]
    return data


def read_sequence(path: str | Path) -> bytes:
    data = strip_newline(Path(path).read_bytes())
    if len(data) > MAX_SEQUENCE:
        raise InstanceError(f"{path}: sequence longer than 2**31 bytes")
    return data


def read_patterns(path: str | Path) -> list[bytes]:
    data = strip_newline(Path(path).read_bytes())
    if not data:
        return []
    lines = data.split(b"\n")
    for lineno, line in enumerate(lines, 1):
        if not line:
            raise InstanceError(f"{path}:{lineno}: blank line in pattern file")
    return lines
