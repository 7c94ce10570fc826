"""
Matrix file format: first line n, then n lines of n characters from {0,1}.
"""

from pathlib import Path
from typing import Union

from apps.core.exceptions import DimensionMismatchError, InvalidParameterError
from .bitmatrix import ZeroOneMatrix


def parse_matrix_text(text: str) -> ZeroOneMatrix:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise InvalidParameterError('Matrix file is empty')
    try:
        n = int(lines[0])
    except ValueError:
        raise InvalidParameterError(f"First line must be the dimension, got '{lines[0]}'")
    if n < 1:
        raise InvalidParameterError('Matrix dimension must be positive', details={'n': n})
    body = lines[1:]
    if len(body) != n:
        raise DimensionMismatchError(f"Expected {n} rows, found {len(body)}")
    for i, line in enumerate(body):
        if len(line) != n:
            raise DimensionMismatchError(f"Row {i + 1} has {len(line)} characters, expected {n}")
    return ZeroOneMatrix.from_strings(body)


def format_matrix_text(M: ZeroOneMatrix) -> str:
    if not M.is_square:
        raise DimensionMismatchError('Only square matrices can be written', details={'shape': M.shape})
    return '\n'.join([str(M.n), *M.to_strings()]) + '\n'


def read_matrix_file(path: Union[str, Path]) -> ZeroOneMatrix:
    return parse_matrix_text(Path(path).read_text())


def write_matrix_file(path: Union[str, Path], M: ZeroOneMatrix) -> None:
    Path(path).write_text(format_matrix_text(M))
