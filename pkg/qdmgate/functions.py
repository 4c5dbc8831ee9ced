#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
Output helpers shared by the sweep engine and the command line front end
"""

# system packages
import csv
import json
import math
from pathlib import Path

# typing
from typing import Any, Dict, Iterable, Optional, Sequence, Union

#: Marker written as first field of a row after a failed integration
FAILED_MARKER = 'FAILED'


def format_number(value: Optional[float]) -> str:
    """
    Format a number for CSV output.

    17 significant digits, decimal point regardless of the locale. None
    becomes an empty field.

    :param      value:  The value
    :type       value:  Optional[float]

    :returns:   The text
    :rtype:     str
    """
    if value is None:
        return ''
    if isinstance(value, float) and math.isnan(value):
        return 'nan'

    return '{:.17g}'.format(float(value))


def complex_to_dict(value: complex) -> Dict[str, float]:
    """
    Convert a complex number to a JSON object.

    :param      value:  The value
    :type       value:  complex

    :returns:   Dictionary with the keys ``re`` and ``im``
    :rtype:     Dict[str, float]
    """
    value = complex(value)

    return {'re': value.real, 'im': value.imag}


def write_csv(path: Union[str, Path],
              header: Sequence[str],
              rows: Iterable[Sequence[Any]]) -> Path:
    """
    Write rows to a CSV file with LF line endings.

    Numbers are formatted with :py:func:`format_number`, strings are kept.

    :param      path:    The path
    :type       path:    Union[str, Path]
    :param      header:  The column names
    :type       header:  Sequence[str]
    :param      rows:    The rows
    :type       rows:    Iterable[Sequence[Any]]

    :returns:   The written path
    :rtype:     Path
    """
    path = Path(path)
    with open(path, 'w', newline='', encoding='utf-8') as file:
        writer = csv.writer(file, lineterminator='\n')
        writer.writerow(header)
        for row in rows:
            writer.writerow([entry if isinstance(entry, str)
                             else format_number(entry) for entry in row])

    return path


def write_json(path: Union[str, Path], data: Any) -> Path:
    """
    Write an object as indented JSON with LF line endings.

    :param      path:  The path
    :type       path:  Union[str, Path]
    :param      data:  JSON compatible data
    :type       data:  Any

    :returns:   The written path
    :rtype:     Path
    """
    path = Path(path)
    with open(path, 'w', newline='\n', encoding='utf-8') as file:
        json.dump(data, file, indent=4, ensure_ascii=False)
        file.write('\n')

    return path


def read_json(path: Union[str, Path]) -> Any:
    """
    Read a JSON file.

    :param      path:  The path
    :type       path:  Union[str, Path]

    :returns:   The parsed content
    :rtype:     Any
    """
    with open(path, 'r', encoding='utf-8') as file:
        return json.load(file)
