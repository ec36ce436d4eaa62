import cmath
import logging
import sys
from typing import Any, List, Optional

import numpy as np
from prettytable import PrettyTable

from constants import CSV_SIGNIFICANT_DIGITS


class Colors:
    """ANSI color codes for terminal output"""
    GREEN = '\033[92m'
    YELLOW = '\033[93m'
    RED = '\033[91m'
    ENDC = '\033[0m'


def setup_logging(log_level: int = logging.INFO, log_file: Optional[str] = None) -> logging.Logger:
    """Set up logging configuration"""
    log_format = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    # Configure the root logger
    logging.basicConfig(
        level=log_level,
        format=log_format,
        handlers=[
            logging.StreamHandler(sys.stdout)
        ],
        force=True
    )

    # Add file handler if specified
    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(logging.Formatter(log_format))
        logging.getLogger().addHandler(file_handler)

    return logging.getLogger("qarrow")


def format_sig(value: float, digits: int = CSV_SIGNIFICANT_DIGITS) -> str:
    """
    Format a number with a fixed count of significant digits

    Trailing zeros are kept so every row has the same precision; an exact
    zero prints as "0".
    """
    value = float(value)
    if value == 0.0:
        return "0"
    if not np.isfinite(value):
        return str(value)
    text = np.format_float_positional(value, precision=digits, unique=False, fractional=False, trim="k")
    return text.rstrip(".")


def _parse_angle(text: str) -> float:
    """Angle in radians; accepts plain numbers and multiples of pi such as "pi/2" or "0.5pi" """
    if "pi" not in text:
        return float(text)
    coef, _, rest = text.partition("pi")
    coef = coef.rstrip("*")
    if coef in ("", "+"):
        scale = 1.0
    elif coef == "-":
        scale = -1.0
    else:
        scale = float(coef)
    if rest == "":
        return scale * np.pi
    if rest.startswith("/"):
        denominator = float(rest[1:])
        if denominator == 0:
            raise ValueError(f"zero denominator in angle '{text}'")
        return scale * np.pi / denominator
    raise ValueError(f"cannot parse angle '{text}'")


def parse_complex(text: str) -> complex:
    """
    Parse a complex amplitude

    Accepted forms: "a+bi" (or "a+bj"), "Mi" for pure imaginary values,
    plain reals, and polar "M@theta" where theta may be written as a
    multiple of pi ("0.1@pi/2").

    Raises:
        ValueError: text matches none of the forms
    """
    cleaned = str(text).strip().lower().replace(" ", "")
    if not cleaned:
        raise ValueError("empty complex value")
    try:
        if "@" in cleaned:
            magnitude, _, angle = cleaned.partition("@")
            return float(magnitude) * cmath.exp(1j * _parse_angle(angle))
        return complex(cleaned.replace("i", "j"))
    except ValueError:
        raise ValueError(f"cannot parse complex value '{text}' (use a+bi, Mi or M@theta)") from None


def print_table(headers: List[str], rows: List[List[Any]], title: Optional[str] = None) -> None:
    """Print a formatted table to the console"""
    table = PrettyTable()
    table.field_names = headers
    table.align = "l"
    for row in rows:
        table.add_row([str(cell) for cell in row])

    if title:
        print(f"\n{title}")
        print("=" * len(title))
    print(table)


def format_fraction(value: Optional[float]) -> str:
    """Consistency fraction for console output, colored by how close it is to 1"""
    if value is None:
        return f"{Colors.YELLOW}undefined{Colors.ENDC}"
    color = Colors.GREEN if value >= 0.95 else Colors.RED
    return f"{color}{value:.4f}{Colors.ENDC}"
