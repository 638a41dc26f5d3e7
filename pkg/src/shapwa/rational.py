"""Exact rational scalars.

Everything in the library computes over arbitrary-precision rationals;
binary-64 floats appear only where a module explicitly opts in (the
sigmoid gadget).  gmpy2's mpq is used when available, falling back to
the stdlib Fraction (same semantics, slower).
"""

try:
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rat

ZERO = Rat(0)
ONE = Rat(1)


def rat(x) -> "Rat":
    """Coerce an int, string ("p/q" or "p") or rational to Rat."""
    if isinstance(x, float):
        raise TypeError("refusing to coerce a float to an exact rational")
    return Rat(x)


def format_rat(x) -> str:
    """Serialize a rational as "p/q" (or "p" when the denominator is 1)."""
    return str(Rat(x))


def parse_rat(s) -> "Rat":
    """Parse a JSON rational: an int or a "p/q" string."""
    if isinstance(s, bool) or isinstance(s, float):
        raise ValueError(f"not an exact rational: {s!r}")
    if isinstance(s, int):
        return Rat(s)
    if isinstance(s, str):
        return Rat(s)
    raise ValueError(f"not an exact rational: {s!r}")
