"""Precision plumbing: working contexts, digit strings and digit comparison.

Everything downstream evaluates at ``decimal_digits + guard_digits`` working
precision and rounds once, at presentation time.  Digit-coincidence counting
operates on presentation-rounded digit streams, never on raw floats.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from decimal import Decimal, localcontext


class PrecisionError(ArithmeticError):
    """A high-precision computation could not meet its accuracy contract.

    Raised instead of silently degrading: a wrong reference value would
    invalidate every comparison built on top of it.
    """


@dataclass(frozen=True)
class PrecisionContext:
    """Requested output digits plus extra working digits.

    ``decimal_digits`` is what callers see after presentation rounding;
    all intermediate arithmetic runs at ``decimal_digits + guard_digits``
    so that accumulated rounding cannot disturb the presented digits.
    """

    decimal_digits: int
    guard_digits: int = 10

    def __post_init__(self) -> None:
        if self.decimal_digits < 1:
            raise ValueError(f"decimal_digits must be >= 1, got {self.decimal_digits}")
        if self.guard_digits < 1:
            raise ValueError(f"guard_digits must be >= 1, got {self.guard_digits}")

    @property
    def working_digits(self) -> int:
        return self.decimal_digits + self.guard_digits

    def local(self, extra: int = 0):
        """Context manager for arithmetic at working precision (+ extra)."""
        return localcontext(decimal.Context(prec=self.working_digits + extra))

    def present(self, value: Decimal) -> Decimal:
        """Round ``value`` to exactly ``decimal_digits`` significant digits."""
        return round_to_figures(value, self.decimal_digits)


def round_to_figures(value: Decimal, figures: int) -> Decimal:
    """Round half-even to ``figures`` significant digits, zero-padded.

    The coefficient of the result always carries exactly ``figures`` digits
    (so ``3.2`` at 10 figures renders as ``3.200000000``), which keeps
    digit-coincidence counts stable.
    """
    if figures < 1:
        raise ValueError(f"figures must be >= 1, got {figures}")
    if value.is_nan() or value.is_infinite():
        raise ValueError(f"cannot round non-finite value {value}")
    with localcontext(decimal.Context(prec=figures + 5)):
        if value == 0:
            return Decimal(0).quantize(Decimal(1).scaleb(1 - figures))
        quantum = Decimal(1).scaleb(value.adjusted() - figures + 1)
        rounded = value.quantize(quantum, rounding=decimal.ROUND_HALF_EVEN)
        if rounded.adjusted() != value.adjusted():
            # rounding carried into a new decade (9.99... -> 10.0...)
            quantum = Decimal(1).scaleb(rounded.adjusted() - figures + 1)
            rounded = rounded.quantize(quantum, rounding=decimal.ROUND_HALF_EVEN)
        return rounded


def format_plain(value: Decimal) -> str:
    """Render without exponent notation; trailing zeros are kept."""
    if value.is_nan() or value.is_infinite():
        raise ValueError(f"cannot format non-finite value {value}")
    return format(value, "f")


@dataclass(frozen=True)
class DigitString:
    """A decimal digit stream with the point removed, plus a sign.

    ``Decimal("3.14159")`` becomes digits ``"314159"``; values below one keep
    their leading zeros (``0.05`` -> ``"005"``) so that position k of the
    stream always means the same power of ten for same-magnitude operands.
    """

    digits: str
    sign: str = "+"

    def __post_init__(self) -> None:
        if self.sign not in ("+", "-"):
            raise ValueError(f"sign must be '+' or '-', got {self.sign!r}")
        if not self.digits or not all(c in "0123456789" for c in self.digits):
            raise ValueError(f"digits must be a nonempty run of 0-9, got {self.digits!r}")

    @classmethod
    def from_text(cls, text: str) -> "DigitString":
        """Parse a printed decimal number, e.g. ``"-3.14159"``."""
        s = text.strip()
        sign = "+"
        if s.startswith(("+", "-")):
            sign = s[0] if s[0] == "-" else "+"
            s = s[1:]
        s = s.replace(".", "", 1)
        if not s or not all(c in "0123456789" for c in s):
            raise ValueError(f"not a plain decimal number: {text!r}")
        if all(c == "0" for c in s):
            sign = "+"  # normalize -0
        return cls(digits=s, sign=sign)

    @classmethod
    def from_decimal(cls, value: Decimal) -> "DigitString":
        return cls.from_text(format_plain(value))

    def __len__(self) -> int:
        return len(self.digits)


def digit_coincidence(a: DigitString, b: DigitString) -> int:
    """Length of the longest common prefix of two digit streams.

    Opposite signs coincide in zero digits.  The count is symmetric and
    bounded by the shorter operand.
    """
    if a.sign != b.sign:
        return 0
    count = 0
    for ca, cb in zip(a.digits, b.digits):
        if ca != cb:
            break
        count += 1
    return count
