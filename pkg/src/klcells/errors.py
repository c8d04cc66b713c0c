"""Exception hierarchy. Every class carries the CLI exit code it maps to."""

from __future__ import annotations


class KLCellsError(Exception):
    exit_code = 1


class BadMatrix(KLCellsError, ValueError):
    """The Coxeter matrix violates an axiom."""
    exit_code = 10


class BadWeights(KLCellsError, ValueError):
    """The weights are not a positive weight function."""
    exit_code = 11


class ClassTooLarge(KLCellsError):
    """A braid class grew beyond the configured closure cap."""
    exit_code = 12


class CapExceeded(KLCellsError):
    """Enumeration did not close below the element cap."""
    exit_code = 13


class BallExceeded(KLCellsError):
    """A product left the enumerated ball of an infinite group."""
    exit_code = 14


class InfiniteGroup(KLCellsError):
    """The operation needs a finite group or an explicit radius."""
    exit_code = 15


class InfiniteParabolic(KLCellsError):
    """A longest coset element was requested for an infinite parabolic."""
    exit_code = 16


class DomainError(KLCellsError, ValueError):
    """An argument lies outside the domain of the operation."""
    exit_code = 17


class UncertifiedBall(KLCellsError):
    """An a-value was requested on a ball with no closed-form certificate."""
    exit_code = 18


class ScopeTooLarge(KLCellsError):
    """The request needs a complete table of a finite group."""
    exit_code = 19


class ConjecturesUnverified(KLCellsError):
    """The J ring was requested without a passing P1-P15 report."""
    exit_code = 20


class NotInFamily(KLCellsError, ValueError):
    """A multiset or symbol violates the size, residue or sum conditions."""
    exit_code = 21


class TTooSmall(KLCellsError, ValueError):
    """The complement parameter t is too small."""
    exit_code = 22


class NTooSmall(KLCellsError, ValueError):
    """The number of rows N is too small for the partitions."""
    exit_code = 23


class ParityError(KLCellsError, ValueError):
    """The number of fixed points has the wrong parity or range."""
    exit_code = 24


class WrongResidue(KLCellsError, ValueError):
    """Constructible families need b divisible by a."""
    exit_code = 25


class ConfigError(KLCellsError, ValueError):
    """The command-line configuration is invalid."""
    exit_code = 2


ALL_ERRORS = [
    ConfigError, BadMatrix, BadWeights, ClassTooLarge, CapExceeded, BallExceeded,
    InfiniteGroup, InfiniteParabolic, DomainError, UncertifiedBall, ScopeTooLarge,
    ConjecturesUnverified, NotInFamily, TTooSmall, NTooSmall, ParityError, WrongResidue,
]
