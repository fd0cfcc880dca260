"""Failure taxonomy shared by all subpackages.

Three kinds of failure map to three distinct CLI exit codes:

* ``SpecError``        -- the caller violated a contract (bad arguments,
                          mismatched truncations, non-anti-invariant input
                          where anti-invariance is required).  Exit code 2.
* ``ConsistencyError`` -- an exact identity that must hold by construction
                          failed; this signals a sign- or Euler-class
                          convention defect, not a caller bug.  Exit code 3.
* ``NumericError``     -- a numeric computation exhausted its precision or
                          step budget.  Exit code 4.
"""


class GrassflopError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class SpecError(GrassflopError):
    """Contract violation by the caller."""

    exit_code = 2


class ConsistencyError(GrassflopError):
    """An internal exact identity failed (convention defect)."""

    exit_code = 3


class NumericError(GrassflopError):
    """Precision or step-size budget exhausted."""

    exit_code = 4
