"""Exception hierarchy shared across the package.

The three error categories map one-to-one onto the CLI exit codes:
structural validation failures (1), malformed input documents (2),
and internal numerical inconsistencies (3).
"""

from __future__ import annotations


class HodgeFaasError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(HodgeFaasError, ValueError):
    """An input document is malformed (unknown field, wrong type, bad value)."""


class ComplexValidationError(HodgeFaasError, ValueError):
    """A syntactically valid description violates structural invariants.

    ``findings`` lists every violation, each naming the offending cell id.
    """

    def __init__(self, findings: list[str]):
        self.findings = list(findings)
        super().__init__("; ".join(self.findings))


class NumericalInconsistencyError(HodgeFaasError, RuntimeError):
    """Two redundant numerical routes disagree (rank tolerance failure)."""
