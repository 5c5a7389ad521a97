"""Tagged domain errors shared by every layer of the package.

Each failure mode that callers may want to branch on carries a short
stable tag (``NotAssociative``, ``KernelMismatch``, ...).  The CLI turns
the tag into the ``error`` field of its structured JSON output, and the
tests assert on tags rather than message text.
"""

from __future__ import annotations


class DomainError(Exception):
    """An input violated a mathematical precondition.

    ``tag`` is a stable machine-readable identifier, ``detail`` a human
    readable explanation (often naming the offending element or triple).
    """

    def __init__(self, tag: str, detail: str = ""):
        self.tag = tag
        self.detail = detail
        super().__init__(f"{tag}: {detail}" if detail else tag)


class SearchSpaceTooLarge(DomainError):
    """Raised by oracles when an exhaustive search would exceed its cap."""

    def __init__(self, detail: str = ""):
        super().__init__("SearchSpaceTooLarge", detail)
