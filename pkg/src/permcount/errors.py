"""Exception types shared across the package."""


class PermcountError(Exception):
    """Base class for all errors raised by this package."""


class DuplicateValueError(PermcountError, ValueError):
    """A permutation contained the same value twice."""


class OutOfRangeError(PermcountError, ValueError):
    """A permutation value fell outside 1..n."""


class KTooLargeError(PermcountError, ValueError):
    """A profile of order k was requested for a permutation shorter than k."""


class IndexOutOfRangeError(PermcountError, IndexError):
    """A sum-tree index fell outside the tree's leaf range."""


class InvalidRangeError(PermcountError, ValueError):
    """A box query was given a reversed range."""


class TreeParseError(PermcountError, ValueError):
    """A corner-tree notation string could not be parsed."""


class BoundExceededError(PermcountError):
    """A tree-size or span-order bound was exceeded; raise the bound explicitly to proceed."""


class TiesPresentError(PermcountError, ValueError):
    """Tied sample values under the strict tie policy."""


class UnsupportedAlgorithmError(PermcountError, ValueError):
    """A forced algorithm choice does not apply to the requested pattern."""


class NTooSmallError(PermcountError, ValueError):
    """Too few observations for the requested statistic."""


class BasisMissingError(PermcountError, RuntimeError):
    """The persisted order-4 basis artifact is absent or corrupt."""
