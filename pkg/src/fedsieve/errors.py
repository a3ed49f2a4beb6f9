"""Exception hierarchy shared by all fedsieve modules."""


class FedsieveError(Exception):
    """Base class for every error raised by this package."""


# -- binary matrix / code construction -------------------------------------

class EmptyRowError(FedsieveError):
    """A test group contains no clients (all-zero matrix row)."""


class EmptyColumnError(FedsieveError):
    """A client belongs to no test group (all-zero matrix column)."""


class RaggedInputError(FedsieveError):
    """Rows of different lengths were supplied for a matrix."""


class NotADivisorError(FedsieveError):
    """Generator polynomial does not divide x^n + 1 over GF(2)."""


class DegenerateCodeError(FedsieveError):
    """Cyclic code with k = 0 or k = n has no usable parity-check matrix."""


class DimensionMismatchError(FedsieveError):
    """Vector length does not match the matrix it is used with."""


class RowSpanTooLargeError(FedsieveError):
    """Too many rows for exhaustive row-span enumeration."""


# -- trellis ----------------------------------------------------------------

class StateSpaceTooLargeError(FedsieveError):
    """2^m trellis states exceed the supported bound."""


class UnreachableSyndromeError(FedsieveError):
    """Requested terminal state does not exist in the trellis."""


class OutputTooLargeError(FedsieveError):
    """Path enumeration would produce too many vectors."""


# -- decoding ---------------------------------------------------------------

class InputTooLargeError(FedsieveError):
    """Exhaustive computation requested beyond its size bound."""


class AllPathsZeroProbabilityError(FedsieveError):
    """Noiseless decoding saw a test vector no defective vector can produce."""


# -- simulation -------------------------------------------------------------

class InvalidClassError(FedsieveError):
    """Label outside [0, n_classes)."""


class NonFiniteLossError(FedsieveError):
    """Local training produced non-finite parameters."""


class EmptySourceClassError(FedsieveError):
    """Metric requires source-label examples but none are present."""


class EmptyGroupError(FedsieveError):
    """Aggregation over a group with no members."""


class InvalidCountsError(FedsieveError):
    """Inconsistent population counts (e.g. more malicious than clients)."""


# -- dataset files ----------------------------------------------------------

class FileMissingError(FedsieveError):
    """Expected dataset file is absent."""


class BadMagicError(FedsieveError):
    """IDX file header carries an unexpected magic number."""


class TruncatedFileError(FedsieveError):
    """IDX file ends before the payload announced in its header."""


# -- configuration ----------------------------------------------------------

class ConfigError(FedsieveError):
    """Invalid experiment configuration."""
