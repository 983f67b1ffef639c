"""Exception taxonomy shared across the package.

Every error that points at a location in an input string carries the byte
offset where the problem was detected.
"""


class MolforgeError(Exception):
    """Base class for all package errors."""


# ---------------------------------------------------------------------------
# chem / tokenizer: input text errors (CLI exit code 3)
# ---------------------------------------------------------------------------

class DataError(MolforgeError):
    """Malformed input data (SMILES text, corpus files)."""


class SmilesError(DataError):
    """A SMILES string could not be processed; carries the byte offset."""

    def __init__(self, message: str, offset: int = -1):
        self.offset = offset
        if offset >= 0:
            message = f"{message} (offset {offset})"
        super().__init__(message)


class EmptyInput(SmilesError):
    pass


class UnknownToken(SmilesError):
    pass


class UnknownCharacter(UnknownToken):
    """Tokenizer flavour of UnknownToken."""


class UnbalancedParen(SmilesError):
    pass


class UnclosedRing(SmilesError):
    pass


class NoKekuleAssignment(SmilesError):
    """No alternating single/double assignment exists for the aromatic system."""


class InvalidInput(DataError):
    """Operation requires a valid molecule but validation failed."""


class WidthMismatch(DataError):
    """Fingerprints of different widths cannot be compared."""


class EmptyCorpus(DataError):
    pass


class MissingColumn(DataError):
    pass


class UnparseableRow(DataError):
    pass


class UnknownTargetName(DataError):
    pass


class EmptyReference(DataError):
    pass


class UnknownId(DataError):
    """Token id not present in the vocabulary."""


# ---------------------------------------------------------------------------
# tensor / model (CLI exit code 4 when hit through a checkpointed model)
# ---------------------------------------------------------------------------

class ShapeMismatch(MolforgeError):
    def __init__(self, a_shape, b_shape, what: str = ""):
        prefix = f"{what}: " if what else ""
        super().__init__(f"{prefix}incompatible shapes {tuple(a_shape)} vs {tuple(b_shape)}")


class NonScalarLoss(MolforgeError):
    pass


class LengthOverflow(MolforgeError):
    pass


class UnknownCondition(MolforgeError):
    pass


class ConfigMismatch(MolforgeError):
    pass


# ---------------------------------------------------------------------------
# store / checkpoint (CLI exit code 4)
# ---------------------------------------------------------------------------

class CheckpointError(MolforgeError):
    pass


class CorruptHeader(CheckpointError):
    pass


class PayloadLengthMismatch(CheckpointError):
    pass


class VersionMismatch(CheckpointError):
    pass
