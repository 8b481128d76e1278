"""Exception hierarchy shared by every mfkit module."""


class MfkitError(Exception):
    """Base class for all library errors."""


class ContextMismatch(MfkitError):
    """Operands live in different polynomial rings."""


class DimensionMismatch(MfkitError):
    """Matrix shapes are incompatible for the requested operation."""


class NotDivisible(MfkitError):
    """A matrix entry is not an exact multiple of the divisor."""

    def __init__(self, position, remainder=None):
        self.position = position
        self.remainder = remainder
        msg = f"entry {position} is not divisible"
        if remainder is not None:
            msg += f" (remainder {remainder})"
        super().__init__(msg)


class ParseError(MfkitError):
    def __init__(self, line, column, expected, found=None):
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found
        msg = f"line {line}, column {column}: expected {expected}"
        if found is not None:
            msg += f", found {found!r}"
        super().__init__(msg)


class UndefinedName(MfkitError):
    pass


class DuplicateName(MfkitError):
    pass


class StepBudgetExceeded(MfkitError):
    """The Buchberger loop ran past its configured step cap."""


class RankMismatch(MfkitError):
    pass


class NoSolution(MfkitError):
    """A matrix equation has no solution over the ring."""


class AxiomFailed(MfkitError):
    """A pair of matrices is not a factorization (which names the failing check)."""

    def __init__(self, which, detail=""):
        self.which = which
        super().__init__(f"{which} failed" + (f": {detail}" if detail else ""))


class NotLocal(MfkitError):
    """f does not vanish at the origin."""


class ZeroF(MfkitError):
    pass


class FMismatch(MfkitError):
    pass


class NotAMorphism(MfkitError):
    """The commuting squares of a factorization morphism fail."""


class ComposabilityMismatch(MfkitError):
    pass


class SignatureMismatch(MfkitError):
    pass


class NotAcyclic(MfkitError):
    """A kernel element is not in the image; carries the witness."""

    def __init__(self, position, witness, tag="plain"):
        self.position = position
        self.witness = witness
        self.tag = tag
        super().__init__(f"{tag} complex not exact at {position} position: "
                         f"kernel element {witness} is not a boundary")


class NotAComplex(MfkitError):
    pass


class PdTooLarge(MfkitError):
    """The relation module over S is not free."""


class NotGraded(MfkitError):
    pass


class VerificationFailed(MfkitError):
    """An internally constructed witness failed its exact re-check."""


class IsoCheckFailed(MfkitError):
    def __init__(self, witness, detail=""):
        self.witness = witness
        super().__init__(f"generator relation {witness} does not lift" + (f": {detail}" if detail else ""))


class RegularityFailed(MfkitError):
    """f is not a non-zero-divisor on the module."""
