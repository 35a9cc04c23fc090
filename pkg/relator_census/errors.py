# relator-census
# errors.py

class CensusError(Exception):
    """Base class for every error raised by relator_census"""
    pass

class WordError(CensusError, ValueError):
    """Raised when a word is malformed, not reduced, or uses a letter outside the alphabet"""
    pass

class BudgetExceeded(CensusError):
    """Raised when an enumeration or search would exceed its configured cap"""
    pass

class ProperPowerError(CensusError, ValueError):
    """Raised when an operation defined only for non-proper powers gets a proper power"""
    pass

class InvalidRelabeling(CensusError, ValueError):
    """Raised when a relabeling spec is malformed or a nontrivial relabeling is required"""
    pass

class InvalidLambda(CensusError, ValueError):
    """Raised when the overlap ratio lambda is outside its admissible range"""
    pass

class SmallCancellationError(CensusError, ValueError):
    """Raised when a relator does not satisfy the required C'(lambda) condition"""
    pass

class TietzeRefusal(CensusError):
    """Raised when a square relator is found and the group is not known to lack 2-torsion"""
    pass

class EncodingError(CensusError, ValueError):
    """Raised when a six-letter or binary presentation string cannot be decoded"""
    pass

class PresentationError(CensusError, ValueError):
    """Raised when a presentation (or its text file) is malformed"""
    pass

class PrefixViolation(CensusError, ValueError):
    """Raised when a code is not prefix-free, ``witness`` holds the offending pair"""
    def __init__(self, witness):
        self.witness = witness
        super().__init__('"%s" is a prefix of "%s"' % witness)

class BelowResolution(CensusError, ValueError):
    """Raised when a decay fit is asked for on densities that reached zero"""
    pass

class RecoveryError(CensusError):
    """Base class for relator recovery failures"""
    pass

class AmbiguousRecovery(RecoveryError):
    """Raised when more than one candidate carries the given prefix"""
    def __init__(self, matches):
        self.matches = matches
        super().__init__('%s candidates share the given prefix' % len(matches))

class RecoveryNotFound(RecoveryError):
    """Raised when no candidate carries the prefix or the search ran out of budget"""
    pass
