"""Exception hierarchy."""


class MdkeError(Exception):
    """Base class for all package errors."""


class DataError(MdkeError):
    """Problem with input data (maps to CLI exit code 2)."""


class EmptyDocument(DataError):
    pass


class EmptyPhrase(DataError):
    pass


class EmptyCandidateSpace(DataError):
    pass


class UnknownExtractor(MdkeError):
    pass


class MissingContext(MdkeError):
    pass


class MisalignedLists(DataError):
    pass


class MissingSummaries(DataError):
    pass


class EmptyGold(DataError):
    pass


class MissingTopicPrediction(DataError):
    pass


class ParseError(DataError):
    pass


class ValidationError(DataError):
    pass


class ConfigError(MdkeError):
    """Bad configuration file or flag (maps to CLI exit code 1)."""
