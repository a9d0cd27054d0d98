"""Exception and warning types shared across the toolkit."""


class StegoStyloError(ValueError):
    """Base class for all toolkit-specific errors."""


class CorpusError(StegoStyloError):
    """Corpus loading or partitioning failed."""


class VerificationError(StegoStyloError):
    """Authorship verification could not be run on the given inputs."""


class InjectionError(StegoStyloError):
    """Zero-width injection preconditions are not met."""


class PayloadError(StegoStyloError):
    """Payload encoding or decoding failed."""


class SweepError(StegoStyloError):
    """Coverage sweep preconditions are not met."""


class CorpusWarning(UserWarning):
    """A corpus is usable but statistically weak (e.g. a single imposter author)."""


class EmptyDocumentWarning(UserWarning):
    """A document produced no tokens and was vectorized as all zeros."""
