"""Exception hierarchy shared across the package."""


class CorpusError(Exception):
    """Base class for all vidcorpus errors."""


class InvariantViolation(CorpusError):
    """An entity failed one of its type invariants."""


class DanglingReference(CorpusError):
    """An entity references an id that is not in the store."""


class UnresolvableChannel(CorpusError):
    """Input could not be resolved to a channel id."""


class InactiveChannel(CorpusError):
    """Sync requested for a deactivated channel."""


class SyncInProgress(CorpusError):
    """A sync for this channel is already running."""


class ProviderError(CorpusError):
    """A provider call failed for one item; recorded, not fatal to a sync."""

    def __init__(self, item_id: str, cause: str):
        super().__init__(f"{item_id}: {cause}")
        self.item_id = item_id
        self.cause = cause


class UnsortedSegments(CorpusError):
    """Transcript segments are not sorted by start time."""


class EmptyQuery(CorpusError):
    """Search query contains no indexable terms."""


class TooFewExamples(CorpusError):
    """Not enough labeled examples to split."""


class SingleClassTrainingSet(CorpusError):
    """Training set covers fewer than two classes."""


class UntrainedModel(CorpusError):
    """Prediction requested from a model without trained weights."""


class EmptyTranscript(CorpusError):
    """Transcript has no sentences to classify."""


class LengthMismatch(CorpusError):
    """Prediction and gold label vectors differ in length."""


class UnknownLabel(CorpusError):
    """A label is not part of the class list."""


class EmptyMatrix(CorpusError):
    """Confusion matrix has no counted examples."""
