"""Exception types shared across the engine modules."""


class SkinrecError(Exception):
    """Base class for all engine errors."""

    code = "error"


# catalog
class UnknownCategory(SkinrecError, ValueError):
    code = "unknown_category"


class UnknownSkinType(SkinrecError, ValueError):
    code = "unknown_skin_type"


class UnknownConcern(SkinrecError, ValueError):
    code = "unknown_concern"


class MalformedCsv(SkinrecError):
    code = "malformed_csv"


class EmptyCatalog(SkinrecError):
    code = "empty_catalog"


class DuplicateId(SkinrecError):
    code = "duplicate_id"


# vectors
class EmptyVocabulary(SkinrecError):
    code = "empty_vocabulary"


class UnknownToken(SkinrecError, KeyError):
    code = "unknown_token"


class LengthMismatch(SkinrecError, ValueError):
    code = "length_mismatch"


class RowOutOfRange(SkinrecError, IndexError):
    code = "row_out_of_range"


# optimizer
class NonFiniteGradient(SkinrecError, ValueError):
    code = "non_finite_gradient"


class NonFiniteLoss(SkinrecError):
    """Divergence during iterative minimization; carries the failing step."""

    code = "non_finite_loss"

    def __init__(self, message: str, step_index: int):
        super().__init__(message)
        self.step_index = step_index


# tsne
class TooFewPoints(SkinrecError, ValueError):
    code = "too_few_points"


class PerplexityTooLow(SkinrecError, ValueError):
    code = "perplexity_too_low"


# mf
class IndexOutOfRange(SkinrecError, IndexError):
    code = "index_out_of_range"


class ModelFormatError(SkinrecError):
    code = "model_format_error"


# assessment
class InvalidDistribution(SkinrecError, ValueError):
    code = "invalid_distribution"


# routine
class UnknownAnchor(SkinrecError, KeyError):
    code = "unknown_anchor"


class UnknownBrand(SkinrecError, KeyError):
    code = "unknown_brand"


class StaleModel(SkinrecError):
    """Catalog, matrix and factor model are not from the same build lineage."""

    code = "stale_model"


# metrics
class EmptyInput(SkinrecError, ValueError):
    code = "empty_input"


# service / config
class ConfigError(SkinrecError):
    code = "config_error"


class UnknownSession(SkinrecError, KeyError):
    code = "unknown_session"


class EngineBuildError(SkinrecError):
    """Wraps a module failure during engine assembly with stage context."""

    code = "engine_build_error"

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"engine build failed in stage '{stage}': {cause}")
        self.stage = stage
        self.cause = cause
