"""Ingredient-based skincare routine recommendation engine."""

from .assessment import (
    QuestionnaireAnswers,
    Shine,
    SkinAssessment,
    Source,
    Tightness,
    direct,
    from_confidences,
    from_questionnaire,
    synthesize,
)
from .catalog import (
    Catalog,
    Category,
    Concern,
    Product,
    SkinType,
    filter_products,
    load_catalog,
    parse_ingredients,
)
from .config import EngineConfig, load_config
from .engine import EngineState, build_engine
from .mf import FactorModel, InteractionMatrix, ProfileIndex, build_interactions, score, train
from .routine import Routine, ScoredProduct, alternatives, recommend
from .tsne import Embedding, TSNEConfig, fit
from .vectors import IngredientMatrix, Vocabulary, build_vocabulary, cosine, nearest, vectorize

__version__ = "0.1.0"

__all__ = [
    "Catalog",
    "Category",
    "Concern",
    "EngineConfig",
    "EngineState",
    "Embedding",
    "FactorModel",
    "IngredientMatrix",
    "InteractionMatrix",
    "Product",
    "ProfileIndex",
    "QuestionnaireAnswers",
    "Routine",
    "ScoredProduct",
    "Shine",
    "SkinAssessment",
    "SkinType",
    "Source",
    "TSNEConfig",
    "Tightness",
    "Vocabulary",
    "alternatives",
    "build_engine",
    "build_interactions",
    "build_vocabulary",
    "cosine",
    "direct",
    "filter_products",
    "fit",
    "from_confidences",
    "from_questionnaire",
    "load_catalog",
    "load_config",
    "nearest",
    "parse_ingredients",
    "recommend",
    "score",
    "synthesize",
    "train",
    "vectorize",
]
