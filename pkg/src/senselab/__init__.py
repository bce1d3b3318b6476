"""Multi-wordnet modelling, translation/sense assumption checks and
translation-driven sense annotation."""
from .model import (
    ModelError,
    MultiSynset,
    MultiWordnet,
    SenseRef,
    WordKey,
    are_absolute_synonyms,
    are_synonyms,
    build,
    is_monosemous,
    is_polysemous,
    make_synset,
    shared_synsets,
    synsets_of,
    translations_of_sense,
    translations_of_word,
)
from .assumptions import AssumptionProfile, Direction, profile

__version__ = "0.1.0"
