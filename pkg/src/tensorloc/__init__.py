"""Finite, exhaustive checks for localisable monads on symmetric monoidal categories."""
__version__ = "0.1.0"

from .central import ZiSemilattice, has_universal_joins, is_stiff, zi_semilattice
from .errors import TensorlocError
from .formal import (FormalMonad, GradedMonad, IndexedMonad, formal_to_localisable, graded_to_indexed,
                     indexed_to_graded, localisable_to_formal, roundtrip_check)
from .localisable import (LocalisableMonad, StrengthFamily, check_commutative, check_localisable, restrict_monad,
                          restriction_monad_morphism)
from .monad import MonadData, MonadMorphism, check_monad, check_monad_morphism
from .monoidal import SmcStructure, validate_smc
from .restriction import RestrictionCategory, build_adjunction

__all__ = [
    "FormalMonad", "GradedMonad", "IndexedMonad", "LocalisableMonad", "MonadData", "MonadMorphism",
    "RestrictionCategory", "SmcStructure", "StrengthFamily", "TensorlocError", "ZiSemilattice",
    "build_adjunction", "check_commutative", "check_localisable", "check_monad", "check_monad_morphism",
    "formal_to_localisable", "graded_to_indexed", "has_universal_joins", "indexed_to_graded", "is_stiff",
    "localisable_to_formal", "restrict_monad", "restriction_monad_morphism", "roundtrip_check", "validate_smc",
    "zi_semilattice",
]
