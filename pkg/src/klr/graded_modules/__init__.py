"""Graded module models: actions, characters, induction, duality, homomorphisms."""
from .induction import factor_key, generator_vector, induce, induce2, restrict
from .module import GradedModule, from_embedding, gen_label, one_dimensional, submodule, trivial_zero
from .homs import (
    CyclicPresentation,
    HeadError,
    HeadResult,
    Hom,
    HomSpace,
    annihilator_generators,
    extend_hom,
    hom_finite,
    hom_space,
    image_module,
    is_simple,
    present,
    simple_head,
)
from .characters import (
    Decomposition,
    DecompositionError,
    character_difference,
    character_window,
    decompose_character,
    scale_character,
    shuffle,
)

__all__ = [
    "CyclicPresentation", "Decomposition", "DecompositionError", "GradedModule", "HeadError",
    "HeadResult", "Hom", "HomSpace", "annihilator_generators", "character_difference",
    "character_window", "decompose_character", "extend_hom", "factor_key", "from_embedding",
    "gen_label", "generator_vector", "hom_finite", "hom_space", "image_module", "induce", "induce2",
    "is_simple", "one_dimensional", "present", "restrict", "scale_character", "shuffle",
    "simple_head", "submodule", "trivial_zero",
]
