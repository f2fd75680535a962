"""twistkit: finite presentations of twist subgroups of non-orientable surface
mapping class groups, with rewriting, coset enumeration, a mod-2 homology
oracle and replayable derivation certificates."""

__version__ = "0.1.0"

from .words import (  # noqa: F401
    Alphabet,
    Word,
    conjugate,
    cyclic_reduce,
    exponent_sum,
    invert,
    multiply,
    parse_word,
    substitute,
)
from .presentation import (  # noqa: F401
    AbelianInvariants,
    Presentation,
    Relator,
    abelianization,
    parse_presentation,
    simplify,
    tietze_add_generator,
    tietze_remove_generator,
    validate,
)
