"""Tree adjoining, synchronous and link-sharing grammars."""

from ._lstag import Grammar, LstagError, Tree, rebase_address, validate

__all__ = ["Grammar", "LstagError", "Tree", "rebase_address", "validate"]
