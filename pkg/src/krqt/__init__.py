"""(q,t)-characters of type A Kirillov-Reshetikhin modules and their quantum cluster structure."""
from .tableaux import KrLabel, enumerate_kr_tableaux, q_character
from .twist import epsilon, gamma, star, star_gamma, t_commutation_exponent
from .ylattice import QtCharacter, TLaurent, YMonomial

__all__ = [
    "KrLabel",
    "QtCharacter",
    "TLaurent",
    "YMonomial",
    "enumerate_kr_tableaux",
    "epsilon",
    "gamma",
    "q_character",
    "star",
    "star_gamma",
    "t_commutation_exponent",
]
