"""Block cipher that evolves bit lattices under the reversible Critters rule.

Research code only: no authentication, no security guarantee.
"""
from .cipher import Ciphertext, decrypt, encrypt, read_ciphertext, write_ciphertext
from .codec import CipherParams
from .errors import ScytaleError
from .lattice import BitLattice, BlockCoord

__all__ = [
    "BitLattice",
    "BlockCoord",
    "CipherParams",
    "Ciphertext",
    "ScytaleError",
    "decrypt",
    "encrypt",
    "read_ciphertext",
    "write_ciphertext",
]

__version__ = "0.1.0"
