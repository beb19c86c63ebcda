"""Decision procedures for positive logic with weak negations (N, NeF, CoPC, MPC)."""

from .formula import ParseError, parse
from .g3 import Exhausted, Provable, naive_prove
from .hist import Decision, decide
from .interpolation import interpolate
from .logics import Logic
from .proofs import check, deserialize, serialize
from .sequents import Sequent, SplitSequent, parse_goal, parse_sequent, parse_split
from .transforms import reduce_negations, tilde

__all__ = [
    "ParseError", "parse", "Exhausted", "Provable", "naive_prove", "Decision", "decide",
    "interpolate", "Logic", "check", "deserialize", "serialize", "Sequent", "SplitSequent",
    "parse_goal", "parse_sequent", "parse_split", "reduce_negations", "tilde",
]

__version__ = "0.1.0"
