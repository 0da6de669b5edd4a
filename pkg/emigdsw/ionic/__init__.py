"""
    Reaction terms on the interfaces
"""
from emigdsw.ionic.aliev_panfilov import (IonicParams, aliev_panfilov_rhs,
                                         gap_junction_current)
from emigdsw.ionic.membrane import MembraneState, membrane_step
