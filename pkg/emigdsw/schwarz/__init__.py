"""
    Overlapping Schwarz preconditioners: local spaces, the GDSW coarse space
    and the factory
"""
from emigdsw.schwarz.coarse import (COARSE_MODES, VERTEX, VERTEX_AND_EDGE,
                                    CoarseSpace, build_coarse, coarse_mode,
                                    interface_values)
from emigdsw.schwarz.harmonic import harmonic_extend, harmonic_residual
from emigdsw.schwarz.local import LocalSpace, build_local, overlap_dofs
from emigdsw.schwarz.preconditioner import (ADDITIVE_SCHWARZ, GDSW, NONE,
                                            PRECONDITIONER_KINDS,
                                            AdditiveSchwarz, apply,
                                            GDSWPreconditioner,
                                            IdentityPreconditioner,
                                            Preconditioner,
                                            create_preconditioner,
                                            preconditioner_kind)