"""
    Finite element assembly of the composite operator and the step right-hand side
"""
from emigdsw.assembly.coupling import (InterfaceCoupling,
                                       assemble_interface_mass, build_coupling)
from emigdsw.assembly.element import edge_mass_1d, element_stiffness_q1
from emigdsw.assembly.rhs import RhsAssembler, assemble_rhs
from emigdsw.assembly.system import (CompositeOperator, assemble_stiffness_blocks,
                                     assemble_subdomain_stiffness,
                                     assemble_system)
