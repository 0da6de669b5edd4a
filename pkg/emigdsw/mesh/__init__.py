"""
    The multicompartment mesh: geometry, interfaces and DOF classification
"""
from emigdsw.mesh.dofs import DofPartition, classify_dofs, outer_boundary_dofs
from emigdsw.mesh.geometry import (CELL, EXTRACELLULAR, GeometryConfig,
                                   MeshTopology, Subdomain, build_geometry)
from emigdsw.mesh.interfaces import (GAP_JUNCTION, MEMBRANE, InterfaceEdge,
                                     InterfaceVertex, enumerate_interfaces,
                                     enumerate_vertices)
