"""
    Geometry, interface enumeration and DOF classification
"""
import unittest

import numpy as np

from emigdsw.errors import MeshError
from emigdsw.mesh import (GAP_JUNCTION, MEMBRANE, GeometryConfig,
                          build_geometry, classify_dofs)


def edge_kinds(topology):
    kinds = [edge.kind for edge in topology.edges]
    return kinds.count(MEMBRANE), kinds.count(GAP_JUNCTION)


class GeometryTests(unittest.TestCase):
    def test_single_cell_layout(self):
        """
            One cell in a one element frame: four membranes, no gap junctions
        """
        config = GeometryConfig(n_cells_x=1, n_cells_y=1, elems_short=1, elems_long=6, frame_elems=1)
        topology = build_geometry(config)

        assert len(topology.subdomains) == 2
        assert edge_kinds(topology) == (4, 0)

    def test_two_by_two_interfaces(self):
        config = GeometryConfig(n_cells_x=2, n_cells_y=2, elems_short=1, elems_long=6, frame_elems=1)
        topology = build_geometry(config)

        assert len(topology.subdomains) == 5
        assert edge_kinds(topology) == (8, 4)

    def test_dof_counts(self):
        """
            2x2 cells of 24x4 elements in a 4 element frame
        """
        topology = build_geometry(GeometryConfig(n_cells_x=2, n_cells_y=2, elems_short=4))

        for cell in topology.cells:
            assert cell.dof_count == 25 * 5

        # Whole box minus the strict interior of the block
        assert topology.frame.dof_count == 57 * 17 - 47 * 7
        assert topology.n_dofs == 4 * 125 + 640
        assert np.array_equal(np.sort(np.concatenate([s.dofs for s in topology.subdomains])),
                              np.arange(topology.n_dofs))

    def test_edge_node_counts(self):
        topology = build_geometry(GeometryConfig(n_cells_x=2, n_cells_y=2, elems_short=4))
        first = topology.cell_at(0, 0)

        gap = [e for e in topology.edges_of(first.id) if e.kind == GAP_JUNCTION and e.side == "right"]
        bottom = [e for e in topology.edges_of(first.id) if e.kind == MEMBRANE and e.side == "bottom"]

        assert len(gap) == 1 and gap[0].n_nodes == 5
        assert len(bottom) == 1 and bottom[0].n_nodes == 25
        assert bottom[0].pair == (first.id, 0)

    def test_matched_pairs_coincide(self):
        topology = build_geometry(GeometryConfig(n_cells_x=3, n_cells_y=2, elems_short=2, h=0.25))
        coords = topology.coords

        for edge in topology.edges:
            assert np.allclose(coords[edge.pairs[:, 0]], coords[edge.pairs[:, 1]])
            assert np.all(topology.owner[edge.pairs[:, 0]] == edge.pair[0])
            assert np.all(topology.owner[edge.pairs[:, 1]] == edge.pair[1])

    def test_vertex_sharers(self):
        topology = build_geometry(GeometryConfig(n_cells_x=2, n_cells_y=2, elems_short=2))
        counts = sorted(len(vertex.sharers) for vertex in topology.vertices)

        assert len(topology.vertices) == 9
        assert counts == [2] * 4 + [3] * 4 + [4]
        assert sum(counts) == 24

    def test_per_cell_sigma(self):
        sigmas = np.array([[1.0, 2.0], [3.0, 4.0]])
        topology = build_geometry(GeometryConfig(n_cells_x=2, n_cells_y=2, elems_short=1), sigmas)

        assert topology.cell_at(0, 1).sigma == 2.0
        assert topology.cell_at(1, 0).sigma == 3.0

    def test_invalid_configs(self):
        self.assertRaises(MeshError, GeometryConfig, n_cells_x=0)
        self.assertRaises(MeshError, GeometryConfig, h=-1.0)
        self.assertRaises(MeshError, build_geometry, GeometryConfig(), -1.0)
        self.assertRaises(ValueError, GeometryConfig, elems_short=0)


class DofPartitionTests(unittest.TestCase):
    def setUp(self):
        self.topology = build_geometry(GeometryConfig(n_cells_x=2, n_cells_y=2, elems_short=4))

    def test_left_dirichlet_count(self):
        partition = classify_dofs(self.topology, ("left",))
        _, box_y = self.topology.config.box_elems

        assert len(partition.dirichlet) == box_y + 1
        assert np.all(self.topology.grid[partition.dirichlet, 0] == 0)

    def test_gamma_holds_both_copies(self):
        partition = classify_dofs(self.topology)
        gamma = set(partition.gamma.tolist())

        for edge in self.topology.edges:
            assert set(edge.pairs.ravel().tolist()) <= gamma

    def test_interior_cell_node(self):
        partition = classify_dofs(self.topology)
        cell = self.topology.cell_at(1, 1)
        ox, oy = cell.origin
        middle = int(cell.dof_at(ox + 12, oy + 2))

        assert middle in partition.interior[cell.id]
        assert middle not in partition.gamma
        assert middle not in partition.dirichlet

    def test_partition_is_exact(self):
        for sides in ((), ("left",), ("left", "right", "bottom", "top")):
            partition = classify_dofs(self.topology, sides)
            total = len(partition.interior_all) + len(partition.gamma) + len(partition.dirichlet)
            assert total == self.topology.n_dofs

    def test_unknown_side(self):
        self.assertRaises(MeshError, classify_dofs, self.topology, ("middle",))


if __name__ == "__main__":
    unittest.main()
