"""
复形分析单元测试 (unittest)
"""

import unittest

from pydantic import ValidationError

from moduli_tiling.core.complex import (
    classify_surface,
    codim_incidence,
    component_count,
    connected,
    describe_topology,
    euler,
    incidence_graph,
    incidence_signature,
    pseudomanifold,
    relabel_complex,
    same_complex,
)
from moduli_tiling.core.moduli import build_complex, strata_census
from moduli_tiling.errors import InvalidInputError, SurfaceClassificationError
from moduli_tiling.models.complex import CellClass, CellComplex, Space, SurfaceType
from tests.conftest import make_dangling_complex, make_two_points


class TestBasicInvariants(unittest.TestCase):
    """欧拉示性数、连通性与伪流形测试"""

    def test_dangling_segment(self):
        """测试端点悬空的线段不是伪流形"""
        c = make_dangling_complex()
        self.assertEqual(euler(c), 1)
        self.assertTrue(connected(c))
        self.assertFalse(pseudomanifold(c))
        self.assertEqual(describe_topology(c), "graph, euler 1")

    def test_two_points(self):
        """测试两个孤立点的连通分支"""
        c = make_two_points()
        self.assertFalse(connected(c))
        self.assertEqual(component_count(c), 2)
        self.assertTrue(pseudomanifold(c))
        self.assertEqual(describe_topology(c), "2 points")

    def test_incidence_graph(self):
        """测试关联图结点为全部瓦片与胞腔"""
        c = build_complex(Space.Z, 3)
        graph = incidence_graph(c)
        self.assertEqual(graph.number_of_nodes(), 2 + 3 + 6 + 2)

    def test_codim_incidence(self):
        """测试 M̄₀⁵ 中余维 k 胞腔恰有 2^k 个关联"""
        c = build_complex(Space.M, 5)
        self.assertTrue(codim_incidence(c, 0))
        self.assertTrue(codim_incidence(c, 1))
        self.assertTrue(codim_incidence(c, 2))
        self.assertFalse(codim_incidence(c, 3))

    def test_odd_dimension_euler(self):
        """测试奇数维复形的欧拉示性数为 0"""
        for space, n in ((Space.Z, 2), (Space.M, 4), (Space.Z, 4), (Space.M, 6)):
            self.assertEqual(euler(build_complex(space, n)), 0, f"{space.value}{n}")

    def test_m6_cells(self):
        """测试 M̄₀⁶ 的胞腔数"""
        self.assertEqual(build_complex(Space.M, 6).cell_counts(), [105, 315, 270, 60])

    def test_cell_layers_must_match_dim(self):
        """测试胞腔层数必须等于顶维 + 1"""
        tile = CellClass(labels=(1, 2, 3), codim=0)
        with self.assertRaises(ValidationError):
            CellComplex(space="test", n=3, top_dim=1, tiles=(tile,), cells=((tile,),))


class TestRelabel(unittest.TestCase):
    """下标重排测试"""

    def test_reversed_indices_keep_invariants(self):
        """测试倒序重排后胞腔数、欧拉示性数与曲面类型不变"""
        c = build_complex(Space.M, 5)
        moved = relabel_complex(
            c,
            list(reversed(range(len(c.tiles)))),
            [list(reversed(range(len(layer)))) for layer in c.cells],
        )
        self.assertNotEqual(moved, c)
        self.assertEqual(moved.cell_counts(), c.cell_counts())
        self.assertEqual(euler(moved), euler(c))
        self.assertEqual(classify_surface(moved), classify_surface(c))
        self.assertEqual(incidence_signature(moved), incidence_signature(c))
        self.assertTrue(same_complex(c, moved))

    def test_boundaries_follow_tiles(self):
        """测试边界遍历随瓦片与边一起搬运"""
        c = build_complex(Space.Z, 3)
        moved = relabel_complex(c, [1, 0], [[0, 1, 2], [5, 4, 3, 2, 1, 0], [0, 1]])
        self.assertEqual(moved.tiles, (c.tiles[1], c.tiles[0]))
        first = [(5 - s.edge, s.sign) for s in moved.boundaries[1]]
        self.assertEqual(first, [(s.edge, s.sign) for s in c.boundaries[0]])

    def test_different_complexes_differ(self):
        """测试不同复形不会被判为相同"""
        self.assertFalse(same_complex(build_complex(Space.Z, 3), build_complex(Space.M, 5)))

    def test_not_a_permutation(self):
        """测试非排列的下标顺序被拒绝"""
        c = build_complex(Space.Z, 3)
        with self.assertRaises(InvalidInputError):
            relabel_complex(c, [0, 0], [[0, 1, 2], list(range(6)), [0, 1]])
        with self.assertRaises(InvalidInputError):
            relabel_complex(c, [0, 1], [[0, 1], list(range(6)), [0, 1]])


class TestDescribeTopology(unittest.TestCase):
    """拓扑描述测试"""

    def test_circles(self):
        """测试一维连通伪流形描述为圆周"""
        self.assertEqual(describe_topology(build_complex(Space.Z, 2)), "circle")
        self.assertEqual(describe_topology(build_complex(Space.M, 4)), "circle")

    def test_point(self):
        """测试 Z̄¹ 为一个点"""
        self.assertEqual(describe_topology(build_complex(Space.Z, 1)), "point")

    def test_higher_dimension(self):
        """测试三维复形只报告欧拉示性数"""
        text = describe_topology(build_complex(Space.Z, 4))
        self.assertEqual(text, "dim 3, euler 0, orientability not determined")


class TestClassifySurface(unittest.TestCase):
    """闭曲面分类测试"""

    def test_z3(self):
        """测试 Z̄³ 为三个射影平面的连通和"""
        surface = classify_surface(build_complex(Space.Z, 3))
        self.assertFalse(surface.orientable)
        self.assertEqual(surface.parameter, 3)
        self.assertEqual(surface.name, "RP2 # RP2 # RP2")

    def test_m5(self):
        """测试 M̄₀⁵ 为五个射影平面的连通和"""
        surface = classify_surface(build_complex(Space.M, 5))
        self.assertFalse(surface.orientable)
        self.assertEqual(surface.parameter, 5)
        self.assertEqual(surface.euler, -3)

    def test_stratum_torus(self):
        """测试 n=4, k=2 的乘积层为环面"""
        stratum = strata_census(4, 2)[0]
        surface = classify_surface(stratum.complex)
        self.assertTrue(surface.orientable)
        self.assertEqual(surface.parameter, 1)

    def test_wrong_dimension(self):
        """测试非二维复形不能分类"""
        with self.assertRaises(SurfaceClassificationError) as ctx:
            classify_surface(build_complex(Space.Z, 2))
        self.assertEqual(ctx.exception.precondition, "top_dim == 2")

    def test_missing_boundaries(self):
        """测试缺少边界遍历时不能分类"""
        c = build_complex(Space.Z, 3).model_copy(update={"boundaries": None})
        with self.assertRaises(SurfaceClassificationError) as ctx:
            classify_surface(c)
        self.assertEqual(ctx.exception.precondition, "boundaries")


class TestSurfaceType(unittest.TestCase):
    """曲面类型模型测试"""

    def test_names(self):
        """测试曲面名称"""
        self.assertEqual(SurfaceType(orientable=True, parameter=0, euler=2).name, "sphere")
        self.assertEqual(SurfaceType(orientable=True, parameter=1, euler=0).name, "torus")
        self.assertEqual(SurfaceType(orientable=True, parameter=2, euler=-2).name, "genus 2 surface")
        self.assertEqual(SurfaceType(orientable=False, parameter=1, euler=1).name, "RP2")

    def test_euler_mismatch(self):
        """测试欧拉示性数与类型参数不符时校验失败"""
        with self.assertRaises(ValidationError):
            SurfaceType(orientable=True, parameter=1, euler=2)


if __name__ == "__main__":
    unittest.main()
