"""
多边形剖分单元测试 (unittest)
"""

import unittest

from pydantic import ValidationError

from moduli_tiling.core.dissect import (
    GroupElement,
    antipodal_class,
    apply_group_element,
    canonicalize,
    chord_classes,
    crosses,
    dissection_pieces,
    enum_dissections,
    enum_sym_dissections,
    short_arc,
    state_encoding,
    validate_dissection,
)
from moduli_tiling.errors import InvalidInputError
from moduli_tiling.models.polygon import (
    Chord,
    ChordClass,
    Dissection,
    GroupKind,
    LabeledPolygon,
    PolygonMode,
    SymmetryGroup,
)
from tests.conftest import make_plain, make_symmetric


class TestCrosses(unittest.TestCase):
    """交叉判定测试"""

    def test_square_diagonals_cross(self):
        """测试正方形两条对角线交叉"""
        self.assertTrue(crosses(Chord.of(0, 2), Chord.of(1, 3), 4))

    def test_shared_endpoint_does_not_cross(self):
        """共享端点不算交叉"""
        self.assertFalse(crosses(Chord.of(0, 2), Chord.of(2, 4), 6))
        self.assertFalse(crosses(Chord.of(0, 3), Chord.of(0, 2), 6))

    def test_nested_chords(self):
        """测试嵌套的弦不交叉"""
        self.assertFalse(crosses(Chord.of(0, 4), Chord.of(1, 3), 6))

    def test_side_is_not_a_diagonal(self):
        """测试多边形的边不能作为对角线"""
        with self.assertRaises(InvalidInputError):
            crosses(Chord.of(0, 1), Chord.of(1, 3), 4)
        with self.assertRaises(InvalidInputError):
            crosses(Chord.of(0, 3), Chord.of(1, 2), 4)

    def test_out_of_range(self):
        """测试端点越界被拒绝"""
        with self.assertRaises(InvalidInputError):
            crosses(Chord.of(0, 5), Chord.of(1, 3), 5)

    def test_chord_requires_order(self):
        """测试弦端点必须有序"""
        with self.assertRaises(ValidationError):
            Chord(i=3, j=1)


class TestChordClasses(unittest.TestCase):
    """对称弦类测试"""

    def test_pair(self):
        """测试一般弦与其对径弦成对"""
        cc = antipodal_class(Chord.of(0, 2), 3)
        self.assertEqual(cc.key, ((0, 2), (3, 5)))

    def test_diameter(self):
        """测试直径自成一类"""
        cc = antipodal_class(Chord.of(0, 3), 3)
        self.assertEqual(cc.key, ((0, 3),))

    def test_antipode_wraps(self):
        """测试对径端点按模回绕"""
        cc = antipodal_class(Chord.of(1, 5), 3)
        self.assertEqual(cc.key, ((1, 5), (2, 4)))

    def test_group_by_mode(self):
        """测试弦类分组随多边形模式变化"""
        chords = [Chord.of(0, 2), Chord.of(3, 5)]
        self.assertEqual(len(chord_classes(chords, PolygonMode.SYMMETRIC, 6)), 1)
        self.assertEqual(len(chord_classes(chords, PolygonMode.PLAIN, 6)), 2)

    def test_short_arc(self):
        """测试短弧方向"""
        self.assertEqual(short_arc((0, 2), 3), (0, 2))
        self.assertEqual(short_arc((1, 5), 3), (5, 2))


class TestEnumeration(unittest.TestCase):
    """剖分枚举测试"""

    def test_hexagon_triangulations(self):
        """测试六边形三角剖分数为 14"""
        self.assertEqual(len(enum_dissections(6, 3)), 14)

    def test_pentagon_diagonals(self):
        """测试五边形的一弦与二弦剖分数"""
        self.assertEqual(len(enum_dissections(5, 1)), 5)
        self.assertEqual(len(enum_dissections(5, 2)), 5)

    def test_empty_dissection(self):
        """测试零弦剖分唯一"""
        result = enum_dissections(6, 0)
        self.assertEqual(len(result), 1)
        self.assertEqual(result[0].codim, 0)

    def test_k_out_of_range(self):
        """测试弦数越界返回空列表"""
        self.assertEqual(enum_dissections(6, 4), [])
        self.assertEqual(enum_dissections(6, -1), [])

    def test_too_few_sides(self):
        """测试边数不足被拒绝"""
        with self.assertRaises(InvalidInputError):
            enum_dissections(2, 0)

    def test_symmetric_hexagon(self):
        """W_3: 6 条边、6 个顶点"""
        self.assertEqual(len(enum_sym_dissections(3, 1)), 6)
        self.assertEqual(len(enum_sym_dissections(3, 2)), 6)

    def test_total_counts_are_little_schroeder(self):
        """测试 m 边形全部剖分数为小 Schröder 数"""
        expected = [1, 3, 11, 45, 197, 903, 4279]
        totals = [sum(len(enum_dissections(m, k)) for k in range(m - 2)) for m in range(3, 10)]
        self.assertEqual(totals, expected)

    def test_enumeration_is_sorted(self):
        """测试枚举结果按编码排序"""
        encodings = [d.encoding for d in enum_dissections(7, 2)]
        self.assertEqual(encodings, sorted(encodings))


class TestDissectionModel(unittest.TestCase):
    """剖分模型校验测试"""

    def test_crossing_rejected(self):
        """测试交叉弦类被拒绝"""
        with self.assertRaises(ValidationError):
            Dissection.from_class_keys((((0, 2),), ((1, 3),)))

    def test_duplicate_class_rejected(self):
        """测试重复弦类被拒绝"""
        cc = ChordClass.from_key(((0, 2),))
        with self.assertRaises(ValidationError):
            Dissection(classes=(cc, cc))

    def test_validate_symmetric_closure(self):
        """测试对称模式下弦集必须对径封闭"""
        p = LabeledPolygon(labels=(1, 2, 3, 1, 2, 3), mode=PolygonMode.SYMMETRIC)
        d = Dissection.from_class_keys((((0, 2),),))
        with self.assertRaises(InvalidInputError):
            validate_dissection(p, d)

    def test_plain_labels_distinct(self):
        """测试普通模式标签必须互异"""
        with self.assertRaises(ValidationError):
            LabeledPolygon(labels=(1, 1, 2), mode=PolygonMode.PLAIN)

    def test_signed_labels(self):
        """测试带符号标签的对径关系"""
        p = LabeledPolygon(labels=(1, -2, -1, 2), mode=PolygonMode.SIGNED)
        self.assertEqual(p.half, 2)
        with self.assertRaises(ValidationError):
            LabeledPolygon(labels=(1, 2, 1, 2), mode=PolygonMode.SIGNED)


class TestCanonicalize(unittest.TestCase):
    """规范化测试"""

    def test_rotation_to_minimum(self):
        """测试旋转到字典序最小的代表"""
        p, d = make_plain((2, 3, 1))
        group = SymmetryGroup(kind=GroupKind.DIHEDRAL, order=3)
        canonical, _ = canonicalize(p, d, group)
        self.assertEqual(canonical.labels, (1, 2, 3))

    def test_reflection_only_in_dihedral(self):
        """测试仅二面体群允许反射"""
        p, d = make_symmetric((1, 3, 2))
        rotations = SymmetryGroup(kind=GroupKind.ROTATIONS, order=6)
        canonical, _ = canonicalize(p, d, rotations)
        self.assertEqual(canonical.labels, (1, 3, 2, 1, 3, 2))

    def test_idempotent(self):
        """测试规范化幂等"""
        p, d = make_plain((4, 2, 5, 1, 3), [(0, 2), (0, 3)])
        group = SymmetryGroup(kind=GroupKind.DIHEDRAL, order=5)
        once = canonicalize(p, d, group)
        self.assertEqual(canonicalize(*once, group), once)

    def test_orbit_invariance(self):
        """测试同一轨道的规范形一致"""
        p, d = make_plain((4, 2, 5, 1, 3), [(0, 2), (0, 3)])
        group = SymmetryGroup(kind=GroupKind.DIHEDRAL, order=5)
        expected = canonicalize(p, d, group)
        for g in (GroupElement(2), GroupElement(3, True), GroupElement(0, True)):
            moved = apply_group_element(p, d, g)
            self.assertEqual(canonicalize(*moved, group), expected)

    def test_group_order_mismatch(self):
        """测试群阶与边数不符被拒绝"""
        p, d = make_plain((1, 2, 3, 4))
        with self.assertRaises(InvalidInputError):
            canonicalize(p, d, SymmetryGroup(kind=GroupKind.DIHEDRAL, order=5))

    def test_state_encoding(self):
        """测试状态编码为标签接弦端点"""
        self.assertEqual(state_encoding(((1, 2, 3, 4), ((0, 2),))), (1, 2, 3, 4, 0, 2))


class TestPieces(unittest.TestCase):
    """剖分切块测试"""

    def test_square(self):
        """测试正方形沿对角线切成两个三角形"""
        self.assertEqual(dissection_pieces(4, [(0, 2)]), [(0, 1, 2), (0, 2, 3)])

    def test_symmetric_hexagon(self):
        """测试对称六边形被一对对径弦切成三块"""
        pieces = dissection_pieces(6, [(0, 2), (3, 5)])
        self.assertEqual(pieces, [(0, 1, 2), (0, 2, 3, 5), (3, 4, 5)])

    def test_no_chords(self):
        """测试无弦时整块即多边形"""
        self.assertEqual(dissection_pieces(5, []), [(0, 1, 2, 3, 4)])


if __name__ == "__main__":
    unittest.main()
