"""
模型单元测试 (unittest)
"""

import os
import unittest
from unittest import mock

from pydantic import ValidationError

from moduli_tiling.models.complex import BoundarySlot, CellClass, Incidence
from moduli_tiling.models.polygon import Chord, ChordClass, Dissection, LabeledPolygon, PolygonMode
from moduli_tiling.models.report import VerificationEntry, VerificationReport
from moduli_tiling.models.verify_config import (
    DEFAULT_MAX_N,
    ResourceCaps,
    SuiteBudget,
    VerifyConfig,
    expand_env_vars,
)


class TestPolygonModels(unittest.TestCase):
    """多边形模型测试"""

    def test_chord_of_sorts(self):
        """测试弦端点自动排序"""
        self.assertEqual(Chord.of(4, 1).key, (1, 4))

    def test_chord_class_sorted(self):
        """测试弦类内部排序"""
        cc = ChordClass.from_key(((3, 5), (0, 2)))
        self.assertEqual(cc.key, ((0, 2), (3, 5)))

    def test_dissection_codim_counts_classes(self):
        """测试剖分余维按弦类计数"""
        d = Dissection.from_class_keys((((0, 2), (3, 5)), ((0, 3),)))
        self.assertEqual(d.codim, 2)
        self.assertEqual(d.chord_keys, ((0, 2), (0, 3), (3, 5)))

    def test_symmetric_polygon(self):
        """测试中心对称多边形的标签校验"""
        p = LabeledPolygon(labels=(2, 1, 3, 2, 1, 3), mode=PolygonMode.SYMMETRIC)
        self.assertEqual((p.m, p.half), (6, 3))
        self.assertTrue(p.symmetric)
        with self.assertRaises(ValidationError):
            LabeledPolygon(labels=(1, 2, 3, 2, 1, 3), mode=PolygonMode.SYMMETRIC)

    def test_frozen(self):
        """测试模型不可变"""
        p = LabeledPolygon(labels=(1, 2, 3), mode=PolygonMode.PLAIN)
        with self.assertRaises(ValidationError):
            p.labels = (1, 3, 2)


class TestComplexModels(unittest.TestCase):
    """复形模型测试"""

    def test_encoding(self):
        """测试胞腔类编码"""
        cell = CellClass(labels=(1, 2, 3, 4), chords=((0, 2),), codim=1)
        self.assertEqual(cell.encoding, (1, 2, 3, 4, 0, 2))

    def test_multiplicity(self):
        """测试关联重数等于槽数"""
        inc = Incidence(dim=0, cell=0, tile=0, slots=(1, 4))
        self.assertEqual(inc.multiplicity, 2)
        with self.assertRaises(ValidationError):
            Incidence(dim=0, cell=0, tile=0, slots=())

    def test_boundary_sign(self):
        """测试边界符号只能为 ±1"""
        self.assertEqual(BoundarySlot(edge=0, sign=-1).sign, -1)
        with self.assertRaises(ValidationError):
            BoundarySlot(edge=0, sign=0)


class TestVerifyConfig(unittest.TestCase):
    """验证配置模型测试"""

    def test_defaults(self):
        """测试默认值"""
        config = VerifyConfig()
        self.assertEqual(config.samples, 1000)
        self.assertEqual(set(config.suites), set(DEFAULT_MAX_N))
        self.assertEqual(config.budget("complex"), 6)

    def test_partial_suites_merged(self):
        """测试部分套件配置与默认值合并"""
        config = VerifyConfig(suites={"nc": SuiteBudget(max_n=3)})
        self.assertEqual(config.budget("nc"), 3)
        self.assertEqual(config.budget("polytope"), DEFAULT_MAX_N["polytope"])

    def test_override(self):
        """测试预算覆盖"""
        self.assertEqual(VerifyConfig().budget("nc", 2), 2)

    def test_unknown_suite(self):
        """测试未知套件被拒绝"""
        with self.assertRaises(ValidationError) as cm:
            VerifyConfig(suites={"bogus": SuiteBudget(max_n=3)})
        self.assertIn("未知的验证套件", str(cm.exception))

    def test_log_level_normalized(self):
        """测试日志级别规范化"""
        self.assertEqual(VerifyConfig(log_level="debug").log_level, "DEBUG")
        with self.assertRaises(ValidationError):
            VerifyConfig(log_level="TRACE")


class TestResourceCaps(unittest.TestCase):
    """资源上限测试"""

    def test_defaults(self):
        """测试默认值"""
        caps = ResourceCaps()
        self.assertEqual((caps.max_m_n, caps.max_z_n), (6, 5))

    @mock.patch.dict(os.environ, {"MODULI_TILING_MAX_Z_N": "6"})
    def test_env_override(self):
        """测试环境变量覆盖资源上限"""
        self.assertEqual(ResourceCaps().max_z_n, 6)

    def test_positive(self):
        """测试资源上限必须为正"""
        with self.assertRaises(ValidationError):
            ResourceCaps(max_orbit_size=0)


class TestExpandEnvVars(unittest.TestCase):
    """环境变量展开测试"""

    @mock.patch.dict(os.environ, {"MT_SEED": "11"})
    def test_nested(self):
        """测试嵌套结构中的环境变量展开"""
        self.assertEqual(
            expand_env_vars({"a": ["${MT_SEED}", "x"], "b": "${MT_MISSING:-3}"}),
            {"a": ["11", "x"], "b": "3"},
        )

    def test_missing_without_default(self):
        """测试未设置且无默认值的变量报错"""
        with self.assertRaises(ValueError):
            expand_env_vars("${MT_SURELY_UNSET_VARIABLE}")


class TestReport(unittest.TestCase):
    """验证报告测试"""

    def _entry(self, passed: bool) -> VerificationEntry:
        return VerificationEntry(
            suite="nc", name="x", target=1, provenance="oracle",
            computed=1 if passed else 2, passed=passed, elapsed=0.5,
        )

    def test_status(self):
        """测试报告状态与失败计数"""
        report = VerificationReport(suites=("nc",), entries=(self._entry(True), self._entry(False)))
        self.assertFalse(report.passed)
        self.assertEqual(len(report.failures()), 1)
        data = report.to_dict()
        self.assertEqual((data["status"], data["total"], data["failed"]), ("fail", 2, 1))

    def test_empty_report_passes(self):
        """测试空报告视为通过"""
        self.assertTrue(VerificationReport().passed)
        self.assertEqual(VerificationReport().to_dict()["status"], "pass")

    def test_without_timing(self):
        """测试省略耗时字段"""
        data = self._entry(True).to_dict(include_timing=False)
        self.assertNotIn("elapsed", data)
        self.assertIn("elapsed", self._entry(True).to_dict())


if __name__ == "__main__":
    unittest.main()
