"""
验证报告集成测试

端到端运行全部验收套件，检查报告结构与确定性。
"""

import unittest

from moduli_tiling.config import load_config_from_string
from moduli_tiling.core.nested import building_set_count
from moduli_tiling.core.moduli import strata_census
from moduli_tiling.core.verify import VerificationRunner
from moduli_tiling.errors import ResourceLimitError
from moduli_tiling.models.nested import ArrangementDescriptor, ArrangementKind
from moduli_tiling.models.verify_config import SUITE_NAMES, ResourceCaps, VerifyConfig
from moduli_tiling.utils.export import to_json
from tests.conftest import create_test_config_yaml

EXPECTED_ENTRIES = {
    "polytope": 6,
    "tiling": 2,
    "complex": 6,
    "incidence": 3,
    "stratum": 3,
    "truncation": 3,
    "arrangement": 7,
    "nc": 2,
    "nc-sums": 3,
    "cover": 4,
    "property": 4,
}


class TestFullRun(unittest.TestCase):
    """全部套件端到端测试"""

    @classmethod
    def setUpClass(cls):
        cls.config = VerifyConfig(samples=20, seed=11)
        cls.report = VerificationRunner(config=cls.config).run()

    def test_all_entries_pass(self):
        """测试全部条目通过"""
        failures = [(e.suite, e.name, e.computed) for e in self.report.failures()]
        self.assertEqual(failures, [])
        self.assertTrue(self.report.passed)

    def test_entry_counts(self):
        """测试各套件条目数"""
        self.assertEqual(self.report.suites, SUITE_NAMES)
        counts = {s: 0 for s in SUITE_NAMES}
        for entry in self.report.entries:
            counts[entry.suite] += 1
        self.assertEqual(counts, EXPECTED_ENTRIES)
        self.assertGreaterEqual(len(self.report.entries), 25)

    def test_provenance_recorded(self):
        """测试每个条目记录来源"""
        kinds = {e.provenance for e in self.report.entries}
        self.assertTrue(kinds <= {"published", "derived", "oracle", "trivial"})
        self.assertIn("published", kinds)

    def test_deterministic_without_timing(self):
        """测试省略耗时后报告逐字节相同"""
        again = VerificationRunner(config=self.config).run()
        self.assertEqual(
            to_json(again.to_dict(include_timing=False)),
            to_json(self.report.to_dict(include_timing=False)),
        )


class TestSelectedSuites(unittest.TestCase):
    """套件选择与预算测试"""

    def test_nc_with_small_budget(self):
        """测试小预算下只运行 nc 套件"""
        config = load_config_from_string(create_test_config_yaml(max_n=3))
        report = VerificationRunner(config=config).run(["nc"])
        self.assertEqual(len(report.entries), 2)
        self.assertTrue(report.passed)

    def test_no_suites(self):
        """测试空套件列表"""
        report = VerificationRunner().run([])
        self.assertEqual(report.entries, ())
        self.assertEqual(report.to_dict()["status"], "pass")

    def test_disabled_suite_skipped(self):
        """测试禁用的套件被跳过"""
        config = load_config_from_string(create_test_config_yaml())
        runner = VerificationRunner(config=config, max_n=3)
        report = runner.run()
        self.assertNotIn("property", report.suites)
        self.assertTrue(report.passed)

    def test_max_n_override(self):
        """测试预算过小时套件不产生条目"""
        report = VerificationRunner(max_n=2).run(["cover", "stratum"])
        self.assertEqual(report.entries, ())

    def test_resource_limit_propagates(self):
        """测试资源上限错误向上传播"""
        runner = VerificationRunner(caps=ResourceCaps(max_z_n=2))
        with self.assertRaises(ResourceLimitError):
            runner.run(["complex"])


class TestStrataAgainstBuildingSets(unittest.TestCase):
    """乘积层数与仿射构造集计数一致"""

    def test_counts(self):
        """测试乘积层数等于仿射构造集计数"""
        for n in (3, 4):
            affine = ArrangementDescriptor(kind=ArrangementKind.AFFINE, n=n)
            for k in range(1, n):
                self.assertEqual(len(strata_census(n, k)), building_set_count(affine, k))


if __name__ == "__main__":
    unittest.main()
