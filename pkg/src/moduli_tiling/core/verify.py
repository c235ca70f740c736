"""
验证运行器 - 按套件执行全部验收检查并汇总为报告

每个条目把期望值（附来源）与计算值逐项比较；
超出资源上限的异常向上传播，其余库异常记为失败条目。
"""

import random
import time
from math import comb
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from moduli_tiling.core.complex import (
    codim_incidence,
    describe_topology,
    euler,
    pseudomanifold,
    relabel_complex,
    same_complex,
)
from moduli_tiling.core.dissect import (
    all_diagonals,
    apply_group_element,
    canonicalize,
    crosses,
    crosses_key,
    group_elements,
    symmetric_atoms,
    to_dissection,
    to_polygon,
)
from moduli_tiling.core.moduli import (
    ComplexBuilder,
    build_complex,
    cover_complex,
    cover_fold,
    cover_preimage_counts,
    strata_census,
    tiles,
    twist_plain,
    twist_sym,
)
from moduli_tiling.core.nc import count_nc_a, count_nc_b, verify_identity_a, verify_identity_b
from moduli_tiling.core.nested import (
    building_set_count,
    chamber_count,
    poset_iso,
    tubing_poset,
)
from moduli_tiling.core.poset import associahedron, cyclohedron, f_vector
from moduli_tiling.errors import ModuliTilingError, ResourceLimitError
from moduli_tiling.models.complex import Space
from moduli_tiling.models.nested import ArrangementDescriptor, ArrangementKind, Diagram, DiagramKind
from moduli_tiling.models.polygon import Chord, Dissection, GroupKind, LabeledPolygon, PolygonMode, SymmetryGroup
from moduli_tiling.models.report import VerificationEntry, VerificationReport
from moduli_tiling.models.verify_config import SUITE_NAMES, ResourceCaps, VerifyConfig
from moduli_tiling.utils.combinatorics import (
    associahedron_vertices,
    catalan,
    cyclohedron_vertices,
    m_tile_count,
    z_tile_count,
)
from moduli_tiling.utils.logging import bind_context, clear_context, get_logger

logger = get_logger(__name__)

PUBLISHED = "published"
DERIVED = "derived"
ORACLE = "oracle"
TRIVIAL = "trivial"


def _jsonable(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


# ============================================================================
# 随机样本
# ============================================================================

def random_plain(rng: random.Random, max_m: int) -> Tuple[LabeledPolygon, Dissection]:
    """随机的带标号剖分普通多边形（至少一条弦）"""
    m = rng.randint(4, max(4, max_m))
    labels = list(range(1, m + 1))
    rng.shuffle(labels)
    diagonals = all_diagonals(m)
    rng.shuffle(diagonals)
    target = rng.randint(1, m - 3)
    chosen: List[Tuple[int, int]] = []
    for c in diagonals:
        if len(chosen) == target:
            break
        if not any(crosses_key(c, o) for o in chosen):
            chosen.append(c)
    return to_polygon(tuple(labels), PolygonMode.PLAIN), to_dissection(tuple(sorted(chosen)), PolygonMode.PLAIN, m)


def random_symmetric(rng: random.Random, max_n: int) -> Tuple[LabeledPolygon, Dissection]:
    """随机的带标号对称剖分 2n 边形（至少一个弦类）"""
    n = rng.randint(2, max(2, max_n))
    half = list(range(1, n + 1))
    rng.shuffle(half)
    atoms = symmetric_atoms(n)
    rng.shuffle(atoms)
    target = rng.randint(1, n - 1)
    chosen: List[Tuple[int, int]] = []
    count = 0
    for cls in atoms:
        if count == target:
            break
        if not any(crosses_key(a, b) for a in cls for b in chosen):
            chosen.extend(cls)
            count += 1
    m = 2 * n
    return (
        to_polygon(tuple(half + half), PolygonMode.SYMMETRIC),
        to_dissection(tuple(sorted(chosen)), PolygonMode.SYMMETRIC, m),
    )


# ============================================================================
# 运行器
# ============================================================================

class VerificationRunner:
    """
    验收套件运行器

    参数:
        config: 验证配置（预算、样本数、随机种子）
        caps: 资源上限
        max_n: 覆盖所有套件预算的统一上限
    """

    def __init__(
        self,
        config: Optional[VerifyConfig] = None,
        caps: Optional[ResourceCaps] = None,
        max_n: Optional[int] = None,
    ):
        self.config = config or VerifyConfig()
        self.caps = caps or ResourceCaps()
        self.max_n = max_n
        self._suites: Dict[str, Callable[[int], List[VerificationEntry]]] = {
            "polytope": self._suite_polytope,
            "tiling": self._suite_tiling,
            "complex": self._suite_complex,
            "incidence": self._suite_incidence,
            "stratum": self._suite_stratum,
            "truncation": self._suite_truncation,
            "arrangement": self._suite_arrangement,
            "nc": self._suite_nc,
            "nc-sums": self._suite_nc_sums,
            "cover": self._suite_cover,
            "property": self._suite_property,
        }

    def run(self, suites: Optional[Sequence[str]] = None) -> VerificationReport:
        """
        运行指定套件（默认全部已启用的套件）

        异常:
            ResourceLimitError: 计算超出资源上限
        """
        if suites is None:
            suites = [s for s in SUITE_NAMES if self.config.suites[s].enabled]
        entries: List[VerificationEntry] = []
        for suite in suites:
            budget = self.config.budget(suite, self.max_n)
            bind_context(suite=suite)
            logger.info("suite_start", budget=budget)
            try:
                entries.extend(self._suites[suite](budget))
            finally:
                clear_context()
        report = VerificationReport(suites=tuple(suites), entries=tuple(entries))
        logger.info("verify_done", total=len(entries), failed=len(report.failures()))
        return report

    def _check(
        self,
        suite: str,
        name: str,
        target: Any,
        provenance: str,
        compute: Callable[[], Any],
    ) -> VerificationEntry:
        start = time.perf_counter()
        target = _jsonable(target)
        try:
            computed = _jsonable(compute())
            passed = computed == target
        except ResourceLimitError:
            raise
        except ModuliTilingError as e:
            computed, passed = f"{type(e).__name__}: {e}", False
        elapsed = round(time.perf_counter() - start, 6)
        if passed:
            logger.debug("entry_passed", name=name, elapsed=elapsed)
        else:
            logger.warning("entry_failed", name=name, target=target, computed=computed)
        return VerificationEntry(
            suite=suite,
            name=name,
            target=target,
            provenance=provenance,
            computed=computed,
            passed=passed,
            elapsed=elapsed,
        )

    # ------------------------------------------------------------------
    # 面偏序
    # ------------------------------------------------------------------

    def _suite_polytope(self, budget: int) -> List[VerificationEntry]:
        s = "polytope"
        fv = lambda p: list(f_vector(p).counts)  # noqa: E731
        k_range = range(2, max(2, min(budget, 8)) + 1)
        w_range = range(1, min(budget, 7) + 1)
        return [
            self._check(s, "f(K4)", [5, 5, 1], PUBLISHED, lambda: fv(associahedron(4))),
            self._check(s, "f(W3)", [6, 6, 1], PUBLISHED, lambda: fv(cyclohedron(3))),
            self._check(s, "f(K5)", [14, 21, 9, 1], ORACLE, lambda: fv(associahedron(5))),
            self._check(s, "f(W4)", [20, 30, 12, 1], ORACLE, lambda: fv(cyclohedron(4))),
            self._check(
                s, f"vertices K_n = Catalan(n-1), n<={k_range[-1]}",
                [associahedron_vertices(n) for n in k_range], ORACLE,
                lambda: [f_vector(associahedron(n)).counts[0] for n in k_range],
            ),
            self._check(
                s, f"vertices W_n = C(2n-2,n-1), n<={w_range[-1]}",
                [cyclohedron_vertices(n) for n in w_range], ORACLE,
                lambda: [f_vector(cyclohedron(n)).counts[0] for n in w_range],
            ),
        ]

    # ------------------------------------------------------------------
    # 瓦片与复形
    # ------------------------------------------------------------------

    def _suite_tiling(self, budget: int) -> List[VerificationEntry]:
        s = "tiling"
        z_range = range(1, min(budget, 5) + 1)
        m_range = range(3, min(budget, 6) + 1)
        return [
            self._check(
                s, "|tiles(Z,n)| = (n-1)!", [z_tile_count(n) for n in z_range], PUBLISHED,
                lambda: [len(tiles(Space.Z, n, self.caps)) for n in z_range],
            ),
            self._check(
                s, "|tiles(M,n)| = (n-1)!/2", [m_tile_count(n) for n in m_range], PUBLISHED,
                lambda: [len(tiles(Space.M, n, self.caps)) for n in m_range],
            ),
        ]

    def _complex_stats(self, space: Space, n: int, *fields: str) -> Dict[str, Any]:
        c = build_complex(space, n, self.caps)
        available: Dict[str, Callable[[], Any]] = {
            "cells": c.cell_counts,
            "tiles": lambda: len(c.tiles),
            "euler": lambda: euler(c),
            "topology": lambda: describe_topology(c),
            "pseudomanifold": lambda: pseudomanifold(c),
        }
        return {f: available[f]() for f in fields}

    def _suite_complex(self, budget: int) -> List[VerificationEntry]:
        s = "complex"
        entries = []
        if budget >= 2:
            entries.append(self._check(
                s, "Z2 circle", {"cells": [1, 1], "euler": 0, "topology": "circle"}, PUBLISHED,
                lambda: self._complex_stats(Space.Z, 2, "cells", "euler", "topology"),
            ))
        if budget >= 3:
            entries.append(self._check(
                s, "Z3 = RP2 # RP2 # RP2",
                {"cells": [3, 6, 2], "tiles": 2, "euler": -1, "topology": "RP2 # RP2 # RP2"}, PUBLISHED,
                lambda: self._complex_stats(Space.Z, 3, "cells", "tiles", "euler", "topology"),
            ))
        if budget >= 4:
            entries.append(self._check(
                s, "Z4 pseudomanifold", {"tiles": 6, "euler": 0, "pseudomanifold": True}, DERIVED,
                lambda: self._complex_stats(Space.Z, 4, "tiles", "euler", "pseudomanifold"),
            ))
            entries.append(self._check(
                s, "M4 circle of 3 segments", {"cells": [3, 3], "topology": "circle"}, TRIVIAL,
                lambda: self._complex_stats(Space.M, 4, "cells", "topology"),
            ))
        if budget >= 5:
            entries.append(self._check(
                s, "M5 = 5 RP2",
                {"cells": [15, 30, 12], "tiles": 12, "euler": -3, "topology": " # ".join(["RP2"] * 5)},
                PUBLISHED,
                lambda: self._complex_stats(Space.M, 5, "cells", "tiles", "euler", "topology"),
            ))
        odd = [
            (sp, n) for sp, n in ((Space.Z, 2), (Space.Z, 4), (Space.M, 4), (Space.M, 6)) if n <= budget
        ]
        if odd:
            entries.append(self._check(
                s, "euler = 0 in odd dimension", [0] * len(odd), TRIVIAL,
                lambda: [euler(build_complex(sp, n, self.caps)) for sp, n in odd],
            ))
        return entries

    def _suite_incidence(self, budget: int) -> List[VerificationEntry]:
        s = "incidence"
        built = [
            (sp, n) for sp, n in ((Space.Z, 2), (Space.Z, 3), (Space.Z, 4), (Space.M, 4), (Space.M, 5))
            if n <= budget
        ]
        entries = [self._check(
            s, "pseudomanifold", [True] * len(built), DERIVED,
            lambda: [pseudomanifold(build_complex(sp, n, self.caps)) for sp, n in built],
        )]
        if budget >= 5:
            entries.append(self._check(
                s, "M5 codim-k incidence 2^k", [True, True], PUBLISHED,
                lambda: [codim_incidence(build_complex(Space.M, 5, self.caps), k) for k in (1, 2)],
            ))
        if budget >= 3:
            entries.append(self._check(
                s, "Z3 codim-k incidence 2^k", [True, True], DERIVED,
                lambda: [codim_incidence(build_complex(Space.Z, 3, self.caps), k) for k in (1, 2)],
            ))
        return entries

    def _suite_stratum(self, budget: int) -> List[VerificationEntry]:
        s = "stratum"
        pairs = [(n, k) for n in range(3, min(budget, 4) + 1) for k in range(1, n)]
        if not pairs:
            return []
        affine = lambda n: ArrangementDescriptor(kind=ArrangementKind.AFFINE, n=n)  # noqa: E731
        entries = [
            self._check(
                s, "stratum count = building set count",
                [building_set_count(affine(n), k) for n, k in pairs], DERIVED,
                lambda: [len(strata_census(n, k, self.caps)) for n, k in pairs],
            ),
            self._check(
                s, "stratum f-vector = product of factors",
                [[True] * comb(n, k + 1) for n, k in pairs], DERIVED,
                lambda: [[st.matches_product for st in strata_census(n, k, self.caps)] for n, k in pairs],
            ),
        ]
        if budget >= 4:
            entries.append(self._check(
                s, "n=4 k=2 strata are tori", ["torus"] * 4, PUBLISHED,
                lambda: [st.topology for st in strata_census(4, 2, self.caps)],
            ))
        return entries

    # ------------------------------------------------------------------
    # 截断、排列、非交叉划分
    # ------------------------------------------------------------------

    def _suite_truncation(self, budget: int) -> List[VerificationEntry]:
        s = "truncation"
        path = range(1, min(budget, 4) + 1)
        cycle = range(3, min(budget, 5) + 1)
        entries = [
            self._check(
                s, "tubings(path n) ≅ K_{n+1}", [True] * len(path), PUBLISHED,
                lambda: [
                    poset_iso(tubing_poset(Diagram(kind=DiagramKind.PATH, nodes=n)), associahedron(n + 1), self.caps)
                    for n in path
                ],
            ),
            self._check(
                s, "tubings(cycle n) ≅ W_n", [True] * len(cycle), PUBLISHED,
                lambda: [
                    poset_iso(tubing_poset(Diagram(kind=DiagramKind.CYCLE, nodes=n)), cyclohedron(n), self.caps)
                    for n in cycle
                ],
            ),
        ]
        if budget >= 6:
            entries.append(self._check(
                s, "f(tubings(cycle 6)) = f(W6)", list(f_vector(cyclohedron(6)).counts), DERIVED,
                lambda: list(f_vector(tubing_poset(Diagram(kind=DiagramKind.CYCLE, nodes=6))).counts),
            ))
        return entries

    def _suite_arrangement(self, budget: int) -> List[VerificationEntry]:
        s = "arrangement"
        linear = lambda n: ArrangementDescriptor(kind=ArrangementKind.LINEAR, n=n)  # noqa: E731
        affine = lambda n: ArrangementDescriptor(kind=ArrangementKind.AFFINE, n=n)  # noqa: E731
        ns = range(2, min(budget, 6) + 1)
        cross = range(2, min(budget, 4) + 1)
        return [
            self._check(s, "chambers(linear 3)", 12, PUBLISHED, lambda: chamber_count(linear(3))),
            self._check(s, "chambers(affine 3)", 2, PUBLISHED, lambda: chamber_count(affine(3))),
            self._check(s, "chambers(affine 4)", 6, PUBLISHED, lambda: chamber_count(affine(4))),
            self._check(
                s, "building set(affine n, k) = C(n, k+1)",
                [[comb(n, k + 1) for k in range(1, n)] for n in ns], DERIVED,
                lambda: [[building_set_count(affine(n), k) for k in range(1, n)] for n in ns],
            ),
            self._check(s, "building set(linear 3, 2)", 4, PUBLISHED, lambda: building_set_count(linear(3), 2)),
            self._check(
                s, "chambers(affine n) = |tiles(Z,n)|",
                [len(tiles(Space.Z, n, self.caps)) for n in cross], DERIVED,
                lambda: [chamber_count(affine(n)) for n in cross],
            ),
            self._check(
                s, "chambers(linear n) = |tiles(M,n+2)|",
                [len(tiles(Space.M, n + 2, self.caps)) for n in cross], DERIVED,
                lambda: [chamber_count(linear(n)) for n in cross],
            ),
        ]

    def _suite_nc(self, budget: int) -> List[VerificationEntry]:
        s = "nc"
        a_range = range(2, min(budget, 7) + 1)
        b_range = range(1, min(budget, 5) + 1)
        return [
            self._check(
                s, "NC(n,n-k) = h_k(K_{n+1})", [True] * len(a_range), PUBLISHED,
                lambda: [verify_identity_a(n, self.caps) for n in a_range],
            ),
            self._check(
                s, "NC_B(n,n-k) = h_k(W_{n+1})", [True] * len(b_range), PUBLISHED,
                lambda: [verify_identity_b(n, self.caps) for n in b_range],
            ),
        ]

    def _suite_nc_sums(self, budget: int) -> List[VerificationEntry]:
        s = "nc-sums"
        a_range = range(1, min(budget, 8) + 1)
        b_range = range(1, min(budget, 5) + 1)
        return [
            self._check(
                s, "Σ_k NC(n,k) = Catalan(n)", [catalan(n) for n in a_range], ORACLE,
                lambda: [sum(count_nc_a(n, k, self.caps) for k in range(1, n + 1)) for n in a_range],
            ),
            self._check(
                s, "NC(n,k) = NC(n,n+1-k)", [True] * len(a_range), DERIVED,
                lambda: [
                    all(count_nc_a(n, k, self.caps) == count_nc_a(n, n + 1 - k, self.caps) for k in range(1, n + 1))
                    for n in a_range
                ],
            ),
            self._check(
                s, "NC_B(n,k) = NC_B(n,n-k)", [True] * len(b_range), DERIVED,
                lambda: [
                    all(count_nc_b(n, k, self.caps) == count_nc_b(n, n - k, self.caps) for k in range(n + 1))
                    for n in b_range
                ],
            ),
        ]

    def _suite_cover(self, budget: int) -> List[VerificationEntry]:
        s = "cover"
        if budget < 3:
            return []
        return [
            self._check(s, "cover(3) tiles", 8, PUBLISHED, lambda: len(cover_complex(3, self.caps).tiles)),
            self._check(s, "cover(3) fold over Z3", 4, PUBLISHED, lambda: cover_fold(3, self.caps)),
            self._check(
                s, "cover(3) = 4 x Z3 cellwise",
                {"cells": [12, 24, 8], "euler": -4, "pseudomanifold": True}, DERIVED,
                lambda: self._complex_stats(Space.COVER, 3, "cells", "euler", "pseudomanifold"),
            ),
            self._check(
                s, "cover(3) preimages per cell = fold",
                [[4] * 3, [4] * 6, [4] * 2], DERIVED,
                lambda: cover_preimage_counts(3, self.caps),
            ),
        ]

    # ------------------------------------------------------------------
    # 随机性质
    # ------------------------------------------------------------------

    def _suite_property(self, budget: int) -> List[VerificationEntry]:
        s = "property"
        samples = self.config.samples
        seed = self.config.seed
        max_m = max(4, min(budget, 8))
        max_n = max(2, min(budget, 5))
        return [
            self._check(s, "twist is an involution", samples, DERIVED,
                        lambda: self._twist_involutions(random.Random(seed), samples, max_m, max_n)),
            self._check(s, "canonicalization idempotent and orbit-invariant", samples, DERIVED,
                        lambda: self._canonical_checks(random.Random(seed + 1), samples, max_m, max_n)),
            self._check(s, "crosses is symmetric", samples, TRIVIAL,
                        lambda: self._crosses_checks(random.Random(seed + 2), samples, max_m)),
            self._check(s, "assembly independent of tile order", True, DERIVED,
                        lambda: self._shuffled_assembly(random.Random(seed + 3), budget)),
        ]

    @staticmethod
    def _twist_involutions(rng: random.Random, samples: int, max_m: int, max_n: int) -> int:
        ok = 0
        for i in range(samples):
            if i % 2 == 0:
                p, d = random_plain(rng, max_m)
                chord = rng.choice(d.classes).members[0]
                once = twist_plain(p, d, chord, canonical=False)
                twice = twist_plain(*once, chord, canonical=False)
            else:
                p, d = random_symmetric(rng, max_n)
                cls = rng.choice(d.classes)
                once = twist_sym(p, d, cls, canonical=False)
                twice = twist_sym(*once, cls, canonical=False)
            ok += twice == (p, d)
        return ok

    @staticmethod
    def _canonical_checks(rng: random.Random, samples: int, max_m: int, max_n: int) -> int:
        ok = 0
        for i in range(samples):
            if i % 2 == 0:
                p, d = random_plain(rng, max_m)
                group = SymmetryGroup(kind=GroupKind.DIHEDRAL, order=p.m)
            else:
                p, d = random_symmetric(rng, max_n)
                group = SymmetryGroup(kind=GroupKind.ROTATIONS, order=p.m)
            canonical = canonicalize(p, d, group)
            g = rng.choice(group_elements(p.m, group.kind))
            moved = apply_group_element(p, d, g)
            ok += canonicalize(*canonical, group) == canonical and canonicalize(*moved, group) == canonical
        return ok

    @staticmethod
    def _crosses_checks(rng: random.Random, samples: int, max_m: int) -> int:
        ok = 0
        for _ in range(samples):
            m = rng.randint(4, max_m)
            a, b = rng.sample(all_diagonals(m), 2)
            c1, c2 = Chord.of(*a), Chord.of(*b)
            ok += crosses(c1, c2, m) == crosses(c2, c1, m)
        return ok

    def _shuffled_assembly(self, rng: random.Random, budget: int) -> bool:
        """
        以随机瓦片顺序、全新的轨道闭包重新组装，再随机重排全部下标；
        胞腔数、欧拉示性数、伪流形性质、曲面类型与关联结构都应不变
        """
        for space, n in ((Space.Z, 3), (Space.M, 5)):
            if n > budget:
                continue
            reference = build_complex(space, n, self.caps)
            fresh = ComplexBuilder(space, n, self.caps.max_orbit_size)
            tops = [(labels, ()) for labels in fresh.tile_labels()]
            rng.shuffle(tops)
            again = fresh.assemble(tops, fresh.model.top_dim, space.value)
            again = relabel_complex(
                again,
                rng.sample(range(len(again.tiles)), len(again.tiles)),
                [rng.sample(range(len(layer)), len(layer)) for layer in again.cells],
            )
            if not same_complex(reference, again):
                logger.warning("assembly_order_mismatch", space=space.value, n=n)
                return False
        return True
