"""
验证报告模型
"""

from typing import Any, Dict, List, Tuple

from pydantic import BaseModel, ConfigDict, Field


class VerificationEntry(BaseModel):
    """
    单条验证结果

    属性:
        suite: 所属套件
        name: 检查名称
        target: 期望值
        provenance: 期望值来源（published / derived / oracle / trivial）
        computed: 计算值（出错时为错误信息）
        passed: 是否通过
        elapsed: 耗时（秒），不参与确定性比较
    """
    model_config = ConfigDict(frozen=True)

    suite: str
    name: str
    target: Any
    provenance: str
    computed: Any
    passed: bool
    elapsed: float = Field(default=0.0, ge=0)

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data = self.model_dump()
        if not include_timing:
            data.pop("elapsed")
        return data


class VerificationReport(BaseModel):
    """验证报告: 总体状态为全部条目的合取"""
    model_config = ConfigDict(frozen=True)

    suites: Tuple[str, ...] = ()
    entries: Tuple[VerificationEntry, ...] = ()

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> List[VerificationEntry]:
        return [e for e in self.entries if not e.passed]

    def to_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        return {
            "status": "pass" if self.passed else "fail",
            "suites": list(self.suites),
            "total": len(self.entries),
            "failed": len(self.failures()),
            "entries": [e.to_dict(include_timing) for e in self.entries],
        }
