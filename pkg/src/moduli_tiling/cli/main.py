"""
CLI 命令行入口 - 使用 Click 框架

标准输出只写数据（JSON / DOT），诊断信息写标准错误。
退出码: 0 成功；1 验证失败或导出不符合 schema；2 参数或输入错误；3 超出资源上限。
"""

import functools
import sys
from pathlib import Path
from typing import Any, Callable, List, Optional, Tuple

import click
from pydantic import ValidationError

from moduli_tiling import __version__
from moduli_tiling.config import ConfigError, load_config, save_config_template
from moduli_tiling.errors import ExportSchemaError, InvalidInputError, ResourceLimitError
from moduli_tiling.models.verify_config import SUITE_NAMES, ResourceCaps, VerifyConfig
from moduli_tiling.utils.export import (
    complex_to_dict,
    complex_to_dot,
    poset_to_dict,
    poset_to_dot,
    to_json,
    validate_export,
)
from moduli_tiling.utils.logging import configure_logging, get_logger

logger = get_logger(__name__)

EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def handle_errors(func: Callable[..., Any]) -> Callable[..., Any]:
    """把库异常映射为退出码"""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except ResourceLimitError as e:
            click.echo(f"✗ {e}", err=True)
            sys.exit(EXIT_RESOURCE)
        except (InvalidInputError, ConfigError, ValidationError) as e:
            click.echo(f"✗ {e}", err=True)
            sys.exit(EXIT_USAGE)
        except ExportSchemaError as e:
            click.echo(f"✗ {e}", err=True)
            sys.exit(EXIT_FAILED)

    return wrapper


def _write_output(chunks: List[str], output: Optional[str]) -> None:
    """每块以换行结尾；写文件时在标准错误给出提示"""
    text = "".join(chunk if chunk.endswith("\n") else chunk + "\n" for chunk in chunks)
    if output:
        Path(output).write_text(text, encoding="utf-8")
        click.echo(f"✓ 已写入: {output}", err=True)
    else:
        click.echo(text, nl=False)


def _emit_poset(
    poset: Any, fvector: bool, hvector: bool, export: Optional[str], output: Optional[str]
) -> None:
    from moduli_tiling.core.poset import f_vector, h_vector

    chunks: List[str] = []
    if fvector:
        chunks.append(to_json(list(f_vector(poset).counts)))
    if hvector:
        chunks.append(to_json(list(h_vector(f_vector(poset)).coefficients)))
    if export == "json":
        data = poset_to_dict(poset)
        validate_export(data, "poset")
        chunks.append(to_json(data))
    elif export == "dot":
        chunks.append(poset_to_dot(poset))
    _write_output(chunks, output)


@click.group()
@click.option(
    "--log-level",
    "-l",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"]),
    default="WARNING",
    help="日志级别",
)
@click.option("--json-logs", is_flag=True, help="以 JSON 行输出日志")
@click.version_option(version=__version__, prog_name="moduli-tiling")
@click.pass_context
def cli(ctx: click.Context, log_level: str, json_logs: bool) -> None:
    """
    moduli-tiling CLI

    构造并验证 M̄₀ⁿ(ℝ) 与 Z̄ⁿ 的多边形铺砌、面偏序、嵌套集与非交叉划分。
    """
    configure_logging(log_level=log_level, json_format=json_logs)
    ctx.ensure_object(dict)
    ctx.obj["log_level"] = log_level
    ctx.obj["json_logs"] = json_logs


@cli.command()
@click.argument("kind", type=click.Choice(["assoc", "cyclo"]))
@click.option("--n", "n", type=int, required=True, help="多面体下标 n")
@click.option("--fvector", is_flag=True, help="输出 f 向量")
@click.option("--hvector", is_flag=True, help="输出 h 向量")
@click.option("--export", type=click.Choice(["json", "dot"]), help="导出面偏序")
@click.option("--output", "-o", type=click.Path(), help="写入文件（默认标准输出）")
@handle_errors
def polytope(
    kind: str, n: int, fvector: bool, hvector: bool, export: Optional[str], output: Optional[str]
) -> None:
    """
    结合多面体 K_n / 环面体 W_n 的面偏序

    示例:
        moduli-tiling polytope cyclo --n 3 --fvector
        moduli-tiling polytope assoc --n 5 --export dot
    """
    from moduli_tiling.core.poset import associahedron, cyclohedron

    poset = associahedron(n) if kind == "assoc" else cyclohedron(n)
    if not (fvector or hvector or export):
        fvector = True
    _emit_poset(poset, fvector, hvector, export, output)


@cli.command()
@click.argument("kind", type=click.Choice(["path", "cycle"]))
@click.option("--nodes", type=int, required=True, help="Coxeter 图结点数")
@click.option("--fvector", is_flag=True, help="输出 f 向量")
@click.option("--hvector", is_flag=True, help="输出 h 向量")
@click.option("--export", type=click.Choice(["json", "dot"]), help="导出管族面偏序")
@click.option("--output", "-o", type=click.Path(), help="写入文件（默认标准输出）")
@handle_errors
def tubing(
    kind: str, nodes: int, fvector: bool, hvector: bool, export: Optional[str], output: Optional[str]
) -> None:
    """
    路径/圈 Coxeter 图的管族面偏序

    示例:
        moduli-tiling tubing cycle --nodes 4 --fvector
    """
    from moduli_tiling.core.nested import tubing_poset
    from moduli_tiling.models.nested import Diagram

    diagram = Diagram(kind=kind, nodes=nodes)
    if not (fvector or hvector or export):
        fvector = True
    _emit_poset(tubing_poset(diagram), fvector, hvector, export, output)


@cli.command()
@click.argument("space", type=click.Choice(["m0", "z", "cover"]))
@click.option("--n", "n", type=int, required=True, help="标记点数 n")
@click.option("--stats", is_flag=True, help="输出胞腔数、欧拉示性数与拓扑类型")
@click.option("--export", type=click.Choice(["json", "dot"]), help="导出胞腔复形")
@click.option("--output", "-o", type=click.Path(), help="写入文件（默认标准输出）")
@handle_errors
def moduli(space: str, n: int, stats: bool, export: Optional[str], output: Optional[str]) -> None:
    """
    构造 M̄₀ⁿ(ℝ)、Z̄ⁿ 或其覆叠的胞腔复形

    示例:
        moduli-tiling moduli z --n 3 --stats
        moduli-tiling moduli m0 --n 5 --export json
    """
    from moduli_tiling.core.complex import (
        classify_surface,
        connected,
        describe_topology,
        euler,
        pseudomanifold,
    )
    from moduli_tiling.core.moduli import build_complex, cover_fold
    from moduli_tiling.models.complex import Space

    caps = ResourceCaps()
    kind = Space(space)
    c = build_complex(kind, n, caps)
    chunks: List[str] = []
    if stats or not export:
        data: dict[str, Any] = {
            "space": space,
            "n": n,
            "tiles": len(c.tiles),
            "cells": c.cell_counts(),
            "euler": euler(c),
            "connected": connected(c),
            "pseudomanifold": pseudomanifold(c),
            "topology": describe_topology(c),
        }
        if c.top_dim == 2 and data["connected"] and data["pseudomanifold"]:
            surface = classify_surface(c)
            data["orientable"] = surface.orientable
            data["genus" if surface.orientable else "crosscaps"] = surface.parameter
        if kind == Space.COVER:
            data["fold"] = cover_fold(n, caps)
        chunks.append(to_json(data))
    if export == "json":
        exported = complex_to_dict(c)
        validate_export(exported, "complex")
        chunks.append(to_json(exported))
    elif export == "dot":
        chunks.append(complex_to_dot(c))
    _write_output(chunks, output)


@cli.command()
@click.option("--n", "n", type=int, required=True, help="Z̄ⁿ 的 n")
@click.option("--k", "k", type=int, required=True, help="层的余维参数 k（1..n-1）")
@handle_errors
def strata(n: int, k: int) -> None:
    """
    Z̄ⁿ 中乘积层 M̄^{k+2} × Z̄^{n-k} 的普查

    示例:
        moduli-tiling strata --n 4 --k 2
    """
    from moduli_tiling.core.moduli import strata_census

    census = strata_census(n, k, ResourceCaps())
    click.echo(to_json([
        {
            "labels": list(st.labels),
            "factors": [f"M{st.m_points}", f"Z{st.z_points}"],
            "fvector": list(st.f_vector),
            "productFvector": list(st.product_f_vector),
            "matchesProduct": st.matches_product,
            "topology": st.topology,
        }
        for st in census
    ]))


@cli.command()
@click.argument("kind", type=click.Choice(["linear", "affine"]))
@click.option("--n", "n", type=int, required=True, help="排列参数 n（≥ 2）")
@click.option("--k", "k", type=int, help="只输出余维 k 的构造集计数")
@handle_errors
def arrangement(kind: str, n: int, k: Optional[int]) -> None:
    """
    辫子排列的房室数与极小构造集计数

    示例:
        moduli-tiling arrangement affine --n 4
        moduli-tiling arrangement linear --n 3 --k 2
    """
    from moduli_tiling.core.nested import building_set_count, chamber_count
    from moduli_tiling.models.nested import ArrangementDescriptor

    descriptor = ArrangementDescriptor(kind=kind, n=n)
    ks = [k] if k is not None else list(range(1, n))
    click.echo(to_json({
        "kind": kind,
        "n": n,
        "chambers": chamber_count(descriptor),
        "buildingSet": {str(x): building_set_count(descriptor, x) for x in ks},
    }))


@cli.command()
@click.option("--n", "n", type=int, required=True, help="基集大小 n")
@handle_errors
def nc(n: int) -> None:
    """
    A/B 型非交叉划分计数与对应 h 向量

    示例:
        moduli-tiling nc --n 4
    """
    from moduli_tiling.core.nc import nc_table

    table = nc_table(n, ResourceCaps())
    click.echo(to_json(table.model_dump()))


@cli.command()
@click.option(
    "--suite",
    "-s",
    "suites",
    multiple=True,
    type=click.Choice(list(SUITE_NAMES) + ["all", "none"]),
    help="要运行的套件（可重复；默认全部）",
)
@click.option("--max-n", type=click.IntRange(min=1), help="覆盖所有套件预算的最大规模")
@click.option("--config", "-c", "config_path", type=click.Path(exists=True), help="验证配置文件")
@click.option("--output", "-o", type=click.Path(), help="报告写入文件（默认标准输出）")
@click.option("--no-timing", is_flag=True, help="报告中省略耗时字段")
@handle_errors
def verify(
    suites: Tuple[str, ...],
    max_n: Optional[int],
    config_path: Optional[str],
    output: Optional[str],
    no_timing: bool,
) -> None:
    """
    运行验收套件并输出 JSON 报告

    示例:
        moduli-tiling verify
        moduli-tiling verify --suite nc --max-n 3
        moduli-tiling verify --suite none
    """
    from moduli_tiling.core.verify import VerificationRunner

    if config_path:
        config = load_config(config_path)
        # 配置文件中的日志级别覆盖 --log-level
        json_logs = click.get_current_context().find_root().obj.get("json_logs", False)
        configure_logging(log_level=config.log_level, json_format=json_logs)
    else:
        config = VerifyConfig()
    if "none" in suites:
        selected: Optional[list[str]] = []
    elif not suites or "all" in suites:
        selected = None
    else:
        selected = [s for s in SUITE_NAMES if s in suites]

    runner = VerificationRunner(config=config, caps=ResourceCaps(), max_n=max_n)
    report = runner.run(selected)
    text = to_json(report.to_dict(include_timing=not no_timing))
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
        click.echo(f"✓ 报告已写入: {output}", err=True)
    else:
        click.echo(text)

    if not report.passed:
        click.echo(f"✗ {len(report.failures())} 项验证失败", err=True)
        sys.exit(EXIT_FAILED)


@cli.command()
@click.argument("output_path", type=click.Path(), default="verify.yaml")
def init(output_path: str) -> None:
    """
    生成验证配置模板

    示例:
        moduli-tiling init verify.yaml
    """
    path = Path(output_path)
    if path.exists():
        click.confirm(f"文件 {output_path} 已存在，是否覆盖？", abort=True)
    save_config_template(output_path)
    click.echo(f"✓ 配置模板已生成: {output_path}")


@cli.command()
@click.argument("config_path", type=click.Path(exists=True))
def validate(config_path: str) -> None:
    """
    验证配置文件

    示例:
        moduli-tiling validate verify.yaml
    """
    try:
        config = load_config(config_path)
    except ConfigError as e:
        click.echo(f"✗ 配置错误: {e}", err=True)
        sys.exit(EXIT_USAGE)
    click.echo("✓ 配置验证通过")
    enabled = [name for name, budget in config.suites.items() if budget.enabled]
    click.echo(f"  启用套件: {len(enabled)}/{len(SUITE_NAMES)}")
    click.echo(f"  样本数: {config.samples}")
    click.echo(f"  随机种子: {config.seed}")


if __name__ == "__main__":
    cli()
