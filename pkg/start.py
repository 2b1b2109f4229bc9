#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
快速启动脚本 / 命令行入口
Command-line front end

用法:
  python start.py                                   # 显示菜单
  python start.py eval delta --n 2 --p 3            # 闭式 + 数值
  python start.py verify all --kmax 100000          # 验收网格
  python start.py verify tau --n 3 --p 2 --kmax 1000000
  python start.py table delta --n 1..5 --p 2 --format csv
  python start.py demo                              # 快速演示
  python start.py figures                           # 收敛图 (output/)

退出码: 0 全部通过, 1 有验证失败, 2 参数错误
"""

import argparse
import csv
import itertools
import json
import logging
import sys

# 设置UTF-8编码输出
if sys.platform == 'win32':
    import io
    sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding='utf-8')

import mpmath

from EulerSeries.closed_forms import Family, SeriesSpec, evaluate
from EulerSeries.config import CliConfig, EvaluationSettings, OUTPUT_FORMATS, DELTA_ROUTES
from EulerSeries.errors import ConfigError, EulerSeriesError
from EulerSeries.numeric import working_precision
from EulerSeries.zeta_expr import as_rational, expr_eval, render_text, to_dict

logger = logging.getLogger('start')

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

FAMILY_NAMES = [family.value for family in Family]


class CliParser(argparse.ArgumentParser):
    """参数错误抛出 ConfigError，由 main 统一输出一行诊断"""

    def error(self, message):
        raise ConfigError(message)


def show_menu():
    """显示菜单"""
    print("=" * 70)
    print("🎯 Euler型级数闭式求值 - 快速启动")
    print("🎯 Euler-type Series in Closed Form - Quick Start")
    print("=" * 70)
    print("\n可用命令 Available Commands:")
    print("  python start.py eval delta --n 2 --p 3        # 闭式与数值 (Closed form)")
    print("  python start.py verify all                     # 验收网格 (Acceptance grid)")
    print("  python start.py verify tau --n 3 --p 2         # 单个实例验证 (Verify one)")
    print("  python start.py table rho --n 0..3 --m 2       # 参数表 (Table)")
    print("  python start.py demo                           # 快速演示 (Quick Demo)")
    print("  python start.py figures                        # 收敛图 (Convergence plots)")
    print("\n级数族 Families: " + ", ".join(FAMILY_NAMES))
    print("\n" + "=" * 70)
    print("\n💡 提示: 收敛图将保存在 output/ 目录")
    print("💡 Tip: Figures will be saved in output/ folder")
    print("\n📖 更多信息请查看 README.md 和 doc/ 目录")
    print("📖 For more info, check README.md and doc/ folder\n")


def _add_common_options(parser):
    parser.add_argument('--digits', type=int, default=None, help='有效数字位数 (>= 10, 默认 50)')
    parser.add_argument('--kmax', dest='k_max', type=int, default=None, help='截断求和项数 (>= 10, 默认 100000)')
    parser.add_argument('--format', choices=OUTPUT_FORMATS, default=None, help='输出格式')
    parser.add_argument('--fail-fast', action='store_true', help='首个FAIL后停止')
    parser.add_argument('--jobs', type=int, default=None, help='并行验证线程数')
    parser.add_argument('--delta-route', choices=DELTA_ROUTES, default=None, help='δ 的求值路线')
    parser.add_argument('--verbose', action='store_true', help='输出DEBUG日志')


def _add_parameters(parser, kind):
    for name in ('n', 'p', 'm'):
        parser.add_argument(f'--{name}', type=kind, default=None)
    parser.add_argument('--r', type=str, default=None, help='MU的正实数参数，如 1/2 或 0.5')


def build_parser():
    parser = CliParser(prog='start.py', description='Euler型级数的闭式求值与数值验证')
    commands = parser.add_subparsers(dest='command')

    eval_parser = commands.add_parser('eval', help='打印闭式及其数值')
    eval_parser.add_argument('family', choices=FAMILY_NAMES)
    _add_parameters(eval_parser, int)
    _add_common_options(eval_parser)

    verify_parser = commands.add_parser('verify', help='闭式 vs 数值预言机')
    verify_parser.add_argument('family', choices=FAMILY_NAMES + ['all'])
    _add_parameters(verify_parser, int)
    _add_common_options(verify_parser)

    table_parser = commands.add_parser('table', help='参数范围上的闭式表')
    table_parser.add_argument('family', choices=FAMILY_NAMES)
    _add_parameters(table_parser, str)
    _add_common_options(table_parser)

    demo_parser = commands.add_parser('demo', help='快速演示')
    _add_common_options(demo_parser)

    figures_parser = commands.add_parser('figures', help='收敛实验图')
    figures_parser.add_argument('--output', default='output', help='图片目录')
    _add_common_options(figures_parser)
    return parser


def _config(args):
    return CliConfig.from_env(digits=args.digits, k_max=args.k_max, format=args.format,
                              fail_fast=args.fail_fast or None, jobs=args.jobs)


def _settings(args):
    settings = EvaluationSettings.from_env()
    if args.delta_route:
        settings = EvaluationSettings(delta_route=args.delta_route, cross_check=settings.cross_check)
    return settings


def spec_from_args(family, args):
    """命令行参数 -> SeriesSpec；缺少族参数时报错"""
    family = Family.parse(family)
    params = {}
    for name in family.parameters:
        value = getattr(args, name)
        if value is None:
            raise ConfigError(f"{family.value}: missing parameter --{name}")
        params[name] = as_rational(value) if name == 'r' else value
    return SeriesSpec(family, **params)


def parse_range(text, name, rational=False):
    """'a..b' 或逗号分隔列表 -> 升序去重列表"""
    convert = as_rational if rational else int
    try:
        if '..' in text:
            start, stop = text.split('..', 1)
            values = list(range(int(start), int(stop) + 1))
            if not values:
                raise ConfigError(f"empty range --{name} {text}")
        else:
            values = [convert(item.strip()) for item in text.split(',') if item.strip()]
    except ValueError:
        raise ConfigError(f"cannot parse range --{name} {text!r}") from None
    if not values:
        raise ConfigError(f"empty range --{name} {text!r}")
    return sorted(set(values))


def _params_text(spec):
    return ';'.join(f"{name}={value}" for name, value in spec.params().items())


def _evaluate_row(spec, digits, settings):
    expr = evaluate(spec, settings)
    result = expr_eval(expr, digits)
    with working_precision(digits):
        value = mpmath.nstr(result.value, digits)
    return expr, value


def _emit_rows(rows, fmt, digits):
    """rows: [(spec, expr, value)]"""
    if fmt == 'csv':
        writer = csv.writer(sys.stdout, lineterminator='\n')
        writer.writerow(['family', 'params', 'closed_form', 'value'])
        for spec, expr, value in rows:
            writer.writerow([spec.family.value, _params_text(spec), render_text(expr), value])
    elif fmt == 'json':
        for spec, expr, value in rows:
            print(json.dumps({"spec": spec.to_dict(), "closed_form": to_dict(expr), "text": render_text(expr),
                              "value": value, "digits": digits}))
    else:
        for spec, expr, value in rows:
            print(f"{spec.label()} = {render_text(expr)}")
            print(f"  ~ {value}")


def cmd_eval(args):
    config = _config(args)
    spec = spec_from_args(args.family, args)
    expr, value = _evaluate_row(spec, config.digits, _settings(args))
    _emit_rows([(spec, expr, value)], config.format, config.digits)
    return EXIT_OK


def cmd_table(args):
    config = _config(args)
    family = Family.parse(args.family)
    axes = []
    for name in family.parameters:
        text = getattr(args, name)
        if text is None:
            raise ConfigError(f"{family.value}: missing parameter --{name}")
        axes.append(parse_range(text, name, rational=(name == 'r')))
    settings = _settings(args)
    rows = []
    for combo in itertools.product(*axes):
        spec = SeriesSpec(family, **dict(zip(family.parameters, combo)))
        expr, value = _evaluate_row(spec, config.digits, settings)
        rows.append((spec, expr, value))
    _emit_rows(rows, config.format, config.digits)
    return EXIT_OK


def _verify_specs(args):
    from NumericOracles.verification import ACCEPTANCE_GRID

    if args.family == 'all':
        return list(ACCEPTANCE_GRID)
    family = Family.parse(args.family)
    if all(getattr(args, name) is None for name in family.parameters):
        return [spec for spec in ACCEPTANCE_GRID if spec.family is family]
    return [spec_from_args(args.family, args)]


def cmd_verify(args):
    from NumericOracles.verification import run_sweep

    config = _config(args)
    specs = _verify_specs(args)
    reports = run_sweep(specs, config.k_max, config.digits, jobs=config.jobs,
                        fail_fast=config.fail_fast, settings=_settings(args))

    if config.format == 'json':
        for report in reports:
            print(report.to_json())
    elif config.format == 'csv':
        writer = csv.writer(sys.stdout, lineterminator='\n')
        writer.writerow(['family', 'params', 'closed_form', 'closed_value', 'oracle_value', 'oracle_bound',
                         'verdict'])
        for report in reports:
            writer.writerow([report.spec.family.value, _params_text(report.spec), render_text(report.closed_form),
                             report.closed_value, report.oracle_value, report.oracle_bound, report.verdict])
    else:
        for report in reports:
            print(report.to_text())
        passed = sum(report.passed for report in reports)
        mark = '✅' if passed == len(reports) else '❌'
        print(f"\n{mark} 通过 {passed}/{len(reports)} (PASS {passed}/{len(reports)})")

    return EXIT_OK if all(report.passed for report in reports) else EXIT_FAIL


def cmd_demo(args):
    from EulerSeries.quick_demo import quick_demo

    print("\n🚀 运行快速演示...")
    print("🚀 Running quick demo...\n")
    reports = quick_demo()
    print("\n✅ 快速演示完成！")
    print("✅ Quick demo completed!\n")
    return EXIT_OK if all(report.passed for report in reports) else EXIT_FAIL


def cmd_figures(args):
    from NumericOracles.convergence_experiments import ConvergenceExperiments

    config = _config(args)
    print("\n🚀 运行收敛实验...")
    print("🚀 Running convergence experiments...\n")
    ConvergenceExperiments(k_max=config.k_max, output_dir=args.output).run_all_experiments()
    print(f"\n✅ 收敛实验完成！查看 {args.output}/ 目录")
    print(f"✅ Convergence experiments completed! Check {args.output}/ folder\n")
    return EXIT_OK


COMMANDS = {
    'eval': cmd_eval,
    'verify': cmd_verify,
    'table': cmd_table,
    'demo': cmd_demo,
    'figures': cmd_figures,
}


def main(argv=None):
    """主函数，返回退出码"""
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv or argv[0] in ('help', 'menu'):
        show_menu()
        return EXIT_OK
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            format='%(levelname)s %(name)s: %(message)s', stream=sys.stderr)
        if args.command is None:
            show_menu()
            return EXIT_OK
        return COMMANDS[args.command](args)
    except EulerSeriesError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
