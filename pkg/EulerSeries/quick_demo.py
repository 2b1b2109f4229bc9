"""
快速演示脚本 - 几个经典级数的闭式与数值核对
"""
from fractions import Fraction

from .closed_forms import Family, SeriesSpec, chi_expanded_k_k2, delta_integral, delta_recursive, evaluate
from .zeta_expr import expr_eval, render_text

DEMO_SPECS = [
    SeriesSpec(Family.SIGMA, n=1, p=2),
    SeriesSpec(Family.DELTA, n=2, p=3),
    SeriesSpec(Family.CHI, p=1, n=1, m=2),
    SeriesSpec(Family.TAU, n=2, p=2),
    SeriesSpec(Family.RHO, n=0, m=2),
    SeriesSpec(Family.MU, p=2, r=Fraction(1, 2)),
]


def quick_demo(digits=20, k_max=20_000):
    """快速演示: 闭式、数值、截断求和核对"""
    from NumericOracles.verification import verify

    print("=" * 60)
    print("Euler型级数快速演示")
    print("=" * 60)

    print("\n闭式求值:")
    for spec in DEMO_SPECS:
        expr = evaluate(spec)
        value = expr_eval(expr, digits)
        print(f"  {spec.label():<24} = {render_text(expr)}")
        print(f"  {'':<24} ≈ {value}")

    print("\nδ 的两条推导路线:")
    for n, p in [(1, 2), (2, 3), (3, 4)]:
        same = delta_integral(n, p) == delta_recursive(n, p)
        print(f"  δ_{n}({p}): 积分路线 {'=' if same else '≠'} 递推路线  →  {render_text(delta_recursive(n, p))}")

    print("\nχ(p; 0, 2) 的交错展开:")
    for p in (2, 3):
        print(f"  p={p}: {render_text(chi_expanded_k_k2(p))}")

    print(f"\n截断求和核对 (k_max = {k_max}):")
    reports = [verify(spec, k_max, digits) for spec in DEMO_SPECS]
    for report in reports:
        print(f"  {report.verdict}  {report.spec.label():<24} oracle {report.oracle_value} ± {report.oracle_bound}")

    print("\n" + "=" * 60)
    print("演示完成!")
    print("=" * 60)
    return reports


if __name__ == "__main__":
    quick_demo()
