"""
收敛实验
画出截断误差 |S_K - 闭式| 随 K 的变化，并与尾部界对比
"""
import logging
import os

import numpy as np
import matplotlib
matplotlib.use('Agg')  # 使用非交互式后端
import matplotlib.pyplot as plt
from matplotlib.gridspec import GridSpec

from EulerSeries.closed_forms import Family, SeriesSpec, evaluate
from EulerSeries.zeta_expr import expr_eval, render_text

from .summation import series_tail_bound, series_terms
from .verification import ACCEPTANCE_GRID

logger = logging.getLogger(__name__)

# 设置中文字体支持
plt.rcParams['font.sans-serif'] = ['SimHei', 'DejaVu Sans']
plt.rcParams['axes.unicode_minus'] = False


class ConvergenceExperiments:
    """截断求和收敛实验类"""

    def __init__(self, k_max=100_000, points=25, output_dir='output'):
        self.k_max = k_max
        self.output_dir = output_dir
        self.checkpoints = np.unique(np.logspace(1, np.log10(k_max), points).astype(int))

    def convergence_curve(self, spec):
        """
        单个级数的收敛曲线

        返回:
            dict: k, error (|S_K - 闭式|), bound (尾部界), reference (闭式数值)
        """
        ks, terms, _ = series_terms(spec, self.k_max)
        partial = np.cumsum(terms)
        reference = float(expr_eval(evaluate(spec), 30).value)
        first = spec.first_index()
        checkpoints = self.checkpoints[self.checkpoints >= first]
        errors = np.abs(partial[checkpoints - first] - reference)
        bounds = np.array([series_tail_bound(spec, int(k)).bound for k in checkpoints])
        return {'k': checkpoints, 'error': errors, 'bound': bounds, 'reference': reference}

    def _save(self, fig, name):
        output_path = os.path.join(self.output_dir, name)
        os.makedirs(os.path.dirname(output_path), exist_ok=True)
        fig.savefig(output_path, dpi=150, bbox_inches='tight')
        print(f"\n图表已保存: {output_path}")
        plt.close(fig)
        return output_path

    def _plot_curve(self, ax, curve, label, color):
        ax.loglog(curve['k'], np.maximum(curve['error'], 1e-18), 'o-', color=color, label=f'{label} 误差', linewidth=2)
        ax.loglog(curve['k'], curve['bound'], '--', color=color, alpha=0.7, label=f'{label} 尾部界')
        ax.set_xlabel('截断项数 K', fontsize=12)
        ax.set_ylabel('绝对误差', fontsize=12)
        ax.grid(True, alpha=0.3, which='both')
        ax.legend(fontsize=9)

    def experiment_zeta2(self):
        """
        实验1: Σ H_k/(k(k+1)) = ζ(2)
        误差约为 ln K / K，尾部界同阶
        """
        print("=" * 60)
        print("实验1: Σ H_k/(k(k+1)) → ζ(2)")
        print("=" * 60)
        spec = SeriesSpec(Family.SIGMA, n=1, p=1)
        curve = self.convergence_curve(spec)
        self._report(spec, curve)

        fig, ax = plt.subplots(figsize=(9, 6))
        self._plot_curve(ax, curve, 'σ_1(1)', 'tab:blue')
        ax.set_title('Σ H_k/(k(k+1)) 收敛到 ζ(2)', fontsize=14, fontweight='bold')
        curve['path'] = self._save(fig, 'convergence_zeta2.png')
        return curve

    def experiment_zeta3(self):
        """
        实验2: 2·Σ W_2(k)/(k(k+1)(k+2)) = 2ζ(3)
        W_2(k) ~ k(ln k)^2，误差约为 (ln K)^2 / K
        """
        print("\n" + "=" * 60)
        print("实验2: τ_2(2) = 2·Σ W_2(k)/(k(k+1)(k+2)) → 2ζ(3)")
        print("=" * 60)
        spec = SeriesSpec(Family.TAU, n=2, p=2)
        curve = self.convergence_curve(spec)
        self._report(spec, curve)

        fig, ax = plt.subplots(figsize=(9, 6))
        self._plot_curve(ax, curve, 'τ_2(2)', 'tab:red')
        ax.set_title('调和卷积级数收敛到 2ζ(3)', fontsize=14, fontweight='bold')
        curve['path'] = self._save(fig, 'convergence_zeta3.png')
        return curve

    def experiment_jordan(self, orders=(1, 2, 3, 4, 5)):
        """
        实验3: Σ [k over m]/(k!·k) = ζ(m+1)
        Stirling比值用浮点递推生成
        """
        print("\n" + "=" * 60)
        print("实验3: Σ [k over m]/(k!·k) → ζ(m+1)")
        print("=" * 60)
        fig, ax = plt.subplots(figsize=(9, 6))
        colors = plt.cm.viridis(np.linspace(0, 0.9, len(orders)))
        curves = {}
        for m, color in zip(orders, colors):
            spec = SeriesSpec(Family.RHO, n=0, m=m)
            curve = self.convergence_curve(spec)
            self._report(spec, curve)
            self._plot_curve(ax, curve, f'm={m}', color)
            curves[m] = curve
        ax.set_title('Stirling数级数收敛到 ζ(m+1)', fontsize=14, fontweight='bold')
        path = self._save(fig, 'convergence_jordan.png')
        return {'curves': curves, 'path': path}

    def experiment_bound_doubling(self, k=1000):
        """
        实验4: 倍增检验 |S(2K) - S(K)| <= TailBound(K)
        对验收网格中每个实例画出比值，比值应小于1
        """
        print("\n" + "=" * 60)
        print(f"实验4: 尾部界倍增检验 (K = {k})")
        print("=" * 60)
        labels, ratios = [], []
        for spec in ACCEPTANCE_GRID:
            if k < spec.first_index():
                continue
            _, terms, _ = series_terms(spec, 2 * k)
            first = spec.first_index()
            increment = abs(float(np.sum(terms[k - first + 1:])))
            ratios.append(increment / series_tail_bound(spec, k).bound)
            labels.append(spec.label())
        ratios = np.array(ratios)
        print(f"  最大比值: {ratios.max():.3f} (应 < 1)")

        fig = plt.figure(figsize=(14, 6))
        gs = GridSpec(1, 1, figure=fig)
        ax = fig.add_subplot(gs[0, 0])
        x_pos = np.arange(len(labels))
        ax.bar(x_pos, ratios, alpha=0.7, color='green', edgecolor='black')
        ax.axhline(y=1.0, color='r', linestyle='--', linewidth=2, label='界')
        ax.set_xticks(x_pos)
        ax.set_xticklabels(labels, rotation=90, fontsize=7)
        ax.set_ylabel('|S(2K) - S(K)| / TailBound(K)', fontsize=12)
        ax.set_title('尾部界的倍增检验', fontsize=14, fontweight='bold')
        ax.grid(True, alpha=0.3, axis='y')
        ax.legend()
        path = self._save(fig, 'tail_bound_doubling.png')
        return {'labels': labels, 'ratios': ratios, 'path': path}

    def run_all_experiments(self):
        """运行所有实验"""
        print("\n" + "=" * 60)
        print("截断求和收敛实验")
        print("=" * 60)
        results = {
            'zeta2': self.experiment_zeta2(),
            'zeta3': self.experiment_zeta3(),
            'jordan': self.experiment_jordan(),
            'doubling': self.experiment_bound_doubling(),
        }
        print("\n" + "=" * 60)
        print("所有实验完成!")
        print("=" * 60)
        return results

    def _report(self, spec, curve):
        print(f"\n{spec.label()} = {render_text(evaluate(spec))} ≈ {curve['reference']:.12f}")
        print(f"  K = {curve['k'][-1]}: 误差 {curve['error'][-1]:.3e}, 尾部界 {curve['bound'][-1]:.3e}")
        logger.debug("%s: %d checkpoints", spec.label(), len(curve['k']))


if __name__ == "__main__":
    experiments = ConvergenceExperiments()
    experiments.run_all_experiments()
