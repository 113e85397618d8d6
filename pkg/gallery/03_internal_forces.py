"""Internal force diagrams of the 3-2-4 frame.

Prints a few stations per element and, when matplotlib is installed,
draws the bending moment diagram to ``gallery/output/moment_324.png``.
"""
from pathlib import Path

import numpy as np

import frameforge as ff

HERE = Path(__file__).resolve().parent

model = ff.build_model(ff.parse_problem((HERE / "inputs" / "irregular_324.frame").read_text()))
sol = ff.solve(model, n_samples=21)

residual, scale = ff.solver.equilibrium_residual(model, sol)
print(f"global equilibrium residual: {np.abs(residual).max() / scale:.1e} (relative)")

for e in model.elements[:4]:
    axial, shear, moment = zip(*sol.diagrams[e.id])
    print(f"element {e.id:>2} ({e.kind}): N {axial[0]:8.2f}..{axial[-1]:8.2f}  "
          f"V {shear[0]:8.2f}..{shear[-1]:8.2f}  M {moment[0]:8.2f}..{moment[-1]:8.2f}")

try:
    import matplotlib
except ImportError:
    print("matplotlib not installed; skipping the plot")
else:
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    nodes = model.node_map()
    peak = max(abs(m) for d in sol.diagrams.values() for _, _, m in d)
    fig, ax = plt.subplots(figsize=(7, 6))
    for e in model.elements:
        a, b = nodes[e.end_i], nodes[e.end_j]
        ax.plot([a.x, b.x], [a.y, b.y], color="0.3", lw=1.5)
        # Offset each station along the local y axis, scaled so the peak is 1 m.
        L = np.hypot(b.x - a.x, b.y - a.y)
        c, s = (b.x - a.x) / L, (b.y - a.y) / L
        t = np.linspace(0.0, 1.0, len(sol.diagrams[e.id]))
        m = np.array([st[2] for st in sol.diagrams[e.id]]) / peak
        ax.fill(np.r_[a.x + t * (b.x - a.x) - s * m, b.x, a.x],
                np.r_[a.y + t * (b.y - a.y) + c * m, b.y, a.y], alpha=0.4, color="tab:red", lw=0)
    ax.set_aspect("equal")
    ax.set_title(f"bending moment, peak {peak:.1f} {model.units.force_unit}-{model.units.length_unit}")
    out = HERE / "output"
    out.mkdir(exist_ok=True)
    fig.savefig(out / "moment_324.png", dpi=120)
    print(f"wrote {(out / 'moment_324.png').relative_to(HERE)}")
