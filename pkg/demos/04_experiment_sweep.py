"""A small version of the square / torus sweep, with a per-degree summary.

The full sweep is ``kunneth-ph experiment --shape torus --n 5..10``.
"""

from kunneth_ph.experiment import ExperimentConfig, run_experiment, summarize

for shape, n_values in (("square", "5,8,12"), ("torus", "5,7")):
    cfg = ExperimentConfig(shape=shape, n_values=n_values, p_values="1,2,5", seeds="0,1,2")
    results = run_experiment(cfg)
    table = summarize(results)
    print(f"{shape}: mean bottleneck distance over seeds")
    print("   p    n  " + "  ".join(f"H{k:<8d}" for k in range(cfg.max_dim + 1)))
    for p in cfg.p_values:
        for n in cfg.n_values:
            cells = "  ".join(f"{table[(p, n, k)]:<9.4g}" for k in range(cfg.max_dim + 1))
            print(f"{p:4g} {n:4d}  {cells}")
    print()
