"""Random quasimodes stay uniformly bounded under the glancing weight.

Take every disk eigenmode with frequency in [Lambda, Lambda+1], combine
them with random unit-norm complex Gaussian coefficients, and weight the
trace components with the glancing weight (s = 0.3, rho = 2/3, cutoff at
sigma ~ h^rho).  The weighted restricted norm neither grows nor decays as
Lambda increases over a decade — the boundedness that a single glancing
mode would violate without the weight.

The mode count per window doubles as Lambda doubles (two-term Weyl law for
the half-line of each angular order), which the experiment cross-checks.
"""

from glancelab import experiments


def main():
    res = experiments.quasimode_boundedness(lam_lo=200.0, lam_hi=2000.0,
                                            windows=8, trials=20, seed=2025)
    print("s = %.2f, rho = %.3f, %d trials per window, seed %d" %
          (res.spec.s, res.spec.rho, res.trials, res.seed))
    print()
    print("%10s %8s %10s %12s %12s" %
          ("Lambda", "slots", "Weyl", "max norm", "mean norm"))
    for row in res.rows:
        print("%10.1f %8d %10.1f %12.4f %12.4f" %
              (row.lam, row.dim, row.weyl_estimate, row.max_norm,
               row.mean_norm))
    fit = res.fit()
    print()
    print("fitted slope %+.4f, max/min ratio %.3f  (flat = bounded)" %
          (fit.slope, res.spread))


if __name__ == "__main__":
    main()
