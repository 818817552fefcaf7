"""shocklab: numerics for the critically scaled TASEP shock limit process.

Layers, bottom to top:

* :mod:`shocklab.specfun` -- Airy function, Gauss-Legendre rules,
  Chebyshev interpolation;
* :mod:`shocklab.kernel` -- the extended shock kernel and its
  single-time reduction, with overflow-safe matrix assembly;
* :mod:`shocklab.fredholm` -- Fredholm determinants of trace-class
  restrictions by Nystrom discretization;
* :mod:`shocklab.dist` -- distribution functions, moments, and distance
  diagnostics of the limit process marginals;
* :mod:`shocklab.tasep_sim` / :mod:`shocklab.lpp_sim` -- Monte Carlo of
  the particle system and of directed last-passage percolation, used to
  validate the analytic predictions;
* :mod:`shocklab.cli` -- command-line entry points.
"""

__version__ = "0.1.0"

__all__ = ["__version__"]
