"""daycast: day-ahead forecasting algorithms behind one fit/forecast interface.

Eight method families (polynomial and ridge regression, RBF networks,
smoothing splines, kernel regression, seasonal ARIMA, regression trees
with bagging and periodic prototypes, and online TD(lambda) prediction
over tile-coded features) plus the shared evaluation protocol: training
RMSE and consecutive-in-band forecast counts over a one-day holdout.
"""

__version__ = "0.1.0"

from .arima import (ArimaModel, ArimaOrder, ExpandedForm, acf_pacf, css_estimate,
                    difference, expand_polynomials, forecast, simulate)
from .errors import (ConfigError, DaycastError, EstimationError, InstabilityError,
                     NoSupportError, SingularSystemError, Tmy3ParseError,
                     UnderdeterminedError, ZeroVarianceError)
from .evalharness import (Band, EvalReport, compare, consecutive_within, rmse,
                          run_single)
from .fixtures import FixtureSet, dni48, fixture, load_fixtures, temp48, wind48
from .linmodels import (BasisFunction, Constant, GaussianBump, LinearFit, Monomial,
                        RbfConfig, Sinusoid, design_matrix, fit_basis, fit_polynomial,
                        fit_rbf, linear_predict, solve_ridge)
from .nexting import (AlignResult, Features, NextingLearner, NextingRun, TileCoder,
                      align_affine, ideal_return, run_online, td_step, tile_features)
from .series import Series, Split, make_sine, normalize_unit, split
from .smoothers import (KernelConfig, SplineFit, default_bandwidth, fit_smoothing_spline,
                        kernel_predict, spline_predict)
from .tmy3 import Tmy3Record, parse_tmy3
from .tree import (BagEnsemble, BestSplit, GrowConfig, PeriodicWrapper, Tree, bag_fit,
                   best_split, fit_periodic_ensemble, grow, periodic_predict, prune)

__all__ = [name for name in dir() if not name.startswith("_")]
