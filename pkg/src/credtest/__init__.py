"""Bayesian hypothesis testing by inversion of credible sets."""

from .conjugate import Scenario, ScenarioKind, posterior_from_data
from .credible import CredibleSet, SetKind, central_interval, contains, credible_bound, hpd_set
from .dist import ContinuousPosterior, Family, ShapeClass, cdf, log_pdf, make_distribution, quantile
from .errors import CredtestError, DataError, DomainError, UnsupportedShapeError
from .power import (
    ComparisonSummary,
    PowerCurve,
    PowerStudyConfig,
    power_study,
    simulate_rejection_rate,
    summarize_comparison,
)
from .special import inv_reg_lower_inc_gamma, log_gamma, reg_lower_inc_gamma
from .testing import (
    Decision,
    EvidenceReport,
    HypothesisRegion,
    MEWLoss,
    ThreeWayDecision,
    central_evidence,
    composite_bayes_test,
    evidence_report,
    expected_posterior_loss_L1,
    fbst_evidence,
    fbst_tangent_set,
    mew_test,
    region_probability,
    three_decision_test,
)

__version__ = "0.1.0"
