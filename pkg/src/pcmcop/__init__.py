"""Order-preservation statistics for random pairwise comparison matrices."""

from .cop import (
    CopReport,
    cop_report,
    poip_evaluate,
    pop_evaluate,
    theorem1_count,
    theorem2_count,
)
from .inconsistency import InconsistencyReport, koczkodaj_ki, saaty_ci
from .matrix import (
    DeltaScheme,
    DisturbanceSpec,
    GroundTruthWeights,
    NonPositiveEntry,
    NonSquare,
    OrderTooSmall,
    PCMatrix,
    PCMError,
    ReciprocityViolation,
    consistency_defect,
    generate_consistent,
    make_pcm,
    perturb,
)
from .priority import EigenResult, Method, NoConvergence, PriorityVector, ev_weights, gm_weights
from .simulator import (
    AggregateRow,
    CIBucket,
    ExperimentConfig,
    MatrixRecord,
    aggregate_tables,
    bin_by_ki,
    run_experiment,
)

__version__ = "0.1.0"
