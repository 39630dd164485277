# re-export for convenience
from .graph import (  # noqa
    ChainGraph,
    EdgeKind,
    EndKind,
    GraphLike,
    HybridGraph,
    NodeId,
    Triplex,
    TriplexKind,
    as_hybrid,
)
from .separation import SeparationQuery, Statement, canonical_statement  # noqa
from .marks import BlockEvent, EndMark, MarkedGraph, SeparatorMap  # noqa
from .learning import LearningResult  # noqa
from .gaussian import AmpGaussianParams, ComponentParams, Dataset, FisherZResult  # noqa
from .report import CheckResult, QueryStats, VerificationReport  # noqa
from .cli import CliConfig, OutputFormat  # noqa
