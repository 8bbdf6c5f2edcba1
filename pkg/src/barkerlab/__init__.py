"""barkerlab: exact analysis and desk-scale search for binary ±1 sequences
with small aperiodic autocorrelation.

The package is organized around five concerns: sequence representation and
run structure (``sequence``), exact correlation figures (``correlation``),
the classical identities odd-length Barker sequences satisfy (``lemmas``),
the run-structure machinery that pins odd Barker lengths to {3,5,7,11,13}
(``oddproof``), and exhaustive/pruned search (``search``). Hot kernels run
from a compiled extension when available and fall back to pure Python
(``kernels``); behaviour is identical either way.
"""

from barkerlab.catalogue import BARKER_LENGTHS, KNOWN_BARKER, catalogue_sequences
from barkerlab.correlation import (
    CorrelationProfile,
    acf,
    acf_reference,
    periodic_acf,
    product_identity_holds,
    psl,
)
from barkerlab.errors import (
    BarkerLabError,
    BudgetExceededError,
    GuardRailError,
    InvariantViolationError,
    ParseError,
    UsageError,
)
from barkerlab.kernels import IMPLEMENTATION as KERNEL_IMPLEMENTATION
from barkerlab.lemmas import (
    LemmaReport,
    check_congruences,
    check_doubling,
    check_skew_symmetry,
    full_report,
    is_barker,
)
from barkerlab.oddproof import (
    BoundsVerdict,
    CaseVerdict,
    Lemma2Verdict,
    Lemma3Breakdown,
    ScanRow,
    bounds_chain,
    classify_case,
    lemma2_check,
    lemma3_breakdown,
    structured_skew_sequence,
    theorem_scan,
)
from barkerlab.search import (
    RangeSummary,
    SearchOutcome,
    search_barker,
    search_min_psl,
    verify_range,
)
from barkerlab.sequence import (
    BinarySequence,
    RunProfile,
    TransformParams,
    canonicalize,
    parse,
    reverse,
    runs,
    sequence_from_runs,
    transform,
)

__version__ = "0.1.0"

__all__ = [
    "BARKER_LENGTHS",
    "KNOWN_BARKER",
    "KERNEL_IMPLEMENTATION",
    "BarkerLabError",
    "BinarySequence",
    "BoundsVerdict",
    "BudgetExceededError",
    "CaseVerdict",
    "CorrelationProfile",
    "GuardRailError",
    "InvariantViolationError",
    "Lemma2Verdict",
    "Lemma3Breakdown",
    "LemmaReport",
    "ParseError",
    "RangeSummary",
    "RunProfile",
    "ScanRow",
    "SearchOutcome",
    "TransformParams",
    "UsageError",
    "acf",
    "acf_reference",
    "bounds_chain",
    "canonicalize",
    "catalogue_sequences",
    "check_congruences",
    "check_doubling",
    "check_skew_symmetry",
    "classify_case",
    "full_report",
    "is_barker",
    "lemma2_check",
    "lemma3_breakdown",
    "parse",
    "periodic_acf",
    "product_identity_holds",
    "psl",
    "reverse",
    "runs",
    "search_barker",
    "search_min_psl",
    "sequence_from_runs",
    "structured_skew_sequence",
    "theorem_scan",
    "transform",
    "verify_range",
]
