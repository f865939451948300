"""Frames, K-frames and weavings in finite dimensions."""
from .errors import FrameError, HypothesisFails
from .frames import (
    BoundsReport,
    FrameFamily,
    KBoundsReport,
    bessel_bound,
    frame_bounds,
    frame_operator,
    kframe_bounds,
)
from .linalg import (
    EigResult,
    PencilProblem,
    hermitian_eig,
    largest_pencil_eig,
    op_norm,
    pinv,
    range_projector,
    smallest_pencil_eig,
    svd,
)
from .theorems import (
    CertificateReport,
    PerturbationParams,
    erasure_constant,
    erasure_woven_cert,
    perturbation_residual,
    perturbed_woven_cert,
    pullback_frame,
    pushforward_frame,
    range_equivalence_k,
    range_equivalence_kstar,
    woven_pullback,
    woven_pushforward,
)
from .weaving import Partition, WeavingReport, kwoven_report, weave, woven_report

__version__ = "0.1.0"
