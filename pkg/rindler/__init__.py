"""
Rindler - relative entropy of coherence for field modes under acceleration.

Scalar (bosonic) and Dirac (fermionic) field modes shared between an inertial
observer and a uniformly accelerated one.
"""

from rindler.core import (
    CoherenceReport,
    DensityMatrix,
    ProbVector,
    rel_ent_coherence_matrix,
    shannon_entropy,
    von_neumann_entropy,
)
from rindler.dirac import dirac_coherence, dirac_coherence_loss, dirac_limit_coherence
from rindler.errors import (
    BracketError,
    OutputError,
    RindlerError,
    ToleranceInfeasibleError,
    ValidationError,
)
from rindler.frames import DiracFrame, FieldKind, PhysicalParams, ScalarFrame
from rindler.scalar import evaluate_scalar, scalar_coherence, scalar_limit_coherence

__version__ = "1.0.0"
