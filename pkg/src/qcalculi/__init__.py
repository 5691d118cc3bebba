"""Exact verification of twisted differential calculi on quantum affine spaces."""

__version__ = "0.1.0"

from .scalar import ParamSet, Scalar
from .algebra import AlgebraElement, MonomialOperator, QMatrix, QuantumAffineAlgebra, TwistedMultiDerivation
from .calculus import DifferentialCalculus, Form, d, form_wedge
from .integral import FreenessData, HomForm, build_freeness, nabla, nabla0, theta, theta_inverse
from .presets import build_preset, manin, quantum_affine
from .results import CheckResult

__all__ = [
    "AlgebraElement", "CheckResult", "DifferentialCalculus", "Form", "FreenessData", "HomForm",
    "MonomialOperator", "ParamSet", "QMatrix", "QuantumAffineAlgebra", "Scalar",
    "TwistedMultiDerivation", "build_freeness", "build_preset", "d", "form_wedge", "manin",
    "nabla", "nabla0", "quantum_affine", "theta", "theta_inverse",
]
