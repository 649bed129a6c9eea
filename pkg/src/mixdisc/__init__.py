"""Exact mixed discriminants, linear Hodge-index tools and equality cases
of the Alexandrov / Khovanskii-Teissier inequalities."""

__version__ = "0.1.0"

from .errors import HypothesisError, InputError, MixdiscError, PreconditionError
from .exact import (
    GaussianRational,
    HermitianMatrix,
    decompose_in_basis,
    det,
    hermitian_basis,
    recompose,
)
from .hodge import (
    functional,
    gram,
    hodge_index_check,
    lefschetz,
    primitive_space,
    signature_on,
    zero_vector_check,
)
from .mixed import NORMALIZATION, mixed_disc, mixed_disc_multi, mixed_disc_oracle
from .positivity import ConeQuery, cone_gamma_membership, is_psd, m_positivity_check
from .teissier import (
    EqualityQuery,
    Mode,
    Tag,
    Verdict,
    alexandrov_verify,
    classify_equality,
    counterexample_generate,
    kt_torus_verify,
    sk_chain,
)

__all__ = [
    "ConeQuery",
    "EqualityQuery",
    "GaussianRational",
    "HermitianMatrix",
    "HypothesisError",
    "InputError",
    "MixdiscError",
    "Mode",
    "NORMALIZATION",
    "PreconditionError",
    "Tag",
    "Verdict",
    "alexandrov_verify",
    "classify_equality",
    "cone_gamma_membership",
    "counterexample_generate",
    "decompose_in_basis",
    "det",
    "functional",
    "gram",
    "hermitian_basis",
    "hodge_index_check",
    "is_psd",
    "kt_torus_verify",
    "lefschetz",
    "m_positivity_check",
    "mixed_disc",
    "mixed_disc_multi",
    "mixed_disc_oracle",
    "primitive_space",
    "recompose",
    "signature_on",
    "sk_chain",
    "zero_vector_check",
]
