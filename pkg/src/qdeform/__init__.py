"""Deformed q-arithmetic: q-operations, q-numbers, the diamond product,
the a-/k-algebras, a law checker and q-Pascal triangles."""

from .core_ops import DeformParam, q_exp, q_inverse, q_log, q_opposite, q_product, q_sum
from .diamond import diamond, diamond_inverse, phi, phi_inverse
from .errors import DomainError, QDeformError, ResourceError, UnsupportedError
from .qnumbers import (
    QNumber,
    from_qnumber,
    heine,
    int_sequence,
    limit_of,
    nat_sequence,
    successor,
    to_qnumber,
)

__version__ = "0.1.0"
