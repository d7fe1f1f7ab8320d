"""Bruhat and secondary Bruhat orders on classes of (0,1)-matrices."""

from .matrix import (
    BinaryMatrix, InterchangePos, Pattern, SigmaMatrix, apply_interchange,
    block_assemble, complement_rotate, direct_sum, entrywise_geq, sigma,
    submatrix_type,
)
from .partitions import (
    Partition, conjugate, dominance_leq, gale_ryser_feasible, ryser_witness,
    sort_desc, special_margin, verify_lemma_family,
)
from .enumeration import ClassSpec, ClassTooLarge, count, enumerate_class
from .orders import (
    BudgetExhausted, ClassPoset, CoverWitness, HasseDiagram, bruhat_leq,
    build_hasse, secondary_cover_check, secondary_leq,
)

__version__ = "0.1.0"
