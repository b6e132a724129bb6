from .branches import (
    FocusBranch,
    TangencyReport,
    focus_branches,
    focus_sweep_rank,
    same_locus,
    swept_tangent,
    symbolic_focal_form,
    verify_focal_tangency,
)
from .charmatrix import (
    CharMatrix,
    FocalDivisor,
    QuotientBasis,
    TangentEnvelope,
    TangentHom,
    characteristic_matrix,
    df_rank_oracle,
    embedded_tangent,
    fixed_tangent_space,
    focal_divisor,
    tangent_envelope,
    theoremB_matrix,
)
from .homs import RankOneHoms, Witness, check_witness, multiplicity_witness, rank_one_homs
