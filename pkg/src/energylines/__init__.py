"""Work extraction at the output of bosonic Gaussian channels."""

from .channels import (
    GaussianChannel,
    additive_noise,
    amplified_squeezer,
    amplifier,
    apply,
    attenuated_squeezer,
    compose,
    direct_sum,
    identity,
    is_phase_insensitive,
    lossy,
    squeezer,
)
from .optimize import NormalFormChannel, OptimizationResult, asymptotic_ratio, maximize, normalize
from .states import (
    GaussianPureParam,
    GaussianState,
    coherent,
    coherent_with_energy,
    displaced_squeezed_thermal,
    mean_energy,
    thermal,
    vacuum,
    von_neumann_entropy,
)
from .work import (
    WorkReport,
    ergotropy_one_mode,
    free_energy,
    passive_energy_one_mode,
    pi_max_ergotropy,
    total_ergotropy,
    work_report,
)
