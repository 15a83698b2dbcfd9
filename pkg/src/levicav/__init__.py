"""Optomechanics of dielectric objects levitated in a high-finesse cavity:
couplings, single-photon swap-protocol dynamics, and decoherence budgets.
"""

from .cavity import (BodyGeometry, CavityConfig, ModeField, Rod, Sphere,
                     derived_cavity_quantities, lg_pair_mode, numeric_derivatives,
                     perturbative_shift, tem00_mode)
from .constants import (CODATA, PhysicalConstants, angular_to_hz, hz_to_angular,
                        pa_to_torr, torr_to_pa)
from .environment import (DecoherenceBudget, GasEnvironment, ThermalInput,
                          bulk_temperature, decoherence_budget, decoherence_rates,
                          gas_damping, heating_time_and_bound, quality_factor)
from .pulse import (PhononTrace, PulseProtocol, SuperpositionState,
                    amplification_envelope, conditional_superposition,
                    find_swap_time, phonon_trace)
from .rod import (C1, C2, LGPairProfile, SelfTrapSolution, rod_coupling_constants,
                  rod_frequency_profile, rod_optomech_params,
                  rotation_configuration, solve_self_trap,
                  translation_configuration)
from .scenario import (FeasibilityReport, Scenario, SelfTrapSpec, build_protocol,
                       evaluate_scenario, load_scenario, preset_scenario_dict,
                       scattering_finesse_bound, sweep)
from .sphere import (DielectricObject, DriveConfig, OptomechParams, TweezerConfig,
                     assemble_optomech_params, intracavity_amplitude,
                     sphere_frequency_profile, sphere_linear_coupling,
                     tweezer_trap_frequency)

__version__ = "0.1.0"
