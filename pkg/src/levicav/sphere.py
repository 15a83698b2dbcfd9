"""Closed-form sphere couplings and the assembled optomechanical record.

A dielectric sphere in the TEM00 mode, trapped by optical tweezers at the
point of maximum axial slope z0 = c*pi/(4 omega_c0), x0 = y0 = 0. In that
configuration the resonance depends linearly on the axial displacement,
omega_c(z) = omega_c0 + delta + xi0 * (z - z0), with

    xi0   =  omega_c0^2 (eps1 - 1) V / (c d pi W^2)
    delta = -omega_c0   (eps1 - 1) V / (2 d pi W^2)

The drive enhances the single-photon coupling g0 = q_m * xi0 by the root
photon number |alpha|, giving g = |alpha| g0. Only the real permittivity
eps1 enters here; the imaginary part eps2 matters solely for laser
absorption (see the environment module).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .cavity import BodyGeometry, CavityConfig, Rod, Sphere
from .constants import CODATA
from .errors import GeometryError, ValidationError

__all__ = [
    "DielectricObject",
    "TweezerConfig",
    "DriveConfig",
    "OptomechParams",
    "sphere_frequency_profile",
    "sphere_shift_profile",
    "sphere_linear_coupling",
    "tweezer_trap_frequency",
    "intracavity_amplitude",
    "assemble_optomech_params",
    "equilibrium_z",
]


@dataclass(frozen=True)
class DielectricObject:
    """Geometry plus material: density rho and eps_r = eps1 + i eps2."""

    geometry: BodyGeometry
    density_rho: float  # kg/m^3
    eps1: float         # real relative permittivity
    eps2: float = 0.0   # imaginary part (absorption)

    def __post_init__(self) -> None:
        if self.density_rho <= 0.0:
            raise ValidationError("density must be positive")
        if self.eps1 < 1.0:
            raise ValidationError("eps1 must be >= 1")
        if self.eps2 < 0.0:
            raise ValidationError("eps2 must be >= 0")

    @property
    def volume(self) -> float:
        return self.geometry.volume

    @property
    def mass(self) -> float:
        return self.density_rho * self.volume

    @property
    def moment_of_inertia(self) -> float:
        """Rod rotational inertia I = R*L*M/(4 pi) about the cavity axis."""
        shape = self.geometry.shape
        if not isinstance(shape, Rod):
            raise GeometryError("moment of inertia is defined for rods only")
        return shape.radius * shape.arc_L * self.mass / (4.0 * math.pi)


@dataclass(frozen=True)
class TweezerConfig:
    intensity_I0: float  # W/m^2
    waist_W0: float      # m

    def __post_init__(self) -> None:
        if self.intensity_I0 <= 0.0 or self.waist_W0 <= 0.0:
            raise ValidationError("tweezer intensity and waist must be positive")


@dataclass(frozen=True)
class DriveConfig:
    """Cavity drive laser: power, frequency, and detuning Delta = omega_c - omega_L.

    detuning_Delta=None selects the red sideband Delta = omega_t when the
    record is assembled.
    """

    power_P: float          # W
    laser_omega_L: float    # rad/s
    detuning_Delta: Optional[float] = None  # rad/s

    def __post_init__(self) -> None:
        if self.power_P < 0.0:
            raise ValidationError("drive power must be non-negative")
        if self.laser_omega_L <= 0.0:
            raise ValidationError("laser frequency must be positive")


@dataclass(frozen=True)
class OptomechParams:
    """Full coupling record for one trapped-object scenario.

    ``zm`` is the ground-state size of the cooled coordinate: meters for
    translations, radians for rotations (then ``xi0`` is rad/(s rad) and
    the mass under the square root is the moment of inertia).
    """

    omega_t: float     # rad/s
    xi0: float         # rad/(s m) or rad/(s rad)
    zm: float          # m or rad
    g0: float          # rad/s
    alpha_abs: float   # sqrt(photon number)
    g: float           # rad/s
    delta_shift: float  # rad/s
    beta: float        # displaced-frame mechanical offset, dimensionless
    detuning: float    # rad/s


def _require_sphere(obj: DielectricObject) -> Sphere:
    shape = obj.geometry.shape
    if not isinstance(shape, Sphere):
        raise GeometryError("this operation is defined for spheres only")
    return shape


def equilibrium_z(cfg: CavityConfig) -> float:
    """Maximum-slope point of the axial standing wave, c*pi/(4 omega_c0)."""
    return CODATA.c * math.pi / (4.0 * cfg.omega_c0)


def sphere_shift_profile(obj: DielectricObject, cfg: CavityConfig,
                         pos: tuple[float, float, float]) -> float:
    """Resonance shift omega_c(pos) - omega_c0 in rad/s (carrier removed).

    Same closed form as sphere_frequency_profile but without the bare
    frequency riding on top, so finite differences of this profile are
    limited only by the shift's own float64 precision.
    """
    sphere = _require_sphere(obj)
    W = cfg.waist_W
    if sphere.radius >= W:
        raise GeometryError("profile requires sphere radius below the waist")
    x, y, z = pos
    W2 = W * W
    return (-cfg.omega_c0 * obj.volume * (obj.eps1 - 1.0)
            * (W2 - 2.0 * (x * x + y * y))
            * math.cos(cfg.wavenumber * z) ** 2
            / (math.pi * W2 * W2 * cfg.length_d))


def sphere_frequency_profile(obj: DielectricObject, cfg: CavityConfig,
                             pos: tuple[float, float, float]) -> float:
    """Resonance frequency (rad/s) with the sphere centered at pos=(x,y,z).

    Small-sphere closed form, valid for radius below the waist and
    positions near the cavity center.
    """
    return cfg.omega_c0 + sphere_shift_profile(obj, cfg, pos)


def sphere_linear_coupling(obj: DielectricObject, cfg: CavityConfig) -> tuple[float, float]:
    """(xi0, delta): linear coupling and static shift at the equilibrium.

    Closed forms for the sphere held on axis at z0 = c*pi/(4 omega_c0).
    """
    sphere = _require_sphere(obj)
    if sphere.radius >= cfg.waist_W:
        raise GeometryError("coupling formulas require sphere radius below the waist")
    common = obj.volume * (obj.eps1 - 1.0) / (cfg.length_d * math.pi * cfg.waist_W**2)
    xi0 = cfg.omega_c0**2 / CODATA.c * common
    delta = -0.5 * cfg.omega_c0 * common
    return xi0, delta


def tweezer_trap_frequency(obj: DielectricObject, tw: TweezerConfig) -> float:
    """Rayleigh-regime tweezer trap frequency (rad/s) for a dielectric sphere.

    omega_t = sqrt[(6/(rho c)) ((eps1-1)/(eps1+2)) I0/W0^2]; requires
    eps1 > 1 (no gradient force otherwise).
    """
    if obj.eps1 <= 1.0:
        raise ValidationError("gradient trapping requires eps1 > 1")
    omega_sq = (6.0 / (obj.density_rho * CODATA.c)
                * (obj.eps1 - 1.0) / (obj.eps1 + 2.0)
                * tw.intensity_I0 / tw.waist_W0**2)
    return math.sqrt(omega_sq)


def intracavity_amplitude(drive: DriveConfig, kappa: float,
                          detuning: Optional[float] = None) -> tuple[float, float]:
    """(|E|, |alpha|): drive strength and steady coherent amplitude.

    |E| = sqrt(2 P kappa / hbar omega_L);  |alpha| = |E| / sqrt(Delta^2 + kappa^2).
    ``detuning`` overrides the drive record's Delta (and must be supplied
    if the record defers to the red sideband).
    """
    if kappa <= 0.0:
        raise ValidationError("kappa must be positive")
    delta = drive.detuning_Delta if detuning is None else detuning
    if delta is None:
        raise ValidationError("detuning unresolved: pass one or set it on the drive")
    e_abs = math.sqrt(2.0 * drive.power_P * kappa / (CODATA.hbar * drive.laser_omega_L))
    alpha_abs = e_abs / math.hypot(delta, kappa)
    return e_abs, alpha_abs


def assemble_optomech_params(obj: DielectricObject, cfg: CavityConfig,
                             omega_t: float, drive: DriveConfig,
                             xi0: Optional[float] = None,
                             delta_shift: Optional[float] = None,
                             inertia: Optional[float] = None,
                             alpha_abs: Optional[float] = None) -> OptomechParams:
    """Build the full OptomechParams record from its ingredients.

    The trap-frequency source is pluggable (tweezer formula or a
    self-trapping solution); xi0/delta default to the sphere closed forms.
    ``inertia`` switches the zero-point scale to the rotational
    sqrt(hbar/(2 I omega_t)); ``alpha_abs`` bypasses the drive-based
    amplitude (used by the self-trapped rod path).
    """
    if omega_t <= 0.0:
        raise ValidationError("trap frequency must be positive")
    if xi0 is None or delta_shift is None:
        xi0_s, delta_s = sphere_linear_coupling(obj, cfg)
        xi0 = xi0_s if xi0 is None else xi0
        delta_shift = delta_s if delta_shift is None else delta_shift
    detuning = drive.detuning_Delta if drive.detuning_Delta is not None else omega_t
    if alpha_abs is None:
        _, alpha_abs = intracavity_amplitude(drive, cfg.kappa, detuning)
    mass_like = obj.mass if inertia is None else inertia
    zm = math.sqrt(CODATA.hbar / (2.0 * mass_like * omega_t))
    g0 = zm * xi0
    g = alpha_abs * g0
    beta = -zm * xi0 * alpha_abs**2 / omega_t
    return OptomechParams(omega_t=omega_t, xi0=xi0, zm=zm, g0=g0,
                          alpha_abs=alpha_abs, g=g, delta_shift=delta_shift,
                          beta=beta, detuning=detuning)
