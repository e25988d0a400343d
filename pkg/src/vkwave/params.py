"""Material and geometric constants of an isotropic elastic plate."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError


@dataclass(frozen=True)
class PlateParams:
    """Plate constants plus the derived stiffnesses.

    ``bending_rigidity`` is E h^3 / (12 (1 - nu^2)) and
    ``membrane_stiffness`` is E h; both appear throughout the governing
    equations, so they are computed once here.
    """

    youngs_modulus: float
    poisson_ratio: float
    thickness: float
    areal_density: float
    bending_rigidity: float
    membrane_stiffness: float

    @property
    def D(self) -> float:
        return self.bending_rigidity

    @property
    def Eh(self) -> float:
        return self.membrane_stiffness

    @property
    def nu(self) -> float:
        return self.poisson_ratio

    @property
    def rho(self) -> float:
        return self.areal_density


def make_plate_params(
    youngs_modulus: float,
    poisson_ratio: float,
    thickness: float,
    areal_density: float,
) -> PlateParams:
    """Validate the raw constants and derive the stiffnesses.

    Requires E > 0, -1 < nu < 0.5, h > 0, rho > 0; every value must be
    finite.  Raises :class:`ValidationError` naming the offending field.
    """
    fields = {
        "youngs_modulus": youngs_modulus,
        "poisson_ratio": poisson_ratio,
        "thickness": thickness,
        "areal_density": areal_density,
    }
    for name, value in fields.items():
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ValidationError(f"{name} must be a real number, got {value!r}")
        if not math.isfinite(value):
            raise ValidationError(f"{name} must be finite, got {value!r}")
    if youngs_modulus <= 0:
        raise ValidationError(f"youngs_modulus must be positive, got {youngs_modulus}")
    if not -1.0 < poisson_ratio < 0.5:
        raise ValidationError(
            f"poisson_ratio must lie in (-1, 0.5), got {poisson_ratio}"
        )
    if thickness <= 0:
        raise ValidationError(f"thickness must be positive, got {thickness}")
    if areal_density <= 0:
        raise ValidationError(f"areal_density must be positive, got {areal_density}")

    e, nu, h = float(youngs_modulus), float(poisson_ratio), float(thickness)
    return PlateParams(
        youngs_modulus=e,
        poisson_ratio=nu,
        thickness=h,
        areal_density=float(areal_density),
        bending_rigidity=e * h**3 / (12.0 * (1.0 - nu**2)),
        membrane_stiffness=e * h,
    )
