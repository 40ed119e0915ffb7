from pydantic import BaseModel, ConfigDict, PositiveFloat, model_validator
from scipy import constants as sc


class PhysicalConstants(BaseModel):
    """SI constants used by every calculation (CODATA values via scipy)."""

    model_config = ConfigDict(frozen=True)

    eps0: PositiveFloat
    mu0: PositiveFloat
    c: PositiveFloat
    hbar: PositiveFloat
    kB: PositiveFloat

    @model_validator(mode="after")
    def check_light_speed(self):
        c_from_vacuum = (self.eps0 * self.mu0) ** -0.5
        if abs(c_from_vacuum - self.c) > 1e-12 * self.c:
            raise ValueError(
                f"c={self.c} inconsistent with 1/sqrt(eps0*mu0)={c_from_vacuum}"
            )
        return self


CONSTANTS = PhysicalConstants(
    eps0=sc.epsilon_0,
    mu0=sc.mu_0,
    c=sc.c,
    hbar=sc.hbar,
    kB=sc.k,
)
