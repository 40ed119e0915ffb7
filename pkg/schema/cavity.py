import warnings

import numpy as np
from pydantic import BaseModel, ConfigDict, NonNegativeFloat, PositiveFloat, model_validator

from casimir.errors import DiluteGapWarning
from materials.permittivity import (
    IdealMetal,
    PermittivityModel,
    WallModel,
    ZeroFrequencyClass,
    eval_permittivity,
    zero_frequency_class,
)

# Imaginary frequencies (rad/s) sampled for the dilute-gap check.
DILUTE_CHECK_GRID = np.logspace(9, 19, 41)


class CavitySpec(BaseModel):
    """Symmetric wall | gap | wall cavity. `gap` is eps1, `wall` is eps2."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    a: PositiveFloat  # gap width, m
    T: NonNegativeFloat  # K
    wall: WallModel
    gap: PermittivityModel
    check_dilute_gap: bool = True

    @model_validator(mode="after")
    def check_gap_medium(self):
        if (
            zero_frequency_class(self.gap)
            == ZeroFrequencyClass.DIVERGENT_AS_1_OVER_ZETA_SQUARED
        ):
            raise ValueError(
                "gap medium must not be plasma-like: eps1 * zeta^2 has to vanish at zeta = 0"
            )
        if self.check_dilute_gap and not self.identical_media:
            self._warn_if_not_dilute()
        return self

    @property
    def identical_media(self) -> bool:
        return self.wall == self.gap

    def _warn_if_not_dilute(self):
        if isinstance(self.wall, IdealMetal):
            return
        eps1 = eval_permittivity(self.gap, DILUTE_CHECK_GRID)
        eps2 = eval_permittivity(self.wall, DILUTE_CHECK_GRID)
        bad = DILUTE_CHECK_GRID[eps2 <= eps1]
        if bad.size:
            warnings.warn(
                f"Gap is not more dilute than the walls at zeta = {bad[0]:.3e} rad/s "
                f"(eps_wall <= eps_gap); attraction is not guaranteed",
                DiluteGapWarning,
                stacklevel=2,
            )
