"""
Loading named materials from TOML library files.
"""

import logging
import tomllib
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict

from materials.permittivity import WallModel

logger = logging.getLogger(__name__)

BUILTIN_LIBRARY = Path(__file__).parent / "library.toml"


class MaterialLibrary(BaseModel):
    model_config = ConfigDict(extra="forbid")

    materials: dict[str, WallModel] = {}


def read_library_file(path: Path | str) -> MaterialLibrary:
    """Parse one library file. TOML and validation errors propagate unchanged."""
    with open(path, "rb") as f:
        data = tomllib.load(f)
    return MaterialLibrary.model_validate(data)


def load_material_library(path: Optional[Path | str] = None) -> dict[str, WallModel]:
    """The built-in library, with entries from `path` (if given) overriding it."""
    materials = dict(read_library_file(BUILTIN_LIBRARY).materials)
    if path:
        extra = read_library_file(path).materials
        logger.debug("Loaded %d materials from %s", len(extra), path)
        materials.update(extra)
    return materials


def resolve_material(name: str, library: dict[str, WallModel]) -> WallModel:
    try:
        return library[name]
    except KeyError:
        known = ", ".join(sorted(library))
        raise ValueError(f"Unknown material '{name}'. Known materials: {known}")
