import dotenv
import functools
import logging
import os
import pydantic

logger = logging.getLogger(__name__)

# Environment variables read by load_bounds (a .env file in the working directory is honored).
_VARIABLES = {
    "max_leaves": "THOMPSON_MAX_LEAVES",
    "max_level": "THOMPSON_MAX_LEVEL",
    "max_m": "THOMPSON_MAX_M",
    "oracle_bound": "THOMPSON_ORACLE_BOUND",
}


class Bounds(pydantic.BaseModel):
    """Size limits for enumerations, inflation levels and shift vectors."""

    max_leaves: int = pydantic.Field(default=10, ge=1, description="Largest tree enumerated by leaf count.")
    max_level: int = pydantic.Field(default=4, ge=0, description="Largest n for the inflated families (k)_n, g_n.")
    max_m: int = pydantic.Field(default=3, ge=1, description="Largest m for the shift vectors zeta_m.")
    oracle_bound: int = pydantic.Field(default=8, ge=1, description="Default size for the exhaustive oracles.")


@functools.cache
def load_bounds() -> Bounds:
    dotenv.load_dotenv()
    overrides = {field: os.getenv(variable) for field, variable in _VARIABLES.items() if os.getenv(variable)}
    if overrides:
        logger.debug(f"Bounds overridden from the environment: {overrides}")
    return Bounds(**overrides)
