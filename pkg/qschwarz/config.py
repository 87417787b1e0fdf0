"""Runtime settings.

Defaults live on the model; any field can be overridden with a
``QSCHWARZ_<FIELD>`` environment variable, and a local ``.env`` file is
read first. Nothing here is required to run the engine.
"""
import os
from fractions import Fraction
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field

ENV_PREFIX = "QSCHWARZ_"


class Settings(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    default_order: Fraction = Field(default=Fraction(10), description="Order used by verify_* when none is given")
    identity_order: Fraction = Field(default=Fraction(20), description="Order for the eta/theta identity suites")
    catalog_order: Fraction = Field(default=Fraction(8), description="Order for catalog verification")
    frobenius_terms: int = Field(default=40, ge=1)
    jobs: int = Field(default=1, ge=1, description="Worker threads for selftest")
    eval_terms: int = Field(default=400, ge=1)
    eval_tol: float = Field(default=1e-8, gt=0)
    eval_min_im: float = Field(default=0.3, gt=0)
    fd_step: float = Field(default=1e-3, gt=0)


def _from_env() -> dict:
    overrides = {}
    for name in Settings.model_fields:
        raw = os.getenv(ENV_PREFIX + name.upper())
        if raw is None:
            continue
        if name.endswith("order"):
            overrides[name] = Fraction(raw)
        else:
            overrides[name] = raw
    return overrides


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Return the process-wide settings, reading ``.env`` on first use."""
    load_dotenv()
    return Settings(**_from_env())
