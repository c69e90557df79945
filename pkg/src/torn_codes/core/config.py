"""
Configuration management for torn-paper coding runs
"""

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field, field_validator

from ..coding.rll import SCHEMES
from .exceptions import ParameterError
from .params import CodeParams, derive_params

SCHEMA_VERSION = 1

_INLINE_KEYS = {
    "q": "q",
    "n": "n",
    "k": "k",
    "lmin": "lmin",
    "Lmin": "lmin",
    "lmax": "lmax",
    "Lmax": "lmax",
    "f": "f",
    "rll": "rll",
}


class CodeSection(BaseModel):
    """Code parameters before derivation"""

    q: int = Field(default=2, description="Alphabet size")
    n: int = Field(default=124, description="Strand length")
    k: int = Field(default=1, description="Number of strands")
    lmin: int = Field(default=15, description="Minimum segment length")
    lmax: int = Field(default=20, description="Maximum segment length")
    f: int = Field(default=3, description="Forbidden zero-run length")
    rll: str = Field(default="stuffing", description="RLL scheme: stuffing or sequence_replacement")

    @field_validator("rll")
    @classmethod
    def validate_rll(cls, v: str) -> str:
        if v not in SCHEMES:
            raise ValueError(f"RLL scheme must be one of: {sorted(SCHEMES)}")
        return v

    def derive(self) -> CodeParams:
        return derive_params(self.q, self.n, self.k, self.lmin, self.lmax, self.f, self.rll)


class RobustSection(BaseModel):
    """Error model the code is built for"""

    model: str = Field(default="none", description="none, substitution or deletion")
    t: int = Field(default=0, description="Substitutions or deleted segments tolerated")
    bec: str = Field(default="auto", description="auto, interleaved_parity or interleaved_rs")

    @field_validator("model")
    @classmethod
    def validate_model(cls, v: str) -> str:
        valid_models = ["none", "substitution", "deletion"]
        if v not in valid_models:
            raise ValueError(f"Error model must be one of: {valid_models}")
        return v

    @field_validator("bec")
    @classmethod
    def validate_bec(cls, v: str) -> str:
        valid_codes = ["auto", "interleaved_parity", "interleaved_rs"]
        if v not in valid_codes:
            raise ValueError(f"BEC code must be one of: {valid_codes}")
        return v

    @field_validator("t")
    @classmethod
    def validate_t(cls, v: int) -> int:
        if v < 0:
            raise ValueError("Error budget must be non-negative")
        return v


class ChannelSection(BaseModel):
    """Adversary settings"""

    strategy: str = Field(default="uniform_random_cuts", description="Segmentation strategy")
    seed: int = Field(default=0, description="Channel and message seed")
    target: str = Field(default="random", description="Substitution target region")
    deletion_mode: str = Field(default="random", description="random or adjacent")
    cuts: Optional[List[List[int]]] = Field(default=None, description="Scripted cut lengths")


class RunSection(BaseModel):
    """Experiment execution"""

    trials: int = Field(default=10, description="Trials per configuration")
    max_workers: int = Field(default=1, description="Maximum number of worker threads")
    enumeration_cap: int = Field(default=10**7, description="Largest spectrum to enumerate")
    verbose: bool = Field(default=False, description="Enable verbose logging")

    @field_validator("max_workers", "trials")
    @classmethod
    def validate_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("Value must be at least 1")
        return v


class TornCodesConfig(BaseModel):
    """Main configuration for encoding, channel trials and sweeps"""

    code: CodeSection = Field(default_factory=CodeSection)
    robust: RobustSection = Field(default_factory=RobustSection)
    channel: ChannelSection = Field(default_factory=ChannelSection)
    run: RunSection = Field(default_factory=RunSection)

    @classmethod
    def from_file(cls, config_path: Union[str, Path]) -> "TornCodesConfig":
        """Load configuration from a TOML file"""
        config_path = Path(config_path)

        if not config_path.exists():
            raise FileNotFoundError(f"Configuration file not found: {config_path}")

        if config_path.suffix == ".toml":
            with open(config_path, "rb") as f:
                config_data = tomllib.load(f)
        else:
            raise ValueError(f"Unsupported configuration file format: {config_path.suffix}")

        return cls(**config_data)

    def to_dict(self) -> Dict[str, Any]:
        return self.model_dump(exclude_none=True)

    def save_to_file(self, config_path: Union[str, Path]) -> None:
        """Save configuration to a TOML file"""
        config_path = Path(config_path)

        if config_path.suffix == ".toml":
            import tomli_w

            with open(config_path, "wb") as f:
                tomli_w.dump(self.to_dict(), f)
        else:
            raise ValueError(f"Unsupported configuration file format: {config_path.suffix}")

    def envelope(self) -> Dict[str, Any]:
        """JSON header embedded in every artifact for replay"""
        params = self.code.derive()
        return {
            "schema": SCHEMA_VERSION,
            "params": params.to_record(),
            "rll": params.rll,
            "robust": self.robust.model_dump(),
        }


def parse_inline_params(text: str) -> Dict[str, Any]:
    """Parse ``q=2,n=124,lmin=15,...`` into code section fields"""
    values: Dict[str, Any] = {}
    for item in filter(None, (part.strip() for part in text.split(","))):
        key, sep, raw = item.partition("=")
        if not sep or key.strip() not in _INLINE_KEYS:
            raise ParameterError(
                f"Invalid parameter {item!r}; expected key=value with key in "
                f"{sorted(set(_INLINE_KEYS.values()))}"
            )
        name = _INLINE_KEYS[key.strip()]
        if name == "rll":
            values[name] = raw.strip()
        else:
            try:
                values[name] = int(raw)
            except ValueError as exc:
                raise ParameterError(f"Parameter {name} must be an integer, got {raw!r}") from exc
    return values


def load_code_section(source: str) -> CodeSection:
    """A TOML config path or an inline parameter string"""
    path = Path(source)
    if path.suffix == ".toml" and path.exists():
        return TornCodesConfig.from_file(path).code
    return CodeSection(**parse_inline_params(source))


def section_from_envelope(header: Dict[str, Any]) -> CodeSection:
    """Code section recorded in an artifact header"""
    if header.get("schema") != SCHEMA_VERSION:
        raise ParameterError(f"Unsupported artifact schema: {header.get('schema')}")
    record = header["params"]
    return CodeSection(
        q=record["q"],
        n=record["n"],
        k=record["k"],
        lmin=record["Lmin"],
        lmax=record["Lmax"],
        f=record["f"],
        rll=header.get("rll", "stuffing"),
    )
