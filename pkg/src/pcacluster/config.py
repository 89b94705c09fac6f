"""Plain-text configuration for the pipeline and the synthetic generator.

Format: one "key = value" per line, "#" starts a full-line comment,
blank lines ignored. Relative paths resolve against the directory
containing the configuration file.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import ValidationError
from .ingest import ParseOptions
from .pca import CumulativeThreshold, Fixed, Kaiser, SelectionRule
from .synth import DEFAULT_SEED, SyntheticSpec

CLUSTER_SPACES = ("raw", "components", "both")
SCORE_COLUMN_MODES = ("retained", "all")

_DELIMITERS = {"comma": ",", ",": ",", "semicolon": ";", ";": ";"}
_DECIMALS = {"period": ".", ".": ".", "comma": ",", ",": ","}


@dataclass(frozen=True)
class PipelineConfig:
    output_dir: Path
    input_path: Path | None = None
    synthetic: SyntheticSpec | None = None
    parse_options: ParseOptions = field(default_factory=ParseOptions)
    component_rule: SelectionRule = field(default_factory=Kaiser)
    k_regions: int = 4
    cluster_space: str = "both"
    k_vars: int = 4
    score_columns: str = "retained"
    component_labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if (self.input_path is None) == (self.synthetic is None):
            raise ValidationError("exactly one input mode required: input file or synthetic")
        if self.k_regions < 1:
            raise ValidationError("k_regions must be at least 1")
        if self.k_vars < 1:
            raise ValidationError("k_vars must be at least 1")
        if self.cluster_space not in CLUSTER_SPACES:
            raise ValidationError(
                f"cluster_space must be one of {CLUSTER_SPACES}, got {self.cluster_space!r}"
            )
        if self.score_columns not in SCORE_COLUMN_MODES:
            raise ValidationError(
                f"score_columns must be one of {SCORE_COLUMN_MODES}, got {self.score_columns!r}"
            )


def read_key_values(path: str | Path) -> dict[str, str]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    pairs: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValidationError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key in pairs:
            raise ValidationError(f"{path}:{lineno}: duplicate key {key!r}")
        pairs[key] = value.strip()
    return pairs


def _parse_int(pairs: dict[str, str], key: str, default: int) -> int:
    if key not in pairs:
        return default
    try:
        return int(pairs[key])
    except ValueError:
        raise ValidationError(f"{key} must be an integer, got {pairs[key]!r}") from None


def _parse_float(pairs: dict[str, str], key: str, default: float) -> float:
    if key not in pairs:
        return default
    try:
        return float(pairs[key])
    except ValueError:
        raise ValidationError(f"{key} must be a number, got {pairs[key]!r}") from None


def parse_selection_rule(text: str) -> SelectionRule:
    """"kaiser", "fixed:<k>", or "cumulative:<percent>"."""
    name, _, arg = text.partition(":")
    name = name.strip().lower()
    arg = arg.strip()
    if name == "kaiser":
        if arg:
            raise ValidationError("kaiser takes no argument")
        return Kaiser()
    if name == "fixed":
        try:
            return Fixed(k=int(arg))
        except ValueError:
            raise ValidationError(f"fixed rule needs an integer, got {arg!r}") from None
    if name == "cumulative":
        try:
            return CumulativeThreshold(percent=float(arg))
        except ValueError:
            raise ValidationError(f"cumulative rule needs a number, got {arg!r}") from None
    raise ValidationError(f"unknown component rule {text!r}")


def _synthetic_spec_from(pairs: dict[str, str]) -> SyntheticSpec:
    return SyntheticSpec(
        n=_parse_int(pairs, "n", 85),
        p=_parse_int(pairs, "p", 19),
        clusters=_parse_int(pairs, "clusters", 4),
        separation=_parse_float(pairs, "separation", 6.0),
        within_sd=_parse_float(pairs, "within_sd", 1.0),
        seed=_parse_int(pairs, "seed", DEFAULT_SEED),
    )


_SYNTH_KEYS = {"n", "p", "clusters", "separation", "within_sd", "seed"}

_PIPELINE_KEYS = _SYNTH_KEYS | {
    "input", "synthetic", "delimiter", "decimal", "components", "k_regions",
    "cluster_space", "k_vars", "score_columns", "component_labels", "output_dir",
}


def load_pipeline_config(path: str | Path) -> PipelineConfig:
    path = Path(path)
    pairs = read_key_values(path)
    unknown = sorted(set(pairs) - _PIPELINE_KEYS)
    if unknown:
        raise ValidationError(f"{path}: unknown keys {unknown}")
    base = path.parent

    synthetic_mode = pairs.get("synthetic", "false").lower()
    if synthetic_mode not in ("true", "false"):
        raise ValidationError(f"synthetic must be true or false, got {pairs['synthetic']!r}")
    if synthetic_mode == "false":
        stray = sorted(set(pairs) & _SYNTH_KEYS)
        if stray:
            raise ValidationError(
                f"{path}: keys {stray} require synthetic = true"
            )
    synthetic = _synthetic_spec_from(pairs) if synthetic_mode == "true" else None
    input_path = base / pairs["input"] if "input" in pairs else None

    delimiter = pairs.get("delimiter", "comma").lower()
    decimal = pairs.get("decimal", "period").lower()
    if delimiter not in _DELIMITERS:
        raise ValidationError(f"unknown delimiter {pairs.get('delimiter')!r}")
    if decimal not in _DECIMALS:
        raise ValidationError(f"unknown decimal separator {pairs.get('decimal')!r}")

    labels = pairs.get("component_labels", "")
    component_labels = tuple(s.strip() for s in labels.split("|")) if labels else None

    if "output_dir" not in pairs:
        raise ValidationError(f"{path}: output_dir is required")
    return PipelineConfig(
        output_dir=base / pairs["output_dir"],
        input_path=input_path,
        synthetic=synthetic,
        parse_options=ParseOptions(
            delimiter=_DELIMITERS[delimiter], decimal=_DECIMALS[decimal]
        ),
        component_rule=parse_selection_rule(pairs.get("components", "kaiser")),
        k_regions=_parse_int(pairs, "k_regions", 4),
        cluster_space=pairs.get("cluster_space", "both").lower(),
        k_vars=_parse_int(pairs, "k_vars", 4),
        score_columns=pairs.get("score_columns", "retained").lower(),
        component_labels=component_labels,
    )


def load_synthetic_spec(path: str | Path) -> SyntheticSpec:
    path = Path(path)
    pairs = read_key_values(path)
    unknown = sorted(set(pairs) - _SYNTH_KEYS)
    if unknown:
        raise ValidationError(f"{path}: unknown keys {unknown}")
    return _synthetic_spec_from(pairs)
