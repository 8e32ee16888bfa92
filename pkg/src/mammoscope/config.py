"""Flat ``section.key = value`` configuration for the CLI pipeline.

The format is deliberately primitive: one assignment per line, ``#``
comments, no nesting. Unknown keys are errors so typos fail loudly
instead of silently running defaults.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from .errors import ConfigError
from .features import FEATURE_MODES, FeatureConfig
from .phantom import PhantomConfig
from .preprocess import PreprocessConfig
from .wavelet import FILTER_NAMES


@dataclass(frozen=True)
class PipelineConfig:
    preprocess: PreprocessConfig = PreprocessConfig()
    features: FeatureConfig = FeatureConfig()
    select_k: int | None = None
    classifier_threshold: float = 0.5
    cv_folds: int = 5
    cv_seed: int = 0
    phantom: PhantomConfig = PhantomConfig()


def _parse_bool(raw: str) -> bool:
    if raw == "on":
        return True
    if raw == "off":
        return False
    raise ValueError(f"expected on/off, got {raw!r}")


def _parse_float(raw: str) -> float:
    return float(raw)


def _parse_int(raw: str) -> int:
    return int(raw)


def _choice(*allowed: str):
    def parse(raw: str) -> str:
        if raw not in allowed:
            raise ValueError(f"expected one of {allowed}, got {raw!r}")
        return raw

    return parse


_SCHEMA = {
    "preprocess.threshold": _parse_float,
    "preprocess.orient": _parse_bool,
    "preprocess.artifact_removal": _parse_bool,
    "wavelet.filter": _choice(*FILTER_NAMES),
    "wavelet.levels": _parse_int,
    "features.mode": _choice(*FEATURE_MODES),
    "select.k": _parse_int,
    "classifier.threshold": _parse_float,
    "cv.k": _parse_int,
    "cv.seed": _parse_int,
    "phantom.size": _parse_int,
    "phantom.count_per_class": _parse_int,
    "phantom.seed": _parse_int,
    "phantom.noise_sigma": _parse_float,
    "phantom.mass_amplitude": _parse_float,
    "phantom.mass_radius": _parse_float,
    "phantom.microcalc_count": _parse_int,
    "phantom.microcalc_amplitude": _parse_float,
    "phantom.artifact_label": _parse_bool,
}


def parse_config(text: str, source: str = "<config>") -> PipelineConfig:
    values: dict[str, object] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key = value, got {raw_line!r}")
        key, _, raw_value = line.partition("=")
        key = key.strip()
        raw_value = raw_value.strip()
        if key not in _SCHEMA:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            values[key] = _SCHEMA[key](raw_value)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: {key}: {exc}") from None
    return _build(values, source)


def _build(values: dict[str, object], source: str) -> PipelineConfig:
    cfg = PipelineConfig()
    pre = cfg.preprocess
    if "preprocess.threshold" in values:
        pre = replace(pre, threshold=values["preprocess.threshold"])
    if "preprocess.orient" in values:
        pre = replace(pre, orient=values["preprocess.orient"])
    if "preprocess.artifact_removal" in values:
        pre = replace(pre, artifact_removal=values["preprocess.artifact_removal"])

    feats = cfg.features
    if "wavelet.filter" in values:
        feats = replace(feats, filter=values["wavelet.filter"])
    if "wavelet.levels" in values:
        feats = replace(feats, levels=values["wavelet.levels"])
    if "features.mode" in values:
        feats = replace(feats, mode=values["features.mode"])

    ph = cfg.phantom
    for key, attr in (
        ("phantom.size", "size"),
        ("phantom.count_per_class", "count_per_class"),
        ("phantom.seed", "seed"),
        ("phantom.noise_sigma", "noise_sigma"),
        ("phantom.mass_amplitude", "mass_amplitude"),
        ("phantom.mass_radius", "mass_radius"),
        ("phantom.microcalc_count", "microcalc_count"),
        ("phantom.microcalc_amplitude", "microcalc_amplitude"),
        ("phantom.artifact_label", "artifact_label"),
    ):
        if key in values:
            ph = replace(ph, **{attr: values[key]})

    built = PipelineConfig(
        preprocess=pre,
        features=feats,
        select_k=values.get("select.k", cfg.select_k),
        classifier_threshold=values.get(
            "classifier.threshold", cfg.classifier_threshold
        ),
        cv_folds=values.get("cv.k", cfg.cv_folds),
        cv_seed=values.get("cv.seed", cfg.cv_seed),
        phantom=ph,
    )
    _validate(built, source)
    return built


def _validate(cfg: PipelineConfig, source: str) -> None:
    if not 0.0 <= cfg.preprocess.threshold <= 1.0:
        raise ConfigError(f"{source}: preprocess.threshold must lie in [0, 1]")
    if cfg.features.levels < 1:
        raise ConfigError(f"{source}: wavelet.levels must be >= 1")
    if not 0.0 < cfg.classifier_threshold < 1.0:
        raise ConfigError(f"{source}: classifier.threshold must lie in (0, 1)")
    if cfg.cv_folds < 2:
        raise ConfigError(f"{source}: cv.k must be >= 2")
    if cfg.select_k is not None and cfg.select_k < 1:
        raise ConfigError(f"{source}: select.k must be >= 1")
    try:
        cfg.phantom.validate()
    except ValueError as exc:
        raise ConfigError(f"{source}: phantom: {exc}") from None


def load_config(path: str | None) -> PipelineConfig:
    """Read a config file; None means all defaults."""
    if path is None:
        return PipelineConfig()
    file = Path(path)
    try:
        text = file.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_config(text, source=str(path))
