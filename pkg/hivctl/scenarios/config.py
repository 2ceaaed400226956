"""Scenario configuration: presets, JSON files and flag overrides.

Values are layered preset < file < overrides and validated once by
`ScenarioForm`. Files use the same flat keys, so `dump_config` output can
be loaded again.
"""

import json
from dataclasses import dataclass
from pathlib import Path

from django.conf import settings
from django.core.exceptions import ValidationError
from django.utils.translation import gettext_lazy as _

from common.exceptions import ParseError
from dynamics.types import HistoryFunction, ModelParams, ObjectiveWeights
from simulation.grid import Grid

from .forms import ScenarioForm
from .presets import PRESETS


@dataclass(frozen=True)
class ScenarioConfig:
    params: ModelParams
    hist: HistoryFunction
    tf: float
    dt: float
    weights: ObjectiveWeights | None
    mode: str
    preset: str | None = None
    iterate: bool = False
    tol: float = 1e-4
    max_iter: int = 200
    relax: float = 0.5
    clamp_nonneg: bool = False
    strict_ranges: bool = False

    @property
    def grid(self) -> Grid:
        return Grid.from_horizon(self.tf, self.dt, self.params.tau)

    def as_flat(self) -> dict:
        """The scenario as the flat keys of a scenario file."""
        data = {
            **self.params.as_dict(),
            **self.hist.as_dict(),
            "tf": self.tf,
            "dt": self.dt,
            "mode": self.mode,
            "iterate": self.iterate,
            "tol": self.tol,
            "max_iter": self.max_iter,
            "relax": self.relax,
            "clamp_nonneg": self.clamp_nonneg,
            "strict_ranges": self.strict_ranges,
        }
        if self.preset:
            data["preset"] = self.preset
        if self.weights is not None:
            data.update(A1=self.weights.A1, A2=self.weights.A2)
        return data


def default_values() -> dict:
    hivctl = settings.HIVCTL
    return {
        "tf": hivctl["TF"],
        "dt": hivctl["DT"],
        "tol": hivctl["ITERATE_TOL"],
        "max_iter": hivctl["ITERATE_MAX_ITER"],
        "relax": hivctl["ITERATE_RELAXATION"],
    }


def read_config_file(path: Path) -> dict:
    """Reads a scenario file.

    Raises:
        OSError: If the file cannot be read.
        ParseError: If it is not a JSON object.
        ValidationError: If it holds keys no scenario has.
    """
    with open(path, encoding="utf-8") as config_file:
        try:
            data = json.load(config_file)
        except json.JSONDecodeError as error:
            raise ParseError(f"{path}: {error}") from error
    if not isinstance(data, dict):
        raise ParseError(f"{path}: expected a JSON object")
    unknown = sorted(set(data) - set(ScenarioForm.base_fields))
    if unknown:
        raise ValidationError({key: [_("Unknown key.")] for key in unknown})
    return data


def load_config(
    preset: str | None = None,
    path: Path | None = None,
    overrides: dict | None = None,
    mode: str | None = None,
) -> ScenarioConfig:
    """Builds a validated scenario.

    Args:
        preset: Name of a published scenario.
        path: A JSON scenario file.
        overrides: Flat keys that win over the preset and the file; None
            values are ignored.
        mode: The run mode, winning over every other source.

    Raises:
        ParseError: If the file is not a JSON object.
        ValidationError: Keyed by every invalid or missing key.
    """
    data = default_values()
    if preset:
        if preset not in PRESETS:
            raise ValidationError({"preset": [_("Unknown preset.")]})
        data.update(PRESETS[preset], preset=preset)
    if path:
        data.update(read_config_file(path))
    if overrides:
        data.update(
            {
                key: value
                for key, value in overrides.items()
                if value is not None
            }
        )
    if mode:
        data["mode"] = mode

    form = ScenarioForm(data)
    if not form.is_valid():
        raise ValidationError(form.errors.as_data())
    cleaned = form.cleaned_data
    return ScenarioConfig(
        params=form.params(),
        hist=form.history(),
        tf=cleaned["tf"],
        dt=cleaned["dt"],
        weights=form.weights(),
        mode=cleaned["mode"],
        preset=cleaned["preset"] or None,
        iterate=cleaned["iterate"],
        tol=cleaned["tol"],
        max_iter=cleaned["max_iter"],
        relax=cleaned["relax"],
        clamp_nonneg=cleaned["clamp_nonneg"],
        strict_ranges=cleaned["strict_ranges"],
    )


def dump_config(config: ScenarioConfig, path: Path) -> Path:
    with open(path, "w", encoding="utf-8") as config_file:
        json.dump(config.as_flat(), config_file, indent=2, sort_keys=True)
        config_file.write("\n")
    return Path(path)
