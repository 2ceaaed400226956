from django import forms
from django.utils.translation import gettext_lazy as _

from common.validators import validate_nonnegative, validate_positive
from dynamics.types import HistoryFunction, ModelParams, ObjectiveWeights
from dynamics.validators import validate_ranges
from optctl.sweep import validate_relaxation
from simulation.grid import steps_in

from .presets import MODES, OPTIMIZE, PRESETS


def rate_field(label: str, required: bool = True) -> forms.FloatField:
    return forms.FloatField(
        label=label, required=required, validators=[validate_positive]
    )


def level_field(label: str) -> forms.FloatField:
    return forms.FloatField(label=label, validators=[validate_nonnegative])


class ScenarioForm(forms.Form):
    """Validates the flat keys of a scenario.

    Every key is named after the field it fills, so an error in
    `form.errors` names the offending key of the scenario file.
    """

    mode = forms.ChoiceField(choices=[(mode, mode) for mode in MODES])
    preset = forms.ChoiceField(
        choices=[("", "---")] + [(name, name) for name in PRESETS],
        required=False,
    )

    lam = rate_field(_("Source rate of uninfected cells"))
    d = rate_field(_("Death rate of uninfected cells"))
    beta = rate_field(_("Infection rate"))
    a = rate_field(_("Death rate of infected cells"))
    p = rate_field(_("Killing rate of infected cells by CTLs"))
    c = rate_field(_("Proliferation rate of CTLs"))
    h_ctl = rate_field(_("Death rate of CTLs"))
    big_n = rate_field(_("Virions released by one infected cell"))
    mu = rate_field(_("Clearance rate of virions"))
    tau = level_field(_("Intracellular delay"))

    x0 = level_field(_("Initial uninfected cells"))
    y0 = level_field(_("Initial infected cells"))
    v0 = level_field(_("Initial virions"))
    z0 = level_field(_("Initial CTLs"))

    tf = rate_field(_("Final time"))
    dt = rate_field(_("Step size"))

    A1 = rate_field(_("Cost weight of the first drug"), required=False)
    A2 = rate_field(_("Cost weight of the second drug"), required=False)

    iterate = forms.BooleanField(required=False)
    tol = rate_field(_("Relative control tolerance"))
    max_iter = forms.IntegerField(min_value=1)
    relax = forms.FloatField(
        label=_("Relaxation"), validators=[validate_relaxation]
    )
    clamp_nonneg = forms.BooleanField(required=False)
    strict_ranges = forms.BooleanField(required=False)

    PARAM_FIELDS = (
        "lam",
        "d",
        "beta",
        "a",
        "p",
        "c",
        "h_ctl",
        "big_n",
        "mu",
        "tau",
    )
    HISTORY_FIELDS = ("x0", "y0", "v0", "z0")

    def clean(self):
        """Checks the grid against the delay, the weights against the mode
        and, with `strict_ranges`, the constants against the literature."""
        cleaned_data = super().clean()
        if self.errors:
            return cleaned_data

        dt = cleaned_data["dt"]
        if steps_in(cleaned_data["tf"], dt) is None:
            self.add_error(
                "tf", _("Final time must be a whole number of steps.")
            )
        if steps_in(cleaned_data["tau"], dt) is None:
            self.add_error("tau", _("Delay must be a whole number of steps."))

        has_weights = [
            cleaned_data.get(key) is not None for key in ("A1", "A2")
        ]
        if any(has_weights) and not all(has_weights):
            self.add_error(None, _("Give both cost weights or neither."))
        elif cleaned_data["mode"] == OPTIMIZE and not all(has_weights):
            for key in ("A1", "A2"):
                self.add_error(key, _("Required for optimize runs."))

        if cleaned_data["strict_ranges"] and not self.errors:
            try:
                validate_ranges(self.params())
            except forms.ValidationError as error:
                for key, messages in error.message_dict.items():
                    self.add_error(key, messages)
        return cleaned_data

    def params(self) -> ModelParams:
        return ModelParams(
            **{key: self.cleaned_data[key] for key in self.PARAM_FIELDS}
        )

    def history(self) -> HistoryFunction:
        return HistoryFunction(
            **{key: self.cleaned_data[key] for key in self.HISTORY_FIELDS}
        )

    def weights(self) -> ObjectiveWeights | None:
        data = self.cleaned_data
        if data.get("A1") is None:
            return None
        return ObjectiveWeights(A1=data["A1"], A2=data["A2"], tf=data["tf"])
