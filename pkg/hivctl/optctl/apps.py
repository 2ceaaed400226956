from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class OptctlConfig(AppConfig):
    name = "optctl"
    verbose_name = _("Optimal Control")
