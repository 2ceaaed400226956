from django.apps import AppConfig
from django.utils.translation import gettext_lazy as _


class EquilibriaConfig(AppConfig):
    name = "equilibria"
    verbose_name = _("Equilibria")
