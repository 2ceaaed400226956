"""Configure Django for pytest, as `manage.py test` does."""
import os

import django


os.environ.setdefault("DJANGO_SETTINGS_MODULE", "core.settings.test")
django.setup()
