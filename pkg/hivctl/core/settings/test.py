"""The project settings for test runs development."""

from .base import *


TEST_MODE = True

HIVCTL = dict(HIVCTL, OUTPUT_DIR=PROJECT_DIR.joinpath("output", "test"))

CELERY_BROKER_URL = "memory://"
CELERY_TASK_ALWAYS_EAGER = True

# Test runs must not write log files.
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "handlers": {"null": {"class": "logging.NullHandler"}},
    "loggers": {
        name: {"handlers": ["null"], "propagate": False}
        for name in (
            "simulation",
            "equilibria",
            "stability",
            "optctl",
            "scenarios",
            "exceptions",
        )
    },
}
