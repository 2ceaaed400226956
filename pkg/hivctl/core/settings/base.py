"""
Base Django settings for the hivctl project.

The project is a numerical library with a command-line front end, so only
the pieces of Django it relies on are configured: installed apps (for
management command discovery and the test runner), logging, i18n for
validation messages and Celery for scenario batches.

For more information on this file, see
https://docs.djangoproject.com/en/4.1/topics/settings/
"""

import os
from pathlib import Path

from dotenv import load_dotenv

from django.core.exceptions import ImproperlyConfigured


# Parse a `.env` file and load the variables inside into environment variables
load_dotenv()

_MISSING = object()


def get_env_variable(var_name: str, default=_MISSING) -> str:
    """Get an environment variable or raise an exception.

    Args:
        var_name: The name of the variable.
        default: A value returned if the variable is not set. If omitted,
            the variable is required.

    Raises:
        ImproperlyConfigured: If a required variable is not set.
    """
    try:
        return os.environ[var_name]
    except KeyError:
        if default is not _MISSING:
            return default
        error_msg = f"Set the {var_name} environment variable."
        raise ImproperlyConfigured(error_msg)


def default_result_backend(broker_url: str) -> str | None:
    """Result backend used when `CELERY_RESULT_BACKEND` is not set.

    Eager runs keep results in memory. With a broker the results travel
    back over it as RPC replies.
    """
    if broker_url == "memory://":
        return None
    return "rpc://"


# BASE_DIR: a directory where `manage.py` file.
BASE_DIR = Path(__file__).resolve().parent.parent.parent
PROJECT_DIR = BASE_DIR.parent

# The key signs nothing here, but Django refuses to start without one.
SECRET_KEY = get_env_variable("SECRET_KEY", "hivctl-insecure-local-key")

DEBUG = True

TEST_MODE = False

ALLOWED_HOSTS = []

INSTALLED_APPS = [
    "common.apps.CommonConfig",
    "dynamics.apps.DynamicsConfig",
    "simulation.apps.SimulationConfig",
    "equilibria.apps.EquilibriaConfig",
    "stability.apps.StabilityConfig",
    "optctl.apps.OptctlConfig",
    "scenarios.apps.ScenariosConfig",
]

# No models are stored, the dummy backend is enough.
DATABASES = {}

# Numerical defaults. Every value can be overridden per run from the CLI.
HIVCTL = {
    "DT": float(get_env_variable("HIVCTL_DT", "0.01")),
    "TF": float(get_env_variable("HIVCTL_TF", "500")),
    "OUTPUT_DIR": Path(
        get_env_variable("HIVCTL_OUTPUT_DIR", PROJECT_DIR.joinpath("output"))
    ),
    "ITERATE_TOL": 1e-4,
    "ITERATE_MAX_ITER": 200,
    "ITERATE_RELAXATION": 0.5,
}

LOG_DIR = Path(get_env_variable("HIVCTL_LOG_DIR", PROJECT_DIR.joinpath("logs")))
LOG_DIR.mkdir(parents=True, exist_ok=True)

FILE_HANDLER = {
    "class": "logging.handlers.RotatingFileHandler",
    "maxBytes": 1048576,
    "backupCount": 10,
    "formatter": "verbose",
}
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "\n\n{levelname}\n{asctime}\n{name} {module} on line: {lineno}\n{message}",
            "style": "{",
        },
        "short": {
            "format": "{levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "formatter": "short",
            "level": "WARNING",
        },
        "file_simulation": dict(
            FILE_HANDLER,
            filename=LOG_DIR.joinpath("simulation.log"),
            level="INFO",
        ),
        "file_equilibria": dict(
            FILE_HANDLER,
            filename=LOG_DIR.joinpath("equilibria.log"),
            level="INFO",
        ),
        "file_stability": dict(
            FILE_HANDLER,
            filename=LOG_DIR.joinpath("stability.log"),
            level="INFO",
        ),
        "file_optctl": dict(
            FILE_HANDLER,
            filename=LOG_DIR.joinpath("optctl.log"),
            level="INFO",
        ),
        "file_scenarios": dict(
            FILE_HANDLER,
            filename=LOG_DIR.joinpath("scenarios.log"),
            level="INFO",
        ),
        "file_exceptions": dict(
            FILE_HANDLER,
            filename=LOG_DIR.joinpath("exceptions.log"),
            level="WARNING",
        ),
    },
    "loggers": {
        "simulation": {
            "handlers": ["file_simulation", "console"],
            "level": "INFO",
        },
        "equilibria": {
            "handlers": ["file_equilibria", "console"],
            "level": "INFO",
        },
        "stability": {
            "handlers": ["file_stability", "console"],
            "level": "INFO",
        },
        "optctl": {
            "handlers": ["file_optctl", "console"],
            "level": "INFO",
        },
        "scenarios": {
            "handlers": ["file_scenarios", "console"],
            "level": "INFO",
        },
        "exceptions": {
            "handlers": ["file_exceptions", "console"],
            "level": "WARNING",
        },
    },
}

# Internationalization
# https://docs.djangoproject.com/en/4.1/topics/i18n/
LANGUAGE_CODE = "en"
TIME_ZONE = "UTC"
USE_I18N = True
USE_TZ = True

# Celery runs scenario batches. Without a broker the tasks run in-process.
CELERY_BROKER_URL = get_env_variable("CELERY_BROKER_URL", "memory://")
CELERY_TASK_ALWAYS_EAGER = CELERY_BROKER_URL == "memory://"
# Batches wait for their results, so a real broker needs a result backend.
CELERY_RESULT_BACKEND = get_env_variable(
    "CELERY_RESULT_BACKEND", default_result_backend(CELERY_BROKER_URL)
)
CELERY_TASK_EAGER_PROPAGATES = True
