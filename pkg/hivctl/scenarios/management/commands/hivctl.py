from pathlib import Path

from celery import group

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError
from django.utils.translation import gettext_lazy as _

from common.exceptions import IO_EXIT_CODE, VALIDATION_EXIT_CODE, HivctlError
from scenarios.config import dump_config, load_config
from scenarios.presets import MODES, PRESETS
from scenarios.runner import output_dir, run
from scenarios.tasks import run_scenario_task


def format_errors(error: ValidationError) -> str:
    if hasattr(error, "error_dict"):
        return "; ".join(
            f"{key}: {' '.join(messages)}"
            for key, messages in sorted(error.message_dict.items())
        )
    return " ".join(error.messages)


def parse_ic(text: str) -> dict:
    """Reads `x,y,v,z` into the history keys."""
    values = text.split(",")
    if len(values) != 4:
        raise ValidationError({"ic": [_("Expected four values x,y,v,z.")]})
    try:
        numbers = [float(value) for value in values]
    except ValueError:
        raise ValidationError({"ic": [_("Values must be numbers.")]})
    return dict(zip(("x0", "y0", "v0", "z0"), numbers))


class Command(BaseCommand):
    """Runs a scenario of the delayed infection model.

    Usage in the terminal:
        > python manage.py hivctl simulate --preset fig1-ic1
        > python manage.py hivctl optimize --preset fig3 --iterate
        > python manage.py hivctl --batch a.json b.json --out output/batch

    Exit codes: 2 invalid input, 3 numerical failure, 4 file error.
    """

    help = (
        "Simulates the delayed HIV model, reports its steady states and "
        "their stability, or solves the treatment problem."
    )

    def add_arguments(self, parser):
        parser.add_argument("mode", nargs="?", choices=MODES)
        parser.add_argument("--preset", choices=sorted(PRESETS))
        parser.add_argument("--config", type=Path)
        parser.add_argument("--out", type=Path)
        parser.add_argument("--dt", type=float)
        parser.add_argument("--tf", type=float)
        parser.add_argument("--N", dest="big_n", type=float)
        parser.add_argument("--tau", type=float)
        parser.add_argument("--ic", help="Initial state as x,y,v,z.")
        parser.add_argument("--iterate", action="store_true", default=None)
        parser.add_argument("--tol", type=float)
        parser.add_argument("--max-iter", dest="max_iter", type=int)
        parser.add_argument("--relax", type=float)
        parser.add_argument(
            "--clamp-nonneg", action="store_true", default=None
        )
        parser.add_argument(
            "--strict-ranges", action="store_true", default=None
        )
        parser.add_argument(
            "--dump-config",
            action="store_true",
            help="Write the resolved scenario to config.json.",
        )
        parser.add_argument("--batch", nargs="+", type=Path)

    def handle(self, *args, **options):
        try:
            paths = self._handle(options)
        except ValidationError as error:
            raise CommandError(
                format_errors(error), returncode=VALIDATION_EXIT_CODE
            )
        except HivctlError as error:
            raise CommandError(str(error), returncode=error.exit_code)
        except OSError as error:
            raise CommandError(str(error), returncode=IO_EXIT_CODE)
        for path in paths:
            self.stdout.write(str(path))

    def _handle(self, options) -> list[Path]:
        overrides = {
            key: options[key]
            for key in (
                "dt",
                "tf",
                "big_n",
                "tau",
                "iterate",
                "tol",
                "max_iter",
                "relax",
                "clamp_nonneg",
                "strict_ranges",
            )
        }
        if options["ic"]:
            overrides.update(parse_ic(options["ic"]))
        out = output_dir(options["out"])

        if options["batch"]:
            return self._run_batch(
                options["batch"], overrides, options["mode"], out
            )

        config = load_config(
            preset=options["preset"],
            path=options["config"],
            overrides=overrides,
            mode=options["mode"],
        )
        paths = []
        if options["dump_config"]:
            paths.append(dump_config(config, out / "config.json"))
        return paths + run(config, out)

    def _run_batch(self, files, overrides, mode, out) -> list[Path]:
        """Runs every scenario file as a Celery task, each writing into a
        sub-directory named after the file."""
        overrides = {
            key: value for key, value in overrides.items() if value is not None
        }
        tasks = group(
            run_scenario_task.s(
                str(path), str(out / path.stem), overrides, mode
            )
            for path in files
        )
        results = tasks.apply_async().get()
        return [Path(path) for written in results for path in written]
