from celery import shared_task

from .config import load_config
from .runner import run


@shared_task()
def run_scenario_task(
    path: str, out: str, overrides: dict | None = None, mode: str | None = None
) -> list[str]:
    """Runs one scenario file of a batch.

    Args:
        path: The JSON scenario file.
        out: The directory for this scenario's files.
        overrides: Flat keys that win over the file.
        mode: Run mode that wins over the file.

    Returns:
        The written files.
    """
    config = load_config(path=path, overrides=overrides, mode=mode)
    return [str(written) for written in run(config, out)]
