"""Logging of failed numerical runs.

`LoggerDecorator` wraps a public entry point, writes a description of the
failing call to the given logger and re-raises. Arrays in the arguments are
summarized by shape so a 50 000 step trajectory never lands in a log file.
"""

import functools
import logging
import traceback
from typing import Callable

import numpy as np


MAX_ARGUMENT_LENGTH = 200


def summarize_argument(value) -> str:
    """Short printable form of a call argument."""
    if isinstance(value, np.ndarray):
        return f"ndarray(shape={value.shape}, dtype={value.dtype})"
    text = repr(value)
    if len(text) > MAX_ARGUMENT_LENGTH:
        return text[: MAX_ARGUMENT_LENGTH - 3] + "..."
    return text


class LogMessage:
    def __init__(
        self, error: Exception | str, func: Callable, *args, **kwargs
    ):
        self.error = error
        self.function = func
        self.args = args
        self.kwargs = kwargs

    def __str__(self) -> str:
        args = ", ".join(summarize_argument(arg) for arg in self.args)
        kwargs = ", ".join(
            f"{key}={summarize_argument(value)}"
            for key, value in self.kwargs.items()
        )
        return (
            "Function name: {func_name}\nError type: {error_type}\n"
            "Error message: {error_message}\nArgs: ({args})\n"
            "Kwargs: {{{kwargs}}}\nTraceback: \n{traceback}\n".format(
                func_name=self.function.__qualname__,
                error_type=type(self.error).__name__,
                error_message=str(self.error),
                args=args,
                kwargs=kwargs,
                traceback=traceback.format_exc(),
            )
        )


class LoggerDecorator:
    def __init__(self, logger_name: str):
        self.logger = logging.getLogger(logger_name)

    def __call__(self, func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except Exception as error:
                self.logger.error(LogMessage(error, func, *args, **kwargs))
                raise

        return wrapper
