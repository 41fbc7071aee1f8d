"""Exception roots shared across modules.

The CLI maps :class:`ConfigError` to exit code 2 and
:class:`NumericalFailure` to exit code 3.
"""


class ConfigError(ValueError):
    pass


class NumericalFailure(RuntimeError):
    pass
