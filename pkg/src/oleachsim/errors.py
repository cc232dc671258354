"""Exception types shared across the simulator."""


class ConfigError(ValueError):
    """Invalid configuration: bad value, unknown key, malformed file."""


class SimulationInvariantError(RuntimeError):
    """An internal contract was violated (simulator bug, not user error)."""
