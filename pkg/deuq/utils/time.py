"""Helpers for reporting wall-clock durations."""

import time


def format_seconds_to_legible_str(seconds: float) -> str:
    """Formats seconds into a human-friendly string for log files."""
    if seconds < 60:  # noqa: PLR2004
        return f"{seconds:.1f} seconds"
    if seconds < 3600:  # noqa: PLR2004
        return f"{int(seconds // 60)} minutes"
    hours = int(seconds // 3600)
    minutes = int((seconds % 3600) // 60)
    return f"{hours} hours and {minutes} minutes"


class Stopwatch:
    """Measures elapsed wall time since construction or the last `restart()`."""

    def __init__(self):
        """Start the stopwatch."""
        self._start = time.perf_counter()

    def restart(self) -> None:
        """Reset the start time to now."""
        self._start = time.perf_counter()

    @property
    def seconds(self) -> float:
        """Elapsed seconds."""
        return time.perf_counter() - self._start

    def __str__(self) -> str:
        """Legible elapsed time."""
        return format_seconds_to_legible_str(self.seconds)
