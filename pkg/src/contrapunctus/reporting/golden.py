"""Golden files: stored report outputs that later runs are diffed against."""

from __future__ import annotations

import difflib
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from filelock import FileLock

from contrapunctus.errors import GoldenMismatchError

logger = logging.getLogger(__name__)


class GoldenStatus(str, Enum):
    MATCH = "match"
    DRIFT = "drift"
    MISSING = "missing"


@dataclass
class GoldenDiff:
    """Comparison of one artifact with its golden file."""

    name: str
    status: GoldenStatus
    diff: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status is GoldenStatus.MATCH


class GoldenStore:
    """A directory of golden files guarded by a file lock."""

    DEFAULT_LOCK_TIMEOUT = 30

    def __init__(self, directory: str | Path, lock_timeout: float | None = None) -> None:
        """Initialize the store.

        Args:
            directory: Directory holding one file per artifact name.
            lock_timeout: Seconds to wait for the lock.
        """
        self.directory = Path(directory)
        self.lock_path = self.directory / ".golden.lock"
        self.lock_timeout = lock_timeout or self.DEFAULT_LOCK_TIMEOUT

    def _lock(self) -> FileLock:
        self.directory.mkdir(parents=True, exist_ok=True)
        return FileLock(str(self.lock_path), timeout=self.lock_timeout)

    def path(self, name: str) -> Path:
        return self.directory / name

    def read(self, name: str) -> str | None:
        """Stored text, or None if the artifact has no golden file yet."""
        path = self.path(name)
        if not path.exists():
            return None
        with self._lock():
            return path.read_text(encoding="utf-8")

    def write(self, name: str, text: str) -> Path:
        """Store ``text`` as the golden file for ``name``."""
        path = self.path(name)
        with self._lock():
            path.write_text(text, encoding="utf-8")
        logger.info(f"Updated golden file {path}")
        return path

    def compare(self, name: str, text: str) -> GoldenDiff:
        """Diff ``text`` against the stored golden file."""
        stored = self.read(name)
        if stored is None:
            logger.warning(f"No golden file for {name} in {self.directory}")
            return GoldenDiff(name, GoldenStatus.MISSING)
        if stored == text:
            return GoldenDiff(name, GoldenStatus.MATCH)
        diff = list(
            difflib.unified_diff(
                stored.splitlines(),
                text.splitlines(),
                fromfile=f"golden/{name}",
                tofile=f"current/{name}",
                lineterm="",
            )
        )
        logger.warning(f"Golden drift in {name}: {len(diff)} diff lines")
        return GoldenDiff(name, GoldenStatus.DRIFT, diff)

    def check_all(self, artifacts: dict[str, str]) -> list[GoldenDiff]:
        """Compare every artifact, in name order."""
        return [self.compare(name, artifacts[name]) for name in sorted(artifacts)]

    def assert_clean(self, artifacts: dict[str, str]) -> None:
        """Raise if any artifact drifts or has no golden file.

        Raises:
            GoldenMismatchError: Listing the failing artifact names.
        """
        failing = [d for d in self.check_all(artifacts) if not d.ok]
        if failing:
            names = ", ".join(f"{d.name} ({d.status.value})" for d in failing)
            raise GoldenMismatchError(f"golden files differ: {names}")
