"""Bounded parallel execution of independent searches using ThreadPoolExecutor."""

import logging
import traceback
from collections.abc import Callable, Iterable
from concurrent.futures import Future, ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Generic, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


@dataclass
class TaskResult(Generic[T, R]):
    """Outcome of one task."""

    task: T
    value: R | None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


class ParallelSearchExecutor:
    """Map a pure function over independent tasks.

    Results come back in submission order whatever the completion order, so
    output built from them is deterministic. With ``max_workers=1`` tasks run
    inline and no pool is created.
    """

    def __init__(self, max_workers: int = 1) -> None:
        """Initialize the executor.

        Args:
            max_workers: Maximum number of worker threads (at least 1).
        """
        if max_workers < 1:
            raise ValueError(f"max_workers must be at least 1, got {max_workers}")
        self.max_workers = max_workers
        self._executor: ThreadPoolExecutor | None = None

    def __enter__(self) -> "ParallelSearchExecutor":
        """Enter context manager."""
        if self.max_workers > 1:
            self._executor = ThreadPoolExecutor(max_workers=self.max_workers)
        return self

    def __exit__(self, exc_type: Any, exc_val: Any, exc_tb: Any) -> None:
        """Exit context manager."""
        if self._executor:
            self._executor.shutdown(wait=True)
            self._executor = None

    @staticmethod
    def _run(fn: Callable[[T], R], task: T) -> TaskResult[T, R]:
        try:
            return TaskResult(task, fn(task))
        except Exception as e:
            logger.error(f"Task {task!r} failed: {e}\n{traceback.format_exc()}")
            return TaskResult(task, None, f"{type(e).__name__}: {e}")

    def run_all(self, fn: Callable[[T], R], tasks: Iterable[T]) -> list[TaskResult[T, R]]:
        """Run ``fn`` on every task, capturing failures per task.

        Args:
            fn: Pure function of one task.
            tasks: Independent inputs.

        Returns:
            One TaskResult per task, in input order.
        """
        tasks = list(tasks)
        if not tasks:
            return []
        logger.info(f"Running {len(tasks)} tasks on {self.max_workers} worker(s)")
        if self._executor is None:
            if self.max_workers > 1:
                raise RuntimeError(
                    "Executor not initialized. Use 'with ParallelSearchExecutor(...) as executor:'"
                )
            return [self._run(fn, task) for task in tasks]
        futures: list[Future[TaskResult[T, R]]] = [
            self._executor.submit(self._run, fn, task) for task in tasks
        ]
        return [future.result() for future in futures]

    def map(self, fn: Callable[[T], R], tasks: Iterable[T]) -> list[R]:
        """Like ``run_all`` but re-raise the first failure.

        Raises:
            Exception: The first task error, re-raised with its original type.
        """
        tasks = list(tasks)
        if self._executor is None:
            if self.max_workers > 1:
                raise RuntimeError(
                    "Executor not initialized. Use 'with ParallelSearchExecutor(...) as executor:'"
                )
            return [fn(task) for task in tasks]
        futures = [self._executor.submit(fn, task) for task in tasks]
        return [future.result() for future in futures]
