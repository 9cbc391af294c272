"""
JSON document loading and atomic report writing.
"""
import errno
import fcntl
import json
import logging
import os
import tempfile
import time
from pathlib import Path
from typing import IO, Any, Optional, Union

from spinlift.errors import ParseError


def load_document(path: Union[str, Path]) -> Any:
    """
    Read and parse one JSON document.

    Args:
        path: Path to the JSON file

    Returns:
        The parsed document

    Raises:
        ParseError: If the file cannot be read or is not valid JSON
    """
    path = Path(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            text = f.read()
    except OSError as e:
        raise ParseError(str(path), f"cannot read file: {e.strerror or e}")
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(str(path), e.msg, e.lineno, e.colno)
    logging.debug(f"Loaded JSON document from {path}")
    return document


def dump_report(report: Any) -> str:
    """Serialize a report the way every command prints it: sorted keys, two-space indent."""
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


class AtomicJSONWriter:
    """
    Writes one report to ``target_path`` without exposing partial output.

    The report goes to a sibling temporary file that replaces the target on
    a clean exit. A ``.lock`` file next to the target serializes writers.
    """

    def __init__(self, target_path: Union[str, Path], lock_timeout: float = 10.0):
        self.target_path = Path(target_path)
        self.lock_timeout = lock_timeout
        self._lock_handle: Optional[IO[str]] = None
        self._pending: Optional[IO[str]] = None
        self._pending_path: Optional[Path] = None
        self.target_path.parent.mkdir(parents=True, exist_ok=True)

    @property
    def lock_path(self) -> Path:
        return self.target_path.with_name(self.target_path.name + '.lock')

    def __enter__(self) -> "AtomicJSONWriter":
        try:
            self._lock_handle = _exclusive_lock(self.lock_path, self.lock_timeout)
            fd, name = tempfile.mkstemp(
                prefix=f".{self.target_path.name}.", suffix='.tmp', dir=self.target_path.parent
            )
            self._pending_path = Path(name)
            self._pending = os.fdopen(fd, 'w', encoding='utf-8')
        except BaseException:
            self._release()
            raise
        return self

    def __exit__(self, exc_type, exc_val, exc_tb) -> None:
        try:
            pending, self._pending = self._pending, None
            if pending is not None:
                pending.close()
                if exc_type is None:
                    os.replace(self._pending_path, self.target_path)
                    logging.debug(f"Wrote report to {self.target_path}")
                else:
                    _discard(self._pending_path)
        finally:
            self._release()

    def _release(self) -> None:
        handle, self._lock_handle = self._lock_handle, None
        if handle is None:
            return
        try:
            fcntl.flock(handle.fileno(), fcntl.LOCK_UN)
        finally:
            handle.close()
            _discard(self.lock_path)

    def write_json(self, report: Any) -> None:
        """
        Serialize ``report`` into the pending file.

        Raises:
            RuntimeError: outside the ``with`` block, or if the report cannot
                be encoded or written
        """
        if self._pending is None:
            raise RuntimeError(f"No pending write for {self.target_path}; use the writer as a context manager")
        try:
            text = dump_report(report)
            self._pending.write(text)
            self._pending.flush()
            os.fsync(self._pending.fileno())
        except (OSError, TypeError, ValueError) as e:
            raise RuntimeError(f"Cannot write report to {self.target_path}: {e}") from e


def _exclusive_lock(path: Path, timeout: float) -> IO[str]:
    """Open ``path`` and hold an exclusive flock on it, polling until ``timeout``."""
    handle = open(path, 'w')
    deadline = time.monotonic() + timeout
    try:
        while True:
            try:
                fcntl.flock(handle.fileno(), fcntl.LOCK_EX | fcntl.LOCK_NB)
                break
            except OSError as e:
                if e.errno not in (errno.EAGAIN, errno.EACCES):
                    raise
                if time.monotonic() > deadline:
                    raise TimeoutError(f"{path} is still locked after {timeout}s")
                time.sleep(0.05)
        handle.write(str(os.getpid()))
        handle.flush()
    except OSError as e:
        handle.close()
        raise RuntimeError(f"Cannot lock {path}: {e}") from e
    return handle


def _discard(path: Path) -> None:
    try:
        path.unlink()
    except FileNotFoundError:
        pass


def write_report(path: Union[str, Path], report: Any) -> None:
    with AtomicJSONWriter(path) as writer:
        writer.write_json(report)
